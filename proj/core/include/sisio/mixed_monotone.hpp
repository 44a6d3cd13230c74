#pragma once

#include <cstddef>
#include <vector>

#include "sisio/expr.hpp"
#include "sisio/interval.hpp"

namespace sisio {

// h : R^n -> R^m given component-wise by expressions over x1..xn.
class VectorField {
public:
    VectorField() = default;
    VectorField(std::vector<Expr> components, std::size_t input_dim);

    static VectorField parse(const std::vector<std::string>& texts, std::size_t input_dim);

    [[nodiscard]] std::size_t input_dim() const noexcept { return input_dim_; }
    [[nodiscard]] std::size_t output_dim() const noexcept { return components_.size(); }
    [[nodiscard]] const std::vector<Expr>& components() const noexcept { return components_; }

    [[nodiscard]] Vector operator()(const Vector& x) const;
    // Forward-mode Jacobian (right derivatives).
    [[nodiscard]] Matrix jacobian(const Vector& x) const;

private:
    std::vector<Expr> components_;
    std::size_t input_dim_ = 0;
};

// Element-wise bounds on the Jacobian over a domain: low <= dh/dx <= high.
struct JacobianBounds {
    Matrix low;
    Matrix high;
};

struct GridOptions {
    // 0 selects the default: 101 for n <= 2, else floor(101^(2/n)) (min 3).
    int points_per_axis = 0;
    double relative_margin = 0.05;
    double absolute_margin = 1e-6;
};

[[nodiscard]] int default_points_per_axis(std::size_t n);

// Min/max of sampled partials over a uniform grid of `domain`, widened by
// relative_margin * (max - min) + absolute_margin on both sides. Throws
// ErrorKind::Estimation on a non-finite sample.
[[nodiscard]] JacobianBounds estimate_jacobian_bounds(const VectorField& field, const IntervalVector& domain,
                                                      const GridOptions& options = {});

// C_h = max(0, -low), element-wise.
[[nodiscard]] Matrix correction_from_bounds(const Matrix& low);

// h_d(x, y) = h(x) + C_h (x - y). Increasing in x and decreasing in y on the
// domain whenever the bounds it was built from lower-bound the Jacobian there.
class Decomposition {
public:
    Decomposition() = default;
    Decomposition(VectorField base, Matrix correction, IntervalVector domain);

    [[nodiscard]] const VectorField& base() const noexcept { return base_; }
    [[nodiscard]] const Matrix& correction() const noexcept { return correction_; }
    [[nodiscard]] const IntervalVector& domain() const noexcept { return domain_; }

    [[nodiscard]] Vector eval(const Vector& x, const Vector& y) const;

private:
    VectorField base_;
    Matrix correction_;
    IntervalVector domain_;
};

[[nodiscard]] Decomposition build_decomposition(const VectorField& field, const JacobianBounds& bounds,
                                                const IntervalVector& domain);

[[nodiscard]] inline Vector eval_decomposition(const Decomposition& dec, const Vector& x, const Vector& y) {
    return dec.eval(x, y);
}

// L_h + 2 ||C_h||.
[[nodiscard]] double decomposition_lipschitz(double lipschitz, const Matrix& correction);

// Spectral norm of max(|low|, |high|); bounds sup ||J(x)|| over the domain
// because the spectral norm is monotone on nonnegative matrices.
[[nodiscard]] double estimate_lipschitz(const JacobianBounds& bounds);

} // namespace sisio
