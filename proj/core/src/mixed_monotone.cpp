#include "sisio/mixed_monotone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sisio/error.hpp"
#include "sisio/linalg.hpp"

namespace sisio {

VectorField::VectorField(std::vector<Expr> components, std::size_t input_dim)
    : components_(std::move(components)), input_dim_(input_dim) {
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].arity() > input_dim_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "component " + std::to_string(i + 1) + " references a variable beyond x" +
                            std::to_string(input_dim_));
        }
    }
}

VectorField VectorField::parse(const std::vector<std::string>& texts, std::size_t input_dim) {
    const auto vars = VariableSet::states(input_dim);
    std::vector<Expr> comps;
    comps.reserve(texts.size());
    for (const auto& t : texts) comps.push_back(Expr::parse(t, vars));
    return VectorField(std::move(comps), input_dim);
}

Vector VectorField::operator()(const Vector& x) const {
    Vector out(static_cast<Index>(components_.size()));
    const std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    for (std::size_t i = 0; i < components_.size(); ++i) out[static_cast<Index>(i)] = components_[i].eval(xs);
    return out;
}

Matrix VectorField::jacobian(const Vector& x) const {
    Matrix jac(static_cast<Index>(components_.size()), static_cast<Index>(input_dim_));
    std::vector<Dual> seeded(x.data(), x.data() + x.size());
    for (std::size_t j = 0; j < input_dim_; ++j) {
        seeded[j].deriv = 1.0;
        for (std::size_t i = 0; i < components_.size(); ++i) {
            jac(static_cast<Index>(i), static_cast<Index>(j)) = components_[i].eval(std::span<const Dual>(seeded)).deriv;
        }
        seeded[j].deriv = 0.0;
    }
    return jac;
}

int default_points_per_axis(std::size_t n) {
    if (n <= 2) return 101;
    const double per_axis = std::floor(std::pow(101.0 * 101.0, 1.0 / static_cast<double>(n)) + 1e-9);
    return std::max(3, static_cast<int>(per_axis));
}

JacobianBounds estimate_jacobian_bounds(const VectorField& field, const IntervalVector& domain,
                                        const GridOptions& options) {
    const std::size_t n = field.input_dim();
    const std::size_t m = field.output_dim();
    if (static_cast<std::size_t>(domain.size()) != n) {
        throw Error(ErrorKind::DimensionMismatch, "estimate_jacobian_bounds: domain dimension differs from field input");
    }
    const int points = options.points_per_axis > 0 ? options.points_per_axis : default_points_per_axis(n);
    if (points < 2) {
        throw Error(ErrorKind::InvalidInput, "estimate_jacobian_bounds: need at least 2 grid points per axis");
    }

    constexpr double inf = std::numeric_limits<double>::infinity();
    Matrix low = Matrix::Constant(static_cast<Index>(m), static_cast<Index>(n), inf);
    Matrix high = Matrix::Constant(static_cast<Index>(m), static_cast<Index>(n), -inf);

    std::vector<int> counter(n, 0);
    std::vector<double> x(n);
    for (;;) {
        for (std::size_t a = 0; a < n; ++a) {
            const auto ia = static_cast<Index>(a);
            const double t = static_cast<double>(counter[a]) / static_cast<double>(points - 1);
            x[a] = counter[a] == points - 1 ? domain.hi()[ia] : domain.lo()[ia] + t * (domain.hi()[ia] - domain.lo()[ia]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto [left, right] = field.components()[i].one_sided_partials(x, j);
                if (!std::isfinite(left) || !std::isfinite(right)) {
                    std::ostringstream os;
                    os << "non-finite partial d h" << (i + 1) << "/d x" << (j + 1) << " at (";
                    for (std::size_t a = 0; a < n; ++a) os << (a ? ", " : "") << x[a];
                    os << ")";
                    throw Error(ErrorKind::Estimation, os.str());
                }
                const auto ii = static_cast<Index>(i);
                const auto jj = static_cast<Index>(j);
                low(ii, jj) = std::min({low(ii, jj), left, right});
                high(ii, jj) = std::max({high(ii, jj), left, right});
            }
        }
        std::size_t a = 0;
        while (a < n && ++counter[a] == points) {
            counter[a] = 0;
            ++a;
        }
        if (a == n) break;
    }

    const Matrix range = high - low;
    const Matrix pad = (options.relative_margin * range).array() + options.absolute_margin;
    return JacobianBounds{low - pad, high + pad};
}

Matrix correction_from_bounds(const Matrix& low) { return (-low).cwiseMax(0.0); }

Decomposition::Decomposition(VectorField base, Matrix correction, IntervalVector domain)
    : base_(std::move(base)), correction_(std::move(correction)), domain_(std::move(domain)) {
    if (correction_.rows() != static_cast<Index>(base_.output_dim()) ||
        correction_.cols() != static_cast<Index>(base_.input_dim())) {
        throw Error(ErrorKind::DimensionMismatch, "decomposition correction matrix has the wrong shape");
    }
    if ((correction_.array() < 0.0).any()) {
        throw Error(ErrorKind::InvalidInput, "decomposition correction matrix must be nonnegative");
    }
}

Vector Decomposition::eval(const Vector& x, const Vector& y) const { return base_(x) + correction_ * (x - y); }

Decomposition build_decomposition(const VectorField& field, const JacobianBounds& bounds,
                                  const IntervalVector& domain) {
    if (bounds.low.rows() != static_cast<Index>(field.output_dim()) ||
        bounds.low.cols() != static_cast<Index>(field.input_dim())) {
        throw Error(ErrorKind::DimensionMismatch, "Jacobian bounds shape does not match the field");
    }
    return Decomposition(field, correction_from_bounds(bounds.low), domain);
}

double decomposition_lipschitz(double lipschitz, const Matrix& correction) {
    if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
        throw Error(ErrorKind::InvalidInput, "decomposition_lipschitz: Lipschitz constant must be finite and nonnegative");
    }
    return lipschitz + 2.0 * spectral_norm(correction);
}

double estimate_lipschitz(const JacobianBounds& bounds) {
    return spectral_norm(bounds.low.cwiseAbs().cwiseMax(bounds.high.cwiseAbs()));
}

} // namespace sisio
