#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace sisio {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Coordinates of an intersection inverted by at most this much are snapped
// to a point instead of being reported as empty.
inline constexpr double kSnapTolerance = 1e-9;

// Closed box [lo, hi] in R^n. lo <= hi element-wise is enforced on
// construction.
class IntervalVector {
public:
    IntervalVector() = default;
    IntervalVector(Vector lo, Vector hi);

    static IntervalVector point(const Vector& x);

    [[nodiscard]] const Vector& lo() const noexcept { return lo_; }
    [[nodiscard]] const Vector& hi() const noexcept { return hi_; }
    [[nodiscard]] Index size() const noexcept { return lo_.size(); }

    // hi - lo, element-wise.
    [[nodiscard]] Vector extent() const { return hi_ - lo_; }
    [[nodiscard]] Vector midpoint() const { return 0.5 * (lo_ + hi_); }

    [[nodiscard]] bool contains(const Vector& x, double slack = 0.0) const;
    [[nodiscard]] bool contains(const IntervalVector& other, double slack = 0.0) const;

    friend bool operator==(const IntervalVector& a, const IntervalVector& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Vector lo_;
    Vector hi_;
};

// Euclidean norm of hi - lo.
[[nodiscard]] double width(const IntervalVector& iv);

// A = a_plus - a_plusplus with both parts nonnegative and disjointly
// supported. Zero entries land in a_plus.
struct MatrixSplit {
    Matrix a_plus;
    Matrix a_plusplus;

    // a_plus + a_plusplus, i.e. |A| element-wise.
    [[nodiscard]] Matrix magnitude() const { return a_plus + a_plusplus; }
};

[[nodiscard]] MatrixSplit split_pos(const Matrix& a);

// Tight box enclosing {A b : b in box}.
[[nodiscard]] IntervalVector affine_image_bounds(const Matrix& a, const IntervalVector& box);
[[nodiscard]] IntervalVector affine_image_bounds(const MatrixSplit& split, const IntervalVector& box);

struct Intersection {
    std::optional<IntervalVector> box;
    // First coordinate that inverted beyond tolerance, or -1 when nonempty.
    Index empty_coordinate = -1;

    [[nodiscard]] bool empty() const noexcept { return !box.has_value(); }
};

[[nodiscard]] Intersection intersect(const IntervalVector& a, const IntervalVector& b,
                                     double snap_tolerance = kSnapTolerance);

} // namespace sisio
