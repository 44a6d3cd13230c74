#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sisio/interval.hpp"
#include "sisio/model.hpp"

namespace sisio {

enum class FusionSource { PseudoInverse, LinearProgram };

const char* to_string(FusionSource s) noexcept;

struct InputEstimate {
    IntervalVector d;                    // fused
    IntervalVector pinv;                 // J+ r_hi - J++ r_lo etc.
    std::optional<IntervalVector> hull;  // LP box hull of the residual polytope
    std::vector<FusionSource> lower_source;
    std::vector<FusionSource> upper_source;
    bool polytope_empty = false;   // hull unavailable; pseudo-inverse bounds used alone
    bool polytope_relaxed = false; // hull needed an inflated rhs
    bool snapped = false;          // marginal inversion collapsed to a point
};

// Observer state at time k (x_k, d_k and their width bounds).
struct ObserverState {
    std::size_t k = 0;
    IntervalVector x;
    IntervalVector d;
    IntervalVector r;
    double delta_x0 = 0.0; // anchors the delta_x recursion
    double delta_x = 0.0;
    double delta_d = 0.0;
    InputEstimate input;
    bool clipped = false; // propagated box was cut back to the model domain
};

namespace observer {

[[nodiscard]] ObserverState init(const SystemModel& model, const IntervalVector& x0, const Vector& y0,
                                 const Vector& u0);

// x_k from (x_{k-1}, d_{k-1}), intersected with the model domain.
[[nodiscard]] IntervalVector state_propagate(const ObserverState& s, const SystemModel& model, const Vector& u_prev,
                                             bool* clipped = nullptr);

// [r_lo, r_hi] with r_lo <= H d_k <= r_hi whenever x contains x_k.
[[nodiscard]] IntervalVector residual_bounds(const IntervalVector& x, const SystemModel& model, const Vector& y,
                                             const Vector& u);

[[nodiscard]] InputEstimate input_estimate(const SystemModel& model, const IntervalVector& r);

[[nodiscard]] ObserverState step(const ObserverState& s, const SystemModel& model, const Vector& u_prev,
                                 const Vector& u, const Vector& y);

// L^k dx0 + ||dz|| (1 - L^k) / (1 - L); the limit dx0 + k ||dz|| at L = 1.
[[nodiscard]] double delta_x_bound(double contraction, double delta_x0, double norm_dz, std::size_t k);

// ||J+ + J++|| L_gd dx + ||(J+ + J++) dv||.
[[nodiscard]] double delta_d_bound(const SystemModel& model, double delta_x);

} // namespace observer
} // namespace sisio
