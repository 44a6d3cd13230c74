#pragma once

#include <optional>
#include <vector>

#include "sisio/interval.hpp"

namespace sisio {

enum class LpSense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status) noexcept;

// optimize objective . x  subject to  constraints * x <= rhs,  x free.
struct LinearProgram {
    Vector objective;
    Matrix constraints;
    Vector rhs;
    LpSense sense = LpSense::Maximize;
};

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    double optimum = 0.0;
    Vector argument;
};

inline constexpr double kPivotTolerance = 1e-9;

// Two-phase dense tableau simplex with Bland's rule. Free variables are split
// as x = x+ - x-.
[[nodiscard]] LpOutcome lp_solve(const LinearProgram& lp);

struct BoxHull {
    IntervalVector box;
    // Minimizer / maximizer returned for each coordinate.
    std::vector<Vector> argmin;
    std::vector<Vector> argmax;
    // True when the rhs had to be inflated to obtain a feasible polytope.
    bool relaxed = false;
};

inline constexpr double kHullRelaxation = 1e-7;

// Tightest box around {d : r.lo <= H d <= r.hi}. Returns nullopt when the set
// is empty even after relaxing r by kHullRelaxation.
[[nodiscard]] std::optional<BoxHull> residual_box_hull(const Matrix& h, const IntervalVector& r);

} // namespace sisio
