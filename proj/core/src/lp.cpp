#include "sisio/lp.hpp"

#include <cmath>
#include <stdexcept>

#include "sisio/error.hpp"
#include "sisio/linalg.hpp"

namespace sisio {

const char* to_string(LpStatus status) noexcept {
    switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

constexpr double kReducedCostTolerance = 1e-11;
constexpr int kMaxPivots = 100000;

class Tableau {
public:
    Tableau(Index rows, Index cols) : t_(Matrix::Zero(rows, cols + 1)), basis_(rows, -1), cols_(cols) {}

    double& at(Index i, Index j) { return t_(i, j); }
    double& rhs(Index i) { return t_(i, cols_); }
    [[nodiscard]] double rhs(Index i) const { return t_(i, cols_); }
    [[nodiscard]] Index rows() const { return t_.rows(); }
    [[nodiscard]] Index cols() const { return cols_; }
    std::vector<Index>& basis() { return basis_; }

    void pivot(Index row, Index col) {
        t_.row(row) /= t_(row, col);
        for (Index i = 0; i < t_.rows(); ++i) {
            if (i == row) continue;
            const double factor = t_(i, col);
            if (factor != 0.0) t_.row(i) -= factor * t_.row(row);
        }
        basis_[static_cast<std::size_t>(row)] = col;
    }

    // Maximizes cost . z over columns where allowed[j]. Returns false when
    // unbounded.
    bool maximize(const Vector& cost, const std::vector<bool>& allowed) {
        for (int iter = 0; iter < kMaxPivots; ++iter) {
            std::vector<bool> is_basic(static_cast<std::size_t>(cols_), false);
            for (Index b : basis_) is_basic[static_cast<std::size_t>(b)] = true;

            Index entering = -1;
            for (Index j = 0; j < cols_; ++j) {
                if (!allowed[static_cast<std::size_t>(j)] || is_basic[static_cast<std::size_t>(j)]) continue;
                double reduced = cost[j];
                for (Index i = 0; i < rows(); ++i) reduced -= cost[basis_[static_cast<std::size_t>(i)]] * t_(i, j);
                if (reduced > kReducedCostTolerance) {
                    entering = j; // Bland: lowest index
                    break;
                }
            }
            if (entering < 0) return true;

            Index leaving = -1;
            double best = 0.0;
            for (Index i = 0; i < rows(); ++i) {
                const double a = t_(i, entering);
                if (a <= kPivotTolerance) continue;
                const double ratio = rhs(i) / a;
                if (leaving < 0 || ratio < best - 1e-15 * std::max(1.0, std::fabs(best)) ||
                    (std::fabs(ratio - best) <= 1e-15 * std::max(1.0, std::fabs(best)) &&
                     basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
                    leaving = i;
                    best = ratio;
                }
            }
            if (leaving < 0) return false;
            pivot(leaving, entering);
        }
        throw std::logic_error("simplex exceeded the pivot limit");
    }

    [[nodiscard]] Vector values() const {
        Vector z = Vector::Zero(cols_);
        for (Index i = 0; i < rows(); ++i) z[basis_[static_cast<std::size_t>(i)]] = rhs(i);
        return z;
    }

private:
    Matrix t_;
    std::vector<Index> basis_;
    Index cols_;
};

} // namespace

LpOutcome lp_solve(const LinearProgram& lp) {
    const Index m = lp.constraints.rows();
    const Index p = lp.constraints.cols();
    if (lp.objective.size() != p || lp.rhs.size() != m) {
        throw Error(ErrorKind::DimensionMismatch, "lp_solve: inconsistent objective/constraint/rhs dimensions");
    }
    if (!lp.objective.allFinite() || !lp.constraints.allFinite() || !lp.rhs.allFinite()) {
        throw Error(ErrorKind::InvalidInput, "lp_solve: non-finite data");
    }

    Index artificials = 0;
    for (Index i = 0; i < m; ++i)
        if (lp.rhs[i] < 0.0) ++artificials;

    // Columns: x+ (p), x- (p), slacks (m), artificials.
    const Index n_struct = 2 * p;
    const Index first_slack = n_struct;
    const Index first_art = first_slack + m;
    const Index cols = first_art + artificials;
    Tableau tab(m, cols);

    Index next_art = first_art;
    for (Index i = 0; i < m; ++i) {
        const double sgn = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
        for (Index j = 0; j < p; ++j) {
            tab.at(i, j) = sgn * lp.constraints(i, j);
            tab.at(i, p + j) = -sgn * lp.constraints(i, j);
        }
        tab.at(i, first_slack + i) = sgn;
        tab.rhs(i) = sgn * lp.rhs[i];
        if (sgn < 0.0) {
            tab.at(i, next_art) = 1.0;
            tab.basis()[static_cast<std::size_t>(i)] = next_art++;
        } else {
            tab.basis()[static_cast<std::size_t>(i)] = first_slack + i;
        }
    }

    std::vector<bool> allowed(static_cast<std::size_t>(cols), true);
    if (artificials > 0) {
        Vector phase1 = Vector::Zero(cols);
        phase1.tail(artificials).setConstant(-1.0);
        tab.maximize(phase1, allowed);
        const Vector z = tab.values();
        const double infeasibility = z.tail(artificials).sum();
        if (infeasibility > 1e-9 * std::max(1.0, lp.rhs.cwiseAbs().maxCoeff())) {
            return LpOutcome{LpStatus::Infeasible, 0.0, Vector()};
        }
        // Pivot remaining (zero-valued) artificials out of the basis.
        for (Index i = 0; i < m; ++i) {
            if (tab.basis()[static_cast<std::size_t>(i)] < first_art) continue;
            for (Index j = 0; j < first_art; ++j) {
                if (std::fabs(tab.at(i, j)) > kPivotTolerance) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
        for (Index j = first_art; j < cols; ++j) allowed[static_cast<std::size_t>(j)] = false;
    }

    const double dir = lp.sense == LpSense::Maximize ? 1.0 : -1.0;
    Vector cost = Vector::Zero(cols);
    cost.head(p) = dir * lp.objective;
    cost.segment(p, p) = -dir * lp.objective;
    if (!tab.maximize(cost, allowed)) {
        return LpOutcome{LpStatus::Unbounded, 0.0, Vector()};
    }
    const Vector z = tab.values();
    Vector x = z.head(p) - z.segment(p, p);
    const double optimum = lp.objective.dot(x);
    return LpOutcome{LpStatus::Optimal, optimum, std::move(x)};
}

std::optional<BoxHull> residual_box_hull(const Matrix& h, const IntervalVector& r) {
    const Index l = h.rows();
    const Index p = h.cols();
    if (r.size() != l) {
        throw Error(ErrorKind::DimensionMismatch, "residual_box_hull: residual dimension differs from H rows");
    }
    if (numerical_rank(h) < p) {
        throw Error(ErrorKind::RankDeficient, "residual_box_hull: H must have full column rank");
    }

    LinearProgram lp;
    lp.constraints.resize(2 * l, p);
    lp.constraints << h, -h;

    auto solve_all = [&](double relax) -> std::optional<BoxHull> {
        lp.rhs.resize(2 * l);
        lp.rhs << r.hi().array() + relax, -(r.lo().array() - relax);
        BoxHull hull;
        Vector lo(p), hi(p);
        for (Index i = 0; i < p; ++i) {
            lp.objective = Vector::Unit(p, i);
            for (LpSense sense : {LpSense::Minimize, LpSense::Maximize}) {
                lp.sense = sense;
                LpOutcome out = lp_solve(lp);
                if (out.status == LpStatus::Infeasible) return std::nullopt;
                if (out.status == LpStatus::Unbounded) {
                    throw std::logic_error("residual_box_hull: unbounded LP despite full column rank");
                }
                if (sense == LpSense::Minimize) {
                    lo[i] = out.optimum;
                    hull.argmin.push_back(std::move(out.argument));
                } else {
                    hi[i] = out.optimum;
                    hull.argmax.push_back(std::move(out.argument));
                }
            }
            if (lo[i] > hi[i]) lo[i] = hi[i] = 0.5 * (lo[i] + hi[i]);
        }
        hull.box = IntervalVector(std::move(lo), std::move(hi));
        hull.relaxed = relax > 0.0;
        return hull;
    };

    if (auto hull = solve_all(0.0)) return hull;
    return solve_all(kHullRelaxation);
}

} // namespace sisio
