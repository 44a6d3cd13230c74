#include "sisio/observer.hpp"

#include <cmath>
#include <sstream>

#include "sisio/error.hpp"
#include "sisio/lp.hpp"

namespace sisio {

const char* to_string(FusionSource s) noexcept {
    return s == FusionSource::PseudoInverse ? "pinv" : "lp";
}

namespace observer {

namespace {

void require_size(const Vector& v, std::size_t n, const char* what) {
    if (v.size() != static_cast<Index>(n)) {
        std::ostringstream os;
        os << what << " has " << v.size() << " entries, expected " << n;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

// 0 * inf is taken as 0: a vanishing factor kills the term.
double scaled(double factor, double value) {
    if (factor == 0.0 || value == 0.0) return 0.0;
    return factor * value;
}

} // namespace

double delta_x_bound(double contraction, double delta_x0, double norm_dz, std::size_t k) {
    const double kk = static_cast<double>(k);
    if (std::fabs(contraction - 1.0) < 1e-12) {
        return delta_x0 + scaled(kk, norm_dz);
    }
    const double lk = std::pow(contraction, kk);
    return scaled(lk, delta_x0) + scaled(norm_dz / (1.0 - contraction), 1.0 - lk);
}

double delta_d_bound(const SystemModel& model, double delta_x) {
    return scaled(model.norm_abs_J() * model.lipschitz_gd(), delta_x) + model.norm_abs_J_dv();
}

IntervalVector state_propagate(const ObserverState& s, const SystemModel& model, const Vector& u_prev, bool* clipped) {
    require_size(u_prev, model.m(), "u");
    const auto& fd = model.f_decomposition();
    const auto& gs = model.G_split();
    const Vector bu = model.B() * u_prev;
    const auto& spec = model.spec();

    Vector hi = fd.eval(s.x.hi(), s.x.lo()) + bu + gs.a_plus * s.d.hi() - gs.a_plusplus * s.d.lo() + spec.w_hi;
    Vector lo = fd.eval(s.x.lo(), s.x.hi()) + bu + gs.a_plus * s.d.lo() - gs.a_plusplus * s.d.hi() + spec.w_lo;
    if (!lo.allFinite() || !hi.allFinite()) {
        throw Error(ErrorKind::Divergence, "state bounds became non-finite at step " + std::to_string(s.k + 1));
    }
    const IntervalVector propagated(std::move(lo), std::move(hi));
    const Intersection cut = intersect(propagated, model.domain());
    if (cut.empty()) {
        throw Error(ErrorKind::DomainViolation,
                    "propagated state box leaves the model domain in coordinate " +
                        std::to_string(cut.empty_coordinate + 1) + " at step " + std::to_string(s.k + 1));
    }
    if (clipped) *clipped = !(*cut.box == propagated);
    return *cut.box;
}

IntervalVector residual_bounds(const IntervalVector& x, const SystemModel& model, const Vector& y, const Vector& u) {
    require_size(y, model.l(), "y");
    require_size(u, model.m(), "u");
    const auto& gd = model.g_decomposition();
    const auto& spec = model.spec();
    const Vector base = y - model.D() * u;
    Vector hi = base - gd.eval(x.lo(), x.hi()) - spec.v_lo;
    Vector lo = base - gd.eval(x.hi(), x.lo()) - spec.v_hi;
    return IntervalVector(std::move(lo), std::move(hi));
}

InputEstimate input_estimate(const SystemModel& model, const IntervalVector& r) {
    const auto p = static_cast<Index>(model.p());
    InputEstimate est;
    est.pinv = affine_image_bounds(model.J_split(), r);
    est.lower_source.assign(static_cast<std::size_t>(p), FusionSource::PseudoInverse);
    est.upper_source.assign(static_cast<std::size_t>(p), FusionSource::PseudoInverse);
    if (p == 0) {
        est.d = est.pinv;
        return est;
    }

    auto hull = residual_box_hull(model.H(), r);
    if (!hull) {
        est.polytope_empty = true;
        est.d = est.pinv;
        return est;
    }
    est.polytope_relaxed = hull->relaxed;
    est.hull = hull->box;

    Vector lo = est.pinv.lo();
    Vector hi = est.pinv.hi();
    for (Index i = 0; i < p; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        if (hull->box.lo()[i] > lo[i]) {
            lo[i] = hull->box.lo()[i];
            est.lower_source[ii] = FusionSource::LinearProgram;
        }
        if (hull->box.hi()[i] < hi[i]) {
            hi[i] = hull->box.hi()[i];
            est.upper_source[ii] = FusionSource::LinearProgram;
        }
        if (lo[i] > hi[i]) {
            if (lo[i] - hi[i] > kSnapTolerance) {
                std::ostringstream os;
                os << "fused input bounds inverted at coordinate " << (i + 1) << " (" << lo[i] << " > " << hi[i]
                   << "); the measurement contradicts the model";
                throw Error(ErrorKind::Inconsistent, os.str());
            }
            lo[i] = hi[i] = 0.5 * (lo[i] + hi[i]);
            est.snapped = true;
        }
    }
    est.d = IntervalVector(std::move(lo), std::move(hi));
    return est;
}

ObserverState init(const SystemModel& model, const IntervalVector& x0, const Vector& y0, const Vector& u0) {
    if (x0.size() != static_cast<Index>(model.n())) {
        throw Error(ErrorKind::DimensionMismatch, "initial state box must be n-dimensional");
    }
    if (!model.domain().contains(x0)) {
        throw Error(ErrorKind::DomainViolation, "initial state box is not inside the model domain");
    }
    ObserverState s;
    s.k = 0;
    s.x = x0;
    s.r = residual_bounds(x0, model, y0, u0);
    s.input = input_estimate(model, s.r);
    s.d = s.input.d;
    s.delta_x0 = width(x0);
    s.delta_x = s.delta_x0;
    s.delta_d = width(s.d);
    return s;
}

ObserverState step(const ObserverState& s, const SystemModel& model, const Vector& u_prev, const Vector& u,
                   const Vector& y) {
    ObserverState next;
    next.k = s.k + 1;
    next.x = state_propagate(s, model, u_prev, &next.clipped);
    next.r = residual_bounds(next.x, model, y, u);
    next.input = input_estimate(model, next.r);
    next.d = next.input.d;
    next.delta_x0 = s.delta_x0;
    next.delta_x = delta_x_bound(model.contraction(), next.delta_x0, model.delta_z().norm(), next.k);
    next.delta_d = delta_d_bound(model, next.delta_x);
    return next;
}

} // namespace observer
} // namespace sisio
