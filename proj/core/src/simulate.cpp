#include "sisio/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "sisio/error.hpp"

namespace sisio {

double Rng::uniform(double lo, double hi) {
    const double v = lo + (hi - lo) * uniform01();
    return std::clamp(v, lo, hi);
}

Vector Rng::sample(const IntervalVector& box, NoiseMode mode) {
    Vector v(box.size());
    for (Index i = 0; i < box.size(); ++i) {
        if (mode == NoiseMode::Extremal) {
            v[i] = coin() ? box.hi()[i] : box.lo()[i];
        } else {
            v[i] = uniform(box.lo()[i], box.hi()[i]);
        }
    }
    return v;
}

Scenario::Scenario(const ScenarioSpec& spec, std::size_t n) : spec_(spec), n_(n) {
    const auto vars = VariableSet::states_and_time(n);
    for (const auto& t : spec.u) u_.push_back(Expr::parse(t, vars));
    for (const auto& t : spec.d) d_.push_back(Expr::parse(t, vars));
}

namespace {

Vector eval_signals(const std::vector<Expr>& exprs, const Vector& x, std::size_t k) {
    std::vector<double> args(x.data(), x.data() + x.size());
    args.push_back(static_cast<double>(k));
    Vector out(static_cast<Index>(exprs.size()));
    for (std::size_t i = 0; i < exprs.size(); ++i) out[static_cast<Index>(i)] = exprs[i].eval(args);
    return out;
}

} // namespace

Vector Scenario::known_input(const Vector& x, std::size_t k) const { return eval_signals(u_, x, k); }

Vector Scenario::unknown_input(const Vector& x, std::size_t k) const { return eval_signals(d_, x, k); }

TruthTrace simulate_truth(const SystemModel& model, const Scenario& scenario, const IntervalVector& x0,
                          const SimulationOptions& options) {
    Rng rng(options.seed);
    const IntervalVector w = model.process_noise();
    const IntervalVector v = model.measurement_noise();

    TruthTrace t;
    t.x.reserve(options.steps + 1);
    Vector x = rng.sample(x0, NoiseMode::Uniform);
    for (std::size_t k = 0;; ++k) {
        if (!x.allFinite()) {
            throw Error(ErrorKind::Divergence, "true state became non-finite at step " + std::to_string(k));
        }
        if (!t.left_domain_at && !model.domain().contains(x)) t.left_domain_at = k;

        Vector u = scenario.known_input(x, k);
        Vector d = scenario.unknown_input(x, k);
        const Vector vk = rng.sample(v, options.noise_mode);
        Vector y = model.g()(x) + model.D() * u + model.H() * d + vk;

        t.x.push_back(x);
        t.d.push_back(d);
        t.y.push_back(std::move(y));
        t.u.push_back(u);
        if (k == options.steps) break;

        const Vector wk = rng.sample(w, options.noise_mode);
        x = model.f()(x) + model.B() * u + model.G() * d + wk;
    }
    return t;
}

double interval_error(const IntervalVector& box, const Vector& v) {
    return std::max((v - box.lo()).norm(), (box.hi() - v).norm());
}

namespace {

TraceRow make_row(const ObserverState& s, const TruthTrace& truth) {
    TraceRow row;
    row.k = s.k;
    row.estimate = s;
    row.width_x = width(s.x);
    row.width_d = width(s.d);
    row.err_x = interval_error(s.x, truth.x[s.k]);
    row.err_d = interval_error(s.d, truth.d[s.k]);
    row.x_contained = s.x.contains(truth.x[s.k]);
    row.d_contained = s.d.contains(truth.d[s.k]);
    return row;
}

} // namespace

TraceSummary summarize(const TracePair& pair) {
    TraceSummary s;
    s.rows = pair.truth.size();
    s.left_domain_at = pair.truth.left_domain_at;
    s.error = pair.summary.error;
    for (const auto& r : pair.rows) {
        if (r.contained()) ++s.contained_rows;
        if (r.width_x > r.estimate.delta_x || r.width_d > r.estimate.delta_d) ++s.width_bound_violations;
        s.max_width_x = std::max(s.max_width_x, r.width_x);
        s.max_width_d = std::max(s.max_width_d, r.width_d);
        s.max_err_x = std::max(s.max_err_x, r.err_x);
        s.max_err_d = std::max(s.max_err_d, r.err_d);
    }
    if (!pair.rows.empty()) {
        s.final_delta_x = pair.rows.back().estimate.delta_x;
        s.final_delta_d = pair.rows.back().estimate.delta_d;
    }
    // Rows the observer never produced count as not contained.
    s.containment_rate = s.rows == 0 ? 1.0 : static_cast<double>(s.contained_rows) / static_cast<double>(s.rows);
    return s;
}

TracePair run_observer(const SystemModel& model, const IntervalVector& x0, TruthTrace truth) {
    TracePair pair;
    pair.truth = std::move(truth);
    const TruthTrace& t = pair.truth;
    try {
        if (t.size() == 0) throw Error(ErrorKind::InvalidInput, "empty truth trace");
        ObserverState s = observer::init(model, x0, t.y[0], t.u[0]);
        pair.rows.push_back(make_row(s, t));
        for (std::size_t k = 1; k < t.size(); ++k) {
            s = observer::step(s, model, t.u[k - 1], t.u[k], t.y[k]);
            pair.rows.push_back(make_row(s, t));
        }
    } catch (const Error& e) {
        pair.summary.error = "step " + std::to_string(pair.rows.size()) + ": " + e.what();
    }
    pair.summary = summarize(pair);
    return pair;
}

std::vector<BatchResult> run_batch(const SystemModel& truth_model, const SystemModel& observer_model,
                                   const Scenario& scenario, const IntervalVector& x0,
                                   const std::vector<std::uint64_t>& seeds, std::size_t steps, NoiseMode mode,
                                   unsigned threads) {
    std::vector<BatchResult> results(seeds.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, seeds.size())));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= seeds.size() || failed.load()) return;
            try {
                SimulationOptions opts{seeds[i], steps, mode};
                TruthTrace truth = simulate_truth(truth_model, scenario, x0, opts);
                results[i] = BatchResult{seeds[i], run_observer(observer_model, x0, std::move(truth))};
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::sort(results.begin(), results.end(), [](const BatchResult& a, const BatchResult& b) { return a.seed < b.seed; });
    return results;
}

} // namespace sisio
