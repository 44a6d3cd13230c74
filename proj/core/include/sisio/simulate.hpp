#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sisio/config.hpp"
#include "sisio/expr.hpp"
#include "sisio/model.hpp"
#include "sisio/observer.hpp"

namespace sisio {

// std::mt19937_64 is fully specified by the standard; the mapping to [0, 1)
// uses the top 53 bits so that draws are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi);
    bool coin() { return (engine_() >> 63) != 0; }

    Vector sample(const IntervalVector& box, NoiseMode mode);

private:
    std::mt19937_64 engine_;
};

// Input signals compiled against x1..xn, k.
class Scenario {
public:
    Scenario(const ScenarioSpec& spec, std::size_t n);

    [[nodiscard]] const ScenarioSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] Vector known_input(const Vector& x, std::size_t k) const;
    [[nodiscard]] Vector unknown_input(const Vector& x, std::size_t k) const;

private:
    ScenarioSpec spec_;
    std::size_t n_;
    std::vector<Expr> u_;
    std::vector<Expr> d_;
};

struct TruthTrace {
    std::vector<Vector> x;
    std::vector<Vector> d;
    std::vector<Vector> y;
    std::vector<Vector> u;
    // First step at which x left the model domain, if any.
    std::optional<std::size_t> left_domain_at;

    [[nodiscard]] std::size_t size() const noexcept { return x.size(); }
};

struct SimulationOptions {
    std::uint64_t seed = 1;
    std::size_t steps = 200;
    NoiseMode noise_mode = NoiseMode::Uniform;
};

// Rows k = 0..steps. Throws ErrorKind::Divergence on a non-finite state.
[[nodiscard]] TruthTrace simulate_truth(const SystemModel& model, const Scenario& scenario, const IntervalVector& x0,
                                        const SimulationOptions& options);

struct TraceRow {
    std::size_t k = 0;
    ObserverState estimate;
    double width_x = 0.0;
    double width_d = 0.0;
    double err_x = 0.0;
    double err_d = 0.0;
    bool x_contained = false;
    bool d_contained = false;

    [[nodiscard]] bool contained() const noexcept { return x_contained && d_contained; }
};

struct TraceSummary {
    std::size_t rows = 0;
    std::size_t contained_rows = 0;
    double containment_rate = 0.0;
    std::size_t width_bound_violations = 0;
    double max_width_x = 0.0;
    double max_width_d = 0.0;
    double max_err_x = 0.0;
    double max_err_d = 0.0;
    double final_delta_x = 0.0;
    double final_delta_d = 0.0;
    std::optional<std::size_t> left_domain_at;
    // Observer error that cut the run short, if any.
    std::optional<std::string> error;
};

struct TracePair {
    TruthTrace truth;
    std::vector<TraceRow> rows;
    TraceSummary summary;
};

// Max of ||v - lo|| and ||hi - v||.
[[nodiscard]] double interval_error(const IntervalVector& box, const Vector& v);

[[nodiscard]] TracePair run_observer(const SystemModel& model, const IntervalVector& x0, TruthTrace truth);

[[nodiscard]] TraceSummary summarize(const TracePair& pair);

struct BatchResult {
    std::uint64_t seed = 0;
    TracePair trace;
};

// Simulate + observe for each seed, spread over `threads` workers. Results
// are returned sorted by seed regardless of scheduling.
[[nodiscard]] std::vector<BatchResult> run_batch(const SystemModel& truth_model, const SystemModel& observer_model,
                                                 const Scenario& scenario, const IntervalVector& x0,
                                                 const std::vector<std::uint64_t>& seeds, std::size_t steps,
                                                 NoiseMode mode, unsigned threads = 0);

} // namespace sisio
