// Command-line driver: simulate, observe, run (batch) and certify.
//
// Exit status: 0 success, 2 containment violation detected, 1 any error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sisio/sisio.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct Common {
    std::string config;
    bool extremal = false;
};

sisio::NoiseMode noise_mode(const sisio::Config& cfg, bool extremal) {
    return extremal ? sisio::NoiseMode::Extremal : cfg.scenario.noise_mode;
}

bool violated(const sisio::TraceSummary& s) {
    return s.error.has_value() || s.contained_rows != s.rows;
}

void report_summary(std::ostream& os, std::uint64_t seed, const sisio::TraceSummary& s) {
    os << "seed " << seed << ": containment " << s.contained_rows << "/" << s.rows << ", max width_x "
       << s.max_width_x << ", max width_d " << s.max_width_d << ", width-bound violations "
       << s.width_bound_violations;
    if (s.left_domain_at) os << ", truth left domain at k=" << *s.left_domain_at;
    if (s.error) os << ", observer error: " << *s.error;
    os << '\n';
}

int cmd_simulate(const Common& c, std::optional<std::uint64_t> seed, std::optional<std::size_t> steps,
                 const std::string& out) {
    const auto cfg = sisio::load_config(c.config);
    const auto model = sisio::SystemModel::build(cfg.model);
    const sisio::Scenario scenario(cfg.scenario, model.n());
    sisio::SimulationOptions opts{seed.value_or(cfg.scenario.seed), steps.value_or(cfg.scenario.horizon),
                                  noise_mode(cfg, c.extremal)};
    const auto truth = sisio::simulate_truth(model, scenario, cfg.x0, opts);
    sisio::write_truth_csv(fs::path(out), truth, sisio::dims_of(model));
    if (truth.left_domain_at) {
        std::cerr << "warning: true state left the model domain at k=" << *truth.left_domain_at << '\n';
    }
    return kExitOk;
}

int cmd_observe(const Common& c, const std::string& truth_path, const std::string& out) {
    const auto cfg = sisio::load_config(c.config);
    const auto model = sisio::SystemModel::build(cfg.model);
    auto truth = sisio::read_truth_csv(fs::path(truth_path), sisio::dims_of(model));
    for (std::size_t k = 0; k < truth.size(); ++k) {
        if (!model.domain().contains(truth.x[k])) {
            truth.left_domain_at = k;
            break;
        }
    }
    const auto pair = sisio::run_observer(model, cfg.x0, std::move(truth));
    sisio::write_trace_csv(fs::path(out), pair, sisio::dims_of(model));
    report_summary(std::cout, cfg.scenario.seed, pair.summary);
    return violated(pair.summary) ? kExitViolation : kExitOk;
}

int cmd_run(const Common& c, std::size_t seeds, std::optional<std::uint64_t> first_seed,
            std::optional<std::size_t> steps, unsigned threads, const std::string& out_dir) {
    const auto cfg = sisio::load_config(c.config);
    const auto model = sisio::SystemModel::build(cfg.model);
    const sisio::Scenario scenario(cfg.scenario, model.n());
    const std::uint64_t base = first_seed.value_or(cfg.scenario.seed);
    std::vector<std::uint64_t> list;
    for (std::size_t i = 0; i < seeds; ++i) list.push_back(base + i);

    const auto results = sisio::run_batch(model, model, scenario, cfg.x0, list, steps.value_or(cfg.scenario.horizon),
                                          noise_mode(cfg, c.extremal), threads);

    fs::create_directories(out_dir);
    const auto dims = sisio::dims_of(model);
    std::ofstream summary(fs::path(out_dir) / "summary.csv", std::ios::binary);
    if (!summary) throw sisio::Error(sisio::ErrorKind::Io, "cannot write summary.csv in " + out_dir);
    summary << "seed,rows,contained_rows,containment_rate,width_bound_violations,max_width_x,max_width_d,"
               "max_err_x,max_err_d,final_delta_x,final_delta_d,left_domain_at,error\n";
    bool any_violation = false;
    for (const auto& r : results) {
        sisio::write_trace_csv(fs::path(out_dir) / ("trace_seed_" + std::to_string(r.seed) + ".csv"), r.trace, dims);
        const auto& s = r.trace.summary;
        summary << r.seed << ',' << s.rows << ',' << s.contained_rows << ',' << sisio::format_double(s.containment_rate)
                << ',' << s.width_bound_violations << ',' << sisio::format_double(s.max_width_x) << ','
                << sisio::format_double(s.max_width_d) << ',' << sisio::format_double(s.max_err_x) << ','
                << sisio::format_double(s.max_err_d) << ',' << sisio::format_double(s.final_delta_x) << ','
                << sisio::format_double(s.final_delta_d) << ','
                << (s.left_domain_at ? std::to_string(*s.left_domain_at) : std::string()) << ','
                << (s.error ? "\"" + *s.error + "\"" : std::string()) << '\n';
        if (violated(s)) {
            any_violation = true;
            report_summary(std::cerr, r.seed, s);
        }
    }
    std::cout << results.size() << " seeds, " << (any_violation ? "containment violations detected" : "all contained")
              << '\n';
    return any_violation ? kExitViolation : kExitOk;
}

int cmd_certify(const Common& c, std::optional<double> p_scale, std::optional<double> gamma_scale,
                const std::string& out) {
    const auto cfg = sisio::load_config(c.config);
    const auto model = sisio::SystemModel::build(cfg.model);
    std::optional<sisio::LyapunovCandidate> candidate;
    if (p_scale || gamma_scale) {
        const auto id = sisio::Matrix::Identity(static_cast<sisio::Index>(model.n()), static_cast<sisio::Index>(model.n()));
        candidate = sisio::LyapunovCandidate{p_scale.value_or(1.0) * id, gamma_scale.value_or(0.0) * id};
    }
    const auto report = sisio::certify(model, cfg.x0, candidate);
    std::ofstream os(out, std::ios::binary);
    if (!os) throw sisio::Error(sisio::ErrorKind::Io, "cannot write " + out);
    os << sisio::report_to_json(report) << '\n';
    std::cout << "L = " << report.condition_i.contraction << "; (i) " << sisio::to_string(report.condition_i.verdict)
              << "; (ii) " << sisio::to_string(report.condition_ii.verdict) << "; (iii) "
              << sisio::to_string(report.condition_iii.verdict) << " (proof mode "
              << sisio::to_string(report.condition_iii.proof_verdict) << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simultaneous input and state interval observer"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "Model/scenario JSON file")->required()->check(CLI::ExistingFile);
        sub->add_flag("--extremal-noise", common.extremal, "Sample noise only at bound vertices");
    };

    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> steps;
    std::string out;

    auto* simulate = app.add_subcommand("simulate", "Simulate the true system and write a truth CSV");
    add_common(simulate);
    simulate->add_option("--seed", seed, "RNG seed (default: scenario.seed)");
    simulate->add_option("--steps", steps, "Number of steps K (default: scenario.horizon)");
    simulate->add_option("--out", out, "Output CSV")->required();

    std::string truth_path;
    auto* observe = app.add_subcommand("observe", "Run the observer over a truth CSV");
    add_common(observe);
    observe->add_option("--truth", truth_path, "Truth CSV from 'simulate'")->required()->check(CLI::ExistingFile);
    observe->add_option("--out", out, "Output trace CSV")->required();

    std::size_t seeds = 1;
    unsigned threads = 0;
    auto* run = app.add_subcommand("run", "Simulate + observe over several seeds");
    add_common(run);
    run->add_option("--seeds", seeds, "Number of seeds")->required()->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "First seed (default: scenario.seed)");
    run->add_option("--steps", steps, "Number of steps K (default: scenario.horizon)");
    run->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
    run->add_option("--out", out, "Output directory")->required();

    std::optional<double> p_scale;
    std::optional<double> gamma_scale;
    auto* certify = app.add_subcommand("certify", "Evaluate the stability certificates and width limits");
    add_common(certify);
    certify->add_option("--p-scale", p_scale, "Check condition (iii) at P = p I instead of searching");
    certify->add_option("--gamma-scale", gamma_scale, "Gamma = gamma I for the condition (iii) candidate");
    certify->add_option("--out", out, "Output report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*simulate) return cmd_simulate(common, seed, steps, out);
        if (*observe) return cmd_observe(common, truth_path, out);
        if (*run) return cmd_run(common, seeds, seed, steps, threads, out);
        if (*certify) return cmd_certify(common, p_scale, gamma_scale, out);
    } catch (const sisio::Error& e) {
        std::cerr << "error (" << sisio::to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
