// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Usage: acceptance [work_dir]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "support.hpp"

using namespace sisio;
using namespace sisio::test;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kSeeds = 100;
constexpr std::size_t kSteps = 200;
constexpr double kRuntimeLimitSeconds = 60.0;
constexpr int kDecompositionPairs = 10000;
constexpr double kDiagonalTolerance = 1e-12;
constexpr double kOrderSlack = 1e-12;
constexpr double kReferenceFdTolerance = 1e-3;
constexpr double kReferenceGdTolerance = 1e-2;
constexpr double kCorrectionTolerance = 2e-3;
constexpr int kImageInstances = 1000;
constexpr double kImageTolerance = 1e-10;
constexpr int kLpInstances = 500;
constexpr double kLpTolerance = 1e-8;
constexpr int kNsdInstances = 1000;
constexpr double kEigenTolerance = 1e-8;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SISIO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Traces shared by the framer and width-bound criteria.
struct FramerRuns {
    std::size_t rows = 0;
    std::size_t uncontained = 0;
    std::size_t width_violations = 0;
    std::size_t errors = 0;
    std::size_t left_domain = 0;
    double seconds = 0.0;
};

FramerRuns framer_runs() {
    FramerRuns out;
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 1; i <= kSeeds; ++i) seeds.push_back(i);
    for (const char* name : {"canonical.json", "canonical_adversarial.json"}) {
        const auto cfg = load_config(config_path(name));
        const auto model = SystemModel::build(cfg.model);
        const Scenario scenario(cfg.scenario, model.n());
        for (NoiseMode mode : {NoiseMode::Uniform, NoiseMode::Extremal}) {
            for (const auto& r : run_batch(model, model, scenario, cfg.x0, seeds, kSteps, mode)) {
                const auto& s = r.trace.summary;
                out.rows += s.rows;
                out.uncontained += s.rows - s.contained_rows;
                out.width_violations += s.width_bound_violations;
                out.errors += s.error ? 1 : 0;
                out.left_domain += s.left_domain_at ? 1 : 0;
            }
        }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

Outcome framer(const FramerRuns& f) {
    Outcome o;
    o.pass = f.uncontained == 0 && f.errors == 0 && f.rows == 4 * kSeeds * (kSteps + 1) &&
             f.seconds <= kRuntimeLimitSeconds;
    o.detail = std::to_string(f.rows - f.uncontained) + "/" + std::to_string(f.rows) +
               " rows contained over 2 scenarios x 2 noise modes x " + std::to_string(kSeeds) + " seeds, " +
               std::to_string(f.errors) + " observer errors, " + std::to_string(f.left_domain) +
               " runs left the domain, " + fmt(f.seconds) + " s";
    return o;
}

Outcome decomposition_properties() {
    const auto& model = canonical_model();
    const auto& domain = model.domain();
    Random rng(1002);
    double worst_diagonal = 0.0;
    std::size_t monotone = 0, sandwich = 0;
    for (const Decomposition* dec : {&model.f_decomposition(), &model.g_decomposition()}) {
        const auto& h = dec->base();
        for (int t = 0; t < kDecompositionPairs; ++t) {
            const Vector a = rng.point_in(domain), b = rng.point_in(domain), y = rng.point_in(domain);
            worst_diagonal = std::max(worst_diagonal, (dec->eval(a, a) - h(a)).cwiseAbs().maxCoeff());
            const Vector hi = a.cwiseMax(b), lo = a.cwiseMin(b);
            monotone += (dec->eval(hi, y).array() < dec->eval(lo, y).array() - kOrderSlack).any();
            monotone += (dec->eval(y, hi).array() > dec->eval(y, lo).array() + kOrderSlack).any();
            const Vector mid = rng.point_in(IntervalVector(lo, hi));
            sandwich += (dec->eval(lo, hi).array() > h(mid).array() + kOrderSlack).any() ||
                        (h(mid).array() > dec->eval(hi, lo).array() + kOrderSlack).any();
        }
    }
    Outcome o;
    o.pass = worst_diagonal <= kDiagonalTolerance && monotone == 0 && sandwich == 0;
    o.detail = std::to_string(kDecompositionPairs) + " pairs each for f_d and g_d: diagonal gap " +
               fmt(worst_diagonal) + ", monotonicity violations " + std::to_string(monotone) +
               ", sandwich violations " + std::to_string(sandwich);
    return o;
}

Outcome reference_values() {
    const Matrix cf_reference = mat(2, 2, {0.251, 0, 0.0029, 0.201});
    const Matrix cg_reference = mat(1, 2, {0, 0.225});
    const double lfd = decomposition_lipschitz(0.35, cf_reference);
    const double lgd = decomposition_lipschitz(0.74, cg_reference);
    const Matrix cf = correction_from_bounds(mat(2, 2, {-0.25, 0.99, -0.0019, -0.2}));
    const Matrix cg = correction_from_bounds(mat(1, 2, {0.75, -0.224}));
    const double gap_f = (cf - cf_reference).cwiseAbs().maxCoeff();
    const double gap_g = (cg - cg_reference).cwiseAbs().maxCoeff();
    Outcome o;
    o.pass = std::fabs(lfd - 0.852) <= kReferenceFdTolerance && std::fabs(lgd - 1.19) <= kReferenceGdTolerance &&
             gap_f <= kCorrectionTolerance + 1e-15 && gap_g <= kCorrectionTolerance + 1e-15;
    o.detail = "L_fd = " + fmt(lfd) + ", L_gd = " + fmt(lgd) + ", max |C_f - reference| = " + fmt(gap_f) +
               ", max |C_g - reference| = " + fmt(gap_g);
    return o;
}

Outcome image_bounds() {
    Random rng(1004);
    std::size_t violations = 0;
    for (int t = 0; t < kImageInstances; ++t) {
        const Matrix a = rng.matrix(rng.integer(1, 5), rng.integer(1, 5), 5.0);
        const auto b = rng.box(a.cols(), 5.0);
        const auto out = affine_image_bounds(a, b);
        for (const auto& v : vertices(b)) violations += !out.contains(a * v, kImageTolerance);
    }
    Outcome o;
    o.pass = violations == 0;
    o.detail = std::to_string(kImageInstances) + " instances, " + std::to_string(violations) + " vertex violations";
    return o;
}

Outcome lp_hull() {
    Random rng(1005);
    double worst = 0.0;
    std::size_t dominance = 0, missing = 0;
    int done = 0;
    while (done < kLpInstances) {
        const Matrix h = rng.matrix(rng.integer(2, 4), 2, 2.0);
        if (numerical_rank(h) < 2) continue;
        ++done;
        const auto r = feasible_residual(rng, h);
        const auto hull = residual_box_hull(h, r);
        const auto oracle = hull_by_vertices(h, r);
        if (!hull || !oracle) {
            ++missing;
            continue;
        }
        worst = std::max({worst, (hull->box.lo() - oracle->lo()).cwiseAbs().maxCoeff(),
                          (hull->box.hi() - oracle->hi()).cwiseAbs().maxCoeff()});
        dominance += !affine_image_bounds(pseudo_inverse(h), r).contains(hull->box, kLpTolerance);
    }
    Outcome o;
    o.pass = worst <= kLpTolerance && dominance == 0 && missing == 0;
    o.detail = std::to_string(kLpInstances) + " instances: max gap to vertex enumeration " + fmt(worst) +
               ", dominance violations " + std::to_string(dominance) + ", missing hulls " + std::to_string(missing);
    return o;
}

// The example's contraction exceeds one, so its delta bounds grow without
// limit. A contractive configuration exercises the bounds where they bind.
Outcome width_bounds(const FramerRuns& f) {
    const auto cfg = load_config(config_path("contractive.json"));
    const auto model = SystemModel::build(cfg.model);
    const Scenario scenario(cfg.scenario, model.n());
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 1; i <= kSeeds; ++i) seeds.push_back(i);
    std::size_t violations = 0, rows = 0, errors = 0;
    double tightest = 0.0;
    for (NoiseMode mode : {NoiseMode::Uniform, NoiseMode::Extremal}) {
        for (const auto& r : run_batch(model, model, scenario, cfg.x0, seeds, kSteps, mode)) {
            errors += r.trace.summary.error ? 1 : 0;
            for (const auto& row : r.trace.rows) {
                ++rows;
                violations += row.width_x > row.estimate.delta_x || row.width_d > row.estimate.delta_d;
                if (row.k > 0) tightest = std::max(tightest, row.width_x / row.estimate.delta_x);
            }
        }
    }
    Outcome o;
    o.pass = f.width_violations == 0 && f.errors == 0 && violations == 0 && errors == 0;
    o.detail = "example: " + std::to_string(f.width_violations) + " violations in " + std::to_string(f.rows) +
               " rows (contraction " + fmt(canonical_model().contraction()) + "); contractive config: " +
               std::to_string(violations) + " violations in " + std::to_string(rows) + " rows (contraction " +
               fmt(model.contraction()) + ", max width_x / delta_x " + fmt(tightest) + ")";
    return o;
}

Outcome stability_checkers() {
    std::vector<std::string> failures;

    // f = a x, g = x, G = g I, H = I: L = a + g exactly.
    const std::array<double, 3> gains{0.25, 0.75, 1.25};
    const std::array<Verdict, 3> expected{Verdict::Holds, Verdict::Fails, Verdict::Fails};
    for (std::size_t i = 0; i < gains.size(); ++i) {
        auto spec = linear_spec(2, 2, 2);
        spec.f = {"0.25*x1", "0.25*x2"};
        spec.G = gains[i] * Matrix::Identity(2, 2);
        spec.f_bounds = JacobianBounds{0.25 * Matrix::Identity(2, 2), 0.25 * Matrix::Identity(2, 2)};
        spec.g_bounds = JacobianBounds{Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
        const auto cert = check_condition_i(stability_inputs(SystemModel::build(spec)));
        if (cert.contraction != 0.25 + gains[i] || cert.verdict != expected[i]) {
            failures.push_back("condition (i) case L = " + fmt(0.25 + gains[i]) + " gave " + fmt(cert.contraction) +
                               " / " + to_string(cert.verdict));
        }
    }

    Random rng(1007);
    double worst_eig = 0.0;
    std::size_t nsd_mismatch = 0;
    for (int t = 0; t < kNsdInstances; ++t) {
        const Index n = rng.integer(2, 8);
        const Matrix a = rng.matrix(n, n, 3.0);
        const Matrix s = t % 3 == 0 ? Matrix(-a.transpose() * a) : Matrix(0.5 * (a + a.transpose()));
        const Eigen::SelfAdjointEigenSolver<Matrix> oracle(s);
        const auto got = nsd_test(s);
        worst_eig = std::max(worst_eig, (got.eigenvalues - oracle.eigenvalues()).cwiseAbs().maxCoeff());
        nsd_mismatch += got.nsd != (oracle.eigenvalues().maxCoeff() <= 1e-10);
    }
    if (worst_eig > kEigenTolerance || nsd_mismatch > 0) failures.push_back("nsd_test disagrees with the oracle");

    const auto in = stability_inputs(canonical_model());
    const auto c2 = check_condition_ii(in);
    const auto c3 = check_condition_iii(in, std::nullopt);
    if (c2.verdict != Verdict::StructurallyInfeasible || c2.diagnostics.empty())
        failures.push_back("condition (ii) on the example");
    if (c3.verdict != Verdict::StructurallyInfeasible || c3.diagnostics.empty())
        failures.push_back("condition (iii) on the example");
    const auto trivial = check_condition_iii(0.0, 2, LyapunovCandidate{Matrix::Identity(2, 2), Matrix::Zero(2, 2)});
    if (trivial.proof_verdict != Verdict::Holds) failures.push_back("proof mode on P = I, Gamma = 0, L = 0");

    Outcome o;
    o.pass = failures.empty();
    o.detail = "(i) on L = 0.5/1.0/1.5, nsd_test max eigenvalue gap " + fmt(worst_eig) + " over " +
               std::to_string(kNsdInstances) + " matrices, (ii) " + to_string(c2.verdict) + ", (iii) " +
               to_string(c3.verdict) + " / proof " + to_string(c3.proof_verdict) + ", trivial proof mode " +
               to_string(trivial.proof_verdict);
    for (const auto& f : failures) o.detail += "; FAILED: " + f;
    return o;
}

Outcome determinism(const fs::path& work) {
    const fs::path a = work / "run_a", b = work / "run_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const std::string cfg = config_path("canonical.json");
    const int ca = run_cli("run --config " + cfg + " --seeds 3 --out " + a.string());
    const int cb = run_cli("run --config " + cfg + " --seeds 3 --out " + b.string());
    std::size_t files = 0, different = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        const fs::path other = b / entry.path().filename();
        different += !fs::exists(other) || slurp(entry.path()) != slurp(other);
    }
    const bool golden =
        slurp(a / "trace_seed_1.csv") == slurp(std::string(SISIO_GOLDEN_DIR) + "/canonical_seed1_trace.csv");
    Outcome o;
    o.pass = ca == 0 && cb == 0 && files == 4 && different == 0 && golden;
    o.detail = std::to_string(files) + " files per run, " + std::to_string(different) + " differ, seed 1 " +
               (golden ? "matches" : "DIFFERS FROM") + " the committed golden trace";
    return o;
}

Outcome negative_control(const fs::path& work) {
    const std::string truth = (work / "truth.csv").string();
    const int sim = run_cli("simulate --config " + config_path("canonical.json") + " --seed 1 --steps 200 --out " +
                            truth);
    const std::string trace = (work / "corrupted_trace.csv").string();
    const int obs = run_cli("observe --config " + config_path("canonical_corrupted_g.json") + " --truth " + truth +
                            " --out " + trace);
    std::size_t flagged = 0, rows = 0;
    std::istringstream in(slurp(trace));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        ++rows;
        flagged += line.back() == '0';
    }
    Outcome o;
    o.pass = sim == 0 && obs == 2 && flagged > 0;
    o.detail = "observer with G = 0 on a true-G trace: exit code " + std::to_string(obs) + ", " +
               std::to_string(flagged) + "/" + std::to_string(rows) + " rows flagged uncontained";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "sisio_acceptance";
    fs::create_directories(work);

    const FramerRuns runs = framer_runs();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"framer property", [&] { return framer(runs); }},
        {"decomposition properties", decomposition_properties},
        {"reference values", reference_values},
        {"linear image enclosure", image_bounds},
        {"LP box hull", lp_hull},
        {"width bounds", [&] { return width_bounds(runs); }},
        {"stability checkers", stability_checkers},
        {"determinism", [&] { return determinism(work); }},
        {"negative control", [&] { return negative_control(work); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = Outcome{false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << (i + 1) << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL")
                  << " - " << o.detail << '\n';
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
