#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sisio/interval.hpp"
#include "sisio/model.hpp"

namespace sisio {

enum class Condition { I, II, III };
enum class Verdict { Holds, Fails, StructurallyInfeasible };

const char* to_string(Condition c) noexcept;
const char* to_string(Verdict v) noexcept;

struct NsdResult {
    bool nsd = false;
    double lambda_max = 0.0;
    Vector eigenvalues; // ascending
};

// Negative semidefiniteness via the Jacobi eigensolver: true iff
// lambda_max(M) <= tol. M is symmetrized by averaging.
[[nodiscard]] NsdResult nsd_test(const Matrix& m, double tol = 1e-10);

struct LyapunovCandidate {
    Matrix P;
    Matrix Gamma;
};

// Scalar-identity sweep P = p I, Gamma = gamma I over log-spaced grids.
struct ScalarSearchGrid {
    double p_min = 1e-3;
    double p_max = 1e3;
    int p_points = 121;
    double gamma_min = 1e-6;
    double gamma_max = 1e3;
    int gamma_points = 121;
};

struct StabilityCertificate {
    Condition condition = Condition::I;
    // Verdict on the condition exactly as stated.
    Verdict verdict = Verdict::Fails;
    // Verdict on the quadratic form the stability argument actually uses
    // (condition iii: P + Gamma - I <= 0 and L^2 I - P <= 0). For (i) and
    // (ii) the two coincide.
    Verdict proof_verdict = Verdict::Fails;

    double contraction = 0.0;     // L = L_fd + L_gd ||K||
    double lipschitz_fd = 0.0;
    double lipschitz_gd = 0.0;
    double norm_k = 0.0;
    double lambda_max_ktk = 0.0;
    double f_coefficient = 0.0;   // F = f_coefficient * I
    Matrix k;
    Matrix assembled;             // block matrix tested (ii, iii literal)
    double assembled_lambda_max = 0.0;
    std::optional<Matrix> P;
    std::optional<Matrix> Gamma;
    double worst_block_eigenvalue = 0.0;
    std::vector<std::string> diagnostics;
};

// Ingredients of the certificates, separable from a SystemModel so that
// constructed cases can be checked directly.
struct StabilityInputs {
    double lipschitz_fd = 0.0;
    double lipschitz_gd = 0.0;
    Matrix k; // n x l
};

[[nodiscard]] StabilityInputs stability_inputs(const SystemModel& model);

[[nodiscard]] StabilityCertificate check_condition_i(const StabilityInputs& in);
[[nodiscard]] StabilityCertificate check_condition_ii(const StabilityInputs& in);
[[nodiscard]] StabilityCertificate check_condition_iii(const StabilityInputs& in,
                                                       const std::optional<LyapunovCandidate>& candidate,
                                                       const ScalarSearchGrid& grid = {});
// Same check driven by an explicit L (state dimension n), e.g. to replay a
// given (L, P, Gamma) triple.
[[nodiscard]] StabilityCertificate check_condition_iii(double contraction, Index n,
                                                       const std::optional<LyapunovCandidate>& candidate,
                                                       const ScalarSearchGrid& grid = {});

// Symmetric 5x5 block matrix of condition (ii), dimension 3n + 2l.
[[nodiscard]] Matrix condition_ii_matrix(double lipschitz_fd, double lipschitz_gd, const Matrix& k);
// 3x3 block matrix of condition (iii) with (2,2) block scale * I - P.
[[nodiscard]] Matrix condition_iii_matrix(const Matrix& P, const Matrix& Gamma, double scale);

struct WidthLimitInputs {
    double contraction = 0.0;
    double norm_dz = 0.0;
    double gain = 0.0;   // ||J+ + J++|| L_gd
    double offset = 0.0; // ||(J+ + J++) dv||

    // G(x) = gain * x + offset.
    [[nodiscard]] double input_width(double x) const { return gain * x + offset; }
};

[[nodiscard]] WidthLimitInputs width_limit_inputs(const SystemModel& model);

struct WidthLimits {
    bool converges = false; // L < 1
    // Limit of the delta_x recursion, ||dz|| / (1 - L), and G of it.
    std::optional<double> recursion_x;
    std::optional<double> recursion_d;
    // Closed-form limit ||dz|| L / (1 - L) and G of it.
    std::optional<double> closed_form_x;
    std::optional<double> closed_form_d;
    // min(||dx0||, dP0) and min(G(||dx0||), G(dP0)) when P is given.
    std::optional<double> delta_p0;
    std::optional<double> uniform_x;
    std::optional<double> uniform_d;
    std::vector<std::string> diagnostics;
};

[[nodiscard]] WidthLimits width_limits(const WidthLimitInputs& in, const Vector& delta_x0,
                                       const std::optional<Matrix>& P = std::nullopt);

} // namespace sisio
