#include "sisio/stability.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "sisio/error.hpp"
#include "sisio/linalg.hpp"

namespace sisio {

const char* to_string(Condition c) noexcept {
    switch (c) {
    case Condition::I: return "i";
    case Condition::II: return "ii";
    case Condition::III: return "iii";
    }
    return "?";
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::StructurallyInfeasible: return "structurally-infeasible";
    }
    return "?";
}

NsdResult nsd_test(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "nsd_test: matrix must be square");
    }
    NsdResult out;
    if (m.size() == 0) {
        out.nsd = true;
        out.eigenvalues = Vector();
        return out;
    }
    const SymmetricEigen eig = symmetric_eigenvalues(m);
    out.eigenvalues = eig.values;
    out.lambda_max = eig.values[eig.values.size() - 1];
    out.nsd = out.lambda_max <= tol;
    return out;
}

StabilityInputs stability_inputs(const SystemModel& model) {
    return StabilityInputs{model.lipschitz_fd(), model.lipschitz_gd(), model.K()};
}

namespace {

StabilityCertificate base_certificate(Condition c, const StabilityInputs& in) {
    StabilityCertificate cert;
    cert.condition = c;
    cert.lipschitz_fd = in.lipschitz_fd;
    cert.lipschitz_gd = in.lipschitz_gd;
    cert.k = in.k;
    cert.norm_k = spectral_norm(in.k);
    cert.contraction = in.lipschitz_fd + in.lipschitz_gd * cert.norm_k;
    const Matrix ktk = in.k.transpose() * in.k;
    cert.lambda_max_ktk = ktk.size() == 0 ? 0.0 : nsd_test(ktk).lambda_max;
    cert.f_coefficient = in.lipschitz_fd * in.lipschitz_fd +
                         in.lipschitz_gd * in.lipschitz_gd * cert.lambda_max_ktk - 1.0;
    return cert;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct ProofCheck {
    bool holds = false;
    double worst = 0.0;
    double lambda_first = 0.0;  // P + Gamma - I
    double lambda_second = 0.0; // L^2 I - P
};

ProofCheck proof_mode(const Matrix& P, const Matrix& Gamma, double contraction) {
    const Index n = P.rows();
    const Matrix id = Matrix::Identity(n, n);
    const NsdResult a = nsd_test(P + Gamma - id);
    const NsdResult b = nsd_test(contraction * contraction * id - P);
    return ProofCheck{a.nsd && b.nsd, std::max(a.lambda_max, b.lambda_max), a.lambda_max, b.lambda_max};
}

void validate_candidate(const LyapunovCandidate& c, Index n) {
    if (c.P.rows() != n || c.P.cols() != n || c.Gamma.rows() != n || c.Gamma.cols() != n) {
        throw Error(ErrorKind::DimensionMismatch, "Lyapunov candidate matrices must be n x n");
    }
    if (symmetric_eigenvalues(c.P).values[0] <= 0.0) {
        throw Error(ErrorKind::InvalidInput, "candidate P is not positive definite");
    }
    if (symmetric_eigenvalues(c.Gamma).values[0] < -1e-12) {
        throw Error(ErrorKind::InvalidInput, "candidate Gamma is not positive semidefinite");
    }
}

std::vector<double> logspace(double lo, double hi, int points) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(points));
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        v.push_back(std::pow(10.0, a + t * (b - a)));
    }
    return v;
}

} // namespace

StabilityCertificate check_condition_i(const StabilityInputs& in) {
    StabilityCertificate cert = base_certificate(Condition::I, in);
    cert.verdict = cert.contraction < 1.0 ? Verdict::Holds : Verdict::Fails;
    cert.proof_verdict = cert.verdict;
    cert.diagnostics.push_back("L = L_fd + L_gd ||K|| = " + fmt(in.lipschitz_fd) + " + " + fmt(in.lipschitz_gd) +
                               " * " + fmt(cert.norm_k) + " = " + fmt(cert.contraction) +
                               (cert.verdict == Verdict::Holds ? " < 1" : " >= 1"));
    return cert;
}

Matrix condition_ii_matrix(double lipschitz_fd, double lipschitz_gd, const Matrix& k) {
    const Index n = k.rows();
    const Index l = k.cols();
    const Matrix ktk = k.transpose() * k;
    const double lam = ktk.size() == 0 ? 0.0 : nsd_test(ktk).lambda_max;
    const double f = lipschitz_fd * lipschitz_fd + lipschitz_gd * lipschitz_gd * lam - 1.0;

    // Block order: [ds (n), dv (l), dw (n), df (n), dg (l)].
    const std::array<Index, 5> size{n, l, n, n, l};
    std::array<Index, 5> off{};
    for (std::size_t i = 1; i < 5; ++i) off[i] = off[i - 1] + size[i - 1];
    const Index dim = off[4] + size[4];

    Matrix m = Matrix::Zero(dim, dim);
    auto put = [&](std::size_t bi, std::size_t bj, const Matrix& block) {
        m.block(off[bi], off[bj], size[bi], size[bj]) = block;
        if (bi != bj) m.block(off[bj], off[bi], size[bj], size[bi]) = block.transpose();
    };
    const Matrix in = Matrix::Identity(n, n);
    put(0, 0, f * in);
    put(1, 1, ktk);
    put(1, 2, k.transpose());
    put(1, 3, k.transpose());
    put(1, 4, ktk);
    put(2, 2, in);
    put(2, 3, in);
    put(2, 4, k);
    put(3, 4, k);
    return m;
}

StabilityCertificate check_condition_ii(const StabilityInputs& in) {
    StabilityCertificate cert = base_certificate(Condition::II, in);
    const Index n = in.k.rows();
    const Index l = in.k.cols();
    cert.assembled = condition_ii_matrix(in.lipschitz_fd, in.lipschitz_gd, in.k);
    const NsdResult whole = nsd_test(cert.assembled);
    cert.assembled_lambda_max = whole.lambda_max;

    // The dw diagonal block is the identity; a negative semidefinite matrix
    // has no positive diagonal entry.
    const Index w_off = n + l;
    const Matrix w_block = cert.assembled.block(w_off, w_off, n, n);
    cert.worst_block_eigenvalue = nsd_test(w_block).lambda_max;
    cert.verdict = Verdict::StructurallyInfeasible;
    cert.proof_verdict = Verdict::StructurallyInfeasible;
    cert.diagnostics.push_back("diagonal block (3,3) is the " + std::to_string(n) + "x" + std::to_string(n) +
                               " identity (eigenvalue " + fmt(cert.worst_block_eigenvalue) +
                               " > 0): no negative semidefinite matrix has a positive diagonal entry");
    cert.diagnostics.push_back("assembled matrix lambda_max = " + fmt(whole.lambda_max) + ", F = " +
                               fmt(cert.f_coefficient) + " I, lambda_max(K^T K) = " + fmt(cert.lambda_max_ktk));
    return cert;
}

Matrix condition_iii_matrix(const Matrix& P, const Matrix& Gamma, double scale) {
    const Index n = P.rows();
    const Matrix id = Matrix::Identity(n, n);
    Matrix m = Matrix::Zero(3 * n, 3 * n);
    m.block(0, 0, n, n) = P + Gamma - id;
    m.block(0, 2 * n, n, n) = P;
    m.block(2 * n, 0, n, n) = P.transpose();
    m.block(n, n, n, n) = scale * id - P;
    m.block(2 * n, 2 * n, n, n) = P;
    return m;
}

StabilityCertificate check_condition_iii(double contraction, Index n, const std::optional<LyapunovCandidate>& candidate,
                                         const ScalarSearchGrid& grid) {
    StabilityCertificate cert;
    cert.condition = Condition::III;
    cert.contraction = contraction;

    std::optional<LyapunovCandidate> chosen = candidate;
    if (candidate) {
        validate_candidate(*candidate, n);
        const ProofCheck pc = proof_mode(candidate->P, candidate->Gamma, contraction);
        cert.proof_verdict = pc.holds ? Verdict::Holds : Verdict::Fails;
        cert.worst_block_eigenvalue = pc.worst;
        cert.diagnostics.push_back("proof mode: lambda_max(P + Gamma - I) = " + fmt(pc.lambda_first) +
                                   ", lambda_max(L^2 I - P) = " + fmt(pc.lambda_second) + " -> " +
                                   to_string(cert.proof_verdict));
    } else {
        const Matrix id = Matrix::Identity(n, n);
        cert.proof_verdict = Verdict::Fails;
        double best = std::numeric_limits<double>::infinity();
        std::optional<LyapunovCandidate> best_candidate;
        for (double p : logspace(grid.p_min, grid.p_max, grid.p_points)) {
            for (double g : logspace(grid.gamma_min, grid.gamma_max, grid.gamma_points)) {
                const ProofCheck pc = proof_mode(p * id, g * id, contraction);
                if (pc.worst < best) {
                    best = pc.worst;
                    best_candidate = LyapunovCandidate{p * id, g * id};
                }
                if (pc.holds) {
                    chosen = LyapunovCandidate{p * id, g * id};
                    cert.proof_verdict = Verdict::Holds;
                    cert.worst_block_eigenvalue = pc.worst;
                    break;
                }
            }
            if (cert.proof_verdict == Verdict::Holds) break;
        }
        if (cert.proof_verdict == Verdict::Holds) {
            cert.diagnostics.push_back("proof mode: scalar search found P = " + fmt(chosen->P(0, 0)) +
                                       " I, Gamma = " + fmt(chosen->Gamma(0, 0)) + " I");
        } else {
            chosen = best_candidate;
            cert.worst_block_eigenvalue = best;
            cert.diagnostics.push_back("proof mode: no scalar P = p I, Gamma = gamma I on the grid satisfies "
                                       "P + Gamma - I <= 0 and L^2 I - P <= 0 (best worst-block eigenvalue " +
                                       fmt(best) + "); requires L <= 1");
        }
    }

    if (chosen) {
        cert.P = chosen->P;
        cert.Gamma = chosen->Gamma;
        cert.assembled = condition_iii_matrix(chosen->P, chosen->Gamma, contraction);
        cert.assembled_lambda_max = nsd_test(cert.assembled).lambda_max;
        const double p_min = symmetric_eigenvalues(chosen->P).values[0];
        cert.diagnostics.push_back("literal LMI: diagonal block (3,3) equals P with lambda_min(P) = " + fmt(p_min) +
                                   " > 0, so the matrix cannot be negative semidefinite (lambda_max = " +
                                   fmt(cert.assembled_lambda_max) + ")");
    } else {
        cert.diagnostics.push_back("literal LMI: diagonal block (3,3) equals P, positive definite for any "
                                   "admissible P");
    }
    cert.verdict = Verdict::StructurallyInfeasible;
    return cert;
}

StabilityCertificate check_condition_iii(const StabilityInputs& in, const std::optional<LyapunovCandidate>& candidate,
                                         const ScalarSearchGrid& grid) {
    StabilityCertificate base = base_certificate(Condition::III, in);
    StabilityCertificate cert = check_condition_iii(base.contraction, in.k.rows(), candidate, grid);
    cert.lipschitz_fd = base.lipschitz_fd;
    cert.lipschitz_gd = base.lipschitz_gd;
    cert.k = base.k;
    cert.norm_k = base.norm_k;
    cert.lambda_max_ktk = base.lambda_max_ktk;
    cert.f_coefficient = base.f_coefficient;
    return cert;
}

WidthLimitInputs width_limit_inputs(const SystemModel& model) {
    return WidthLimitInputs{model.contraction(), model.delta_z().norm(),
                            model.norm_abs_J() * model.lipschitz_gd(), model.norm_abs_J_dv()};
}

WidthLimits width_limits(const WidthLimitInputs& in, const Vector& delta_x0, const std::optional<Matrix>& P) {
    WidthLimits out;
    out.converges = in.contraction < 1.0;
    if (out.converges) {
        out.recursion_x = in.norm_dz / (1.0 - in.contraction);
        out.closed_form_x = in.norm_dz * in.contraction / (1.0 - in.contraction);
        out.recursion_d = in.input_width(*out.recursion_x);
        out.closed_form_d = in.input_width(*out.closed_form_x);
    } else {
        out.diagnostics.push_back("L = " + fmt(in.contraction) + " >= 1: steady-state width limits undefined");
    }
    if (P) {
        if (P->rows() != delta_x0.size() || P->cols() != delta_x0.size()) {
            throw Error(ErrorKind::DimensionMismatch, "width_limits: P must match the initial width dimension");
        }
        const double lam_min = symmetric_eigenvalues(*P).values[0];
        if (lam_min <= 0.0) throw Error(ErrorKind::InvalidInput, "width_limits: P must be positive definite");
        const double dx0 = delta_x0.norm();
        out.delta_p0 = std::sqrt(delta_x0.dot(*P * delta_x0) / lam_min);
        out.uniform_x = std::min(dx0, *out.delta_p0);
        out.uniform_d = std::min(in.input_width(dx0), in.input_width(*out.delta_p0));
    }
    return out;
}

} // namespace sisio
