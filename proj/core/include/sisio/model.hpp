#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sisio/interval.hpp"
#include "sisio/mixed_monotone.hpp"

namespace sisio {

// Raw plant description as read from a config file:
//   x+ = f(x) + B u + G d + w,   y = g(x) + D u + H d + v.
struct ModelSpec {
    std::size_t n = 0; // states
    std::size_t m = 0; // known inputs
    std::size_t l = 0; // measurements
    std::size_t p = 0; // unknown inputs
    std::vector<std::string> f;
    std::vector<std::string> g;
    Matrix B, D, G, H;
    Vector w_lo, w_hi, v_lo, v_hi;
    IntervalVector domain;
    // Supplied bounds replace grid estimation when present.
    std::optional<JacobianBounds> f_bounds;
    std::optional<JacobianBounds> g_bounds;
    GridOptions grid;
};

// Validated model plus every quantity the observer and the stability checks
// precompute from it. Immutable once built.
class SystemModel {
public:
    static SystemModel build(const ModelSpec& spec);

    [[nodiscard]] const ModelSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] std::size_t n() const noexcept { return spec_.n; }
    [[nodiscard]] std::size_t m() const noexcept { return spec_.m; }
    [[nodiscard]] std::size_t l() const noexcept { return spec_.l; }
    [[nodiscard]] std::size_t p() const noexcept { return spec_.p; }

    [[nodiscard]] const VectorField& f() const noexcept { return f_dec_.base(); }
    [[nodiscard]] const VectorField& g() const noexcept { return g_dec_.base(); }
    [[nodiscard]] const Decomposition& f_decomposition() const noexcept { return f_dec_; }
    [[nodiscard]] const Decomposition& g_decomposition() const noexcept { return g_dec_; }
    [[nodiscard]] const JacobianBounds& f_bounds() const noexcept { return f_bounds_; }
    [[nodiscard]] const JacobianBounds& g_bounds() const noexcept { return g_bounds_; }

    [[nodiscard]] const Matrix& B() const noexcept { return spec_.B; }
    [[nodiscard]] const Matrix& D() const noexcept { return spec_.D; }
    [[nodiscard]] const Matrix& G() const noexcept { return spec_.G; }
    [[nodiscard]] const Matrix& H() const noexcept { return spec_.H; }
    [[nodiscard]] const IntervalVector& domain() const noexcept { return spec_.domain; }
    [[nodiscard]] IntervalVector process_noise() const { return IntervalVector(spec_.w_lo, spec_.w_hi); }
    [[nodiscard]] IntervalVector measurement_noise() const { return IntervalVector(spec_.v_lo, spec_.v_hi); }

    // J = H^+ and the sign splits of G and J.
    [[nodiscard]] const Matrix& J() const noexcept { return j_; }
    [[nodiscard]] const MatrixSplit& G_split() const noexcept { return g_split_; }
    [[nodiscard]] const MatrixSplit& J_split() const noexcept { return j_split_; }
    // K = (G+ + G++)(J+ + J++).
    [[nodiscard]] const Matrix& K() const noexcept { return k_; }

    [[nodiscard]] double lipschitz_f() const noexcept { return lip_f_; }
    [[nodiscard]] double lipschitz_g() const noexcept { return lip_g_; }
    [[nodiscard]] double lipschitz_fd() const noexcept { return lip_fd_; }
    [[nodiscard]] double lipschitz_gd() const noexcept { return lip_gd_; }
    [[nodiscard]] double norm_K() const noexcept { return norm_k_; }
    // L_fd + L_gd ||K||.
    [[nodiscard]] double contraction() const noexcept { return contraction_; }

    [[nodiscard]] const Vector& delta_w() const noexcept { return dw_; }
    [[nodiscard]] const Vector& delta_v() const noexcept { return dv_; }
    // dw + K dv.
    [[nodiscard]] const Vector& delta_z() const noexcept { return dz_; }
    // ||J+ + J++||.
    [[nodiscard]] double norm_abs_J() const noexcept { return norm_abs_j_; }
    // ||(J+ + J++) dv||.
    [[nodiscard]] double norm_abs_J_dv() const noexcept { return norm_abs_j_dv_; }

private:
    ModelSpec spec_;
    Decomposition f_dec_;
    Decomposition g_dec_;
    JacobianBounds f_bounds_;
    JacobianBounds g_bounds_;
    Matrix j_;
    MatrixSplit g_split_;
    MatrixSplit j_split_;
    Matrix k_;
    double lip_f_ = 0.0;
    double lip_g_ = 0.0;
    double lip_fd_ = 0.0;
    double lip_gd_ = 0.0;
    double norm_k_ = 0.0;
    double contraction_ = 0.0;
    Vector dw_, dv_, dz_;
    double norm_abs_j_ = 0.0;
    double norm_abs_j_dv_ = 0.0;
};

// (G+ + G++)(J+ + J++) for J = H^+.
[[nodiscard]] Matrix gain_matrix(const Matrix& G, const Matrix& H);
[[nodiscard]] inline const Matrix& gain_matrix(const SystemModel& model) { return model.K(); }

} // namespace sisio
