#include "sisio/model.hpp"

#include <sstream>

#include "sisio/error.hpp"
#include "sisio/linalg.hpp"

namespace sisio {

namespace {

void require_shape(const Matrix& a, std::size_t rows, std::size_t cols, const char* name) {
    if (a.rows() != static_cast<Index>(rows) || a.cols() != static_cast<Index>(cols)) {
        std::ostringstream os;
        os << "matrix " << name << " is " << a.rows() << "x" << a.cols() << ", expected " << rows << "x" << cols;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

void require_size(const Vector& v, std::size_t size, const char* name) {
    if (v.size() != static_cast<Index>(size)) {
        std::ostringstream os;
        os << name << " has " << v.size() << " entries, expected " << size;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

void require_ordered(const Vector& lo, const Vector& hi, const char* name) {
    if ((lo.array() > hi.array()).any()) {
        throw Error(ErrorKind::InvalidInput, std::string(name) + " lower bound exceeds upper bound");
    }
}

} // namespace

Matrix gain_matrix(const Matrix& G, const Matrix& H) {
    const Matrix j = pseudo_inverse(H);
    return split_pos(G).magnitude() * split_pos(j).magnitude();
}

SystemModel SystemModel::build(const ModelSpec& spec) {
    if (spec.l < 1 || spec.n < spec.l || spec.l < spec.p) {
        throw Error(ErrorKind::InvalidInput, "dimensions must satisfy n >= l >= 1 and l >= p >= 0");
    }
    if (spec.f.size() != spec.n) throw Error(ErrorKind::DimensionMismatch, "f must have n components");
    if (spec.g.size() != spec.l) throw Error(ErrorKind::DimensionMismatch, "g must have l components");
    require_shape(spec.B, spec.n, spec.m, "B");
    require_shape(spec.D, spec.l, spec.m, "D");
    require_shape(spec.G, spec.n, spec.p, "G");
    require_shape(spec.H, spec.l, spec.p, "H");
    require_size(spec.w_lo, spec.n, "w_lo");
    require_size(spec.w_hi, spec.n, "w_hi");
    require_size(spec.v_lo, spec.l, "v_lo");
    require_size(spec.v_hi, spec.l, "v_hi");
    require_ordered(spec.w_lo, spec.w_hi, "process noise");
    require_ordered(spec.v_lo, spec.v_hi, "measurement noise");
    if (spec.domain.size() != static_cast<Index>(spec.n)) {
        throw Error(ErrorKind::DimensionMismatch, "domain must be n-dimensional");
    }
    for (const Matrix* a : {&spec.B, &spec.D, &spec.G, &spec.H}) {
        if (!a->allFinite()) throw Error(ErrorKind::InvalidInput, "model matrices must be finite");
    }

    if (spec.p > 0 && numerical_rank(spec.H) < static_cast<Index>(spec.p)) {
        throw Error(ErrorKind::RankDeficient, "H must have full column rank");
    }

    SystemModel model;
    model.spec_ = spec;

    const VectorField f = VectorField::parse(spec.f, spec.n);
    const VectorField g = VectorField::parse(spec.g, spec.n);
    model.f_bounds_ = spec.f_bounds ? *spec.f_bounds : estimate_jacobian_bounds(f, spec.domain, spec.grid);
    model.g_bounds_ = spec.g_bounds ? *spec.g_bounds : estimate_jacobian_bounds(g, spec.domain, spec.grid);
    require_shape(model.f_bounds_.low, spec.n, spec.n, "f Jacobian lower bound");
    require_shape(model.f_bounds_.high, spec.n, spec.n, "f Jacobian upper bound");
    require_shape(model.g_bounds_.low, spec.l, spec.n, "g Jacobian lower bound");
    require_shape(model.g_bounds_.high, spec.l, spec.n, "g Jacobian upper bound");
    model.f_dec_ = build_decomposition(f, model.f_bounds_, spec.domain);
    model.g_dec_ = build_decomposition(g, model.g_bounds_, spec.domain);

    model.j_ = pseudo_inverse(spec.H);
    if (spec.p > 0) {
        const Matrix jh = model.j_ * spec.H;
        if ((jh - Matrix::Identity(jh.rows(), jh.cols())).cwiseAbs().maxCoeff() > 1e-8) {
            throw Error(ErrorKind::RankDeficient, "pseudo-inverse of H is not a left inverse");
        }
    }
    model.g_split_ = split_pos(spec.G);
    model.j_split_ = split_pos(model.j_);
    const Matrix abs_j = model.j_split_.magnitude();
    model.k_ = model.g_split_.magnitude() * abs_j;

    model.lip_f_ = estimate_lipschitz(model.f_bounds_);
    model.lip_g_ = estimate_lipschitz(model.g_bounds_);
    model.lip_fd_ = decomposition_lipschitz(model.lip_f_, model.f_dec_.correction());
    model.lip_gd_ = decomposition_lipschitz(model.lip_g_, model.g_dec_.correction());
    model.norm_k_ = spectral_norm(model.k_);
    model.contraction_ = model.lip_fd_ + model.lip_gd_ * model.norm_k_;

    model.dw_ = spec.w_hi - spec.w_lo;
    model.dv_ = spec.v_hi - spec.v_lo;
    model.dz_ = model.dw_ + model.k_ * model.dv_;
    model.norm_abs_j_ = spectral_norm(abs_j);
    model.norm_abs_j_dv_ = (abs_j * model.dv_).norm();
    return model;
}

} // namespace sisio
