#pragma once

#include <random>
#include <string>
#include <vector>

#include "sisio/sisio.hpp"

namespace sisio::test {

inline std::string config_path(const std::string& name) { return std::string(SISIO_CONFIG_DIR) + "/" + name; }

inline Config canonical_config() { return load_config(config_path("canonical.json")); }

inline const SystemModel& canonical_model() {
    static const SystemModel model = SystemModel::build(canonical_config().model);
    return model;
}

inline Matrix mat(Index rows, Index cols, std::initializer_list<double> values) {
    Matrix a(rows, cols);
    auto it = values.begin();
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) a(r, c) = *it++;
    return a;
}

inline Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

inline IntervalVector box(std::initializer_list<double> lo, std::initializer_list<double> hi) {
    return IntervalVector(vec(lo), vec(hi));
}

class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    Matrix matrix(Index rows, Index cols, double scale = 1.0) {
        Matrix a(rows, cols);
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c) a(r, c) = uniform(-scale, scale);
        return a;
    }

    Vector vector(Index n, double scale = 1.0) { return matrix(n, 1, scale).col(0); }

    IntervalVector box(Index n, double scale = 1.0) {
        Vector a = vector(n, scale);
        Vector b = vector(n, scale);
        return IntervalVector(a.cwiseMin(b), a.cwiseMax(b));
    }

    Vector point_in(const IntervalVector& b) {
        Vector x(b.size());
        for (Index i = 0; i < b.size(); ++i) x[i] = uniform(b.lo()[i], b.hi()[i]);
        return x;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// All 2^n corners of a box.
inline std::vector<Vector> vertices(const IntervalVector& b) {
    const auto n = static_cast<std::size_t>(b.size());
    std::vector<Vector> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Vector v(b.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Index>(i);
            v[ii] = (mask >> i) & 1U ? b.hi()[ii] : b.lo()[ii];
        }
        out.push_back(v);
    }
    return out;
}

// Minimal model spec with linear-in-text defaults; callers overwrite fields.
inline ModelSpec linear_spec(std::size_t n, std::size_t l, std::size_t p, std::size_t m = 0) {
    ModelSpec s;
    s.n = n;
    s.m = m;
    s.l = l;
    s.p = p;
    for (std::size_t i = 0; i < n; ++i) s.f.push_back("0");
    for (std::size_t i = 0; i < l; ++i) s.g.push_back("x" + std::to_string(i + 1));
    const auto ni = static_cast<Index>(n);
    const auto li = static_cast<Index>(l);
    s.B = Matrix::Zero(ni, static_cast<Index>(m));
    s.D = Matrix::Zero(li, static_cast<Index>(m));
    s.G = Matrix::Zero(ni, static_cast<Index>(p));
    s.H = Matrix::Identity(li, static_cast<Index>(p));
    s.w_lo = s.w_hi = Vector::Zero(ni);
    s.v_lo = s.v_hi = Vector::Zero(li);
    s.domain = IntervalVector(Vector::Constant(ni, -10.0), Vector::Constant(ni, 10.0));
    s.grid.points_per_axis = 5;
    return s;
}

} // namespace sisio::test

namespace sisio::test {

// Kind of the sisio::Error thrown by `fn`, or nullopt when it returns.
template <class Fn>
std::optional<ErrorKind> error_kind(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

} // namespace sisio::test

namespace sisio::test {

// Box hull of {d in R^2 : r.lo <= H d <= r.hi} by enumerating pairwise
// intersections of the constraint lines. Empty optional when no vertex is
// feasible.
inline std::optional<IntervalVector> hull_by_vertices(const Matrix& h, const IntervalVector& r, double tol = 1e-9) {
    std::vector<Vector> normals;
    std::vector<double> offsets;
    for (Index i = 0; i < h.rows(); ++i) {
        normals.push_back(h.row(i).transpose());
        offsets.push_back(r.hi()[i]);
        normals.push_back(-h.row(i).transpose());
        offsets.push_back(-r.lo()[i]);
    }
    Vector lo = Vector::Constant(2, INFINITY), hi = Vector::Constant(2, -INFINITY);
    bool any = false;
    for (std::size_t a = 0; a < normals.size(); ++a) {
        for (std::size_t b = a + 1; b < normals.size(); ++b) {
            Matrix m(2, 2);
            m.row(0) = normals[a].transpose();
            m.row(1) = normals[b].transpose();
            if (std::fabs(m.determinant()) < 1e-12) continue;
            const Vector d = m.inverse() * vec({offsets[a], offsets[b]});
            bool feasible = true;
            for (std::size_t c = 0; c < normals.size() && feasible; ++c) {
                const double scale = 1.0 + std::fabs(offsets[c]);
                feasible = normals[c].dot(d) <= offsets[c] + tol * scale;
            }
            if (!feasible) continue;
            any = true;
            lo = lo.cwiseMin(d);
            hi = hi.cwiseMax(d);
        }
    }
    if (!any) return std::nullopt;
    return IntervalVector(lo, hi);
}

// Residual box that is guaranteed to make the polytope nonempty: the image
// of a random box of inputs, widened on each side.
inline IntervalVector feasible_residual(Random& rng, const Matrix& h, double scale = 3.0) {
    const auto dbox = rng.box(h.cols(), scale);
    const auto img = affine_image_bounds(h, IntervalVector::point(rng.point_in(dbox)));
    const Vector pad_lo = rng.vector(h.rows(), scale).cwiseAbs();
    const Vector pad_hi = rng.vector(h.rows(), scale).cwiseAbs();
    return IntervalVector(img.lo() - pad_lo, img.hi() + pad_hi);
}

} // namespace sisio::test
