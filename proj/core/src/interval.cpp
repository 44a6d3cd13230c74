#include "sisio/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sisio/error.hpp"

namespace sisio {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::UnknownIdentifier: return "unknown-identifier";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::Estimation: return "estimation";
    case ErrorKind::RankDeficient: return "rank-deficient";
    case ErrorKind::DomainViolation: return "domain-violation";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

IntervalVector::IntervalVector(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "interval bounds have different dimensions");
    }
    for (Index i = 0; i < lo_.size(); ++i) {
        if (std::isnan(lo_[i]) || std::isnan(hi_[i])) {
            throw Error(ErrorKind::InvalidInput, "interval bound is NaN at coordinate " + std::to_string(i));
        }
        if (lo_[i] > hi_[i]) {
            std::ostringstream os;
            os << "interval lower bound exceeds upper bound at coordinate " << i << " (" << lo_[i]
               << " > " << hi_[i] << ")";
            throw Error(ErrorKind::InvalidInput, os.str());
        }
    }
}

IntervalVector IntervalVector::point(const Vector& x) { return IntervalVector(x, x); }

bool IntervalVector::contains(const Vector& x, double slack) const {
    if (x.size() != size()) {
        return false;
    }
    for (Index i = 0; i < size(); ++i) {
        if (!(lo_[i] - slack <= x[i] && x[i] <= hi_[i] + slack)) {
            return false;
        }
    }
    return true;
}

bool IntervalVector::contains(const IntervalVector& other, double slack) const {
    return contains(other.lo_, slack) && contains(other.hi_, slack);
}

double width(const IntervalVector& iv) { return (iv.hi() - iv.lo()).norm(); }

MatrixSplit split_pos(const Matrix& a) {
    if (!a.allFinite()) {
        throw Error(ErrorKind::InvalidInput, "split_pos: matrix has non-finite entries");
    }
    MatrixSplit s;
    s.a_plus = a.cwiseMax(0.0);
    s.a_plusplus = s.a_plus - a;
    return s;
}

IntervalVector affine_image_bounds(const MatrixSplit& split, const IntervalVector& box) {
    if (split.a_plus.cols() != box.size()) {
        throw Error(ErrorKind::DimensionMismatch, "affine_image_bounds: matrix columns do not match box dimension");
    }
    Vector lo = split.a_plus * box.lo() - split.a_plusplus * box.hi();
    Vector hi = split.a_plus * box.hi() - split.a_plusplus * box.lo();
    return IntervalVector(std::move(lo), std::move(hi));
}

IntervalVector affine_image_bounds(const Matrix& a, const IntervalVector& box) {
    if (a.cols() != box.size()) {
        throw Error(ErrorKind::DimensionMismatch, "affine_image_bounds: matrix columns do not match box dimension");
    }
    return affine_image_bounds(split_pos(a), box);
}

Intersection intersect(const IntervalVector& a, const IntervalVector& b, double snap_tolerance) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch, "intersect: boxes have different dimensions");
    }
    Vector lo = a.lo().cwiseMax(b.lo());
    Vector hi = a.hi().cwiseMin(b.hi());
    for (Index i = 0; i < lo.size(); ++i) {
        if (lo[i] > hi[i]) {
            if (lo[i] - hi[i] > snap_tolerance) {
                return Intersection{std::nullopt, i};
            }
            const double mid = 0.5 * (lo[i] + hi[i]);
            lo[i] = mid;
            hi[i] = mid;
        }
    }
    return Intersection{IntervalVector(std::move(lo), std::move(hi)), -1};
}

} // namespace sisio
