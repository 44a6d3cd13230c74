#include "sisio/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sisio {

double spectral_norm(const Matrix& m, double tolerance, int max_iterations) {
    if (m.size() == 0) return 0.0;
    const Matrix gram = m.transpose() * m;
    if (gram.cwiseAbs().maxCoeff() == 0.0) return 0.0;

    // Start from the all-ones vector plus a small tilt so that it is not
    // orthogonal to the dominant eigenvector for structured inputs.
    Vector v(gram.cols());
    for (Index i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i + 1);
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        Vector w = gram * v;
        const double nw = w.norm();
        if (nw == 0.0) {
            // Landed in the null space; restart along the largest column.
            Index col = 0;
            gram.colwise().norm().maxCoeff(&col);
            v = gram.col(col).normalized();
            continue;
        }
        const double next = v.dot(w);
        w /= nw;
        const bool done = std::fabs(next - lambda) <= tolerance * std::max(1.0, std::fabs(next));
        lambda = next;
        v = std::move(w);
        if (done && it > 0) break;
    }
    return std::sqrt(std::max(0.0, lambda));
}

SymmetricEigen symmetric_eigenvalues(const Matrix& m, double tolerance, int max_sweeps) {
    const Index n = m.rows();
    Matrix a = 0.5 * (m + m.transpose());
    SymmetricEigen out;

    auto off_norm = [&]() {
        double s = 0.0;
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    const double scale = std::max(1.0, a.norm());
    for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
        if (off_norm() <= tolerance * scale) {
            out.converged = true;
            break;
        }
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }
    if (!out.converged && off_norm() <= tolerance * scale) out.converged = true;

    out.values = a.diagonal();
    std::sort(out.values.data(), out.values.data() + out.values.size());
    return out;
}

Matrix pseudo_inverse(const Matrix& m) {
    if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
    return cod.pseudoInverse();
}

Index numerical_rank(const Matrix& m) {
    if (m.size() == 0) return 0;
    Eigen::ColPivHouseholderQR<Matrix> qr(m);
    qr.setThreshold(1e-10);
    return qr.rank();
}

} // namespace sisio
