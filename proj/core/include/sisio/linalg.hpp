#pragma once

#include "sisio/interval.hpp"

namespace sisio {

// Largest singular value via power iteration on M^T M.
[[nodiscard]] double spectral_norm(const Matrix& m, double tolerance = 1e-12, int max_iterations = 10000);

struct SymmetricEigen {
    Vector values; // ascending
    int sweeps = 0;
    bool converged = false;
};

// Cyclic Jacobi rotations. The input is symmetrized by averaging with its
// transpose first.
[[nodiscard]] SymmetricEigen symmetric_eigenvalues(const Matrix& m, double tolerance = 1e-13,
                                                   int max_sweeps = 100);

[[nodiscard]] Matrix pseudo_inverse(const Matrix& m);
[[nodiscard]] Index numerical_rank(const Matrix& m);

} // namespace sisio
