// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/affinity.hpp"
#include "aefg/sparse.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace aefg {

// Orientation convention used throughout: arg W(p,q) is the rotation that
// carries p onto q, so a consistent embedding has z(q) ~ e^{i arg W(p,q)} z(p)
// and the pixel on the figure side ends up with the larger angle. The
// embedding operator is therefore W^T = conj(W).
//
// Eigenvalues are reported in the Laplacian convention: lambda solves
// (D - W^T) z = lambda D z, sorted ascending, so z_0 is the best embedding.
// The corresponding generalized eigenvalue of W^T z = mu D z is 1 - lambda.
struct EmbeddingResult {
    std::size_t n = 0;
    std::vector<double> eigenvalues;
    std::vector<std::vector<cplx>> eigenvectors; // D-orthonormal, gauge fixed
    std::vector<double> residuals;               // ||(D-W^T)z - lambda D z|| / ||D z||
    std::size_t iterations = 0;                  // operator applications

    std::size_t count() const noexcept { return eigenvalues.size(); }
};

struct SolverConfig {
    std::size_t m = 16;
    double tol = 1e-8;
    std::size_t max_iter = 50000;
    std::uint64_t seed = 1;

    void validate(std::size_t n) const;
};

// The m smallest Laplacian eigenpairs via thick-restart Lanczos on the
// normalized operator D^{-1/2} W^T D^{-1/2}, with full reorthogonalization.
// Throws NumericalError on non-convergence or a zero degree.
EmbeddingResult solve(const SparseHermitianMatrix& w, const DegreeVector& d, const SolverConfig& cfg);

// Rotates z so its largest-magnitude component (first one on ties) is real
// and positive.
void fix_gauge(std::span<cplx> z);

// Full spectrum of the same problem from a dense Hermitian matrix (row-major
// n*n) using cyclic complex Jacobi rotations. Verification oracle; n <= 512.
EmbeddingResult dense_oracle(std::span<const cplx> w, std::size_t n, const DegreeVector& d);

// Angular embedding error: sum_p (d_p / sum d) |z(p) - z~(p)|^2 with the
// consensus z~(p) = sum_q (|W(p,q)| / d_p) e^{-i arg W(p,q)} z(q).
double embedding_error(const SparseHermitianMatrix& w, const DegreeVector& d, std::span<const cplx> z);

// ||(D - W^T) z - lambda D z|| / ||D z||.
double laplacian_residual(const SparseHermitianMatrix& w, const DegreeVector& d, std::span<const cplx> z,
                          double lambda);

} // namespace aefg
