// SPDX-License-Identifier: Apache-2.0

#include "aefg/eigensolver.hpp"

#include "aefg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aefg {

namespace {

constexpr std::size_t kMaxDenseDim = 512;
constexpr int kMaxSweeps = 100;

// Cyclic Jacobi for a Hermitian matrix held row-major in `a`. On return the
// diagonal of `a` holds the eigenvalues and the columns of `v` the
// eigenvectors.
void jacobi_hermitian(std::vector<cplx>& a, std::vector<cplx>& v, std::size_t n) {
    auto A = [&](std::size_t r, std::size_t c) -> cplx& { return a[r * n + c]; };
    auto V = [&](std::size_t r, std::size_t c) -> cplx& { return v[r * n + c]; };

    v.assign(n * n, cplx{});
    for (std::size_t i = 0; i < n; ++i) V(i, i) = 1.0;

    double total = 0.0;
    for (const cplx& x : a) total += std::norm(x);
    if (total == 0.0) return;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(A(p, q));
        if (off <= 1e-32 * total) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = A(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                // Phase e^{i beta} on q makes the pivot real, then a real rotation
                // annihilates it. G = diag(1, e^{i beta}) * [[c, s], [-s, c]].
                const cplx phase = std::conj(apq) / r;
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx gpp = c, gpq = s, gqp = -s * phase, gqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = A(k, p), akq = A(k, q);
                    A(k, p) = akp * gpp + akq * gqp;
                    A(k, q) = akp * gpq + akq * gqq;
                    const cplx vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = vkp * gpp + vkq * gqp;
                    V(k, q) = vkp * gpq + vkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx mpk = A(p, k), mqk = A(q, k);
                    A(p, k) = std::conj(gpp) * mpk + std::conj(gqp) * mqk;
                    A(q, k) = std::conj(gpq) * mpk + std::conj(gqq) * mqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = A(p, p).real();
                A(q, q) = A(q, q).real();
            }
        }
    }
}

} // namespace

EmbeddingResult dense_oracle(std::span<const cplx> w, std::size_t n, const DegreeVector& d) {
    if (n > kMaxDenseDim) {
        throw ConfigError("dense oracle limited to n <= " + std::to_string(kMaxDenseDim) + ", got " +
                          std::to_string(n));
    }
    if (w.size() != n * n || d.size() != n) throw ConfigError("dense oracle input extents do not match n");
    std::vector<double> s(n);
    for (std::size_t p = 0; p < n; ++p) {
        if (!(d[p] > 0.0)) throw NumericalError("pixel " + std::to_string(p) + " has zero degree");
        s[p] = 1.0 / std::sqrt(d[p]);
    }

    // D^{-1/2} W^T D^{-1/2}
    std::vector<cplx> a(n * n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) a[p * n + q] = std::conj(w[p * n + q]) * (s[p] * s[q]);

    std::vector<cplx> vecs;
    jacobi_hermitian(a, vecs, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Largest mu first == smallest Laplacian eigenvalue first.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a[i * n + i].real() > a[j * n + j].real(); });

    std::vector<Triplet> entries;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (w[p * n + q] != cplx{}) entries.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), w[p * n + q]});
    const SparseHermitianMatrix ws = SparseHermitianMatrix::from_triplets(n, std::move(entries));

    EmbeddingResult out;
    out.n = n;
    for (std::size_t idx : order) {
        std::vector<cplx> z(n);
        for (std::size_t p = 0; p < n; ++p) z[p] = vecs[p * n + idx] * s[p];
        fix_gauge(z);
        const double lambda = 1.0 - a[idx * n + idx].real();
        out.residuals.push_back(laplacian_residual(ws, d, z, lambda));
        out.eigenvalues.push_back(lambda);
        out.eigenvectors.push_back(std::move(z));
    }
    return out;
}

} // namespace aefg
