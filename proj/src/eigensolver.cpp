// SPDX-License-Identifier: Apache-2.0

#include "aefg/eigensolver.hpp"

#include "aefg/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace aefg {

namespace {

// Uniform in [-1, 1) from raw 64-bit draws so start vectors are identical on
// every standard library.
double uniform_pm1(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

double norm(std::span<const cplx> x) {
    double s = 0.0;
    for (const cplx& v : x) s += std::norm(v);
    return std::sqrt(s);
}

// D^{-1/2} W^T D^{-1/2} stored row-wise with the same sparsity as W.
class NormalizedOperator {
public:
    NormalizedOperator(const SparseHermitianMatrix& w, const DegreeVector& d) : w_(w) {
        const std::size_t n = w.dim();
        inv_sqrt_d_.resize(n);
        for (std::size_t p = 0; p < n; ++p) inv_sqrt_d_[p] = 1.0 / std::sqrt(d[p]);
        vals_.reserve(w.nonzeros());
        for (std::size_t p = 0; p < n; ++p) {
            auto cols = w.row_cols(p);
            auto vals = w.row_values(p);
            for (std::size_t j = 0; j < cols.size(); ++j) {
                vals_.push_back(std::conj(vals[j]) * (inv_sqrt_d_[p] * inv_sqrt_d_[cols[j]]));
            }
        }
    }

    void apply(std::span<const cplx> x, std::span<cplx> y) const {
        std::size_t idx = 0;
        for (std::size_t p = 0; p < w_.dim(); ++p) {
            cplx acc = 0.0;
            for (std::uint32_t q : w_.row_cols(p)) acc += vals_[idx++] * x[q];
            y[p] = acc;
        }
    }

    const std::vector<double>& inv_sqrt_d() const noexcept { return inv_sqrt_d_; }

private:
    const SparseHermitianMatrix& w_;
    std::vector<double> inv_sqrt_d_;
    std::vector<cplx> vals_;
};

// Column-major block of n-vectors.
class Basis {
public:
    Basis(std::size_t n, std::size_t cols) : n_(n), data_(n * cols) {}

    std::span<cplx> col(std::size_t j) noexcept { return {data_.data() + j * n_, n_}; }
    std::span<const cplx> col(std::size_t j) const noexcept { return {data_.data() + j * n_, n_}; }

    // Orthogonalizes x against columns [0, count) with two passes of classical
    // Gram-Schmidt; accumulates the projection coefficients into h.
    void orthogonalize(std::span<cplx> x, std::size_t count, std::span<cplx> h) const {
        const auto vb = block(count);
        Eigen::Map<Eigen::VectorXcd> xv(x.data(), static_cast<Eigen::Index>(n_));
        Eigen::Map<Eigen::VectorXcd> hv(h.data(), static_cast<Eigen::Index>(count));
        hv.setZero();
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXcd c = vb.adjoint() * xv;
            xv.noalias() -= vb * c;
            hv += c;
        }
    }

    Eigen::Map<const Eigen::MatrixXcd> block(std::size_t count) const {
        return {data_.data(), static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(count)};
    }

private:
    std::size_t n_;
    std::vector<cplx> data_;
};

void fill_random_unit(std::span<cplx> x, std::mt19937_64& rng) {
    for (cplx& v : x) v = {uniform_pm1(rng), uniform_pm1(rng)};
    const double nx = norm(x);
    for (cplx& v : x) v /= nx;
}

} // namespace

void SolverConfig::validate(std::size_t n) const {
    if (m < 1) throw ConfigError("eigenpair count m must be >= 1");
    if (m >= n) {
        throw ConfigError("eigenpair count m=" + std::to_string(m) + " must be smaller than n=" +
                          std::to_string(n));
    }
    if (!(tol > 0.0)) throw ConfigError("solver tolerance must be positive");
    if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
}

void fix_gauge(std::span<cplx> z) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double mag = std::abs(z[i]);
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag <= 0.0) return;
    const cplx rot = std::conj(z[best]) / best_mag;
    for (cplx& v : z) v *= rot;
    z[best] = {best_mag, 0.0};
}

double laplacian_residual(const SparseHermitianMatrix& w, const DegreeVector& d, std::span<const cplx> z,
                          double lambda) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t p = 0; p < w.dim(); ++p) {
        auto cols = w.row_cols(p);
        auto vals = w.row_values(p);
        cplx wz = 0.0;
        for (std::size_t j = 0; j < cols.size(); ++j) wz += std::conj(vals[j]) * z[cols[j]];
        const cplx dz = d[p] * z[p];
        num += std::norm(dz - wz - lambda * dz);
        den += std::norm(dz);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double embedding_error(const SparseHermitianMatrix& w, const DegreeVector& d, std::span<const cplx> z) {
    const double total = std::accumulate(d.values.begin(), d.values.end(), 0.0);
    if (total <= 0.0) return 0.0;
    double err = 0.0;
    for (std::size_t p = 0; p < w.dim(); ++p) {
        if (d[p] <= 0.0) continue;
        auto cols = w.row_cols(p);
        auto vals = w.row_values(p);
        cplx consensus = 0.0;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const double c = std::abs(vals[j]);
            if (c == 0.0) continue;
            // |W| e^{-i arg W} = conj(W)
            consensus += (c / d[p]) * std::polar(1.0, -std::arg(vals[j])) * z[cols[j]];
        }
        err += (d[p] / total) * std::norm(z[p] - consensus);
    }
    return err;
}

EmbeddingResult solve(const SparseHermitianMatrix& w, const DegreeVector& d, const SolverConfig& cfg) {
    const std::size_t n = w.dim();
    cfg.validate(n);
    if (d.size() != n) throw ConfigError("degree vector length does not match matrix dimension");
    for (std::size_t p = 0; p < n; ++p) {
        if (!(d[p] > 0.0)) {
            throw NumericalError("pixel " + std::to_string(p) + " has zero degree; embedding undefined");
        }
    }
    const auto [dmin, dmax] = std::minmax_element(d.values.begin(), d.values.end());
    // ||D^{1/2} r|| / ||D^{1/2} v|| <= sqrt(dmax/dmin) ||r|| for unit v.
    double ritz_target = cfg.tol * std::sqrt(*dmin / *dmax);

    const NormalizedOperator op(w, d);
    const std::size_t m = cfg.m;
    const std::size_t basis = std::min(n, std::max<std::size_t>(2 * m + 16, 32));
    const std::size_t keep = std::max(m, std::min(basis - 1, m + (basis - m) / 2));

    std::mt19937_64 rng(cfg.seed);
    Basis v(n, basis + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(basis + 1),
                                                static_cast<Eigen::Index>(basis));
    fill_random_unit(v.col(0), rng);

    std::vector<cplx> coeffs(basis + 1);
    std::size_t kept = 0;
    std::size_t matvecs = 0;
    std::vector<double> best_residuals(m, std::numeric_limits<double>::infinity());

    Eigen::VectorXd ritz_values;
    Eigen::MatrixXcd ritz_vectors;
    std::size_t dim = 0;

    while (true) {
        // Extend the Krylov-Schur decomposition to the full basis size.
        bool exhausted = false;
        dim = kept;
        for (std::size_t j = kept; j < basis; ++j) {
            auto next = v.col(j + 1);
            op.apply(v.col(j), next);
            ++matvecs;
            v.orthogonalize(next, j + 1, coeffs);
            for (std::size_t i = 0; i <= j; ++i) h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = coeffs[i];
            const double beta = norm(next);
            double scale = 0.0;
            for (std::size_t i = 0; i <= j; ++i) scale = std::max(scale, std::abs(coeffs[i]));
            dim = j + 1;
            if (beta <= 1e-12 * std::max(1.0, scale)) {
                h(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(j)) = 0.0;
                if (j + 1 == n) {
                    exhausted = true;
                    break;
                }
                // Invariant subspace found: continue from a fresh direction.
                fill_random_unit(next, rng);
                v.orthogonalize(next, j + 1, coeffs);
                const double nn = norm(next);
                for (cplx& x : next) x /= nn;
            } else {
                h(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(j)) = beta;
                for (cplx& x : next) x /= beta;
            }
        }
        if (dim == n) exhausted = true;

        const auto idim = static_cast<Eigen::Index>(dim);
        Eigen::MatrixXcd t = h.topLeftCorner(idim, idim);
        t = (0.5 * (t + t.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t);
        if (es.info() != Eigen::Success) throw NumericalError("projected eigenproblem failed");
        ritz_values = es.eigenvalues();
        ritz_vectors = es.eigenvectors();

        // Wanted pairs: largest Ritz values, stored at the end in ascending order.
        const Eigen::RowVectorXcd tail_row = h.row(idim).head(idim);
        bool converged = true;
        for (std::size_t i = 0; i < m; ++i) {
            const Eigen::Index c = idim - 1 - static_cast<Eigen::Index>(i);
            const double r = exhausted ? 0.0 : std::abs((tail_row * ritz_vectors.col(c))(0));
            best_residuals[i] = r;
            if (r > ritz_target) converged = false;
        }

        if (converged) {
            // Confirm against the true generalized residual before accepting.
            EmbeddingResult out;
            out.n = n;
            out.iterations = matvecs;
            bool accepted = true;
            for (std::size_t i = 0; i < m; ++i) {
                const Eigen::Index c = idim - 1 - static_cast<Eigen::Index>(i);
                std::vector<cplx> z(n);
                Eigen::Map<Eigen::VectorXcd>(z.data(), static_cast<Eigen::Index>(n)).noalias() =
                    v.block(dim) * ritz_vectors.col(c);
                const double nz = norm(z);
                for (std::size_t p = 0; p < n; ++p) z[p] *= op.inv_sqrt_d()[p] / nz;
                fix_gauge(z);
                const double lambda = 1.0 - ritz_values(c);
                const double res = laplacian_residual(w, d, z, lambda);
                if (res > cfg.tol) accepted = false;
                out.eigenvalues.push_back(lambda);
                out.residuals.push_back(res);
                out.eigenvectors.push_back(std::move(z));
            }
            if (accepted || exhausted) {
                if (!accepted) {
                    throw NumericalError("full Krylov space reached without meeting tolerance", out.residuals);
                }
                return out;
            }
            ritz_target *= 0.1;
        }

        if (matvecs >= cfg.max_iter) {
            throw NumericalError("eigensolver did not converge within " + std::to_string(cfg.max_iter) +
                                     " operator applications",
                                 best_residuals);
        }

        // Thick restart: keep the `keep` largest Ritz vectors plus the residual
        // direction.
        const std::size_t k = std::min(keep, dim - 1);
        Eigen::MatrixXcd y(idim, static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < k; ++i) y.col(static_cast<Eigen::Index>(i)) = ritz_vectors.col(idim - 1 - static_cast<Eigen::Index>(i));
        const Eigen::MatrixXcd restarted = v.block(dim) * y;
        const std::vector<cplx> residual_dir(v.col(dim).begin(), v.col(dim).end());
        h.setZero();
        for (std::size_t i = 0; i < k; ++i) {
            const Eigen::Index c = idim - 1 - static_cast<Eigen::Index>(i);
            const auto src = restarted.col(static_cast<Eigen::Index>(i));
            std::copy(src.begin(), src.end(), v.col(i).begin());
            h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = ritz_values(c);
            h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = (tail_row * ritz_vectors.col(c))(0);
        }
        std::copy(residual_dir.begin(), residual_dir.end(), v.col(k).begin());
        kept = k;
    }
}

} // namespace aefg
