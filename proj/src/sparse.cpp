// SPDX-License-Identifier: Apache-2.0

#include "aefg/sparse.hpp"

#include "aefg/errors.hpp"

#include <algorithm>
#include <string>

namespace aefg {

SparseHermitianMatrix SparseHermitianMatrix::from_triplets(std::size_t n, std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseHermitianMatrix m;
    m.n_ = n;
    m.row_ptr_.assign(n + 1, 0);
    m.cols_.reserve(entries.size());
    m.vals_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Triplet& t = entries[i];
        if (t.row >= n || t.col >= n) {
            throw std::invalid_argument("sparse entry (" + std::to_string(t.row) + "," +
                                        std::to_string(t.col) + ") outside dimension " + std::to_string(n));
        }
        if (i > 0 && entries[i - 1].row == t.row && entries[i - 1].col == t.col) {
            throw ValidationError("duplicate sparse entry (" + std::to_string(t.row) + "," +
                                  std::to_string(t.col) + ")");
        }
        m.cols_.push_back(t.col);
        m.vals_.push_back(t.value);
        ++m.row_ptr_[t.row + 1];
    }
    for (std::size_t p = 0; p < n; ++p) m.row_ptr_[p + 1] += m.row_ptr_[p];
    return m;
}

bool SparseHermitianMatrix::contains(std::size_t p, std::size_t q) const noexcept {
    auto cols = row_cols(p);
    return std::binary_search(cols.begin(), cols.end(), static_cast<std::uint32_t>(q));
}

cplx SparseHermitianMatrix::at(std::size_t p, std::size_t q) const noexcept {
    auto cols = row_cols(p);
    auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(q));
    if (it == cols.end() || *it != q) return {};
    return vals_[row_ptr_[p] + static_cast<std::size_t>(it - cols.begin())];
}

bool SparseHermitianMatrix::is_hermitian() const noexcept {
    for (std::size_t p = 0; p < n_; ++p) {
        auto cols = row_cols(p);
        auto vals = row_values(p);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const std::size_t q = cols[j];
            if (!contains(q, p)) return false;
            const cplx mirror = at(q, p);
            if (mirror.real() != vals[j].real() || mirror.imag() != -vals[j].imag()) return false;
        }
    }
    return true;
}

std::vector<cplx> SparseHermitianMatrix::to_dense() const {
    std::vector<cplx> dense(n_ * n_);
    for (std::size_t p = 0; p < n_; ++p) {
        auto cols = row_cols(p);
        auto vals = row_values(p);
        for (std::size_t j = 0; j < cols.size(); ++j) dense[p * n_ + cols[j]] = vals[j];
    }
    return dense;
}

} // namespace aefg
