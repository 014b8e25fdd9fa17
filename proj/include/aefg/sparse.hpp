// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aefg {

using cplx = std::complex<double>;

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    cplx value;
};

// Square complex matrix in compressed sparse row form with sorted, unique
// column indices per row. Hermitian structure is a property checked by
// is_hermitian(), not assumed by the container.
class SparseHermitianMatrix {
public:
    SparseHermitianMatrix() = default;

    // Sorts the triplets; duplicates are rejected.
    static SparseHermitianMatrix from_triplets(std::size_t n, std::vector<Triplet> entries);

    std::size_t dim() const noexcept { return n_; }
    std::size_t nonzeros() const noexcept { return cols_.size(); }

    std::span<const std::uint32_t> row_cols(std::size_t p) const noexcept {
        return {cols_.data() + row_ptr_[p], cols_.data() + row_ptr_[p + 1]};
    }
    std::span<const cplx> row_values(std::size_t p) const noexcept {
        return {vals_.data() + row_ptr_[p], vals_.data() + row_ptr_[p + 1]};
    }
    std::span<cplx> row_values(std::size_t p) noexcept {
        return {vals_.data() + row_ptr_[p], vals_.data() + row_ptr_[p + 1]};
    }
    std::span<const cplx> values() const noexcept { return vals_; }

    // Stored value, or 0 when (p,q) is structurally absent.
    cplx at(std::size_t p, std::size_t q) const noexcept;
    bool contains(std::size_t p, std::size_t q) const noexcept;

    // Exact check: every stored (p,q,w) has a stored (q,p,conj(w)).
    bool is_hermitian() const noexcept;

    // Row-major dense copy, n*n entries.
    std::vector<cplx> to_dense() const;

    friend bool operator==(const SparseHermitianMatrix&, const SparseHermitianMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> cols_;
    std::vector<cplx> vals_;
};

} // namespace aefg
