// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aefg {

// Rectangular pixel grid. Pixel index p = row * width + col.
class GridDomain {
public:
    GridDomain(int height, int width);

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
    }

    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }
    int row(std::size_t p) const noexcept { return static_cast<int>(p / static_cast<std::size_t>(width_)); }
    int col(std::size_t p) const noexcept { return static_cast<int>(p % static_cast<std::size_t>(width_)); }
    bool contains(int row, int col) const noexcept {
        return row >= 0 && row < height_ && col >= 0 && col < width_;
    }

    friend bool operator==(const GridDomain&, const GridDomain&) = default;

private:
    int height_;
    int width_;
};

struct Offset {
    int dy = 0;
    int dx = 0;

    int radius() const noexcept;
    Offset operator-() const noexcept { return {-dy, -dx}; }
    friend bool operator==(const Offset&, const Offset&) = default;
};

// Translation-invariant neighbourhood. Offsets are distinct, non-zero and
// closed under negation; construction validates all three.
class Stencil {
public:
    explicit Stencil(std::vector<Offset> offsets);

    std::size_t size() const noexcept { return offsets_.size(); }
    const Offset& operator[](std::size_t k) const noexcept { return offsets_[k]; }
    std::span<const Offset> offsets() const noexcept { return offsets_; }

    std::optional<std::size_t> find(Offset o) const noexcept;
    // Index of the offset pointing the opposite way.
    std::size_t opposite(std::size_t k) const noexcept { return opposite_[k]; }

    friend bool operator==(const Stencil& a, const Stencil& b) { return a.offsets_ == b.offsets_; }

private:
    std::vector<Offset> offsets_;
    std::vector<std::size_t> opposite_;
};

// The 8-neighbourhood ring at each radius, ordered lexicographically by
// (radius, dy, dx).
Stencil make_stencil(std::span<const int> radii);

// Radii 1, 4 and 16: 24 offsets.
Stencil default_stencil();

std::optional<std::size_t> neighbor_of(const GridDomain& domain, std::size_t p, Offset offset);

// Per-offset boundary probability b and figural probability f for every
// pixel. Planes are laid out [offset][row][col]. Values are float because
// that is what the relation tensor files carry.
class RelationMap {
public:
    RelationMap(GridDomain domain, Stencil stencil);
    RelationMap(GridDomain domain, Stencil stencil, std::vector<float> b, std::vector<float> f);

    const GridDomain& domain() const noexcept { return domain_; }
    const Stencil& stencil() const noexcept { return stencil_; }

    std::size_t slot(std::size_t k, std::size_t p) const noexcept { return k * domain_.size() + p; }

    float b(std::size_t k, std::size_t p) const noexcept { return b_[slot(k, p)]; }
    float f(std::size_t k, std::size_t p) const noexcept { return f_[slot(k, p)]; }
    void set(std::size_t k, std::size_t p, float b, float f);

    std::span<const float> b_values() const noexcept { return b_; }
    std::span<const float> f_values() const noexcept { return f_; }

    friend bool operator==(const RelationMap&, const RelationMap&) = default;

private:
    GridDomain domain_;
    Stencil stencil_;
    std::vector<float> b_;
    std::vector<float> f_;
};

// e(p): mean of b over the radius-1 ring offsets whose neighbour lies inside
// the grid. Pixels with no in-grid ring neighbour get 0.
std::vector<double> boundary_prob(const RelationMap& rel);

} // namespace aefg
