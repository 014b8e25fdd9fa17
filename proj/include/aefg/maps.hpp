// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/stencil.hpp"

#include <cstdint>
#include <vector>

namespace aefg {

// Per-pixel figure/ground rank; larger is closer to the viewer.
struct RankMap {
    GridDomain domain;
    std::vector<double> theta;

    explicit RankMap(GridDomain d) : domain(d), theta(d.size(), 0.0) {}
    RankMap(GridDomain d, std::vector<double> values);

    double operator[](std::size_t p) const noexcept { return theta[p]; }
    double spread() const noexcept;
};

// Non-negative soft boundary strength per pixel.
struct BoundaryMap {
    GridDomain domain;
    std::vector<double> strength;
};

// Region labels dense in [0, region_count).
struct SegmentationMap {
    GridDomain domain;
    std::vector<std::uint32_t> labels;
    std::uint32_t region_count = 0;

    SegmentationMap(GridDomain d, std::vector<std::uint32_t> l, std::uint32_t count);

    std::uint32_t operator[](std::size_t p) const noexcept { return labels[p]; }

    // Throws ValidationError when a label is out of range or a region is
    // empty; with require_connected also when a region is not 4-connected.
    void validate(bool require_connected = false) const;
};

// Relabels so labels are dense and numbered in order of first appearance in
// row-major scan.
SegmentationMap compact_labels(const GridDomain& domain, const std::vector<std::uint32_t>& raw);

// 4-connected components of equal raw label, numbered in scan order.
SegmentationMap connected_components(const GridDomain& domain, const std::vector<std::uint32_t>& raw);

// Calls fn(p, q) for every 4-adjacent pair with q to the right of or below p.
template <class Fn>
void for_each_adjacent_pair(const GridDomain& dom, Fn&& fn) {
    for (int r = 0; r < dom.height(); ++r) {
        for (int c = 0; c < dom.width(); ++c) {
            const std::size_t p = dom.index(r, c);
            if (c + 1 < dom.width()) fn(p, p + 1);
            if (r + 1 < dom.height()) fn(p, p + static_cast<std::size_t>(dom.width()));
        }
    }
}

} // namespace aefg
