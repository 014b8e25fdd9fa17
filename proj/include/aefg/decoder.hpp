// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/eigensolver.hpp"
#include "aefg/maps.hpp"

#include <vector>

namespace aefg {

struct DecoderParams {
    double lambda_floor = 1e-6;
    double cut_level = 0.5; // on the boundary map scaled to a peak of 1
};

// theta(p) = arg z_0(p).
RankMap fg_order(const EmbeddingResult& emb, const GridDomain& domain);

// strength(p) = sum_{k>=1} ||grad z_k(p)|| / sqrt(max(lambda_k, lambda_floor)).
// Central differences inside the grid, one-sided at the border; the norm runs
// over both spatial directions and both real and imaginary parts.
BoundaryMap spectral_boundaries(const EmbeddingResult& emb, const GridDomain& domain,
                                double lambda_floor = DecoderParams{}.lambda_floor);

struct Merge {
    std::uint32_t a;      // child node ids; leaves are base regions
    std::uint32_t b;
    std::uint32_t parent; // base_region_count + merge index
    double strength;
};

// Ultrametric region tree over the watershed basins of a boundary map.
struct SegmentationHierarchy {
    SegmentationMap base;
    std::vector<Merge> merges; // nondecreasing strength

    double max_strength() const noexcept { return merges.empty() ? 0.0 : merges.back().strength; }
};

// Catchment basins of the regional minima (4-connectivity), flooded in
// (strength, pixel index) order; then agglomerative merging of adjacent
// basins by ascending mean boundary strength along their common arc. Arc
// strength of a pixel pair straddling two basins is the larger of the two
// pixel strengths.
SegmentationHierarchy watershed_hierarchy(const BoundaryMap& bmap);

// Applies every merge with strength < level.
SegmentationMap cut_hierarchy(const SegmentationHierarchy& h, double level);

// Median (lower middle for even counts) of theta over each region.
std::vector<double> transfer_fg(const RankMap& rank, const SegmentationMap& seg);

// Paints each pixel with its region value.
RankMap paint_regions(const SegmentationMap& seg, const std::vector<double>& region_values);

} // namespace aefg
