// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/affinity.hpp"
#include "aefg/eigensolver.hpp"
#include "aefg/maps.hpp"

#include <cstdint>
#include <vector>

namespace aefg {

enum class Owner : std::uint8_t {
    unlabeled = 0,
    first = 1,  // p in the pair (p, q)
    second = 2, // q in the pair (p, q)
};

// Boundary ownership for every 4-adjacent pixel pair. Stored per pixel for the
// pair with its right neighbour and the pair with its lower neighbour, so the
// label of (q, p) is always the mirror of (p, q).
class OwnershipLabels {
public:
    explicit OwnershipLabels(GridDomain domain);
    OwnershipLabels(GridDomain domain, std::vector<std::uint8_t> right, std::vector<std::uint8_t> down);

    const GridDomain& domain() const noexcept { return domain_; }

    // Label of the ordered pair (p, q); p and q must be 4-adjacent.
    Owner get(std::size_t p, std::size_t q) const;
    // Marks `owner` (which must be p or q) as the figural side.
    void set_owner(std::size_t p, std::size_t q, std::size_t owner);
    void clear(std::size_t p, std::size_t q);

    std::size_t labeled_count() const noexcept;

    std::span<const std::uint8_t> right() const noexcept { return right_; }
    std::span<const std::uint8_t> down() const noexcept { return down_; }

    // Every label sits on a pair whose endpoints lie in different regions.
    void validate(const SegmentationMap& seg) const;

    friend bool operator==(const OwnershipLabels&, const OwnershipLabels&) = default;

private:
    std::uint8_t& slot(std::size_t p, std::size_t q, bool& flipped);
    std::uint8_t slot_value(std::size_t p, std::size_t q, bool& flipped) const;

    GridDomain domain_;
    std::vector<std::uint8_t> right_;
    std::vector<std::uint8_t> down_;
};

// Short-range ground-truth affinities: unit binding inside regions, unit
// confidence rotated by +/-phi toward the owner across labeled boundaries,
// nothing across unlabeled ones. Then angle rescaling (if enabled) and
// symmetrization as in assemble().
AffinitySystem gt_affinity(const SegmentationMap& seg, const OwnershipLabels& own, const AffinityParams& params);

// Dense figure/ground map obtained by embedding the ground-truth relations.
RankMap globalize(const SegmentationMap& seg, const OwnershipLabels& own, const AffinityParams& params,
                  const SolverConfig& cfg);

// Binary training targets over every stencil pair, laid out [offset][pixel]
// like RelationMap. f is meaningful only where f_valid is set.
struct TargetTensors {
    GridDomain domain;
    Stencil stencil;
    std::vector<std::uint8_t> b;
    std::vector<std::uint8_t> f;
    std::vector<std::uint8_t> f_valid;
    std::vector<std::uint8_t> in_grid;
};

// b = 1 across region boundaries; f = 1 when the neighbour's region median
// rank exceeds this pixel's, 0 when lower, masked on ties and where b = 0.
TargetTensors make_targets(const SegmentationMap& seg, const RankMap& rank, const Stencil& stencil);

// Relation map carrying the targets; masked f entries become 0.5 and
// off-grid pairs carry b = 0.
RelationMap targets_to_relation_map(const TargetTensors& t);

} // namespace aefg
