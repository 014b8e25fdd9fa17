// SPDX-License-Identifier: Apache-2.0

#include "aefg/groundtruth.hpp"

#include "aefg/decoder.hpp"
#include "aefg/errors.hpp"

#include <cmath>
#include <string>

namespace aefg {

OwnershipLabels::OwnershipLabels(GridDomain domain)
    : domain_(domain), right_(domain.size(), 0), down_(domain.size(), 0) {}

OwnershipLabels::OwnershipLabels(GridDomain domain, std::vector<std::uint8_t> right, std::vector<std::uint8_t> down)
    : domain_(domain), right_(std::move(right)), down_(std::move(down)) {
    if (right_.size() != domain_.size() || down_.size() != domain_.size()) {
        throw ValidationError("ownership planes do not match the domain");
    }
    for (std::size_t p = 0; p < domain_.size(); ++p) {
        if (right_[p] > 2 || down_[p] > 2) {
            throw ValidationError("ownership label at pixel " + std::to_string(p) + " is not 0, 1 or 2");
        }
        if ((right_[p] && domain_.col(p) + 1 >= domain_.width()) ||
            (down_[p] && domain_.row(p) + 1 >= domain_.height())) {
            throw ValidationError("ownership label at pixel " + std::to_string(p) + " points off the grid");
        }
    }
}

std::uint8_t OwnershipLabels::slot_value(std::size_t p, std::size_t q, bool& flipped) const {
    return const_cast<OwnershipLabels*>(this)->slot(p, q, flipped);
}

std::uint8_t& OwnershipLabels::slot(std::size_t p, std::size_t q, bool& flipped) {
    flipped = q < p;
    const std::size_t a = flipped ? q : p;
    const std::size_t b = flipped ? p : q;
    const auto w = static_cast<std::size_t>(domain_.width());
    if (b < domain_.size() && b == a + 1 && domain_.col(a) + 1 < domain_.width()) return right_[a];
    if (b < domain_.size() && b == a + w) return down_[a];
    throw std::invalid_argument("pixels " + std::to_string(p) + " and " + std::to_string(q) +
                                " are not 4-adjacent");
}

Owner OwnershipLabels::get(std::size_t p, std::size_t q) const {
    bool flipped = false;
    const std::uint8_t v = slot_value(p, q, flipped);
    if (v == 0) return Owner::unlabeled;
    const bool lower_index_owns = v == 1;
    return (lower_index_owns != flipped) ? Owner::first : Owner::second;
}

void OwnershipLabels::set_owner(std::size_t p, std::size_t q, std::size_t owner) {
    if (owner != p && owner != q) throw std::invalid_argument("owner must be one of the pair");
    bool flipped = false;
    std::uint8_t& v = slot(p, q, flipped);
    v = owner == std::min(p, q) ? 1 : 2;
}

void OwnershipLabels::clear(std::size_t p, std::size_t q) {
    bool flipped = false;
    slot(p, q, flipped) = 0;
}

std::size_t OwnershipLabels::labeled_count() const noexcept {
    std::size_t n = 0;
    for (auto v : right_) n += v != 0;
    for (auto v : down_) n += v != 0;
    return n;
}

void OwnershipLabels::validate(const SegmentationMap& seg) const {
    if (!(seg.domain == domain_)) throw ValidationError("ownership labels and segmentation differ in size");
    for_each_adjacent_pair(domain_, [&](std::size_t p, std::size_t q) {
        if (get(p, q) != Owner::unlabeled && seg[p] == seg[q]) {
            throw ValidationError("ownership label on pixels " + std::to_string(p) + " and " + std::to_string(q) +
                                  " which lie in the same region");
        }
    });
}

AffinitySystem gt_affinity(const SegmentationMap& seg, const OwnershipLabels& own, const AffinityParams& params) {
    params.validate();
    own.validate(seg);
    const GridDomain& dom = seg.domain;
    const cplx toward_second = std::polar(1.0, params.phi);

    std::vector<Triplet> entries;
    entries.reserve(4 * dom.size());
    auto emit = [&](std::size_t p, std::size_t q, cplx w) {
        entries.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), w});
        entries.push_back({static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(p), std::conj(w)});
    };
    for_each_adjacent_pair(dom, [&](std::size_t p, std::size_t q) {
        if (seg[p] == seg[q]) {
            emit(p, q, 1.0);
            return;
        }
        switch (own.get(p, q)) {
        case Owner::second: emit(p, q, toward_second); break;
        case Owner::first: emit(p, q, std::conj(toward_second)); break;
        case Owner::unlabeled: break;
        }
    });

    SparseHermitianMatrix w = SparseHermitianMatrix::from_triplets(dom.size(), std::move(entries));
    if (params.wedge_rescale) w = rescale_theta(w);
    w = symmetrize(w);
    DegreeVector d = degree_of(w);
    return {std::move(w), std::move(d)};
}

RankMap globalize(const SegmentationMap& seg, const OwnershipLabels& own, const AffinityParams& params,
                  const SolverConfig& cfg) {
    const AffinitySystem sys = gt_affinity(seg, own, params);
    return fg_order(solve(sys.weights, sys.degree, cfg), seg.domain);
}

TargetTensors make_targets(const SegmentationMap& seg, const RankMap& rank, const Stencil& stencil) {
    const std::vector<double> region_rank = transfer_fg(rank, seg);
    const GridDomain& dom = seg.domain;
    const std::size_t total = stencil.size() * dom.size();
    TargetTensors t{dom, stencil, std::vector<std::uint8_t>(total, 0), std::vector<std::uint8_t>(total, 0),
                    std::vector<std::uint8_t>(total, 0), std::vector<std::uint8_t>(total, 0)};
    for (std::size_t k = 0; k < stencil.size(); ++k) {
        for (std::size_t p = 0; p < dom.size(); ++p) {
            auto q = neighbor_of(dom, p, stencil[k]);
            if (!q) continue;
            const std::size_t i = k * dom.size() + p;
            t.in_grid[i] = 1;
            if (seg[p] == seg[*q]) continue;
            t.b[i] = 1;
            const double rp = region_rank[seg[p]];
            const double rq = region_rank[seg[*q]];
            if (rq == rp) continue;
            t.f[i] = rq > rp ? 1 : 0;
            t.f_valid[i] = 1;
        }
    }
    return t;
}

RelationMap targets_to_relation_map(const TargetTensors& t) {
    const std::size_t total = t.b.size();
    std::vector<float> b(total), f(total);
    for (std::size_t i = 0; i < total; ++i) {
        b[i] = t.b[i] ? 1.0f : 0.0f;
        f[i] = t.f_valid[i] ? (t.f[i] ? 1.0f : 0.0f) : 0.5f;
    }
    return RelationMap(t.domain, t.stencil, std::move(b), std::move(f));
}

} // namespace aefg
