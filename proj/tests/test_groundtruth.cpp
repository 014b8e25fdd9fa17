// SPDX-License-Identifier: Apache-2.0

#include "aefg/decoder.hpp"
#include "aefg/errors.hpp"
#include "aefg/groundtruth.hpp"
#include "aefg/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace aefg;

namespace {

SolverConfig one_vector() {
    SolverConfig cfg;
    cfg.m = 1;
    return cfg;
}

// Left half region 0, right half region 1.
SegmentationMap halves(const GridDomain& dom) {
    std::vector<std::uint32_t> l(dom.size());
    for (std::size_t p = 0; p < dom.size(); ++p) l[p] = dom.col(p) < dom.width() / 2 ? 0 : 1;
    return SegmentationMap(dom, std::move(l), 2);
}

OwnershipLabels owned_by(const SegmentationMap& seg, std::uint32_t owner_region) {
    OwnershipLabels own(seg.domain);
    for_each_adjacent_pair(seg.domain, [&](std::size_t p, std::size_t q) {
        if (seg[p] != seg[q]) own.set_owner(p, q, seg[p] == owner_region ? p : q);
    });
    return own;
}

} // namespace

TEST(Ownership, SetGetClearAntisymmetric) {
    const GridDomain dom(3, 3);
    OwnershipLabels own(dom);
    own.set_owner(0, 1, 1);
    EXPECT_EQ(own.get(0, 1), Owner::second);
    EXPECT_EQ(own.get(1, 0), Owner::first);
    own.set_owner(4, 1, 4);
    EXPECT_EQ(own.get(1, 4), Owner::second);
    EXPECT_EQ(own.labeled_count(), 2u);
    own.clear(1, 0);
    EXPECT_EQ(own.get(0, 1), Owner::unlabeled);
    EXPECT_THROW(own.get(0, 4), std::invalid_argument);
    EXPECT_THROW(own.set_owner(0, 1, 2), std::invalid_argument);
}

TEST(Ownership, PlaneValidation) {
    const GridDomain dom(2, 2);
    EXPECT_THROW(OwnershipLabels(dom, {0, 0, 0}, {0, 0, 0, 0}), ValidationError);
    EXPECT_THROW(OwnershipLabels(dom, {0, 3, 0, 0}, {0, 0, 0, 0}), ValidationError);
    EXPECT_THROW(OwnershipLabels(dom, {0, 1, 0, 0}, {0, 0, 0, 0}), ValidationError);
    EXPECT_THROW(OwnershipLabels(dom, {0, 0, 0, 0}, {0, 0, 1, 0}), ValidationError);
    EXPECT_NO_THROW(OwnershipLabels(dom, {1, 0, 2, 0}, {1, 2, 0, 0}));
}

TEST(GtAffinity, LabelInsideRegionRejected) {
    const GridDomain dom(2, 4);
    const auto seg = halves(dom);
    OwnershipLabels own(dom);
    own.set_owner(0, 1, 0);
    EXPECT_THROW(gt_affinity(seg, own, AffinityParams{}), ValidationError);
}

TEST(GtAffinity, SingleRegionIsPureBinding) {
    const GridDomain dom(5, 6);
    const SegmentationMap seg(dom, std::vector<std::uint32_t>(dom.size(), 0), 1);
    const auto sys = gt_affinity(seg, OwnershipLabels(dom), AffinityParams{});
    for (const cplx& v : sys.weights.values()) EXPECT_EQ(v, cplx(1.0, 0.0));
    const RankMap r = globalize(seg, OwnershipLabels(dom), AffinityParams{}, one_vector());
    EXPECT_LT(r.spread(), 1e-9);
}

TEST(GtAffinity, UnlabeledBoundaryHasNoEntry) {
    const GridDomain dom(2, 4);
    const auto seg = halves(dom);
    const auto sys = gt_affinity(seg, OwnershipLabels(dom), AffinityParams{});
    EXPECT_FALSE(sys.weights.contains(dom.index(0, 1), dom.index(0, 2)));
    EXPECT_TRUE(sys.weights.contains(dom.index(0, 0), dom.index(0, 1)));
}

TEST(GtAffinity, FlippingLabelsConjugates) {
    const GridDomain dom(4, 6);
    const auto seg = halves(dom);
    const auto a = gt_affinity(seg, owned_by(seg, 0), AffinityParams{});
    const auto b = gt_affinity(seg, owned_by(seg, 1), AffinityParams{});
    ASSERT_EQ(a.weights.nonzeros(), b.weights.nonzeros());
    for (std::size_t i = 0; i < a.weights.values().size(); ++i)
        EXPECT_EQ(a.weights.values()[i], std::conj(b.weights.values()[i]));
    EXPECT_TRUE(a.weights.is_hermitian());
    EXPECT_NEAR(total_abs_angle(a.weights), std::numbers::pi / 2, 1e-12);
}

TEST(Globalize, OwnerIsInFront) {
    const GridDomain dom(8, 10);
    const auto seg = halves(dom);
    for (std::uint32_t owner : {0u, 1u}) {
        const RankMap r = globalize(seg, owned_by(seg, owner), AffinityParams{}, one_vector());
        const auto m = transfer_fg(r, seg);
        EXPECT_GT(m[owner], m[1 - owner]);
        EXPECT_LE(r.spread(), std::numbers::pi);
    }
}

TEST(Globalize, NestedLayersTotalOrder) {
    SceneSpec spec;
    spec.domain = GridDomain(40, 40);
    spec.shapes = {{ShapeKind::rectangle, 5, 5, 30, 30, 1}, {ShapeKind::disk, 20, 20, 8, 0, 2}};
    const Scene scene = render(spec);
    ASSERT_EQ(scene.segmentation.region_count, 3u);
    const RankMap r = globalize(scene.segmentation, scene.ownership, AffinityParams{}, one_vector());
    const auto m = transfer_fg(r, scene.segmentation);
    const auto truth = transfer_fg(scene.depth, scene.segmentation);
    for (std::uint32_t a = 0; a < 3; ++a)
        for (std::uint32_t b = 0; b < 3; ++b)
            if (truth[a] > truth[b]) EXPECT_GT(m[a], m[b]);
}

TEST(Globalize, LabeledPairsOrderedOnRandomScenes) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const GridDomain dom(40, 40);
        const Scene scene = render(random_scene(dom, 4, seed));
        const RankMap r = globalize(scene.segmentation, scene.ownership, AffinityParams{}, one_vector());
        EXPECT_LE(r.spread(), std::numbers::pi);
        for_each_adjacent_pair(dom, [&](std::size_t p, std::size_t q) {
            switch (scene.ownership.get(p, q)) {
            case Owner::first: EXPECT_GT(r[p], r[q]) << "seed " << seed; break;
            case Owner::second: EXPECT_GT(r[q], r[p]) << "seed " << seed; break;
            case Owner::unlabeled: break;
            }
        });
    }
}

TEST(Globalize, InsensitiveToPhiUnderRescale) {
    const Scene scene = render(random_scene(GridDomain(30, 30), 3, 5));
    AffinityParams a, b;
    a.phi = 0.2;
    b.phi = 1.2;
    const RankMap ra = globalize(scene.segmentation, scene.ownership, a, one_vector());
    const RankMap rb = globalize(scene.segmentation, scene.ownership, b, one_vector());
    for (std::size_t p = 0; p < ra.theta.size(); ++p) EXPECT_NEAR(ra[p] - ra[0], rb[p] - rb[0], 1e-6);
}

TEST(Targets, BindingAndFigureBits) {
    const GridDomain dom(4, 6);
    const auto seg = halves(dom);
    RankMap r(dom);
    for (std::size_t p = 0; p < dom.size(); ++p) r.theta[p] = seg[p] == 1 ? 0.5 : 0.1;
    const int radii[] = {1};
    const Stencil st = make_stencil(radii);
    const auto t = make_targets(seg, r, st);
    const std::size_t right = *st.find({0, 1});
    const std::size_t left = *st.find({0, -1});
    const auto at = [&](std::size_t k, int row, int col) { return k * dom.size() + dom.index(row, col); };
    EXPECT_EQ(t.b[at(right, 1, 0)], 0);
    EXPECT_EQ(t.f_valid[at(right, 1, 0)], 0);
    EXPECT_EQ(t.b[at(right, 1, 2)], 1);
    EXPECT_EQ(t.f_valid[at(right, 1, 2)], 1);
    EXPECT_EQ(t.f[at(right, 1, 2)], 1);
    EXPECT_EQ(t.f[at(left, 1, 3)], 0);
    EXPECT_EQ(t.f_valid[at(left, 1, 3)], 1);
    EXPECT_EQ(t.in_grid[at(right, 1, 5)], 0);
}

TEST(Targets, TiesAreMasked) {
    const GridDomain dom(3, 4);
    const auto seg = halves(dom);
    const RankMap flat(dom);
    const auto t = make_targets(seg, flat, default_stencil());
    std::size_t b1 = 0, valid = 0;
    for (std::size_t i = 0; i < t.b.size(); ++i) {
        b1 += t.b[i];
        valid += t.f_valid[i];
        if (t.f_valid[i]) EXPECT_EQ(t.b[i], 1);
    }
    EXPECT_GT(b1, 0u);
    EXPECT_EQ(valid, 0u);
    const RelationMap rel = targets_to_relation_map(t);
    for (float f : rel.f_values()) EXPECT_EQ(f, 0.5f);
}

TEST(Targets, ValidCountIsBoundaryMinusTies) {
    const Scene scene = render(random_scene(GridDomain(32, 32), 3, 11));
    const auto t = make_targets(scene.segmentation, scene.depth, default_stencil());
    const auto ranks = transfer_fg(scene.depth, scene.segmentation);
    std::size_t b1 = 0, ties = 0, valid = 0;
    const GridDomain& dom = scene.segmentation.domain;
    for (std::size_t k = 0; k < t.stencil.size(); ++k) {
        for (std::size_t p = 0; p < dom.size(); ++p) {
            const std::size_t i = k * dom.size() + p;
            valid += t.f_valid[i];
            if (!t.b[i]) continue;
            ++b1;
            const auto q = *neighbor_of(dom, p, t.stencil[k]);
            ties += ranks[scene.segmentation[p]] == ranks[scene.segmentation[q]];
        }
    }
    EXPECT_EQ(valid, b1 - ties);
}
