// SPDX-License-Identifier: Apache-2.0

// Generators and brute-force oracles shared by the unit and acceptance
// suites. Oracles here deliberately avoid the library's own helpers.

#pragma once

#include "aefg/affinity.hpp"
#include "aefg/maps.hpp"
#include "aefg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <vector>

namespace aefg::testkit {

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Sparse Hermitian system with a ring backbone (so every degree is positive)
// plus random extra links. D is the row sum of |W|.
inline AffinitySystem random_hermitian_system(std::size_t n, double density, std::mt19937_64& rng,
                                              bool real_only = false) {
    std::set<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t p = 0; p < n; ++p) links.insert({std::min(p, (p + 1) % n), std::max(p, (p + 1) % n)});
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            if (uniform(rng) < density) links.insert({p, q});
    std::vector<Triplet> entries;
    for (auto [p, q] : links) {
        if (p == q) continue;
        const double mag = uniform(rng, 0.1, 1.0);
        const double ang = real_only ? 0.0 : uniform(rng, -1.2, 1.2);
        const cplx w = std::polar(mag, ang);
        entries.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), w});
        entries.push_back({static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(p), std::conj(w)});
    }
    SparseHermitianMatrix w = SparseHermitianMatrix::from_triplets(n, std::move(entries));
    DegreeVector d = degree_of(w);
    return {std::move(w), std::move(d)};
}

// Manhattan Voronoi partition split into 4-connected pieces, at most
// max_regions regions.
inline SegmentationMap random_segmentation(const GridDomain& dom, int max_regions, std::mt19937_64& rng) {
    while (true) {
        const int seeds = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_regions));
        std::vector<std::pair<int, int>> pts;
        for (int i = 0; i < seeds; ++i)
            pts.push_back({static_cast<int>(rng() % static_cast<std::uint64_t>(dom.height())),
                           static_cast<int>(rng() % static_cast<std::uint64_t>(dom.width()))});
        std::vector<std::uint32_t> raw(dom.size());
        for (std::size_t p = 0; p < dom.size(); ++p) {
            int best = 0, best_d = 1 << 30;
            for (int i = 0; i < seeds; ++i) {
                const int d = std::abs(pts[i].first - dom.row(p)) + std::abs(pts[i].second - dom.col(p));
                if (d < best_d) best_d = d, best = i;
            }
            raw[p] = static_cast<std::uint32_t>(best);
        }
        SegmentationMap seg = connected_components(dom, raw);
        if (seg.region_count <= static_cast<std::uint32_t>(max_regions)) return seg;
    }
}

inline double lower_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

// Exhaustive evaluation: every region pair, every pixel, no shared helpers.
inline BenchmarkReport brute_force_evaluate(const RankMap& pred, const RankMap& gt, const SegmentationMap& seg) {
    const GridDomain& dom = seg.domain;
    const std::uint32_t nreg = seg.region_count;
    std::vector<double> pm(nreg), gm(nreg);
    for (std::uint32_t r = 0; r < nreg; ++r) {
        std::vector<double> pv, gv;
        for (std::size_t p = 0; p < dom.size(); ++p)
            if (seg.labels[p] == r) pv.push_back(pred.theta[p]), gv.push_back(gt.theta[p]);
        pm[r] = lower_median(pv);
        gm[r] = lower_median(gv);
    }
    auto in_top = [&](std::uint32_t r, double fraction) {
        const auto count = static_cast<std::uint32_t>(std::ceil(fraction * nreg));
        // Rank of r in the front-to-back order (ties by id).
        std::uint32_t ahead = 0;
        for (std::uint32_t o = 0; o < nreg; ++o)
            if (gm[o] > gm[r] || (gm[o] == gm[r] && o < r)) ++ahead;
        return ahead < count;
    };
    auto touches = [&](std::size_t p, std::uint32_t other) {
        const int r = dom.row(p), c = dom.col(p);
        const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, -1, 1};
        for (int i = 0; i < 4; ++i) {
            if (dom.contains(r + dr[i], c + dc[i]) && seg.labels[dom.index(r + dr[i], c + dc[i])] == other) return true;
        }
        return false;
    };
    BenchmarkReport rep;
    for (std::uint32_t a = 0; a < nreg; ++a) {
        for (std::uint32_t b = a + 1; b < nreg; ++b) {
            std::size_t len = 0;
            for (std::size_t p = 0; p < dom.size(); ++p) {
                if ((seg.labels[p] == a && touches(p, b)) || (seg.labels[p] == b && touches(p, a))) ++len;
            }
            if (len == 0 || gm[a] == gm[b]) continue;
            const bool ok = gm[a] > gm[b] ? pm[a] > pm[b] : pm[b] > pm[a];
            rep.r_acc.total += 1;
            rep.r_acc.correct += ok;
            rep.b_acc.total += len;
            rep.b_acc.correct += ok ? len : 0;
            if (in_top(a, 0.5) || in_top(b, 0.5)) {
                rep.b_acc_50.total += len;
                rep.b_acc_50.correct += ok ? len : 0;
            }
            if (in_top(a, 0.25) || in_top(b, 0.25)) {
                rep.b_acc_25.total += len;
                rep.b_acc_25.correct += ok ? len : 0;
            }
        }
    }
    return rep;
}

// |<a, D b>| for D-normalized vectors; 1 means identical up to phase.
inline double d_overlap(const std::vector<cplx>& a, const std::vector<cplx>& b, const DegreeVector& d) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * d[i] * b[i];
    return std::abs(s);
}

} // namespace aefg::testkit
