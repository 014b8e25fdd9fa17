// SPDX-License-Identifier: Apache-2.0

#include "aefg/decoder.hpp"

#include "aefg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <tuple>

namespace aefg {

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

template <class Fn>
void for_each_4_neighbor(const GridDomain& dom, std::size_t p, Fn&& fn) {
    const int r = dom.row(p), c = dom.col(p);
    if (r > 0) fn(p - static_cast<std::size_t>(dom.width()));
    if (c > 0) fn(p - 1);
    if (c + 1 < dom.width()) fn(p + 1);
    if (r + 1 < dom.height()) fn(p + static_cast<std::size_t>(dom.width()));
}

// Plateaus (4-connected equal-value sets) with no strictly lower neighbour,
// numbered in scan order. Other pixels get kNone.
std::vector<std::uint32_t> regional_minima(const BoundaryMap& bmap) {
    const GridDomain& dom = bmap.domain;
    const auto& s = bmap.strength;
    std::vector<std::uint32_t> plateau(s.size(), kNone);
    std::vector<std::uint32_t> markers(s.size(), kNone);
    std::vector<std::size_t> members;
    std::vector<std::size_t> stack;
    std::uint32_t next_plateau = 0;
    std::uint32_t next_marker = 0;
    for (std::size_t seed = 0; seed < s.size(); ++seed) {
        if (plateau[seed] != kNone) continue;
        members.clear();
        bool is_min = true;
        plateau[seed] = next_plateau;
        stack.push_back(seed);
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            members.push_back(p);
            for_each_4_neighbor(dom, p, [&](std::size_t q) {
                if (s[q] < s[p]) is_min = false;
                if (s[q] == s[p] && plateau[q] == kNone) {
                    plateau[q] = next_plateau;
                    stack.push_back(q);
                }
            });
        }
        ++next_plateau;
        if (is_min) {
            for (std::size_t p : members) markers[p] = next_marker;
            ++next_marker;
        }
    }
    return markers;
}

struct ArcStats {
    double sum = 0.0;
    std::size_t count = 0;

    double mean() const noexcept { return sum / static_cast<double>(count); }
};

} // namespace

SegmentationHierarchy watershed_hierarchy(const BoundaryMap& bmap) {
    const GridDomain& dom = bmap.domain;
    const auto& s = bmap.strength;
    if (s.size() != dom.size()) throw ConfigError("boundary map size does not match its domain");
    for (double v : s) {
        if (!std::isfinite(v)) throw ValidationError("boundary map contains a non-finite value");
    }

    // Meyer flooding keyed by (strength, pixel index); each pixel joins the
    // basin of the neighbour that queued it.
    std::vector<std::uint32_t> labels = regional_minima(bmap);
    using Key = std::pair<double, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
    std::vector<std::uint32_t> queued_from(s.size(), kNone);
    auto enqueue_neighbors = [&](std::size_t p) {
        for_each_4_neighbor(dom, p, [&](std::size_t q) {
            if (labels[q] == kNone && queued_from[q] == kNone) {
                queued_from[q] = labels[p];
                queue.push({s[q], q});
            }
        });
    };
    for (std::size_t p = 0; p < s.size(); ++p) {
        if (labels[p] != kNone) enqueue_neighbors(p);
    }
    while (!queue.empty()) {
        const std::size_t p = queue.top().second;
        queue.pop();
        labels[p] = queued_from[p];
        enqueue_neighbors(p);
    }

    SegmentationHierarchy h{compact_labels(dom, labels), {}};
    const std::uint32_t base_count = h.base.region_count;

    // Arc statistics between adjacent basins.
    std::vector<std::map<std::uint32_t, ArcStats>> adjacency(base_count);
    for_each_adjacent_pair(dom, [&](std::size_t p, std::size_t q) {
        const std::uint32_t a = h.base.labels[p], b = h.base.labels[q];
        if (a == b) return;
        const double v = std::max(s[p], s[q]);
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
            ArcStats& arc = adjacency[x][y];
            arc.sum += v;
            ++arc.count;
        }
    });

    using Candidate = std::tuple<double, std::uint32_t, std::uint32_t>;
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> candidates;
    for (std::uint32_t a = 0; a < base_count; ++a) {
        for (const auto& [b, arc] : adjacency[a]) {
            if (a < b) candidates.push({arc.mean(), a, b});
        }
    }

    std::vector<bool> alive(base_count, true);
    double level = 0.0;
    while (!candidates.empty()) {
        const auto [strength, a, b] = candidates.top();
        candidates.pop();
        if (!alive[a] || !alive[b]) continue;

        const auto parent = static_cast<std::uint32_t>(adjacency.size());
        level = std::max(level, strength);
        h.merges.push_back({a, b, parent, level});
        alive[a] = alive[b] = false;
        alive.push_back(true);

        std::map<std::uint32_t, ArcStats> merged;
        for (std::uint32_t child : {a, b}) {
            for (const auto& [nb, arc] : adjacency[child]) {
                if (nb == a || nb == b) continue;
                ArcStats& m = merged[nb];
                m.sum += arc.sum;
                m.count += arc.count;
            }
            adjacency[child].clear();
        }
        for (const auto& [nb, arc] : merged) {
            adjacency[nb].erase(a);
            adjacency[nb].erase(b);
            adjacency[nb][parent] = arc;
            candidates.push({arc.mean(), std::min(nb, parent), std::max(nb, parent)});
        }
        adjacency.push_back(std::move(merged));
    }
    return h;
}

SegmentationMap cut_hierarchy(const SegmentationHierarchy& h, double level) {
    if (!(level >= 0.0)) throw std::invalid_argument("cut level must be >= 0");
    const std::size_t base_count = h.base.region_count;
    std::vector<std::uint32_t> root(base_count + h.merges.size());
    std::iota(root.begin(), root.end(), 0u);
    for (const Merge& m : h.merges) {
        if (!(m.strength < level)) break;
        root[m.a] = m.parent;
        root[m.b] = m.parent;
    }
    auto find = [&](std::uint32_t x) {
        while (root[x] != x) x = root[x];
        return x;
    };
    std::vector<std::uint32_t> raw(h.base.labels.size());
    for (std::size_t p = 0; p < raw.size(); ++p) raw[p] = find(h.base.labels[p]);
    return compact_labels(h.base.domain, raw);
}

} // namespace aefg
