// SPDX-License-Identifier: Apache-2.0

#include "aefg/synth.hpp"

#include "aefg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace aefg {

bool Shape::covers(int row, int col) const noexcept {
    if (kind == ShapeKind::rectangle) {
        return row >= top && row < top + height && col >= left && col < left + width;
    }
    const long dy = row - top, dx = col - left;
    return dy * dy + dx * dx <= static_cast<long>(height) * height;
}

void SceneSpec::validate() const {
    std::set<int> depths;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const Shape& s = shapes[i];
        const std::string id = "shape " + std::to_string(i);
        if (s.depth < 1) throw ValidationError(id + " has depth < 1; depth 0 is the background");
        if (!depths.insert(s.depth).second) throw ValidationError(id + " repeats depth " + std::to_string(s.depth));
        if (s.kind == ShapeKind::rectangle) {
            if (s.height < 1 || s.width < 1 || s.top < 0 || s.left < 0 || s.top + s.height > domain.height() ||
                s.left + s.width > domain.width()) {
                throw ValidationError(id + " does not fit inside the domain");
            }
        } else {
            if (s.height < 0 || s.top - s.height < 0 || s.left - s.height < 0 ||
                s.top + s.height >= domain.height() || s.left + s.height >= domain.width()) {
                throw ValidationError(id + " does not fit inside the domain");
            }
        }
    }
}

Scene render(const SceneSpec& spec) {
    spec.validate();
    const GridDomain& dom = spec.domain;
    std::vector<int> visible(dom.size(), 0);
    std::vector<double> depth(dom.size(), 0.0);
    for (std::size_t p = 0; p < dom.size(); ++p) {
        int best = 0;
        for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
            const Shape& s = spec.shapes[i];
            if (s.depth > best && s.covers(dom.row(p), dom.col(p))) {
                best = s.depth;
                visible[p] = static_cast<int>(i) + 1;
            }
        }
        depth[p] = best;
    }

    std::vector<bool> seen(spec.shapes.size() + 1, false);
    for (int v : visible) seen[static_cast<std::size_t>(v)] = true;
    for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
        if (!seen[i + 1]) throw ValidationError("shape " + std::to_string(i) + " is fully occluded");
    }

    std::vector<std::uint32_t> raw(visible.begin(), visible.end());
    SegmentationMap seg = connected_components(dom, raw);

    OwnershipLabels own(dom);
    for_each_adjacent_pair(dom, [&](std::size_t p, std::size_t q) {
        if (seg[p] == seg[q]) return;
        own.set_owner(p, q, depth[p] > depth[q] ? p : q);
    });

    return {std::move(seg), RankMap(dom, std::move(depth)), std::move(own), std::move(visible)};
}

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    // Inclusive range; modulo bias is irrelevant at these sizes and the
    // mapping is identical on every standard library.
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

bool renders(const SceneSpec& spec) {
    try {
        render(spec);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

} // namespace

SceneSpec random_scene(const GridDomain& domain, int n_shapes, std::uint64_t seed) {
    if (n_shapes < 0) throw std::invalid_argument("shape count must be >= 0");
    const int side = std::min(domain.height(), domain.width());
    const int min_extent = std::max(1, static_cast<int>(std::ceil(0.1 * side)));
    const int max_extent = std::max(min_extent, static_cast<int>(std::floor(0.6 * side)));

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        SceneSpec spec{domain, {}, seed};
        std::vector<int> depths(static_cast<std::size_t>(n_shapes));
        std::iota(depths.begin(), depths.end(), 1);
        for (int i = n_shapes - 1; i > 0; --i) std::swap(depths[static_cast<std::size_t>(i)], depths[static_cast<std::size_t>(uniform_int(rng, 0, i))]);

        for (int i = 0; i < n_shapes; ++i) {
            Shape s;
            s.depth = depths[static_cast<std::size_t>(i)];
            const bool disk = (rng() & 1u) != 0;
            const int min_radius = min_extent / 2;     // diameter 2r+1 >= min_extent
            const int max_radius = (max_extent - 1) / 2; // diameter 2r+1 <= max_extent
            if (disk && max_radius >= std::max(min_radius, 1)) {
                s.kind = ShapeKind::disk;
                s.height = uniform_int(rng, std::max(min_radius, 1), max_radius);
                s.top = uniform_int(rng, s.height, domain.height() - 1 - s.height);
                s.left = uniform_int(rng, s.height, domain.width() - 1 - s.height);
            } else {
                s.kind = ShapeKind::rectangle;
                s.height = uniform_int(rng, min_extent, max_extent);
                s.width = uniform_int(rng, min_extent, max_extent);
                s.top = uniform_int(rng, 0, domain.height() - s.height);
                s.left = uniform_int(rng, 0, domain.width() - s.width);
            }
            spec.shapes.push_back(s);
        }
        if (renders(spec)) return spec;
    }
    throw ValidationError("could not draw a scene with every shape visible");
}

std::vector<double> render_intensity(const SceneSpec& spec, const Scene& scene) {
    const std::size_t n = spec.shapes.size();
    std::vector<double> level(n + 1, 0.0);
    // Spread shape intensities evenly above a dark background.
    for (std::size_t i = 0; i <= n; ++i) level[i] = (n == 0) ? 0.2 : 0.1 + 0.8 * static_cast<double>(i) / static_cast<double>(n);
    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = n; i > 1; --i) std::swap(level[i], level[1 + rng() % i]);
    std::vector<double> out(scene.visible.size());
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = level[static_cast<std::size_t>(scene.visible[p])];
    return out;
}

} // namespace aefg
