// SPDX-License-Identifier: Apache-2.0

#include "aefg/stencil.hpp"

#include "aefg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aefg {

GridDomain::GridDomain(int height, int width) : height_(height), width_(width) {
    if (height < 1 || width < 1) {
        throw std::invalid_argument("grid domain needs height >= 1 and width >= 1, got " +
                                    std::to_string(height) + "x" + std::to_string(width));
    }
}

int Offset::radius() const noexcept { return std::max(std::abs(dy), std::abs(dx)); }

Stencil::Stencil(std::vector<Offset> offsets) : offsets_(std::move(offsets)) {
    const std::size_t k = offsets_.size();
    opposite_.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        const Offset& o = offsets_[i];
        if (o.dy == 0 && o.dx == 0) {
            throw ConfigError("stencil offset " + std::to_string(i) + " is zero");
        }
        for (std::size_t j = i + 1; j < k; ++j) {
            if (offsets_[j] == o) {
                throw ConfigError("stencil offset (" + std::to_string(o.dy) + "," +
                                  std::to_string(o.dx) + ") appears twice");
            }
        }
        auto neg = find(-o);
        if (!neg) {
            throw ConfigError("stencil is not closed under negation: (" + std::to_string(o.dy) + "," +
                              std::to_string(o.dx) + ") has no opposite");
        }
        opposite_[i] = *neg;
    }
}

std::optional<std::size_t> Stencil::find(Offset o) const noexcept {
    auto it = std::find(offsets_.begin(), offsets_.end(), o);
    if (it == offsets_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - offsets_.begin());
}

Stencil make_stencil(std::span<const int> radii) {
    std::vector<int> sorted(radii.begin(), radii.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("stencil radii must be distinct");
    }
    std::vector<Offset> offsets;
    offsets.reserve(sorted.size() * 8);
    for (int r : sorted) {
        if (r < 1) throw ConfigError("stencil radius must be >= 1, got " + std::to_string(r));
        for (int dy : {-r, 0, r}) {
            for (int dx : {-r, 0, r}) {
                if (dy == 0 && dx == 0) continue;
                offsets.push_back({dy, dx});
            }
        }
    }
    return Stencil(std::move(offsets));
}

Stencil default_stencil() {
    static constexpr int kRadii[] = {1, 4, 16};
    return make_stencil(kRadii);
}

std::optional<std::size_t> neighbor_of(const GridDomain& domain, std::size_t p, Offset offset) {
    if (p >= domain.size()) {
        throw std::invalid_argument("pixel index " + std::to_string(p) + " outside domain");
    }
    const int r = domain.row(p) + offset.dy;
    const int c = domain.col(p) + offset.dx;
    if (!domain.contains(r, c)) return std::nullopt;
    return domain.index(r, c);
}

RelationMap::RelationMap(GridDomain domain, Stencil stencil)
    : domain_(domain), stencil_(std::move(stencil)), b_(stencil_.size() * domain_.size(), 0.0f),
      f_(stencil_.size() * domain_.size(), 0.5f) {}

RelationMap::RelationMap(GridDomain domain, Stencil stencil, std::vector<float> b, std::vector<float> f)
    : domain_(domain), stencil_(std::move(stencil)), b_(std::move(b)), f_(std::move(f)) {
    const std::size_t expected = stencil_.size() * domain_.size();
    if (b_.size() != expected || f_.size() != expected) {
        throw ValidationError("relation tensor extent mismatch: expected " + std::to_string(expected) +
                              " values per tensor");
    }
    auto in_unit = [](float v) { return v >= 0.0f && v <= 1.0f; };
    if (!std::all_of(b_.begin(), b_.end(), in_unit) || !std::all_of(f_.begin(), f_.end(), in_unit)) {
        throw ValidationError("relation probabilities must lie in [0,1]");
    }
}

void RelationMap::set(std::size_t k, std::size_t p, float b, float f) {
    if (!(b >= 0.0f && b <= 1.0f && f >= 0.0f && f <= 1.0f)) {
        throw std::invalid_argument("relation probabilities must lie in [0,1]");
    }
    b_[slot(k, p)] = b;
    f_[slot(k, p)] = f;
}

std::vector<double> boundary_prob(const RelationMap& rel) {
    const Stencil& st = rel.stencil();
    std::vector<std::size_t> ring;
    for (std::size_t k = 0; k < st.size(); ++k) {
        if (st[k].radius() == 1) ring.push_back(k);
    }
    if (ring.size() != 8) {
        throw ConfigError("boundary probability needs the full radius-1 ring in the stencil");
    }

    const GridDomain& dom = rel.domain();
    std::vector<double> e(dom.size(), 0.0);
    for (std::size_t p = 0; p < dom.size(); ++p) {
        double sum = 0.0;
        int count = 0;
        for (std::size_t k : ring) {
            if (neighbor_of(dom, p, st[k])) {
                sum += rel.b(k, p);
                ++count;
            }
        }
        if (count > 0) e[p] = sum / count;
    }
    return e;
}

} // namespace aefg
