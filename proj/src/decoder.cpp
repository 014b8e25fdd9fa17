// SPDX-License-Identifier: Apache-2.0

#include "aefg/decoder.hpp"

#include "aefg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aefg {

RankMap::RankMap(GridDomain d, std::vector<double> values) : domain(d), theta(std::move(values)) {
    if (theta.size() != domain.size()) throw ValidationError("rank map size does not match its domain");
}

double RankMap::spread() const noexcept {
    if (theta.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(theta.begin(), theta.end());
    return *hi - *lo;
}

SegmentationMap::SegmentationMap(GridDomain d, std::vector<std::uint32_t> l, std::uint32_t count)
    : domain(d), labels(std::move(l)), region_count(count) {
    if (labels.size() != domain.size()) throw ValidationError("label map size does not match its domain");
}

void SegmentationMap::validate(bool require_connected) const {
    std::vector<std::size_t> sizes(region_count, 0);
    for (std::size_t p = 0; p < labels.size(); ++p) {
        if (labels[p] >= region_count) {
            throw ValidationError("label " + std::to_string(labels[p]) + " at pixel " + std::to_string(p) +
                                  " is not below the region count " + std::to_string(region_count));
        }
        ++sizes[labels[p]];
    }
    for (std::uint32_t r = 0; r < region_count; ++r) {
        if (sizes[r] == 0) throw ValidationError("region " + std::to_string(r) + " is empty");
    }
    if (require_connected) {
        const SegmentationMap cc = connected_components(domain, labels);
        if (cc.region_count != region_count) throw ValidationError("a region is not 4-connected");
    }
}

SegmentationMap compact_labels(const GridDomain& domain, const std::vector<std::uint32_t>& raw) {
    constexpr std::uint32_t kUnset = UINT32_MAX;
    std::vector<std::uint32_t> remap;
    std::vector<std::uint32_t> out(raw.size());
    std::uint32_t next = 0;
    for (std::size_t p = 0; p < raw.size(); ++p) {
        if (raw[p] >= remap.size()) remap.resize(static_cast<std::size_t>(raw[p]) + 1, kUnset);
        if (remap[raw[p]] == kUnset) remap[raw[p]] = next++;
        out[p] = remap[raw[p]];
    }
    return {domain, std::move(out), next};
}

SegmentationMap connected_components(const GridDomain& domain, const std::vector<std::uint32_t>& raw) {
    constexpr std::uint32_t kUnset = UINT32_MAX;
    std::vector<std::uint32_t> out(raw.size(), kUnset);
    std::vector<std::size_t> stack;
    std::uint32_t next = 0;
    for (std::size_t seed = 0; seed < raw.size(); ++seed) {
        if (out[seed] != kUnset) continue;
        out[seed] = next;
        stack.push_back(seed);
        while (!stack.empty()) {
            const std::size_t p = stack.back();
            stack.pop_back();
            const int r = domain.row(p), c = domain.col(p);
            const int nr[4] = {r - 1, r + 1, r, r};
            const int nc[4] = {c, c, c - 1, c + 1};
            for (int i = 0; i < 4; ++i) {
                if (!domain.contains(nr[i], nc[i])) continue;
                const std::size_t q = domain.index(nr[i], nc[i]);
                if (out[q] == kUnset && raw[q] == raw[p]) {
                    out[q] = next;
                    stack.push_back(q);
                }
            }
        }
        ++next;
    }
    return {domain, std::move(out), next};
}

RankMap fg_order(const EmbeddingResult& emb, const GridDomain& domain) {
    if (emb.count() < 1) throw ConfigError("figure/ground decoding needs at least one eigenvector");
    const auto& z0 = emb.eigenvectors.front();
    if (z0.size() != domain.size()) throw ConfigError("eigenvector length does not match the image domain");
    RankMap out(domain);
    for (std::size_t p = 0; p < z0.size(); ++p) out.theta[p] = std::arg(z0[p]);
    return out;
}

BoundaryMap spectral_boundaries(const EmbeddingResult& emb, const GridDomain& domain, double lambda_floor) {
    if (emb.count() < 2) throw ConfigError("spectral boundaries need at least two eigenvectors");
    const int h = domain.height();
    const int w = domain.width();
    BoundaryMap out{domain, std::vector<double>(domain.size(), 0.0)};

    for (std::size_t k = 1; k < emb.count(); ++k) {
        const auto& z = emb.eigenvectors[k];
        if (z.size() != domain.size()) throw ConfigError("eigenvector length does not match the image domain");
        const double weight = 1.0 / std::sqrt(std::max(emb.eigenvalues[k], lambda_floor));
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                cplx dx = 0.0, dy = 0.0;
                if (w > 1) {
                    if (c == 0) dx = z[domain.index(r, 1)] - z[domain.index(r, 0)];
                    else if (c == w - 1) dx = z[domain.index(r, c)] - z[domain.index(r, c - 1)];
                    else dx = 0.5 * (z[domain.index(r, c + 1)] - z[domain.index(r, c - 1)]);
                }
                if (h > 1) {
                    if (r == 0) dy = z[domain.index(1, c)] - z[domain.index(0, c)];
                    else if (r == h - 1) dy = z[domain.index(r, c)] - z[domain.index(r - 1, c)];
                    else dy = 0.5 * (z[domain.index(r + 1, c)] - z[domain.index(r - 1, c)]);
                }
                out.strength[domain.index(r, c)] += weight * std::sqrt(std::norm(dx) + std::norm(dy));
            }
        }
    }
    return out;
}

std::vector<double> transfer_fg(const RankMap& rank, const SegmentationMap& seg) {
    if (!(rank.domain == seg.domain)) throw ConfigError("rank map and segmentation have different domains");
    std::vector<std::vector<double>> members(seg.region_count);
    for (std::size_t p = 0; p < seg.labels.size(); ++p) members[seg.labels[p]].push_back(rank.theta[p]);
    std::vector<double> out(seg.region_count, 0.0);
    for (std::uint32_t r = 0; r < seg.region_count; ++r) {
        auto& v = members[r];
        if (v.empty()) throw ValidationError("region " + std::to_string(r) + " is empty");
        const std::size_t mid = (v.size() - 1) / 2;
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
        out[r] = v[mid];
    }
    return out;
}

RankMap paint_regions(const SegmentationMap& seg, const std::vector<double>& region_values) {
    if (region_values.size() != seg.region_count) throw ConfigError("one value per region required");
    RankMap out(seg.domain);
    for (std::size_t p = 0; p < seg.labels.size(); ++p) out.theta[p] = region_values[seg.labels[p]];
    return out;
}

} // namespace aefg
