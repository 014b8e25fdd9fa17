// SPDX-License-Identifier: Apache-2.0

#include "aefg/baseline.hpp"

#include "aefg/errors.hpp"

#include <cmath>

namespace aefg {

RelationMap predict_baseline(const io::Image& img, const Stencil& stencil, double sigma_color) {
    if (!(sigma_color > 0.0)) throw ConfigError("sigma_color must be positive");
    const GridDomain dom(img.height, img.width);
    RelationMap rel(dom, stencil);
    for (std::size_t k = 0; k < stencil.size(); ++k) {
        for (std::size_t p = 0; p < dom.size(); ++p) {
            auto q = neighbor_of(dom, p, stencil[k]);
            if (!q) continue;
            double dist2 = 0.0;
            for (int ch = 0; ch < img.channels; ++ch) {
                const double d = img.at(dom.row(p), dom.col(p), ch) - img.at(dom.row(*q), dom.col(*q), ch);
                dist2 += d * d;
            }
            const double b = 1.0 - std::exp(-std::sqrt(dist2) / sigma_color);
            rel.set(k, p, static_cast<float>(b), 0.5f);
        }
    }
    return rel;
}

} // namespace aefg
