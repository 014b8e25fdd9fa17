// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/io.hpp"
#include "aefg/stencil.hpp"

namespace aefg {

// Non-learned relation predictor: b(p,q) = 1 - exp(-||color(p) - color(q)|| /
// sigma_color) and f = 0.5 everywhere, i.e. no figural cue at all.
RelationMap predict_baseline(const io::Image& img, const Stencil& stencil, double sigma_color);

} // namespace aefg
