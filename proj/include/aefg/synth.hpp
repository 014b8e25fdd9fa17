// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/groundtruth.hpp"
#include "aefg/maps.hpp"

#include <cstdint>
#include <vector>

namespace aefg {

enum class ShapeKind : std::uint8_t { rectangle, disk };

// Rectangles use (top, left, height, width); disks use centre (top, left) and
// radius in `height`. Depth 0 is reserved for the background; larger depths
// occlude smaller ones.
struct Shape {
    ShapeKind kind = ShapeKind::rectangle;
    int top = 0;
    int left = 0;
    int height = 0;
    int width = 0;
    int depth = 1;

    bool covers(int row, int col) const noexcept;
};

struct SceneSpec {
    GridDomain domain{1, 1};
    std::vector<Shape> shapes;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Scene {
    SegmentationMap segmentation;
    RankMap depth;          // true layer depth per pixel
    OwnershipLabels ownership;
    std::vector<int> visible; // per pixel: 0 background, i + 1 for shapes[i]
};

// Painter's rasterization with hard edges. Regions are the 4-connected
// fragments of each visible shape; every boundary pair is owned by its
// deeper-layer (closer) side. Throws ValidationError for a fully hidden shape.
Scene render(const SceneSpec& spec);

// Deterministic for a fixed seed. Shape extents lie within [10%, 60%] of the
// smaller image side, depths are a permutation of 1..n_shapes, and specs
// whose render would hide a shape entirely are redrawn.
SceneSpec random_scene(const GridDomain& domain, int n_shapes, std::uint64_t seed);

// Gray image in [0,1] with a distinct intensity per visible shape,
// row-major.
std::vector<double> render_intensity(const SceneSpec& spec, const Scene& scene);

} // namespace aefg
