// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/decoder.hpp"
#include "aefg/eigensolver.hpp"
#include "aefg/groundtruth.hpp"
#include "aefg/maps.hpp"
#include "aefg/stencil.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace aefg::io {

// All binary formats start with a 4-byte ASCII magic followed by u32
// height and width; every integer and float is little-endian. Byte layouts
// are documented in docs/formats.md.
//
//   AFF1  relation tensors: u32 K, K x (i32 dy, i32 dx), then per offset the
//         b plane and the f plane as row-major float32
//   EIG1  embedding: u32 m, then per eigenvector a float64 eigenvalue and
//         n interleaved (re, im) float32 pairs
//   SEG1  segmentation: u32 region count, row-major u32 labels
//   RNK1  rank map: row-major float32
//   OWN1  ownership sidecar: u8 plane for right-neighbour pairs, u8 plane
//         for lower-neighbour pairs; 0 unlabeled, 1 lower index owns,
//         2 higher index owns

using Bytes = std::vector<std::uint8_t>;

Bytes encode_relation_map(const RelationMap& rel);
RelationMap decode_relation_map(std::span<const std::uint8_t> bytes);

// Eigenvectors are narrowed to float32; residuals are not stored.
Bytes encode_embedding(const EmbeddingResult& emb, const GridDomain& domain);
EmbeddingResult decode_embedding(std::span<const std::uint8_t> bytes, GridDomain* domain = nullptr);

Bytes encode_segmentation(const SegmentationMap& seg);
SegmentationMap decode_segmentation(std::span<const std::uint8_t> bytes);

// Values are narrowed to float32.
Bytes encode_rank_map(const RankMap& rank);
RankMap decode_rank_map(std::span<const std::uint8_t> bytes);

Bytes encode_ownership(const OwnershipLabels& own);
OwnershipLabels decode_ownership(std::span<const std::uint8_t> bytes);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

// Netpbm images with values in [0,1], row-major, channels interleaved.
struct Image {
    int height = 0;
    int width = 0;
    int channels = 1;
    std::vector<double> data;

    double at(int row, int col, int ch) const noexcept {
        return data[(static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)) *
                        static_cast<std::size_t>(channels) +
                    static_cast<std::size_t>(ch)];
    }
};

// Binary P5 (gray) or P6 (RGB), maxval up to 65535.
Image decode_netpbm(std::span<const std::uint8_t> bytes);
Image load_image(const std::filesystem::path& path);

// 8-bit P5/P6 depending on channel count; values are clamped to [0,1].
Bytes encode_netpbm(const Image& img);
void write_image(const std::filesystem::path& path, const Image& img);

// Gray preview scaled so the maximum maps to white.
Image normalized_gray(const GridDomain& domain, std::span<const double> values);

// Little-endian PFM (single channel, bottom-to-top rows per the format).
Bytes encode_pfm(const GridDomain& domain, std::span<const double> values);

} // namespace aefg::io
