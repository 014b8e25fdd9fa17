// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/maps.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aefg {

struct RegionPair {
    std::uint32_t a; // a < b
    std::uint32_t b;
    // Pixels of either region with a 4-neighbour in the other, ascending.
    std::vector<std::size_t> boundary;
};

// Ordered by (a, b).
std::vector<RegionPair> adjacent_region_pairs(const SegmentationMap& seg);

struct Accuracy {
    std::size_t correct = 0;
    std::size_t total = 0;

    // Undefined when nothing was evaluated.
    std::optional<double> value() const noexcept {
        if (total == 0) return std::nullopt;
        return static_cast<double>(correct) / static_cast<double>(total);
    }
    Accuracy& operator+=(const Accuracy& o) noexcept {
        correct += o.correct;
        total += o.total;
        return *this;
    }
    friend bool operator==(const Accuracy&, const Accuracy&) = default;
};

// R-ACC counts region pairs; the B-ACC variants count boundary pixels.
struct BenchmarkReport {
    Accuracy r_acc;
    Accuracy b_acc;
    Accuracy b_acc_50;
    Accuracy b_acc_25;

    friend bool operator==(const BenchmarkReport&, const BenchmarkReport&) = default;
};

// Transfers both maps onto seg by region median and scores the predicted
// ordering of each adjacent region pair that lies in different ground-truth
// layers. Predicted ties count as wrong. The foreground restrictions keep
// pairs with at least one region among the ceil(fraction * regions) most
// figural ground-truth regions.
BenchmarkReport evaluate(const RankMap& pred, const RankMap& gt, const SegmentationMap& seg);

// Dataset-level aggregation. Pooled metrics sum counts over images; the
// per-image means average each image's defined value.
class BenchmarkAccumulator {
public:
    void add(const BenchmarkReport& r);

    const BenchmarkReport& pooled() const noexcept { return pooled_; }
    std::optional<double> mean_r_acc() const noexcept { return mean(0); }
    std::optional<double> mean_b_acc() const noexcept { return mean(1); }
    std::optional<double> mean_b_acc_50() const noexcept { return mean(2); }
    std::optional<double> mean_b_acc_25() const noexcept { return mean(3); }
    std::size_t images() const noexcept { return images_; }

    std::string to_text() const;
    std::string to_json() const;

private:
    std::optional<double> mean(int metric) const noexcept;

    BenchmarkReport pooled_;
    double sums_[4] = {0, 0, 0, 0};
    std::size_t defined_[4] = {0, 0, 0, 0};
    std::size_t images_ = 0;
};

std::string report_text(const BenchmarkReport& r);
std::string report_json(const BenchmarkReport& r);

} // namespace aefg
