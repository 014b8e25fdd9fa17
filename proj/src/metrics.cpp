// SPDX-License-Identifier: Apache-2.0

#include "aefg/metrics.hpp"

#include "aefg/decoder.hpp"
#include "aefg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace aefg {

std::vector<RegionPair> adjacent_region_pairs(const SegmentationMap& seg) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<std::size_t>> pairs;
    for_each_adjacent_pair(seg.domain, [&](std::size_t p, std::size_t q) {
        const std::uint32_t lp = seg[p], lq = seg[q];
        if (lp == lq) return;
        auto& pixels = pairs[{std::min(lp, lq), std::max(lp, lq)}];
        pixels.insert(p);
        pixels.insert(q);
    });
    std::vector<RegionPair> out;
    out.reserve(pairs.size());
    for (auto& [key, pixels] : pairs) out.push_back({key.first, key.second, {pixels.begin(), pixels.end()}});
    return out;
}

BenchmarkReport evaluate(const RankMap& pred, const RankMap& gt, const SegmentationMap& seg) {
    if (!(pred.domain == seg.domain) || !(gt.domain == seg.domain)) {
        throw ConfigError("prediction, ground truth and segmentation must share a domain");
    }
    const std::vector<double> pred_rank = transfer_fg(pred, seg);
    const std::vector<double> gt_rank = transfer_fg(gt, seg);

    // Regions ordered front to back by ground truth; ties by region id.
    std::vector<std::uint32_t> order(seg.region_count);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t x, std::uint32_t y) { return gt_rank[x] > gt_rank[y]; });
    auto foreground = [&](double fraction) {
        const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(seg.region_count)));
        std::vector<bool> in(seg.region_count, false);
        for (std::size_t i = 0; i < count && i < order.size(); ++i) in[order[i]] = true;
        return in;
    };
    const std::vector<bool> fg50 = foreground(0.5);
    const std::vector<bool> fg25 = foreground(0.25);

    BenchmarkReport rep;
    for (const RegionPair& pair : adjacent_region_pairs(seg)) {
        const double ga = gt_rank[pair.a], gb = gt_rank[pair.b];
        if (ga == gb) continue;
        const double pa = pred_rank[pair.a], pb = pred_rank[pair.b];
        const bool correct = (ga > gb) ? (pa > pb) : (pb > pa);
        const std::size_t len = pair.boundary.size();

        rep.r_acc += {correct ? 1u : 0u, 1u};
        const Accuracy weighted{correct ? len : 0u, len};
        rep.b_acc += weighted;
        if (fg50[pair.a] || fg50[pair.b]) rep.b_acc_50 += weighted;
        if (fg25[pair.a] || fg25[pair.b]) rep.b_acc_25 += weighted;
    }
    return rep;
}

void BenchmarkAccumulator::add(const BenchmarkReport& r) {
    const Accuracy* metrics[4] = {&r.r_acc, &r.b_acc, &r.b_acc_50, &r.b_acc_25};
    for (int i = 0; i < 4; ++i) {
        if (auto v = metrics[i]->value()) {
            sums_[i] += *v;
            ++defined_[i];
        }
    }
    pooled_.r_acc += r.r_acc;
    pooled_.b_acc += r.b_acc;
    pooled_.b_acc_50 += r.b_acc_50;
    pooled_.b_acc_25 += r.b_acc_25;
    ++images_;
}

std::optional<double> BenchmarkAccumulator::mean(int metric) const noexcept {
    if (defined_[metric] == 0) return std::nullopt;
    return sums_[metric] / static_cast<double>(defined_[metric]);
}

namespace {

constexpr const char* kNames[4] = {"R-ACC", "B-ACC", "B-ACC-50", "B-ACC-25"};
constexpr const char* kKeys[4] = {"r_acc", "b_acc", "b_acc_50", "b_acc_25"};

std::string format_value(std::optional<double> v) {
    if (!v) return "undefined";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return buf;
}

nlohmann::json accuracy_json(const Accuracy& a) {
    nlohmann::json j;
    j["correct"] = a.correct;
    j["total"] = a.total;
    if (auto v = a.value()) j["value"] = *v;
    else j["value"] = nullptr;
    return j;
}

const Accuracy& pick(const BenchmarkReport& r, int i) {
    switch (i) {
    case 0: return r.r_acc;
    case 1: return r.b_acc;
    case 2: return r.b_acc_50;
    default: return r.b_acc_25;
    }
}

} // namespace

std::string report_text(const BenchmarkReport& r) {
    std::ostringstream os;
    for (int i = 0; i < 4; ++i) {
        const Accuracy& a = pick(r, i);
        os << kNames[i] << ": " << format_value(a.value()) << " (" << a.correct << "/" << a.total
           << (i == 0 ? " region pairs" : " boundary pixels") << ")\n";
    }
    return os.str();
}

std::string report_json(const BenchmarkReport& r) {
    nlohmann::json j;
    for (int i = 0; i < 4; ++i) j[kKeys[i]] = accuracy_json(pick(r, i));
    return j.dump(2);
}

std::string BenchmarkAccumulator::to_text() const {
    std::ostringstream os;
    os << "images: " << images_ << "\n";
    os << "pooled counts:\n" << report_text(pooled_);
    os << "mean over images:\n";
    for (int i = 0; i < 4; ++i) os << kNames[i] << ": " << format_value(mean(i)) << "\n";
    return os.str();
}

std::string BenchmarkAccumulator::to_json() const {
    nlohmann::json j;
    j["images"] = images_;
    for (int i = 0; i < 4; ++i) {
        j["pooled"][kKeys[i]] = accuracy_json(pick(pooled_, i));
        if (auto v = mean(i)) j["image_mean"][kKeys[i]] = *v;
        else j["image_mean"][kKeys[i]] = nullptr;
    }
    return j.dump(2);
}

} // namespace aefg
