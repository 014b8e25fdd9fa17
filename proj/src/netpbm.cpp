// SPDX-License-Identifier: Apache-2.0

#include "aefg/io.hpp"

#include "aefg/errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <string>

namespace aefg::io {

namespace {

class HeaderScanner {
public:
    explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Next whitespace-delimited decimal field, skipping '#' comments.
    long next_int(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1'000'000'000) throw ParseError(std::string("netpbm: ") + what + " too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError(std::string("netpbm: expected ") + what, start);
        return v;
    }
    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_start() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw ParseError("netpbm: missing whitespace before raster", pos_);
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

} // namespace

Image decode_netpbm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
        std::string got = bytes.size() >= 2 ? std::string(bytes.begin(), bytes.begin() + 2) : std::string("?");
        throw ParseError("unsupported image format '" + got +
                             "'; only binary PGM (P5) and PPM (P6) are read. Convert first, e.g. "
                             "`convert input.png output.ppm`",
                         0);
    }
    HeaderScanner hs(bytes);
    Image img;
    img.channels = bytes[1] == '5' ? 1 : 3;
    img.width = static_cast<int>(hs.next_int("width"));
    img.height = static_cast<int>(hs.next_int("height"));
    const long maxval = hs.next_int("maxval");
    if (img.width < 1 || img.height < 1) throw ParseError("netpbm: empty image", 2);
    if (maxval < 1 || maxval > 65535) throw ParseError("netpbm: maxval must lie in [1, 65535]", 2);
    std::size_t pos = hs.raster_start();

    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t samples =
        static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * static_cast<std::size_t>(img.channels);
    if (bytes.size() - pos < samples * bytes_per_sample) {
        throw ParseError("netpbm: truncated raster", bytes.size());
    }
    img.data.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        unsigned v = bytes[pos++];
        if (bytes_per_sample == 2) v = (v << 8) | bytes[pos++];
        img.data[i] = std::min(1.0, static_cast<double>(v) / static_cast<double>(maxval));
    }
    return img;
}

Image load_image(const std::filesystem::path& path) { return decode_netpbm(read_file(path)); }

Bytes encode_netpbm(const Image& img) {
    if (img.channels != 1 && img.channels != 3) throw ConfigError("netpbm output needs 1 or 3 channels");
    const std::string header = std::string(img.channels == 1 ? "P5" : "P6") + "\n" + std::to_string(img.width) + " " +
                               std::to_string(img.height) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.reserve(out.size() + img.data.size());
    for (double v : img.data) {
        const double c = std::clamp(v, 0.0, 1.0);
        out.push_back(static_cast<std::uint8_t>(std::lround(c * 255.0)));
    }
    return out;
}

void write_image(const std::filesystem::path& path, const Image& img) { write_file(path, encode_netpbm(img)); }

Image normalized_gray(const GridDomain& domain, std::span<const double> values) {
    Image img{domain.height(), domain.width(), 1, std::vector<double>(values.begin(), values.end())};
    const double hi = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
    for (double& v : img.data) v = hi > 0.0 ? std::max(0.0, v) / hi : 0.0;
    return img;
}

Bytes encode_pfm(const GridDomain& domain, std::span<const double> values) {
    const std::string header = "Pf\n" + std::to_string(domain.width()) + " " + std::to_string(domain.height()) + "\n-1.0\n";
    Bytes out(header.begin(), header.end());
    for (int r = domain.height() - 1; r >= 0; --r) {
        for (int c = 0; c < domain.width(); ++c) {
            const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(values[domain.index(r, c)]));
            for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
        }
    }
    return out;
}

} // namespace aefg::io
