// SPDX-License-Identifier: Apache-2.0

#include "aefg/io.hpp"

#include "aefg/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

namespace aefg::io {

namespace {

static_assert(sizeof(float) == 4 && sizeof(double) == 8);

class Writer {
public:
    void magic(const char (&m)[5]) { bytes_.insert(bytes_.end(), m, m + 4); }
    void u32(std::uint32_t v) { put(v, 4); }
    void i32(std::int32_t v) { put(static_cast<std::uint32_t>(v), 4); }
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void f32(float v) { put(std::bit_cast<std::uint32_t>(v), 4); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
    void reserve(std::size_t n) { bytes_.reserve(n); }
    Bytes take() { return std::move(bytes_); }

private:
    void put(std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    Bytes bytes_;
};

class Reader {
public:
    Reader(std::span<const std::uint8_t> bytes, const char* format) : bytes_(bytes), format_(format) {}

    void expect_magic(const char (&m)[5]) {
        need(4, "magic");
        if (std::memcmp(bytes_.data(), m, 4) != 0) {
            throw ParseError(std::string("bad magic: expected ") + m, 0);
        }
        pos_ = 4;
    }
    std::uint32_t u32(const char* what) { return static_cast<std::uint32_t>(get(4, what)); }
    std::int32_t i32(const char* what) { return static_cast<std::int32_t>(static_cast<std::uint32_t>(get(4, what))); }
    std::uint8_t u8(const char* what) { return static_cast<std::uint8_t>(get(1, what)); }
    float f32(const char* what) { return std::bit_cast<float>(static_cast<std::uint32_t>(get(4, what))); }
    double f64(const char* what) { return std::bit_cast<double>(get(8, what)); }

    // Checks up front that `count` more bytes exist so large payloads fail
    // before any allocation.
    void need(std::uint64_t count, const char* what) const {
        if (count > bytes_.size() - pos_) {
            throw ParseError(std::string(format_) + ": truncated " + what + ", need " + std::to_string(count) +
                                 " bytes, have " + std::to_string(bytes_.size() - pos_),
                             pos_);
        }
    }
    void finish() const {
        if (pos_ != bytes_.size()) {
            throw ParseError(std::string(format_) + ": " + std::to_string(bytes_.size() - pos_) + " trailing bytes",
                             pos_);
        }
    }
    std::size_t pos() const noexcept { return pos_; }

    GridDomain domain() {
        const std::size_t at = pos_;
        const std::uint32_t h = u32("height");
        const std::uint32_t w = u32("width");
        if (h < 1 || w < 1 || h > INT32_MAX || w > INT32_MAX) {
            throw ParseError(std::string(format_) + ": invalid dimensions " + std::to_string(h) + "x" +
                                 std::to_string(w),
                             at);
        }
        return GridDomain(static_cast<int>(h), static_cast<int>(w));
    }

private:
    std::uint64_t get(int n, const char* what) {
        need(static_cast<std::uint64_t>(n), what);
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }

    std::span<const std::uint8_t> bytes_;
    const char* format_;
    std::size_t pos_ = 0;
};

void put_domain(Writer& w, const GridDomain& d) {
    w.u32(static_cast<std::uint32_t>(d.height()));
    w.u32(static_cast<std::uint32_t>(d.width()));
}

} // namespace

Bytes encode_relation_map(const RelationMap& rel) {
    const GridDomain& dom = rel.domain();
    const Stencil& st = rel.stencil();
    Writer w;
    w.reserve(16 + 8 * st.size() + 8 * st.size() * dom.size());
    w.magic("AFF1");
    put_domain(w, dom);
    w.u32(static_cast<std::uint32_t>(st.size()));
    for (const Offset& o : st.offsets()) {
        w.i32(o.dy);
        w.i32(o.dx);
    }
    for (std::size_t k = 0; k < st.size(); ++k) {
        for (std::size_t p = 0; p < dom.size(); ++p) w.f32(rel.b(k, p));
        for (std::size_t p = 0; p < dom.size(); ++p) w.f32(rel.f(k, p));
    }
    return w.take();
}

RelationMap decode_relation_map(std::span<const std::uint8_t> bytes) {
    Reader r(bytes, "AFF1");
    r.expect_magic("AFF1");
    const GridDomain dom = r.domain();
    const std::size_t table_at = r.pos();
    const std::uint32_t k = r.u32("offset count");
    r.need(8ull * k, "offset table");
    std::vector<Offset> offsets(k);
    for (auto& o : offsets) {
        o.dy = r.i32("offset dy");
        o.dx = r.i32("offset dx");
    }
    std::optional<Stencil> stencil;
    try {
        stencil.emplace(std::move(offsets));
    } catch (const ConfigError& e) {
        throw ParseError(std::string("AFF1: invalid offset table: ") + e.what(), table_at);
    }
    const std::uint64_t n = dom.size();
    if (k != 0 && n > UINT64_MAX / (8ull * k)) throw ParseError("AFF1: payload size overflows", r.pos());
    r.need(8ull * k * n, "relation planes");
    std::vector<float> b(k * n), f(k * n);
    for (std::size_t kk = 0; kk < k; ++kk) {
        for (std::size_t p = 0; p < n; ++p) b[kk * n + p] = r.f32("b");
        for (std::size_t p = 0; p < n; ++p) f[kk * n + p] = r.f32("f");
    }
    r.finish();
    return RelationMap(dom, std::move(*stencil), std::move(b), std::move(f));
}

Bytes encode_embedding(const EmbeddingResult& emb, const GridDomain& domain) {
    Writer w;
    w.magic("EIG1");
    put_domain(w, domain);
    w.u32(static_cast<std::uint32_t>(emb.count()));
    for (std::size_t i = 0; i < emb.count(); ++i) {
        const auto& z = emb.eigenvectors[i];
        if (z.size() != domain.size()) throw ConfigError("eigenvector length does not match the domain");
        w.f64(emb.eigenvalues[i]);
        for (const cplx& v : z) {
            w.f32(static_cast<float>(v.real()));
            w.f32(static_cast<float>(v.imag()));
        }
    }
    return w.take();
}

EmbeddingResult decode_embedding(std::span<const std::uint8_t> bytes, GridDomain* domain) {
    Reader r(bytes, "EIG1");
    r.expect_magic("EIG1");
    const GridDomain dom = r.domain();
    const std::uint32_t m = r.u32("eigenvector count");
    const std::uint64_t n = dom.size();
    if (m != 0 && (8 + 8 * n) > UINT64_MAX / m) throw ParseError("EIG1: payload size overflows", r.pos());
    r.need(static_cast<std::uint64_t>(m) * (8 + 8 * n), "eigenvectors");
    EmbeddingResult emb;
    emb.n = n;
    for (std::uint32_t i = 0; i < m; ++i) {
        emb.eigenvalues.push_back(r.f64("eigenvalue"));
        std::vector<cplx> z(n);
        for (auto& v : z) {
            const float re = r.f32("real part");
            const float im = r.f32("imaginary part");
            v = {re, im};
        }
        emb.eigenvectors.push_back(std::move(z));
    }
    r.finish();
    if (domain) *domain = dom;
    return emb;
}

Bytes encode_segmentation(const SegmentationMap& seg) {
    Writer w;
    w.magic("SEG1");
    put_domain(w, seg.domain);
    w.u32(seg.region_count);
    for (std::uint32_t l : seg.labels) w.u32(l);
    return w.take();
}

SegmentationMap decode_segmentation(std::span<const std::uint8_t> bytes) {
    Reader r(bytes, "SEG1");
    r.expect_magic("SEG1");
    const GridDomain dom = r.domain();
    const std::uint32_t count = r.u32("region count");
    r.need(4ull * dom.size(), "labels");
    std::vector<std::uint32_t> labels(dom.size());
    for (auto& l : labels) l = r.u32("label");
    r.finish();
    SegmentationMap seg(dom, std::move(labels), count);
    seg.validate(false);
    return seg;
}

Bytes encode_rank_map(const RankMap& rank) {
    Writer w;
    w.magic("RNK1");
    put_domain(w, rank.domain);
    for (double v : rank.theta) w.f32(static_cast<float>(v));
    return w.take();
}

RankMap decode_rank_map(std::span<const std::uint8_t> bytes) {
    Reader r(bytes, "RNK1");
    r.expect_magic("RNK1");
    const GridDomain dom = r.domain();
    r.need(4ull * dom.size(), "ranks");
    std::vector<double> values(dom.size());
    for (auto& v : values) v = r.f32("rank");
    r.finish();
    return RankMap(dom, std::move(values));
}

Bytes encode_ownership(const OwnershipLabels& own) {
    Writer w;
    w.magic("OWN1");
    put_domain(w, own.domain());
    for (auto v : own.right()) w.u8(v);
    for (auto v : own.down()) w.u8(v);
    return w.take();
}

OwnershipLabels decode_ownership(std::span<const std::uint8_t> bytes) {
    Reader r(bytes, "OWN1");
    r.expect_magic("OWN1");
    const GridDomain dom = r.domain();
    r.need(2ull * dom.size(), "ownership planes");
    std::vector<std::uint8_t> right(dom.size()), down(dom.size());
    for (auto& v : right) v = r.u8("label");
    for (auto& v : down) v = r.u8("label");
    r.finish();
    return OwnershipLabels(dom, std::move(right), std::move(down));
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error while reading " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("error while writing " + path.string());
}

} // namespace aefg::io
