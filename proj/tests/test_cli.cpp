// SPDX-License-Identifier: Apache-2.0

#include "aefg/decoder.hpp"
#include "aefg/io.hpp"
#include "aefg/synth.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace aefg;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("aefg_cli_" + std::to_string(::getpid()) + "_" + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    RunResult run(const std::string& args, const std::string& env = "") const {
        const fs::path out = dir_ / ".stdout", err = dir_ / ".stderr";
        const std::string cmd = (env.empty() ? "" : env + " ") + "'" + AEFG_CLI_PATH + "' " + args + " >'" +
                                out.string() + "' 2>'" + err.string() + "'";
        const int status = std::system(cmd.c_str());
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void put(const std::string& name, const io::Bytes& bytes) const { io::write_file(path(name), bytes); }
    void put_text(const std::string& name, const std::string& text) const {
        io::write_file(path(name), io::Bytes(text.begin(), text.end()));
    }
    io::Bytes get(const std::string& name) const { return io::read_file(path(name)); }

    std::string q(const std::string& name) const { return "'" + path(name).string() + "'"; }

    fs::path dir_;
};

EmbeddingResult constant_embedding(std::size_t n, std::size_t m) {
    EmbeddingResult e;
    e.n = n;
    for (std::size_t k = 0; k < m; ++k) {
        e.eigenvalues.push_back(0.1 * static_cast<double>(k));
        e.eigenvectors.emplace_back(n, cplx(0.5, 0.0));
    }
    return e;
}

} // namespace

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("embed onlyone").code, 1);
    EXPECT_EQ(run("--m notanumber --print-config").code, 1);
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("--m 0 --print-config").code, 1);
}

TEST_F(Cli, ConfigPrecedence) {
    put_text("cfg.json", R"({"m": 5, "phi": 0.5})");
    const auto from_env = run("--print-config", "AEFG_CONFIG=" + q("cfg.json"));
    ASSERT_EQ(from_env.code, 0) << from_env.err;
    auto j = nlohmann::json::parse(from_env.out);
    EXPECT_EQ(j["m"], 5);
    EXPECT_EQ(j["phi"], 0.5);

    const auto with_flag = run("--config " + q("cfg.json") + " --m 7 --print-config");
    j = nlohmann::json::parse(with_flag.out);
    EXPECT_EQ(j["m"], 7);
    EXPECT_EQ(j["phi"], 0.5);

    put_text("bad.json", R"({"m": 5, "bogus": 1})");
    const auto bad = run("--config " + q("bad.json") + " --print-config");
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("bogus"), std::string::npos);

    EXPECT_EQ(run("--config " + q("missing.json") + " --print-config").code, 2);
}

TEST_F(Cli, IoAndParseErrors) {
    EXPECT_EQ(run("embed " + q("missing.aff") + " " + q("out.eig")).code, 2);
    put_text("junk.aff", "AFF1garbage");
    const auto r = run("embed " + q("junk.aff") + " " + q("out.eig"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("offset"), std::string::npos);
    put_text("img.png", "\x89PNG\r\n");
    const auto png = run("predict " + q("img.png") + " " + q("out.aff"));
    EXPECT_EQ(png.code, 2);
    EXPECT_NE(png.err.find("onvert"), std::string::npos);
}

TEST_F(Cli, PredictBaseline) {
    put("flat.pgm", io::encode_netpbm(io::Image{8, 8, 1, std::vector<double>(64, 0.5)}));
    ASSERT_EQ(run("predict " + q("flat.pgm") + " " + q("flat.aff")).code, 0);
    const RelationMap flat = io::decode_relation_map(get("flat.aff"));
    EXPECT_EQ(flat.stencil().size(), 24u);
    for (float b : flat.b_values()) EXPECT_EQ(b, 0.0f);

    put("two.pgm", io::encode_netpbm(io::Image{1, 2, 1, {0.0, 1.0}}));
    ASSERT_EQ(run("predict --stencil-radii 1 " + q("two.pgm") + " " + q("two.aff")).code, 0);
    const RelationMap two = io::decode_relation_map(get("two.aff"));
    EXPECT_NEAR(two.b(*two.stencil().find({0, 1}), 0), 0.99995460007023751515, 1e-7);
}

TEST_F(Cli, EmbedPureBindingIsConstant) {
    put("flat.pgm", io::encode_netpbm(io::Image{10, 10, 1, std::vector<double>(100, 0.2)}));
    ASSERT_EQ(run("predict --stencil-radii 1,4 " + q("flat.pgm") + " " + q("flat.aff")).code, 0);
    const auto r = run("embed --m 3 " + q("flat.aff") + " " + q("flat.eig"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("residual"), std::string::npos);
    GridDomain dom(1, 1);
    const auto emb = io::decode_embedding(get("flat.eig"), &dom);
    EXPECT_LT(fg_order(emb, dom).spread(), 1e-6);
}

TEST_F(Cli, EmbedNonConvergenceExitsThree) {
    put("img.pgm", io::encode_netpbm(io::Image{16, 16, 1, std::vector<double>(256, 0.2)}));
    ASSERT_EQ(run("predict " + q("img.pgm") + " " + q("img.aff")).code, 0);
    const auto r = run("embed --m 8 --max-iter 4 " + q("img.aff") + " " + q("img.eig"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("residual"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("img.eig")));
}

TEST_F(Cli, DecodeConstantEmbedding) {
    const GridDomain dom(6, 7);
    put("c.eig", io::encode_embedding(constant_embedding(dom.size(), 3), dom));
    ASSERT_EQ(run("decode " + q("c.eig") + " " + q("c")).code, 0);
    const SegmentationMap seg = io::decode_segmentation(get("c.seg"));
    EXPECT_EQ(seg.region_count, 1u);
    const RankMap rank = io::decode_rank_map(get("c.rnk"));
    EXPECT_EQ(rank.spread(), 0.0);
    EXPECT_TRUE(fs::exists(path("c.boundary.pgm")));
    EXPECT_TRUE(fs::exists(path("c.boundary.pfm")));
    EXPECT_TRUE(fs::exists(path("c.regions.rnk")));
}

TEST_F(Cli, DecodeSingleVectorWritesRankThenFails) {
    const GridDomain dom(4, 4);
    put("one.eig", io::encode_embedding(constant_embedding(dom.size(), 1), dom));
    const auto r = run("decode " + q("one.eig") + " " + q("one"));
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(fs::exists(path("one.rnk")));
    EXPECT_FALSE(fs::exists(path("one.seg")));
}

TEST_F(Cli, DecodeHighCutLevelIsOneRegion) {
    ASSERT_EQ(run("synth " + q("s") + " --height 24 --width 24 --shapes 2 --scene-seed 3").code, 0);
    ASSERT_EQ(run("predict --stencil-radii 1,4 " + q("s/image.pgm") + " " + q("s.aff")).code, 0);
    ASSERT_EQ(run("embed --m 4 " + q("s.aff") + " " + q("s.eig")).code, 0);
    ASSERT_EQ(run("decode --cut-level 1.01 " + q("s.eig") + " " + q("d")).code, 0);
    EXPECT_EQ(io::decode_segmentation(get("d.seg")).region_count, 1u);
    ASSERT_EQ(run("decode --cut-level 0 " + q("s.eig") + " " + q("d0")).code, 0);
    EXPECT_GT(io::decode_segmentation(get("d0.seg")).region_count, 1u);
}

TEST_F(Cli, DiskSceneEndToEnd) {
    ASSERT_EQ(run("synth " + q("s") + " --shapes 1 --scene-seed 8").code, 0);
    const auto spec = nlohmann::json::parse(slurp(path("s/scene.json")));
    ASSERT_EQ(spec["shapes"][0]["kind"], "disk");
    ASSERT_EQ(run("targets " + q("s/scene.seg") + " " + q("s/depth.rnk") + " " + q("t.aff")).code, 0);
    ASSERT_EQ(run("embed " + q("t.aff") + " " + q("t.eig")).code, 0);
    ASSERT_EQ(run("decode " + q("t.eig") + " " + q("d")).code, 0);
    const SegmentationMap seg = io::decode_segmentation(get("d.seg"));
    EXPECT_EQ(seg.region_count, 2u);
    const RankMap regions = io::decode_rank_map(get("d.regions.rnk"));
    const GridDomain& dom = seg.domain;
    const std::size_t centre = dom.index(spec["shapes"][0]["center_row"], spec["shapes"][0]["center_col"]);
    EXPECT_GT(regions[centre], regions[0]);
}

TEST_F(Cli, GlobalizeSingleRegionAndLayers) {
    ASSERT_EQ(run("synth " + q("bg") + " --height 12 --width 12 --shapes 0").code, 0);
    ASSERT_EQ(run("globalize " + q("bg/scene.seg") + " " + q("bg/scene.own") + " " + q("bg.rnk")).code, 0);
    EXPECT_LT(io::decode_rank_map(get("bg.rnk")).spread(), 1e-6);

    ASSERT_EQ(run("synth " + q("s") + " --shapes 2 --scene-seed 4").code, 0);
    ASSERT_EQ(run("globalize --m 1 " + q("s/scene.seg") + " " + q("s/scene.own") + " " + q("g.rnk")).code, 0);
    const auto r = run("bench --json " + q("g.rnk") + " " + q("s/depth.rnk") + " " + q("s/scene.seg"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_GE(j["r_acc"]["total"].get<int>(), 2);
    EXPECT_EQ(j["r_acc"]["value"], 1.0);
}

TEST_F(Cli, BenchReports) {
    ASSERT_EQ(run("synth " + q("s") + " --height 32 --width 32 --shapes 3 --scene-seed 2").code, 0);
    RankMap inv = io::decode_rank_map(get("s/depth.rnk"));
    for (double& v : inv.theta) v = -v;
    put("inv.rnk", io::encode_rank_map(inv));
    const std::string gt = q("s/depth.rnk"), seg = q("s/scene.seg");

    auto j = nlohmann::json::parse(run("bench --json " + gt + " " + gt + " " + seg).out);
    for (const char* k : {"r_acc", "b_acc", "b_acc_50", "b_acc_25"}) EXPECT_EQ(j[k]["value"], 1.0) << k;
    j = nlohmann::json::parse(run("bench --json " + q("inv.rnk") + " " + gt + " " + seg).out);
    EXPECT_EQ(j["r_acc"]["value"], 0.0);

    const auto text = run("bench " + gt + " " + gt + " " + seg);
    EXPECT_NE(text.out.find("R-ACC: 1.0000"), std::string::npos);

    put_text("list.txt", "# pred gt seg\n" + path("s/depth.rnk").string() + " " + path("s/depth.rnk").string() + " " +
                             path("s/scene.seg").string() + "\n" + path("inv.rnk").string() + " " +
                             path("s/depth.rnk").string() + " " + path("s/scene.seg").string() + "\n");
    j = nlohmann::json::parse(run("bench --json --batch " + q("list.txt")).out);
    EXPECT_EQ(j["images"], 2);
    EXPECT_EQ(j["image_mean"]["r_acc"], 0.5);

    EXPECT_EQ(run("bench").code, 1);
    put_text("broken.txt", "only two\n");
    EXPECT_EQ(run("bench --batch " + q("broken.txt")).code, 2);
}

TEST_F(Cli, SynthOutputs) {
    const auto r = run("synth " + q("s") + " --height 40 --width 30 --shapes 3 --scene-seed 9");
    ASSERT_EQ(r.code, 0) << r.err;
    const SegmentationMap seg = io::decode_segmentation(get("s/scene.seg"));
    EXPECT_EQ(seg.domain, GridDomain(40, 30));
    EXPECT_NO_THROW(seg.validate(true));
    EXPECT_NO_THROW(io::decode_ownership(get("s/scene.own")).validate(seg));
    EXPECT_EQ(io::load_image(path("s/image.pgm")).height, 40);
    EXPECT_EQ(nlohmann::json::parse(slurp(path("s/scene.json")))["shapes"].size(), 3u);
}

TEST_F(Cli, EveryCommandIsByteDeterministic) {
    auto twice = [&](const std::string& cmd_a, const std::string& cmd_b, std::initializer_list<std::pair<std::string, std::string>> files) {
        const auto ra = run(cmd_a);
        const auto rb = run(cmd_b);
        ASSERT_EQ(ra.code, 0) << cmd_a << "\n" << ra.err;
        ASSERT_EQ(rb.code, 0) << cmd_b << "\n" << rb.err;
        EXPECT_EQ(ra.out, rb.out) << cmd_a;
        for (const auto& [fa, fb] : files) EXPECT_EQ(get(fa), get(fb)) << fa;
    };
    const std::string geo = " --height 32 --width 32 --shapes 3 --scene-seed 6";
    twice("synth " + q("a") + geo, "synth " + q("b") + geo,
          {{"a/image.pgm", "b/image.pgm"}, {"a/scene.seg", "b/scene.seg"}, {"a/scene.own", "b/scene.own"},
           {"a/depth.rnk", "b/depth.rnk"}, {"a/scene.json", "b/scene.json"}});
    twice("predict " + q("a/image.pgm") + " " + q("a.aff"), "predict " + q("a/image.pgm") + " " + q("b.aff"),
          {{"a.aff", "b.aff"}});
    twice("embed --m 6 --seed 3 " + q("a.aff") + " " + q("a.eig"), "embed --m 6 --seed 3 " + q("a.aff") + " " + q("b.eig"),
          {{"a.eig", "b.eig"}});
    twice("decode " + q("a.eig") + " " + q("da"), "decode " + q("a.eig") + " " + q("db"),
          {{"da.rnk", "db.rnk"}, {"da.seg", "db.seg"}, {"da.regions.rnk", "db.regions.rnk"},
           {"da.boundary.pgm", "db.boundary.pgm"}, {"da.boundary.pfm", "db.boundary.pfm"}});
    twice("globalize " + q("a/scene.seg") + " " + q("a/scene.own") + " " + q("ga.rnk"),
          "globalize " + q("a/scene.seg") + " " + q("a/scene.own") + " " + q("gb.rnk"), {{"ga.rnk", "gb.rnk"}});
    twice("targets " + q("a/scene.seg") + " " + q("ga.rnk") + " " + q("ta.aff"),
          "targets " + q("a/scene.seg") + " " + q("ga.rnk") + " " + q("tb.aff"), {{"ta.aff", "tb.aff"}});
    twice("bench --json " + q("da.regions.rnk") + " " + q("a/depth.rnk") + " " + q("a/scene.seg"),
          "bench --json " + q("da.regions.rnk") + " " + q("a/depth.rnk") + " " + q("a/scene.seg"), {});
}
