// SPDX-License-Identifier: Apache-2.0

// aefg: command-line front end for the figure/ground embedding pipeline.
//
// Exit codes: 0 success, 1 usage or configuration, 2 I/O, parse or
// validation failure, 3 numerical failure.

#include "aefg/baseline.hpp"
#include "aefg/config.hpp"
#include "aefg/decoder.hpp"
#include "aefg/errors.hpp"
#include "aefg/groundtruth.hpp"
#include "aefg/io.hpp"
#include "aefg/metrics.hpp"
#include "aefg/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using namespace aefg;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

constexpr const char* kConfigEnv = "AEFG_CONFIG";

struct Overrides {
    std::optional<double> sigma_b, sigma_fg, phi, tol, lambda_floor, cut_level, sigma_color;
    std::optional<bool> wedge_rescale;
    std::optional<std::size_t> m, max_iter;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<int>> stencil_radii;

    void apply(PipelineConfig& c) const {
        if (sigma_b) c.affinity.sigma_b = *sigma_b;
        if (sigma_fg) c.affinity.sigma_fg = *sigma_fg;
        if (phi) c.affinity.phi = *phi;
        if (wedge_rescale) c.affinity.wedge_rescale = *wedge_rescale;
        if (m) c.solver.m = *m;
        if (tol) c.solver.tol = *tol;
        if (max_iter) c.solver.max_iter = *max_iter;
        if (seed) c.solver.seed = *seed;
        if (lambda_floor) c.decoder.lambda_floor = *lambda_floor;
        if (cut_level) c.decoder.cut_level = *cut_level;
        if (stencil_radii) c.stencil_radii = *stencil_radii;
        if (sigma_color) c.sigma_color = *sigma_color;
    }
};

void add_overrides(CLI::App& app, Overrides& o) {
    const char* group = "Config overrides";
    app.add_option("--sigma-b", o.sigma_b, "Binding confidence scale")->group(group);
    app.add_option("--sigma-fg", o.sigma_fg, "Figure/ground confidence scale")->group(group);
    app.add_option("--phi", o.phi, "Figure/ground rotation angle in radians")->group(group);
    app.add_option("--wedge-rescale", o.wedge_rescale, "Rescale angles to a total of pi/2 (true/false)")->group(group);
    app.add_option("--m", o.m, "Number of eigenvectors")->group(group);
    app.add_option("--tol", o.tol, "Eigensolver residual tolerance")->group(group);
    app.add_option("--max-iter", o.max_iter, "Eigensolver operator application cap")->group(group);
    app.add_option("--seed", o.seed, "Start vector seed")->group(group);
    app.add_option("--lambda-floor", o.lambda_floor, "Eigenvalue floor for boundary weights")->group(group);
    app.add_option("--cut-level", o.cut_level, "Hierarchy cut level on the normalized boundary map")->group(group);
    app.add_option("--stencil-radii", o.stencil_radii, "Stencil radii")->group(group)->delimiter(',')->allow_extra_args(false);
    app.add_option("--sigma-color", o.sigma_color, "Baseline color distance scale")->group(group);
}

void write_bytes(const fs::path& path, const io::Bytes& bytes) { io::write_file(path, bytes); }

fs::path with_suffix(const fs::path& prefix, const std::string& suffix) {
    return fs::path(prefix.string() + suffix);
}

int cmd_predict(const PipelineConfig& cfg, const fs::path& image, const fs::path& out) {
    const io::Image img = io::load_image(image);
    const RelationMap rel = predict_baseline(img, make_stencil(cfg.stencil_radii), cfg.sigma_color);
    write_bytes(out, io::encode_relation_map(rel));
    return 0;
}

void print_residuals(std::ostream& os, const std::vector<double>& eigenvalues, const std::vector<double>& residuals) {
    char line[128];
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        if (k < eigenvalues.size()) {
            std::snprintf(line, sizeof line, "z%zu lambda=%.10e residual=%.3e\n", k, eigenvalues[k], residuals[k]);
        } else {
            std::snprintf(line, sizeof line, "z%zu residual=%.3e\n", k, residuals[k]);
        }
        os << line;
    }
}

int cmd_embed(const PipelineConfig& cfg, const fs::path& in, const fs::path& out) {
    const RelationMap rel = io::decode_relation_map(io::read_file(in));
    const AffinitySystem sys = assemble(rel, cfg.affinity);
    EmbeddingResult emb;
    try {
        emb = solve(sys.weights, sys.degree, cfg.solver);
    } catch (const NumericalError& e) {
        std::cerr << "aefg: " << e.what() << "\n";
        print_residuals(std::cerr, {}, e.residuals());
        return kExitNumerical;
    }
    write_bytes(out, io::encode_embedding(emb, rel.domain()));
    print_residuals(std::cout, emb.eigenvalues, emb.residuals);
    return 0;
}

int cmd_decode(const PipelineConfig& cfg, const fs::path& in, const fs::path& prefix) {
    GridDomain dom(1, 1);
    const EmbeddingResult emb = io::decode_embedding(io::read_file(in), &dom);
    const RankMap rank = fg_order(emb, dom);
    write_bytes(with_suffix(prefix, ".rnk"), io::encode_rank_map(rank));
    if (emb.count() < 2) {
        std::cerr << "aefg: boundaries need at least 2 eigenvectors, the input has " << emb.count()
                  << "; only " << with_suffix(prefix, ".rnk").string() << " was written\n";
        return kExitData;
    }

    BoundaryMap bmap = spectral_boundaries(emb, dom, cfg.decoder.lambda_floor);
    const double peak = *std::max_element(bmap.strength.begin(), bmap.strength.end());
    if (peak > 0.0) {
        for (double& s : bmap.strength) s /= peak;
    }
    const SegmentationHierarchy tree = watershed_hierarchy(bmap);
    const SegmentationMap seg = cut_hierarchy(tree, cfg.decoder.cut_level);
    const RankMap regions = paint_regions(seg, transfer_fg(rank, seg));

    write_bytes(with_suffix(prefix, ".seg"), io::encode_segmentation(seg));
    write_bytes(with_suffix(prefix, ".regions.rnk"), io::encode_rank_map(regions));
    write_bytes(with_suffix(prefix, ".boundary.pgm"), io::encode_netpbm(io::normalized_gray(dom, bmap.strength)));
    write_bytes(with_suffix(prefix, ".boundary.pfm"), io::encode_pfm(dom, bmap.strength));
    std::cout << "regions: " << seg.region_count << " (base " << tree.base.region_count << ")\n";
    return 0;
}

int cmd_globalize(const PipelineConfig& cfg, const fs::path& seg_path, const fs::path& own_path,
                  const fs::path& out) {
    const SegmentationMap seg = io::decode_segmentation(io::read_file(seg_path));
    const OwnershipLabels own = io::decode_ownership(io::read_file(own_path));
    RankMap rank(seg.domain);
    try {
        rank = globalize(seg, own, cfg.affinity, cfg.solver);
    } catch (const NumericalError& e) {
        std::cerr << "aefg: " << e.what() << "\n";
        print_residuals(std::cerr, {}, e.residuals());
        return kExitNumerical;
    }
    write_bytes(out, io::encode_rank_map(rank));
    return 0;
}

int cmd_targets(const PipelineConfig& cfg, const fs::path& seg_path, const fs::path& rank_path,
                const fs::path& out) {
    const SegmentationMap seg = io::decode_segmentation(io::read_file(seg_path));
    const RankMap rank = io::decode_rank_map(io::read_file(rank_path));
    const TargetTensors t = make_targets(seg, rank, make_stencil(cfg.stencil_radii));
    write_bytes(out, io::encode_relation_map(targets_to_relation_map(t)));
    return 0;
}

std::vector<std::array<std::string, 3>> read_batch(const fs::path& list) {
    const io::Bytes bytes = io::read_file(list);
    std::istringstream in(std::string(bytes.begin(), bytes.end()));
    std::vector<std::array<std::string, 3>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::array<std::string, 3> row;
        std::string extra;
        if (!(ls >> row[0] >> row[1] >> row[2]) || (ls >> extra)) {
            throw ParseError(list.string() + ":" + std::to_string(lineno) + ": expected 'pred.rnk gt.rnk seg.seg'", 0);
        }
        rows.push_back(row);
    }
    return rows;
}

int cmd_bench(const std::vector<std::string>& triple, const std::string& batch, bool json) {
    std::vector<std::array<std::string, 3>> rows;
    if (!batch.empty()) rows = read_batch(batch);
    if (!triple.empty()) rows.push_back({triple[0], triple[1], triple[2]});
    if (rows.empty()) throw ConfigError("bench needs PRED GT SEG or --batch FILE");

    BenchmarkAccumulator acc;
    for (const auto& [pred_path, gt_path, seg_path] : rows) {
        const RankMap pred = io::decode_rank_map(io::read_file(pred_path));
        const RankMap gt = io::decode_rank_map(io::read_file(gt_path));
        const SegmentationMap seg = io::decode_segmentation(io::read_file(seg_path));
        acc.add(evaluate(pred, gt, seg));
    }
    if (rows.size() == 1) std::cout << (json ? report_json(acc.pooled()) + "\n" : report_text(acc.pooled()));
    else std::cout << (json ? acc.to_json() + "\n" : acc.to_text());
    return 0;
}

std::string spec_json(const SceneSpec& spec) {
    nlohmann::ordered_json j;
    j["height"] = spec.domain.height();
    j["width"] = spec.domain.width();
    j["seed"] = spec.seed;
    j["shapes"] = nlohmann::ordered_json::array();
    for (const Shape& s : spec.shapes) {
        nlohmann::ordered_json js;
        js["kind"] = s.kind == ShapeKind::rectangle ? "rectangle" : "disk";
        if (s.kind == ShapeKind::rectangle) {
            js["top"] = s.top;
            js["left"] = s.left;
            js["height"] = s.height;
            js["width"] = s.width;
        } else {
            js["center_row"] = s.top;
            js["center_col"] = s.left;
            js["radius"] = s.height;
        }
        js["depth"] = s.depth;
        j["shapes"].push_back(js);
    }
    return j.dump(2) + "\n";
}

int cmd_synth(int height, int width, int shapes, std::uint64_t seed, const fs::path& dir) {
    if (shapes < 0) throw ConfigError("--shapes must be >= 0");
    const SceneSpec spec = random_scene(GridDomain(height, width), shapes, seed);
    const Scene scene = render(spec);
    fs::create_directories(dir);
    const io::Image img{height, width, 1, render_intensity(spec, scene)};
    write_bytes(dir / "image.pgm", io::encode_netpbm(img));
    write_bytes(dir / "scene.seg", io::encode_segmentation(scene.segmentation));
    write_bytes(dir / "scene.own", io::encode_ownership(scene.ownership));
    write_bytes(dir / "depth.rnk", io::encode_rank_map(scene.depth));
    const std::string js = spec_json(spec);
    write_bytes(dir / "scene.json", io::Bytes(js.begin(), js.end()));
    std::cout << "regions: " << scene.segmentation.region_count << "\n";
    return 0;
}

PipelineConfig effective_config(const std::string& config_path, const Overrides& o) {
    PipelineConfig cfg;
    std::string path = config_path;
    if (path.empty()) {
        if (const char* env = std::getenv(kConfigEnv)) path = env;
    }
    if (!path.empty()) cfg = load_config(path);
    o.apply(cfg);
    cfg.validate();
    cfg.affinity.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Figure/ground embedding pipeline"};
    app.name("aefg");
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string config_path;
    bool print_config = false;
    Overrides overrides;
    app.add_option("--config", config_path, std::string("Flat JSON config file (default: $") + kConfigEnv + ")");
    app.add_flag("--print-config", print_config, "Print the effective config and exit");
    add_overrides(app, overrides);

    std::string a, b, c;
    auto* predict = app.add_subcommand("predict", "Baseline relation map from a P5/P6 image");
    predict->add_option("image", a, "Input image")->required();
    predict->add_option("out", b, "Output AFF1 file")->required();

    auto* embed = app.add_subcommand("embed", "Solve the angular embedding of an AFF1 relation map");
    embed->add_option("relations", a, "Input AFF1 file")->required();
    embed->add_option("out", b, "Output EIG1 file")->required();

    auto* decode = app.add_subcommand("decode", "Rank map, boundaries and segmentation from an EIG1 file");
    decode->add_option("embedding", a, "Input EIG1 file")->required();
    decode->add_option("prefix", b, "Output prefix")->required();

    auto* glob = app.add_subcommand("globalize", "Globalize local ownership labels into a rank map");
    glob->add_option("segmentation", a, "Input SEG1 file")->required();
    glob->add_option("ownership", b, "Input OWN1 file")->required();
    glob->add_option("out", c, "Output RNK1 file")->required();

    auto* targets = app.add_subcommand("targets", "Training targets (AFF1) from a segmentation and rank map");
    targets->add_option("segmentation", a, "Input SEG1 file")->required();
    targets->add_option("rank", b, "Input RNK1 file")->required();
    targets->add_option("out", c, "Output AFF1 file")->required();

    std::vector<std::string> triple;
    std::string batch;
    bool json = false;
    auto* bench = app.add_subcommand("bench", "Figure/ground accuracy of a predicted rank map");
    bench->add_option("files", triple, "PRED.rnk GT.rnk SEG.seg")->expected(3);
    bench->add_option("--batch", batch, "File listing 'pred gt seg' triples, one per line");
    bench->add_flag("--json", json, "Emit JSON");

    int height = 64, width = 64, shapes = 4;
    std::uint64_t synth_seed = 1;
    auto* synth = app.add_subcommand("synth", "Random layered scene with ground truth");
    synth->add_option("outdir", a, "Output directory")->required();
    synth->add_option("--height", height, "Image height")->check(CLI::PositiveNumber);
    synth->add_option("--width", width, "Image width")->check(CLI::PositiveNumber);
    synth->add_option("--shapes", shapes, "Number of shapes");
    synth->add_option("--scene-seed", synth_seed, "Scene seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        const PipelineConfig cfg = effective_config(config_path, overrides);
        if (print_config) {
            std::cout << cfg.to_json() << "\n";
            return 0;
        }
        if (*predict) return cmd_predict(cfg, a, b);
        if (*embed) return cmd_embed(cfg, a, b);
        if (*decode) return cmd_decode(cfg, a, b);
        if (*glob) return cmd_globalize(cfg, a, b, c);
        if (*targets) return cmd_targets(cfg, a, b, c);
        if (*bench) return cmd_bench(triple, batch, json);
        if (*synth) return cmd_synth(height, width, shapes, synth_seed, a);
        std::cerr << app.help();
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "aefg: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "aefg: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ParseError& e) {
        std::cerr << "aefg: " << e.what() << " (byte offset " << e.offset() << ")\n";
        return kExitData;
    } catch (const Error& e) {
        std::cerr << "aefg: " << e.what() << "\n";
        return kExitData;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "aefg: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "aefg: " << e.what() << "\n";
        return kExitData;
    }
}
