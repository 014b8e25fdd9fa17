// SPDX-License-Identifier: Apache-2.0

#include "aefg/config.hpp"

#include "aefg/errors.hpp"
#include "aefg/io.hpp"

#include <json.hpp>

#include <set>

namespace aefg {

namespace {

template <class T>
T get_as(const nlohmann::json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

} // namespace

void PipelineConfig::validate() const {
    affinity.validate();
    if (solver.m < 1) throw ConfigError("m must be >= 1");
    if (!(solver.tol > 0.0)) throw ConfigError("tol must be positive");
    if (solver.max_iter < 1) throw ConfigError("max_iter must be >= 1");
    if (!(decoder.lambda_floor > 0.0)) throw ConfigError("lambda_floor must be positive");
    if (!(decoder.cut_level >= 0.0)) throw ConfigError("cut_level must be >= 0");
    if (stencil_radii.empty()) throw ConfigError("stencil_radii must not be empty");
    for (int r : stencil_radii) {
        if (r < 1) throw ConfigError("stencil radii must be >= 1");
    }
    if (!(sigma_color > 0.0)) throw ConfigError("sigma_color must be positive");
}

void PipelineConfig::merge_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    for (const auto& [key, value] : j.items()) {
        if (key == "sigma_b") affinity.sigma_b = get_as<double>(value, key);
        else if (key == "sigma_fg") affinity.sigma_fg = get_as<double>(value, key);
        else if (key == "phi") affinity.phi = get_as<double>(value, key);
        else if (key == "wedge_rescale") affinity.wedge_rescale = get_as<bool>(value, key);
        else if (key == "m") solver.m = get_as<std::size_t>(value, key);
        else if (key == "tol") solver.tol = get_as<double>(value, key);
        else if (key == "max_iter") solver.max_iter = get_as<std::size_t>(value, key);
        else if (key == "seed") solver.seed = get_as<std::uint64_t>(value, key);
        else if (key == "lambda_floor") decoder.lambda_floor = get_as<double>(value, key);
        else if (key == "cut_level") decoder.cut_level = get_as<double>(value, key);
        else if (key == "stencil_radii") stencil_radii = get_as<std::vector<int>>(value, key);
        else if (key == "sigma_color") sigma_color = get_as<double>(value, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    validate();
}

std::string PipelineConfig::to_json() const {
    nlohmann::ordered_json j;
    j["sigma_b"] = affinity.sigma_b;
    j["sigma_fg"] = affinity.sigma_fg;
    j["phi"] = affinity.phi;
    j["wedge_rescale"] = affinity.wedge_rescale;
    j["m"] = solver.m;
    j["tol"] = solver.tol;
    j["max_iter"] = solver.max_iter;
    j["seed"] = solver.seed;
    j["lambda_floor"] = decoder.lambda_floor;
    j["cut_level"] = decoder.cut_level;
    j["stencil_radii"] = stencil_radii;
    j["sigma_color"] = sigma_color;
    return j.dump(2);
}

PipelineConfig load_config(const std::filesystem::path& path) {
    const io::Bytes bytes = io::read_file(path);
    PipelineConfig cfg;
    cfg.merge_json(std::string(bytes.begin(), bytes.end()));
    return cfg;
}

} // namespace aefg
