// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/affinity.hpp"
#include "aefg/decoder.hpp"
#include "aefg/eigensolver.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace aefg {

// Every user-facing knob of the pipeline. Serialized as a flat JSON object;
// unknown keys are rejected.
struct PipelineConfig {
    AffinityParams affinity;
    SolverConfig solver;
    DecoderParams decoder;
    std::vector<int> stencil_radii{1, 4, 16};
    double sigma_color = 0.1;

    void validate() const;

    // Applies the keys present in `json_text` on top of the current values.
    void merge_json(const std::string& json_text);
    std::string to_json() const;
};

PipelineConfig load_config(const std::filesystem::path& path);

} // namespace aefg
