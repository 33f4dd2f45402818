// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "texbench/benchkit.hpp"

namespace texbench::bench {

/// Every tunable of the pipeline. Serialized as one JSON document; absent
/// keys keep their defaults, unknown keys are rejected.
struct Config {
    int classes = 12;
    std::uint64_t seed = 1;
    light::RenderOptions render;
    norm::NormalizerConfig normalizer;
    desc::DescriptorConfig descriptors;
    cb::SiftConfig sift;
    CodebookTraining codebook;
    /// Fixed conventions, recorded for provenance; only these values load.
    std::string bovw_normalization = "sum1";
    std::string subset_weighting = "equal";
    std::string tie_break = "lowest-train-index";
    std::string subset_order = "ordered";
};

std::string config_to_json(const Config& config);
/// Throws FormatError on malformed JSON, wrong types or unknown keys.
Config config_from_json(std::string_view text);

Config load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const Config& config);

light::CorpusOptions corpus_options(const Config& config);
ExtractOptions extract_options(const Config& config);

} // namespace texbench::bench
