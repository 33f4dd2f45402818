// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>

#include "texbench/chromanorm.hpp"
#include "texbench/error.hpp"

namespace texbench::norm {

const std::vector<std::string>& normalizer_names() {
    static const std::vector<std::string> names{"none",           "gray-world",      "gray-edge",
                                                "weighted-gray-edge", "retinex-frankle", "retinex-mccann99"};
    return names;
}

bool is_normalizer(std::string_view name) {
    const auto& n = normalizer_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

Image run(const Image& linear, std::string_view name, const NormalizerConfig& cfg) {
    if (name == "gray-world") {
        try {
            return gray_world(linear).image;
        } catch (const DegenerateError&) {
            return linear;
        }
    }
    if (name == "gray-edge") {
        return gray_edge(linear, cfg.edge_order, cfg.edge_p, cfg.edge_sigma).image;
    }
    if (name == "weighted-gray-edge") {
        return weighted_gray_edge(linear, cfg.weighted).image;
    }
    if (name == "retinex-frankle") {
        return retinex_frankle_mccann(linear, cfg.retinex_iterations);
    }
    if (name == "retinex-mccann99") {
        return retinex_mccann99(linear, cfg.retinex_iterations);
    }
    throw InvalidInput("unknown normalizer '" + std::string(name) + "'");
}

} // namespace

Image normalize(const Image& img, std::string_view name, const NormalizerConfig& config) {
    if (!is_normalizer(name)) {
        throw InvalidInput("unknown normalizer '" + std::string(name) + "'");
    }
    if (name == "none") {
        return img;
    }
    if (img.channels() != 3) {
        throw InvalidInput("normalize: expected a 3-channel image");
    }
    switch (img.space()) {
    case ColorSpace::LinearRgb:
        return run(img, name, config);
    case ColorSpace::Srgb8:
        return to_srgb8(run(to_linear(img), name, config));
    default:
        throw InvalidInput("normalize: expected Srgb8 or LinearRgb input");
    }
}

} // namespace texbench::norm
