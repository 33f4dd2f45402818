// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cstdint>
#include <string_view>

#include "texbench/color.hpp"
#include "texbench/image.hpp"

namespace texbench::light {

enum class Generator { Granular, Blob, Stripe, MultifractalNoise };

std::string_view generator_name(Generator g);

/// Recipe of one synthetic texture class.
struct SyntheticClassSpec {
    int class_id = 0;
    Generator generator = Generator::Granular;
    Rgb base_albedo{0.5, 0.5, 0.5};
    double grain_scale = 12.0;     ///< pixels
    double orientation_deg = 0.0;  ///< gradient direction of Stripe textures
    std::uint64_t seed = 0;
};

/// Albedo samples are multiples of this step, which keeps products with the
/// intensity fractions exactly representable in float.
inline constexpr double kAlbedoStep = 1.0 / 4096.0;

/// Deterministic 800x800 LinearRgb albedo map. Same spec, same bytes.
Image generate_texture(const SyntheticClassSpec& spec);

/// Class recipe used by the synthetic corpus: generator, palette colour,
/// grain scale and orientation derived from the class index, seed from
/// (corpus_seed, class_id).
SyntheticClassSpec corpus_class_spec(int class_id, std::uint64_t corpus_seed);

} // namespace texbench::light
