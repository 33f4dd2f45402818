// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "texbench/patches.hpp"
#include "texbench/rng.hpp"
#include "texbench/synth.hpp"

namespace texbench::light {

std::string_view generator_name(Generator g) {
    switch (g) {
    case Generator::Granular:
        return "granular";
    case Generator::Blob:
        return "blob";
    case Generator::Stripe:
        return "stripe";
    case Generator::MultifractalNoise:
        return "multifractal-noise";
    }
    return "unknown";
}

namespace {

constexpr double kMinAlbedo = 0.02;
constexpr double kMaxAlbedo = 0.95;

float snap(double v) {
    v = std::clamp(v, kMinAlbedo, kMaxAlbedo);
    return static_cast<float>(std::round(v / kAlbedoStep) * kAlbedoStep);
}

double smooth(double t) {
    return t * t * (3.0 - 2.0 * t);
}

// Bilinearly interpolated lattice noise in [0,1].
double value_noise(std::uint64_t seed, double x, double y) {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const auto ix = static_cast<std::int64_t>(fx);
    const auto iy = static_cast<std::int64_t>(fy);
    const double tx = smooth(x - fx);
    const double ty = smooth(y - fy);
    const double a = hash_unit(seed, ix, iy);
    const double b = hash_unit(seed, ix + 1, iy);
    const double c = hash_unit(seed, ix, iy + 1);
    const double d = hash_unit(seed, ix + 1, iy + 1);
    return (a * (1 - tx) + b * tx) * (1 - ty) + (c * (1 - tx) + d * tx) * ty;
}

double fbm(std::uint64_t seed, double x, double y, double scale, int octaves) {
    double sum = 0.0;
    double norm = 0.0;
    double amp = 1.0;
    for (int o = 0; o < octaves; ++o) {
        sum += amp * value_noise(seed + 7919 * o, x / scale, y / scale);
        norm += amp;
        amp *= 0.55;
        scale *= 0.5;
    }
    return sum / norm;
}

using Field = std::vector<std::array<double, 3>>;

Field granular(const SyntheticClassSpec& s) {
    const int n = kImageSize;
    const double g = s.grain_scale;
    Field f(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const auto cx = static_cast<std::int64_t>(std::floor(x / g));
            const auto cy = static_cast<std::int64_t>(std::floor(y / g));
            double best = 1e300;
            double second = 1e300;
            std::int64_t bx = 0;
            std::int64_t by = 0;
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                for (std::int64_t dx = -1; dx <= 1; ++dx) {
                    const std::int64_t kx = cx + dx;
                    const std::int64_t ky = cy + dy;
                    const double px = (kx + hash_unit(s.seed, kx, ky)) * g;
                    const double py = (ky + hash_unit(s.seed + 1, kx, ky)) * g;
                    const double d = std::hypot(px - x, py - y);
                    if (d < best) {
                        second = best;
                        best = d;
                        bx = kx;
                        by = ky;
                    } else if (d < second) {
                        second = d;
                    }
                }
            }
            const double bright = 0.55 + 0.9 * hash_unit(s.seed + 2, bx, by);
            const double edge = (second - best) < 1.2 ? 0.55 : 1.0;
            const double grain = 0.85 + 0.3 * value_noise(s.seed + 6, x / 2.0, y / 2.0);
            auto& px = f[static_cast<std::size_t>(y) * n + x];
            for (int c = 0; c < 3; ++c) {
                const double jitter = 1.0 + 0.2 * (hash_unit(s.seed + 3 + c, bx, by) - 0.5);
                px[c] = s.base_albedo[c] * bright * jitter * edge * grain;
            }
        }
    }
    return f;
}

Field blob(const SyntheticClassSpec& s) {
    const int n = kImageSize;
    const double cell = 2.5 * s.grain_scale;
    const std::array<double, 3> fg{s.base_albedo[2] * 0.5 + 0.35, s.base_albedo[0] * 0.6 + 0.3,
                                   s.base_albedo[1] * 0.5 + 0.25};
    Field f(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const auto cx = static_cast<std::int64_t>(std::floor(x / cell));
            const auto cy = static_cast<std::int64_t>(std::floor(y / cell));
            double cover = 0.0;
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                for (std::int64_t dx = -1; dx <= 1; ++dx) {
                    const std::int64_t kx = cx + dx;
                    const std::int64_t ky = cy + dy;
                    const double px = (kx + hash_unit(s.seed, kx, ky)) * cell;
                    const double py = (ky + hash_unit(s.seed + 1, kx, ky)) * cell;
                    const double r = s.grain_scale * (0.5 + 0.6 * hash_unit(s.seed + 2, kx, ky));
                    const double d = std::hypot(px - x, py - y);
                    cover = std::max(cover, std::clamp(r + 0.5 - d, 0.0, 1.0));
                }
            }
            const double grain = 0.85 + 0.3 * value_noise(s.seed + 5, x / 3.0, y / 3.0);
            auto& px = f[static_cast<std::size_t>(y) * n + x];
            for (int c = 0; c < 3; ++c) {
                px[c] = ((1.0 - cover) * s.base_albedo[c] * 0.55 + cover * fg[c]) * grain;
            }
        }
    }
    return f;
}

Field stripe(const SyntheticClassSpec& s) {
    const int n = kImageSize;
    const double phi = s.orientation_deg * std::numbers::pi / 180.0;
    const double period = 2.0 * s.grain_scale;
    Field f(static_cast<std::size_t>(n) * n);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const double t = (x * std::cos(phi) + y * std::sin(phi)) / period;
            const double v = 0.5 + 0.5 * std::sin(2.0 * std::numbers::pi * t);
            const double grain = 0.92 + 0.16 * value_noise(s.seed, x / 2.0, y / 2.0);
            auto& px = f[static_cast<std::size_t>(y) * n + x];
            for (int c = 0; c < 3; ++c) {
                px[c] = s.base_albedo[c] * (0.35 + 0.95 * v) * grain;
            }
        }
    }
    return f;
}

Field multifractal(const SyntheticClassSpec& s) {
    const int n = kImageSize;
    Field f(static_cast<std::size_t>(n) * n);
    constexpr double chroma_sign[3] = {1.0, -0.5, -1.0};
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const double v = fbm(s.seed, x, y, 2.0 * s.grain_scale, 5);
            const double w = fbm(s.seed + 101, x, y, 4.0 * s.grain_scale, 3);
            const double lum = 0.2 + 1.6 * (v - 0.5) + 0.5;
            auto& px = f[static_cast<std::size_t>(y) * n + x];
            for (int c = 0; c < 3; ++c) {
                px[c] = s.base_albedo[c] * lum * (1.0 + 0.6 * (w - 0.5) * chroma_sign[c]);
            }
        }
    }
    return f;
}

} // namespace

Image generate_texture(const SyntheticClassSpec& spec) {
    Field field;
    switch (spec.generator) {
    case Generator::Granular:
        field = granular(spec);
        break;
    case Generator::Blob:
        field = blob(spec);
        break;
    case Generator::Stripe:
        field = stripe(spec);
        break;
    case Generator::MultifractalNoise:
        field = multifractal(spec);
        break;
    }
    std::vector<float> data(field.size() * 3);
    for (std::size_t i = 0; i < field.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            data[3 * i + c] = snap(field[i][c]);
        }
    }
    return Image(kImageSize, kImageSize, 3, ColorSpace::LinearRgb, std::move(data));
}

SyntheticClassSpec corpus_class_spec(int class_id, std::uint64_t corpus_seed) {
    static constexpr std::array<Rgb, 12> palette{{
        {0.60, 0.35, 0.20},
        {0.25, 0.50, 0.20},
        {0.20, 0.30, 0.60},
        {0.65, 0.60, 0.25},
        {0.55, 0.20, 0.35},
        {0.30, 0.55, 0.55},
        {0.70, 0.55, 0.45},
        {0.35, 0.25, 0.15},
        {0.45, 0.45, 0.50},
        {0.60, 0.30, 0.30},
        {0.40, 0.55, 0.35},
        {0.50, 0.40, 0.65},
    }};
    static constexpr std::array<double, 3> grain{5.0, 11.0, 22.0};
    SyntheticClassSpec s;
    s.class_id = class_id;
    s.generator = static_cast<Generator>(class_id % 4);
    s.base_albedo = palette[class_id % palette.size()];
    // Beyond the palette, vary brightness so every class stays distinct.
    const double gain = 1.0 - 0.12 * static_cast<double>((class_id / palette.size()) % 5);
    for (double& v : s.base_albedo) {
        v *= gain;
    }
    s.grain_scale = grain[(class_id / 4) % grain.size()] * (1.0 + 0.15 * static_cast<double>(class_id / 12 % 4));
    s.orientation_deg = static_cast<double>((class_id * 37) % 180);
    s.seed = corpus_seed * 1000003ull + static_cast<std::uint64_t>(class_id);
    return s;
}

} // namespace texbench::light
