// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <string>

#include "texbench/error.hpp"
#include "texbench/light.hpp"
#include "texbench/patches.hpp"

namespace texbench::light {
namespace {

void require_linear(const Image& img, const char* what) {
    if (img.channels() != 3 || img.space() != ColorSpace::LinearRgb) {
        throw InvalidInput(std::string(what) + ": expected a 3-channel LinearRgb image");
    }
}

float clip01(double v) {
    return static_cast<float>(std::clamp(v, 0.0, 1.0));
}

} // namespace

Image apply_illuminant(const Image& img, const Rgb& illum) {
    require_linear(img, "apply_illuminant");
    Image out = img;
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); i += 3) {
        for (int c = 0; c < 3; ++c) {
            d[i + c] = clip01(d[i + c] * illum[c]);
        }
    }
    return out;
}

Image apply_intensity(const Image& img, double f) {
    if (!(f > 0.0 && f <= 1.0)) {
        throw DomainError("apply_intensity: fraction " + std::to_string(f) + " outside (0,1]");
    }
    require_linear(img, "apply_intensity");
    Image out = img;
    for (float& v : out.data()) {
        v = clip01(v * f);
    }
    return out;
}

double direction_gain(double theta, int row, int height) {
    const double beta = 0.6 * (90.0 - theta) / 66.0;
    return std::clamp(1.0 + beta * (0.5 - static_cast<double>(row) / height), 0.0, 2.0);
}

Image apply_direction(const Image& img, double theta, double irradiance) {
    require_linear(img, "apply_direction");
    Image out = img;
    if (theta == 90.0 && irradiance == 1.0) {
        return out;
    }
    auto d = out.data();
    const std::size_t row_len = static_cast<std::size_t>(img.width()) * 3;
    for (int y = 0; y < img.height(); ++y) {
        const double s = direction_gain(theta, y, img.height()) * irradiance;
        for (std::size_t i = y * row_len; i < (y + 1) * row_len; ++i) {
            d[i] = clip01(d[i] * s);
        }
    }
    return out;
}

Image render_condition(const Image& albedo, const LightCondition& cond, const RenderOptions& options) {
    require_linear(albedo, "render_condition");
    if (albedo.width() != kImageSize || albedo.height() != kImageSize) {
        throw InvalidInput("render_condition: expected an 800x800 albedo map");
    }
    const int w = albedo.width();
    const int h = albedo.height();
    const Rgb left = illuminant_rgb(cond.illuminant, options.leds, options.led_model);
    const Rgb right = cond.second ? illuminant_rgb(*cond.second, options.leds, options.led_model) : left;
    const double irradiance = band_lit(cond) ? options.band_irradiance : 1.0;
    const bool shaded = cond.theta != 90.0 || irradiance != 1.0;

    // Per-column illuminant: constant, or a linear blend across the band
    // centred on the image midline.
    std::vector<Rgb> column(w, left);
    if (cond.second) {
        const double band = std::max(options.blend_band, 1);
        const double start = w / 2.0 - band / 2.0;
        for (int x = 0; x < w; ++x) {
            const double t = std::clamp((x + 0.5 - start) / band, 0.0, 1.0);
            for (int c = 0; c < 3; ++c) {
                column[x][c] = (1.0 - t) * left[c] + t * right[c];
            }
        }
    }

    Image out(w, h, 3, options.encode_srgb8 ? ColorSpace::Srgb8 : ColorSpace::LinearRgb);
    const auto src = albedo.data();
    auto dst = out.data();
    for (int y = 0; y < h; ++y) {
        const double shade = direction_gain(cond.theta, y, h) * irradiance;
        for (int x = 0; x < w; ++x) {
            const std::size_t i = (static_cast<std::size_t>(y) * w + x) * 3;
            for (int c = 0; c < 3; ++c) {
                // Same float rounding points as the apply_* chain.
                float v = clip01(src[i + c] * column[x][c]);
                if (shaded) {
                    v = clip01(v * shade);
                }
                if (cond.intensity != 1.0) {
                    v = clip01(v * cond.intensity);
                }
                dst[i + c] = options.encode_srgb8 ? static_cast<float>(encode_srgb8(v) / 255.0) : v;
            }
        }
    }
    return out;
}

} // namespace texbench::light
