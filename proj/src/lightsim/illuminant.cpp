// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>
#include <string>

#include "texbench/error.hpp"
#include "texbench/light.hpp"

namespace texbench::light {

Chromaticity daylight_locus_unchecked(double kelvin) {
    const double u = 1e3 / kelvin;
    double a0, a1, a2, a3;
    if (kelvin <= 7000.0) {
        a0 = 0.244063;
        a1 = 0.09911;
        a2 = 2.9678;
        a3 = -4.6070;
    } else {
        a0 = 0.23704;
        a1 = 0.24748;
        a2 = 1.9018;
        a3 = -2.0064;
    }
    const double x = a0 + a1 * u + a2 * u * u + a3 * u * u * u;
    const double y = -3.0 * x * x + 2.87 * x - 0.275;
    return {x, y};
}

Chromaticity cct_to_chromaticity(double kelvin) {
    if (!(kelvin >= 4000.0 && kelvin <= 25000.0)) {
        throw DomainError("cct_to_chromaticity: " + std::to_string(kelvin) + " K outside [4000, 25000]");
    }
    return daylight_locus_unchecked(kelvin);
}

Chromaticity planckian_locus(double kelvin) {
    if (!(kelvin >= 1667.0 && kelvin <= 25000.0)) {
        throw DomainError("planckian_locus: " + std::to_string(kelvin) + " K outside [1667, 25000]");
    }
    const double t = kelvin;
    const double x = t <= 4000.0
                         ? -0.2661239e9 / (t * t * t) - 0.2343589e6 / (t * t) + 0.8776956e3 / t + 0.179910
                         : -3.0258469e9 / (t * t * t) + 2.1070379e6 / (t * t) + 0.2226347e3 / t + 0.240390;
    double y;
    if (t <= 2222.0) {
        y = -1.1063814 * x * x * x - 1.34811020 * x * x + 2.18555832 * x - 0.20219683;
    } else if (t <= 4000.0) {
        y = -0.9549476 * x * x * x - 1.37418593 * x * x + 2.09137015 * x - 0.16748867;
    } else {
        y = 3.0817580 * x * x * x - 5.87338670 * x * x + 3.75112997 * x - 0.37001483;
    }
    return {x, y};
}

Rgb chromaticity_to_rgb(Chromaticity c) {
    if (!(c.x > 0.0 && c.y > 0.0 && c.x + c.y < 1.0)) {
        throw InvalidInput("chromaticity_to_rgb: invalid chromaticity");
    }
    const Rgb xyz{c.x / c.y, 1.0, (1.0 - c.x - c.y) / c.y};
    Rgb rgb = apply(xyz_to_srgb_matrix(), xyz);
    for (double& v : rgb) {
        v = std::max(v, 0.0);
    }
    const double mx = std::max({rgb[0], rgb[1], rgb[2]});
    if (mx <= 0.0) {
        throw DegenerateError("chromaticity_to_rgb: chromaticity maps to no positive RGB channel");
    }
    for (double& v : rgb) {
        v /= mx;
    }
    return rgb;
}

Rgb primary_rgb(PrimaryColor p) {
    switch (p) {
    case PrimaryColor::Red:
        return {1.0, 0.0, 0.0};
    case PrimaryColor::Green:
        return {0.0, 1.0, 0.0};
    case PrimaryColor::Blue:
        return {0.0, 0.0, 1.0};
    }
    return {0.0, 0.0, 0.0};
}

Rgb illuminant_rgb(const Illuminant& illum, const LedTable& leds, LedModel model) {
    switch (illum.family) {
    case Illuminant::Family::Neutral:
        return {1.0, 1.0, 1.0};
    case Illuminant::Family::Daylight:
        return chromaticity_to_rgb(cct_to_chromaticity(illum.cct));
    case Illuminant::Family::Led: {
        if (const auto it = leds.find(illum.name()); it != leds.end()) {
            return chromaticity_to_rgb(it->second);
        }
        return chromaticity_to_rgb(model == LedModel::Planckian ? planckian_locus(illum.cct)
                                                                : daylight_locus_unchecked(illum.cct));
    }
    case Illuminant::Family::Primary:
        return primary_rgb(illum.primary);
    }
    return {1.0, 1.0, 1.0};
}

bool band_lit(const LightCondition& cond) {
    return cond.kind == ConditionKind::Direction || cond.kind == ConditionKind::ColorAndDirection ||
           cond.kind == ConditionKind::MultiIlluminant;
}

} // namespace texbench::light
