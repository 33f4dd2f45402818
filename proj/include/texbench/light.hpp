// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "texbench/color.hpp"
#include "texbench/image.hpp"

namespace texbench::light {

enum class ConditionKind { Intensity, Direction, Daylight, Led, ColorAndDirection, MultiIlluminant, Primary };
enum class PrimaryColor { Red, Green, Blue };

std::string_view kind_name(ConditionKind kind);

/// Source of light colour for one region of the scene.
struct Illuminant {
    enum class Family { Neutral, Daylight, Led, Primary };
    Family family = Family::Neutral;
    double cct = 6500.0;
    PrimaryColor primary = PrimaryColor::Red;

    /// "N", "D65", "L27", "RED", ...
    std::string name() const;
    friend bool operator==(const Illuminant&, const Illuminant&) = default;
};

/// One of the 46 shots. Parameters not used by `kind` keep their defaults
/// (intensity 1, theta 90, cct 6500).
struct LightCondition {
    std::string id;
    ConditionKind kind = ConditionKind::Intensity;
    double intensity = 1.0;
    double theta = 90.0;
    double cct = 6500.0;
    double led_cct = 0.0;
    Illuminant illuminant;                 ///< whole scene, or left half for multi-illuminant
    std::optional<Illuminant> second;      ///< right half for multi-illuminant
    std::optional<PrimaryColor> primary;

    friend bool operator==(const LightCondition&, const LightCondition&) = default;
};

/// CIE 1931 chromaticity.
struct Chromaticity {
    double x = 0.0;
    double y = 0.0;
};

/// The 46 conditions in fixed order: intensity (4), direction (9),
/// daylight (12), LED (6), colour x direction (9), multi-illuminant (3),
/// primaries (3).
const std::vector<LightCondition>& condition_catalog();

/// Catalog entry by id; nullptr when unknown.
const LightCondition* find_condition(std::string_view id);

/// Position of `id` in catalog order; throws InvalidInput when unknown.
std::size_t catalog_index(std::string_view id);

/// Daylight-locus chromaticity for 4000 K <= T <= 25000 K (DomainError
/// outside). The cubic coefficients switch above 7000 K.
Chromaticity cct_to_chromaticity(double kelvin);

/// Same polynomial without the domain check; used for LED colour
/// temperatures below 4000 K.
Chromaticity daylight_locus_unchecked(double kelvin);

/// Planckian (blackbody) locus, Kim et al. cubic-spline approximation,
/// valid for 1667 K <= T <= 25000 K (DomainError outside).
Chromaticity planckian_locus(double kelvin);

/// xyY (Y=1) -> linear sRGB, negatives clipped, scaled so the largest
/// channel is 1. Throws DegenerateError when no channel is positive.
Rgb chromaticity_to_rgb(Chromaticity c);

Rgb primary_rgb(PrimaryColor p);

/// LED chromaticities keyed by illuminant name ("L27", ...). Entries
/// override the locus approximation.
using LedTable = std::map<std::string, Chromaticity>;

/// Where LED sources without a table entry sit. White LEDs are binned
/// around the Planckian locus; the daylight option reuses the cubic above.
enum class LedModel { Planckian, DaylightLocus };

/// Linear RGB triple of an illuminant (max channel 1). The neutral source is
/// the sRGB white point and maps to exactly (1,1,1).
Rgb illuminant_rgb(const Illuminant& illum, const LedTable& leds = {}, LedModel model = LedModel::Planckian);

/// True for shots lit by monitor bands (direction, colour x direction,
/// multi-illuminant) rather than by the whole monitors.
bool band_lit(const LightCondition& cond);

/// Channel-wise product with `illum`, clipped to [0,1]. Input must be
/// LinearRgb.
Image apply_illuminant(const Image& img, const Rgb& illum);

/// Linear scale by f in (0,1]; DomainError otherwise.
Image apply_intensity(const Image& img, double f);

/// Multiplicative vertical ramp S(y) = clamp(1 + beta*(0.5 - y/H), 0, 2),
/// beta = 0.6*(90-theta)/66, clipped to [0,1] afterwards. `irradiance`
/// scales the ramp (band-lit shots receive less light than whole-monitor
/// ones).
Image apply_direction(const Image& img, double theta, double irradiance = 1.0);

double direction_gain(double theta, int row, int height);

struct RenderOptions {
    /// Quantise to 8-bit sRGB (true) or keep unquantised linear samples.
    bool encode_srgb8 = true;
    /// Width of the linear blend between the two halves of a
    /// multi-illuminant shot.
    int blend_band = 64;
    /// Relative irradiance of band-lit shots.
    double band_irradiance = 0.9;
    LedTable leds;
    LedModel led_model = LedModel::Planckian;
};

/// Illuminant colour (two-sided for multi-illuminant), direction shading
/// (times band_irradiance for band-lit shots) and intensity applied in that
/// order to an 800x800 linear albedo map.
Image render_condition(const Image& albedo, const LightCondition& cond, const RenderOptions& options = {});

} // namespace texbench::light
