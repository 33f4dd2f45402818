// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "texbench/image.hpp"

namespace texbench {

using Rgb = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Linear sRGB (D65) to CIE XYZ, IEC 61966-2-1 primaries.
const Mat3& srgb_to_xyz_matrix();
/// Numerical inverse of srgb_to_xyz_matrix().
const Mat3& xyz_to_srgb_matrix();

Rgb apply(const Mat3& m, const Rgb& v);

/// IEC 61966-2-1 transfer curve.
double srgb_decode(double v);
double srgb_encode(double v);

/// 8-bit code of a [0,1] sample: round(v*255), clamped.
inline int quantize8(double v) {
    return static_cast<int>(std::clamp(std::lround(v * 255.0), 0L, 255L));
}

/// 8-bit code of the sRGB encoding of a linear sample. Equivalent to
/// quantize8(srgb_encode(v)) with ties resolved by a fixed threshold table,
/// so the result is identical on every platform.
int encode_srgb8(double linear);

/// L = 0.299 R + 0.587 G + 0.114 B per pixel. Accepts Srgb8 or LinearRgb
/// three-channel input; single-channel input throws InvalidInput.
Image to_grayscale(const Image& img);

/// Colour-space conversion of a three-channel RGB image.
///
/// Targets: Hsv, Lab, Ohta, ChromaticityRgb. Lab decodes the sRGB transfer
/// curve first when the input is tagged Srgb8; the other targets work on the
/// stored RGB values. A black pixel has chromaticity (1/3, 1/3, 1/3).
Image convert(const Image& img, ColorSpace target);

/// Srgb8 -> LinearRgb (no quantisation). LinearRgb input is returned as is.
Image to_linear(const Image& img);

/// LinearRgb -> Srgb8, quantised to 8-bit codes.
Image to_srgb8(const Image& img);

/// Per-pixel conversions used by the descriptors.
Rgb rgb_to_hsv(const Rgb& rgb);
Rgb linear_rgb_to_lab(const Rgb& linear);

} // namespace texbench
