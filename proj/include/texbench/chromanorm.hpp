// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "texbench/color.hpp"
#include "texbench/image.hpp"

namespace texbench::norm {

/// Estimated illuminant colour, positive and of unit L2 norm.
struct IlluminantEstimate {
    Rgb rgb{0.5773502691896258, 0.5773502691896258, 0.5773502691896258};
    /// Set when the estimator had no signal and returned the neutral
    /// estimate instead.
    bool fallback = false;
};

struct Normalized {
    Image image;
    IlluminantEstimate estimate;
};

/// Colour-constancy framework e(n, p, sigma): Minkowski p-norm over pixels
/// of the n-th order Gaussian-derivative magnitude of each channel.
/// n = 0 is Shades-of-Gray (p = 1, sigma = 0 is Gray-World). Channels with
/// no energy make the estimate fall back to neutral. p may be +infinity.
IlluminantEstimate estimate_illuminant(const Image& linear, int order, double p, double sigma);

/// Divides each channel by its estimate component and rescales so the
/// largest sample of the image is 1.
Image von_kries(const Image& linear, const Rgb& estimate);

/// Gray-World. Throws DegenerateError when a channel has zero mean.
Normalized gray_world(const Image& linear);

/// Gray-Edge, order 1 or 2 (0 is accepted and gives Shades-of-Gray).
Normalized gray_edge(const Image& linear, int order = 1, double p = 1.0, double sigma = 6.0);

struct WeightedGrayEdgeOptions {
    int order = 1;
    double p = 1.0;
    double sigma = 6.0;
    int iterations = 10;
    double kappa = 10.0;
    /// Convergence threshold on the change of the estimate, degrees.
    double tolerance_deg = 0.001;
};

/// Gray-Edge with edges weighted by their specular-ness, (|projection of the
/// derivative on the current illuminant| / |derivative|)^kappa, iterated
/// until the estimate moves by less than the tolerance.
Normalized weighted_gray_edge(const Image& linear, const WeightedGrayEdgeOptions& options = {});

/// Frankle-McCann Retinex (ratio-product-reset-average over power-of-two
/// shifts), per channel in log space with a 1/255 floor. Output channels are
/// rescaled to a maximum of 1.
Image retinex_frankle_mccann(const Image& linear, int iterations = 4);

/// McCann99 multiresolution Retinex: pyramid of 2x2 means down to a level of
/// at most 32 pixels in total, 8-neighbour iterations per level.
Image retinex_mccann99(const Image& linear, int iterations = 4);

/// Parameters of the named normalizers.
struct NormalizerConfig {
    int edge_order = 1;
    double edge_p = 1.0;
    double edge_sigma = 6.0;
    WeightedGrayEdgeOptions weighted;
    int retinex_iterations = 4;
};

/// none, gray-world, gray-edge, weighted-gray-edge, retinex-frankle,
/// retinex-mccann99.
const std::vector<std::string>& normalizer_names();
bool is_normalizer(std::string_view name);

/// Applies the named normalizer. Srgb8 input is decoded to linear RGB first
/// and re-encoded to 8-bit sRGB afterwards; LinearRgb input stays linear.
/// Gray-World on an image with an empty channel (a primary-lit shot) keeps
/// the neutral estimate instead of throwing.
Image normalize(const Image& img, std::string_view name, const NormalizerConfig& config = {});

/// Angle between two RGB triples in degrees.
double angular_error_deg(const Rgb& a, const Rgb& b);

} // namespace texbench::norm
