// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "texbench/image.hpp"

namespace texbench::desc {

struct FeatureVector {
    std::string descriptor;
    std::vector<float> values;

    std::size_t dim() const { return values.size(); }
};

enum class PadMode { Reflect, Circular };

/// Frequency-domain Gabor bank. Filter (s, o) has centre frequency
/// top_frequency / 2^s along angle o*pi/orientations, a Gaussian lobe with
/// the given radial bandwidth, and a zeroed DC bin.
struct GaborBankConfig {
    int orientations = 6;
    int scales = 4;
    double top_frequency = 0.327;
    double bandwidth_octaves = 1.0;
    int pad = 20;
    PadMode pad_mode = PadMode::Reflect;
    /// Largest output stride; a filter is evaluated on the coarsest grid
    /// its spectral support allows, up to this value.
    int max_decimation = 8;
};

struct DescriptorConfig {
    GaborBankConfig gabor;
    GaborBankConfig gist{8, 4, 0.25, 1.0, 20, PadMode::Reflect, 2};
    int gist_grid = 4;
    int cooccurrence_levels = 64;
    std::vector<int> granulometry_sizes{3, 5};
    int dtcwt_levels = 4;
    int hog_cells = 3;
    int hog_bins = 9;
    int lcc_bins = 256;
};

enum class HistVariant { Gray, HV, Rgb, Chromaticity };

std::vector<double> hist(const Image& patch, HistVariant variant);

/// Moments m_pq, p+q <= 3, of the CIE xy chromaticity distribution, ordered
/// (0,0) (1,0) (0,1) (2,0) (1,1) (0,2) (3,0) (2,1) (1,2) (0,3).
std::vector<double> chromaticity_moments(const Image& patch);

/// Normalised symmetric co-occurrence matrix (levels x levels) of a
/// quantised plane for the given offsets.
std::vector<double> cooccurrence_matrix(const std::vector<int>& q, int width, int height, int levels,
                                        const std::vector<std::pair<int, int>>& offsets);

/// contrast, correlation, energy, entropy, homogeneity
std::vector<double> haralick(const std::vector<double>& p, int levels);

std::vector<double> cooccurrence(const Image& patch, bool per_channel, int levels = 64);

enum class GaborMode { L, RGB };

std::vector<double> gabor(const Image& patch, GaborMode mode, const GaborBankConfig& bank = {});
std::vector<double> opponent_gabor(const Image& patch, const GaborBankConfig& bank = {});
std::vector<double> gist(const Image& patch, const GaborBankConfig& bank = DescriptorConfig{}.gist, int grid = 4);
std::vector<double> dtcwt(const Image& patch, int levels = 4);
std::vector<double> granulometry(const Image& patch, const std::vector<int>& sizes = {3, 5});
std::vector<double> hog(const Image& patch, int cells = 3, int bins = 9);

enum class LbpSpace { L, RGB, Lab, Ohta };

std::vector<double> lbp(const Image& patch, LbpSpace space);
std::vector<double> oclbp(const Image& patch);
std::vector<double> lcc(const Image& patch, int bins = 256);

/// Bin of a 16-bit LBP code in the uniform layout: all-zeros first, then
/// (number of ones, rotation) with rotation = position of the first set bit
/// of the run, all-ones, and the non-uniform catch-all last.
int uniform_bin(unsigned code, int points);

// Registry

const std::vector<std::string>& descriptor_names();
bool is_descriptor(std::string_view name);
std::size_t descriptor_dim(std::string_view name, const DescriptorConfig& config = {});
/// True for descriptors whose dimensionality follows the configuration
/// rather than a fixed catalogue figure (dtcwt, granulometry, gist).
bool dim_is_informational(std::string_view name);

FeatureVector extract(std::string_view name, const Image& patch, const DescriptorConfig& config = {});

/// Extracts several descriptors from one patch, sharing spectra and filter
/// responses between them. Output order follows `names`.
std::vector<FeatureVector> extract_many(const std::vector<std::string>& names, const Image& patch,
                                        const DescriptorConfig& config = {});

} // namespace texbench::desc
