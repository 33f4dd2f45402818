// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "texbench/descriptors.hpp"
#include "texbench/filter.hpp"
#include "texbench/image.hpp"

namespace texbench::desc {

/// |response| of one filter sampled every `stride` pixels. Sample (i, j)
/// sits at padded position (stride*(x0+i), stride*(y0+j)); only positions
/// inside the patch are kept.
struct ResponseGrid {
    int stride = 1;
    int x0 = 0;
    int y0 = 0;
    int nx = 0;
    int ny = 0;
    std::vector<double> mag;

    double at(int i, int j) const { return mag[static_cast<std::size_t>(j) * nx + i]; }
};

struct GaborFilter {
    double frequency = 0.0;
    double theta = 0.0;
    int stride = 1;
    int mx = 0;
    int my = 0;
    int cx = 0; ///< window centre bin
    int cy = 0;
    std::vector<double> window; ///< my x mx, buffer order (wrapped offsets)
    std::vector<int> rows; ///< spectrum row of each window row
    std::vector<int> cols; ///< spectrum column of each window column

    /// Runs of nonzero window entries with contiguous spectrum columns.
    struct Span {
        int row = 0;
        int dst = 0;
        int src = 0;
        int len = 0;
    };
    std::vector<Span> spans;
    std::vector<float> weights; ///< window values in span order
};

struct Spectrum;

/// Immutable filter bank for one configuration and patch size.
class GaborBank {
public:
    GaborBank(const GaborBankConfig& config, int width, int height);
    ~GaborBank();
    GaborBank(const GaborBank&) = delete;
    GaborBank& operator=(const GaborBank&) = delete;

    const GaborBankConfig& config() const { return config_; }
    int pad() const { return pad_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int width() const { return width_; }
    int height() const { return height_; }
    /// Index s * orientations + o.
    const std::vector<GaborFilter>& filters() const { return filters_; }

    std::shared_ptr<const Spectrum> spectrum(const Plane& channel) const;
    ResponseGrid respond(const Spectrum& spectrum, int filter) const;

private:
    struct Plans;

    GaborBankConfig config_;
    int width_ = 0;
    int height_ = 0;
    int pad_ = 0;
    int nx_ = 0;
    int ny_ = 0;
    std::vector<GaborFilter> filters_;
    std::unique_ptr<Plans> plans_;
};

/// Shared, built once per (configuration, patch size).
std::shared_ptr<const GaborBank> gabor_bank(const GaborBankConfig& config, int width, int height);

bool operator==(const GaborBankConfig& a, const GaborBankConfig& b);

/// Lazily computed per-patch intermediates shared by the descriptors.
class PatchContext {
public:
    PatchContext(const Image& patch, const DescriptorConfig& config);

    const Image& patch() const { return patch_; }
    const DescriptorConfig& config() const { return config_; }
    int width() const { return patch_.width(); }
    int height() const { return patch_.height(); }

    /// Stored channel values (c = 0..2) and luminance (c = 3).
    const Plane& value(int c);
    /// Threshold levels for LBP-type comparisons: 8-bit codes for Srgb8
    /// input, raw samples otherwise. c = 3 is 299 R + 587 G + 114 B on the
    /// same levels.
    const Plane& level(int c);
    const std::vector<ResponseGrid>& gabor(const GaborBankConfig& bank, int channel);
    /// LBP histograms keyed by (centre level, neighbour level).
    std::map<std::pair<int, int>, std::vector<double>>& lbp_cache() { return lbp_; }
    /// Per RGB level: sum over the 16 neighbours of 65536 x the bilinear
    /// sample, on the LBP valid region. Empty until the RGB pass has run.
    std::array<std::vector<double>, 3>& neighbour_sums() { return neighbour_sums_; }

private:
    struct GaborEntry {
        GaborBankConfig bank;
        int channel = 0;
        std::vector<ResponseGrid> grids;
    };

    struct SpectrumEntry {
        int pad = 0;
        PadMode mode = PadMode::Reflect;
        int channel = 0;
        std::shared_ptr<const Spectrum> spectrum;
    };

    Image patch_;
    DescriptorConfig config_;
    std::vector<SpectrumEntry> spectra_;
    std::array<std::optional<Plane>, 4> values_;
    std::array<std::optional<Plane>, 4> levels_;
    std::vector<GaborEntry> gabor_;
    std::map<std::pair<int, int>, std::vector<double>> lbp_;
    std::array<std::vector<double>, 3> neighbour_sums_;
};

void require_rgb_patch(const Image& patch, const char* what);

std::vector<double> hist_impl(PatchContext& ctx, HistVariant variant);
std::vector<double> chromaticity_moments_impl(PatchContext& ctx);
std::vector<double> cooccurrence_impl(PatchContext& ctx, bool per_channel);
std::vector<double> gabor_impl(PatchContext& ctx, GaborMode mode);
std::vector<double> opponent_gabor_impl(PatchContext& ctx);
std::vector<double> gist_impl(PatchContext& ctx);
std::vector<double> dtcwt_impl(PatchContext& ctx);
std::vector<double> granulometry_impl(PatchContext& ctx);
std::vector<double> hog_impl(PatchContext& ctx);
std::vector<double> lbp_impl(PatchContext& ctx, LbpSpace space);
std::vector<double> oclbp_impl(PatchContext& ctx);
std::vector<double> lcc_impl(PatchContext& ctx);

/// Mean and population standard deviation.
std::array<double, 2> mean_std(const std::vector<double>& v);

} // namespace texbench::desc
