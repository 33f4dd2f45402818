// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>
#include <string>

#include "internal.hpp"
#include "texbench/color.hpp"
#include "texbench/error.hpp"

namespace texbench::desc {

void require_rgb_patch(const Image& patch, const char* what) {
    if (patch.empty() || patch.channels() != 3 ||
        (patch.space() != ColorSpace::Srgb8 && patch.space() != ColorSpace::LinearRgb)) {
        throw InvalidInput(std::string(what) + ": expected a non-empty Srgb8 or LinearRgb patch");
    }
}

std::array<double, 2> mean_std(const std::vector<double>& v) {
    if (v.empty()) {
        return {0.0, 0.0};
    }
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / static_cast<double>(v.size()))};
}

PatchContext::PatchContext(const Image& patch, const DescriptorConfig& config) : patch_(patch), config_(config) {
    require_rgb_patch(patch_, "descriptor");
}

const Plane& PatchContext::value(int c) {
    auto& slot = values_.at(c);
    if (!slot) {
        Plane p(width(), height());
        for (int y = 0; y < height(); ++y) {
            for (int x = 0; x < width(); ++x) {
                if (c < 3) {
                    p(x, y) = patch_.at(x, y, c);
                } else {
                    p(x, y) = 0.299 * patch_.at(x, y, 0) + 0.587 * patch_.at(x, y, 1) + 0.114 * patch_.at(x, y, 2);
                }
            }
        }
        slot = std::move(p);
    }
    return *slot;
}

const Plane& PatchContext::level(int c) {
    auto& slot = levels_.at(c);
    if (!slot) {
        const bool codes = patch_.space() == ColorSpace::Srgb8;
        const auto lv = [&](int x, int y, int ch) -> double {
            const double v = patch_.at(x, y, ch);
            return codes ? static_cast<double>(quantize8(v)) : v;
        };
        Plane p(width(), height());
        for (int y = 0; y < height(); ++y) {
            for (int x = 0; x < width(); ++x) {
                p(x, y) = c < 3 ? lv(x, y, c) : 299.0 * lv(x, y, 0) + 587.0 * lv(x, y, 1) + 114.0 * lv(x, y, 2);
            }
        }
        slot = std::move(p);
    }
    return *slot;
}

const std::vector<ResponseGrid>& PatchContext::gabor(const GaborBankConfig& bank_config, int channel) {
    for (const auto& e : gabor_) {
        if (e.channel == channel && e.bank == bank_config) {
            return e.grids;
        }
    }
    const auto bank = gabor_bank(bank_config, width(), height());
    // Spectra are shared between banks with the same padding.
    std::shared_ptr<const Spectrum> spectrum;
    for (const auto& s : spectra_) {
        if (s.channel == channel && s.pad == bank->pad() && s.mode == bank_config.pad_mode) {
            spectrum = s.spectrum;
        }
    }
    if (!spectrum) {
        spectrum = bank->spectrum(value(channel));
        spectra_.push_back({bank->pad(), bank_config.pad_mode, channel, spectrum});
    }
    GaborEntry entry{bank_config, channel, {}};
    for (std::size_t f = 0; f < bank->filters().size(); ++f) {
        entry.grids.push_back(bank->respond(*spectrum, static_cast<int>(f)));
    }
    gabor_.push_back(std::move(entry));
    return gabor_.back().grids;
}

} // namespace texbench::desc
