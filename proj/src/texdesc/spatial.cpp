// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "internal.hpp"
#include "texbench/dtcwt.hpp"
#include "texbench/error.hpp"

namespace texbench::desc {
namespace {

constexpr int kAngleSteps[4][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, -1}};

template <bool Erode>
Plane erode_or_dilate(const Plane& in, int dx, int dy, int lo, int hi) {
    const int r = std::max(std::abs(lo), std::abs(hi));
    const int pw = in.width + 2 * r;
    const int ph = in.height + 2 * r;
    std::vector<double> padded(static_cast<std::size_t>(pw) * ph);
    for (int y = 0; y < ph; ++y) {
        const double* src = &in.data[static_cast<std::size_t>(reflect_index(y - r, in.height)) * in.width];
        double* dst = &padded[static_cast<std::size_t>(y) * pw];
        for (int x = 0; x < r; ++x) {
            dst[x] = src[reflect_index(x - r, in.width)];
            dst[r + in.width + x] = src[reflect_index(in.width + x, in.width)];
        }
        std::copy(src, src + in.width, dst + r);
    }
    Plane out(in.width, in.height);
    const std::ptrdiff_t step = static_cast<std::ptrdiff_t>(dy) * pw + dx;
    for (int y = 0; y < in.height; ++y) {
        const double* row = &padded[static_cast<std::size_t>(y + r) * pw + r];
        double* dst = &out.data[static_cast<std::size_t>(y) * in.width];
        std::copy(row + lo * step, row + lo * step + in.width, dst);
        for (int k = lo + 1; k <= hi; ++k) {
            const double* s = row + k * step;
            for (int x = 0; x < in.width; ++x) {
                dst[x] = Erode ? std::min(dst[x], s[x]) : std::max(dst[x], s[x]);
            }
        }
    }
    return out;
}

double mass(const Plane& p) {
    double s = 0.0;
    for (double v : p.data) {
        s += v;
    }
    return s;
}

} // namespace

std::vector<double> dtcwt_impl(PatchContext& ctx) {
    const int levels = ctx.config().dtcwt_levels;
    if (levels < 1) {
        throw InvalidInput("dtcwt: at least one level required");
    }
    std::vector<double> out;
    for (int c = 0; c < 3; ++c) {
        const Plane& v = ctx.value(c);
        dtcwt::Mat x(v.height, v.width);
        x.data = v.data;
        const auto pyramid = dtcwt::forward(x, levels);
        for (const auto& level : pyramid.highpasses) {
            for (const auto& band : level.band) {
                std::vector<double> mags(band.size());
                for (std::size_t i = 0; i < band.size(); ++i) {
                    mags[i] = std::sqrt(band[i].real() * band[i].real() + band[i].imag() * band[i].imag());
                }
                const auto ms = mean_std(mags);
                out.push_back(ms[0]);
                out.push_back(ms[1]);
            }
        }
    }
    return out;
}

std::vector<double> granulometry_impl(PatchContext& ctx) {
    const auto& sizes = ctx.config().granulometry_sizes;
    if (sizes.empty() || sizes.front() < 1 || !std::is_sorted(sizes.begin(), sizes.end()) ||
        std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
        throw InvalidInput("granulometry: sizes must be positive and strictly increasing");
    }
    std::vector<double> out;
    for (int c = 0; c < 3; ++c) {
        const Plane& f = ctx.value(c);
        const double total = mass(f);
        for (const auto& step : kAngleSteps) {
            double previous = total;
            for (int n : sizes) {
                const int lo = -(n / 2);
                const int hi = lo + n - 1;
                const Plane eroded = erode_or_dilate<true>(f, step[0], step[1], lo, hi);
                // Dilation by the reflected element.
                const Plane opened = erode_or_dilate<false>(eroded, step[0], step[1], -hi, -lo);
                const double m = mass(opened);
                out.push_back(total > 0.0 ? std::max(0.0, previous - m) / total : 0.0);
                previous = m;
            }
        }
    }
    return out;
}

std::vector<double> hog_impl(PatchContext& ctx) {
    const int cells = ctx.config().hog_cells;
    const int bins = ctx.config().hog_bins;
    const Plane& l = ctx.value(3);
    if (cells < 1 || bins < 1 || cells > std::min(l.width, l.height)) {
        throw InvalidInput("hog: invalid cell or bin count");
    }
    std::vector<int> bx(cells + 1), by(cells + 1);
    for (int i = 0; i <= cells; ++i) {
        bx[i] = static_cast<int>(std::lround(double(i) * l.width / cells));
        by[i] = static_cast<int>(std::lround(double(i) * l.height / cells));
    }
    std::vector<double> out(static_cast<std::size_t>(cells) * cells * bins, 0.0);
    const double bin_width = std::numbers::pi / bins;
    for (int cy = 0; cy < cells; ++cy) {
        for (int cx = 0; cx < cells; ++cx) {
            double* h = &out[(static_cast<std::size_t>(cy) * cells + cx) * bins];
            for (int y = by[cy]; y < by[cy + 1]; ++y) {
                for (int x = bx[cx]; x < bx[cx + 1]; ++x) {
                    const double gx = l(reflect_index(x + 1, l.width), y) - l(reflect_index(x - 1, l.width), y);
                    const double gy = l(x, reflect_index(y + 1, l.height)) - l(x, reflect_index(y - 1, l.height));
                    const double m = std::sqrt(gx * gx + gy * gy);
                    if (m == 0.0) {
                        continue;
                    }
                    double a = std::atan2(gy, gx);
                    if (a < 0.0) {
                        a += std::numbers::pi;
                    }
                    if (a >= std::numbers::pi) {
                        a -= std::numbers::pi;
                    }
                    h[std::min(static_cast<int>(a / bin_width), bins - 1)] += m;
                }
            }
            double norm = 0.0;
            for (int b = 0; b < bins; ++b) {
                norm += h[b] * h[b];
            }
            norm = std::sqrt(norm);
            if (norm > 0.0) {
                for (int b = 0; b < bins; ++b) {
                    h[b] /= norm;
                }
            }
        }
    }
    return out;
}

std::vector<double> dtcwt(const Image& patch, int levels) {
    DescriptorConfig config;
    config.dtcwt_levels = levels;
    PatchContext ctx(patch, config);
    return dtcwt_impl(ctx);
}

std::vector<double> granulometry(const Image& patch, const std::vector<int>& sizes) {
    DescriptorConfig config;
    config.granulometry_sizes = sizes;
    PatchContext ctx(patch, config);
    return granulometry_impl(ctx);
}

std::vector<double> hog(const Image& patch, int cells, int bins) {
    DescriptorConfig config;
    config.hog_cells = cells;
    config.hog_bins = bins;
    PatchContext ctx(patch, config);
    return hog_impl(ctx);
}

} // namespace texbench::desc
