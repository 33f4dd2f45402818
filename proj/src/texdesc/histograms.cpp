// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>

#include "internal.hpp"
#include "texbench/color.hpp"
#include "texbench/error.hpp"

namespace texbench::desc {
namespace {

void normalize_block(std::vector<double>& h, std::size_t begin, std::size_t size) {
    double total = 0.0;
    for (std::size_t i = begin; i < begin + size; ++i) {
        total += h[i];
    }
    if (total > 0.0) {
        for (std::size_t i = begin; i < begin + size; ++i) {
            h[i] /= total;
        }
    }
}

} // namespace

std::vector<double> hist_impl(PatchContext& ctx, HistVariant variant) {
    const Image& img = ctx.patch();
    const int w = img.width();
    const int h = img.height();
    const int blocks = variant == HistVariant::Gray ? 1 : variant == HistVariant::HV ? 2 : 3;
    std::vector<double> out(static_cast<std::size_t>(blocks) * 256, 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double r = img.at(x, y, 0);
            const double g = img.at(x, y, 1);
            const double b = img.at(x, y, 2);
            switch (variant) {
            case HistVariant::Gray:
                out[quantize8(ctx.value(3)(x, y))] += 1.0;
                break;
            case HistVariant::HV: {
                const Rgb hsv = rgb_to_hsv({r, g, b});
                const int hb = std::min(static_cast<int>(hsv[0] * 256.0), 255);
                out[hb] += 1.0;
                out[256 + quantize8(hsv[2])] += 1.0;
                break;
            }
            case HistVariant::Rgb:
                out[quantize8(r)] += 1.0;
                out[256 + quantize8(g)] += 1.0;
                out[512 + quantize8(b)] += 1.0;
                break;
            case HistVariant::Chromaticity: {
                const double s = r + g + b;
                const double cr = s > 0.0 ? r / s : 1.0 / 3.0;
                const double cg = s > 0.0 ? g / s : 1.0 / 3.0;
                const double cb = s > 0.0 ? b / s : 1.0 / 3.0;
                out[quantize8(cr)] += 1.0;
                out[256 + quantize8(cg)] += 1.0;
                out[512 + quantize8(cb)] += 1.0;
                break;
            }
            }
        }
    }
    for (int k = 0; k < blocks; ++k) {
        normalize_block(out, static_cast<std::size_t>(k) * 256, 256);
    }
    return out;
}

std::vector<double> chromaticity_moments_impl(PatchContext& ctx) {
    const Image& img = ctx.patch();
    const bool encoded = img.space() == ColorSpace::Srgb8;
    const Mat3& m = srgb_to_xyz_matrix();
    static constexpr int order[10][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                         {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
    std::vector<double> out(10, 0.0);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            Rgb rgb{img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2)};
            if (encoded) {
                for (double& v : rgb) {
                    v = srgb_decode(v);
                }
            }
            const Rgb xyz = texbench::apply(m, rgb);
            const double s = xyz[0] + xyz[1] + xyz[2];
            const double cx = s > 0.0 ? xyz[0] / s : 1.0 / 3.0;
            const double cy = s > 0.0 ? xyz[1] / s : 1.0 / 3.0;
            const double px[4] = {1.0, cx, cx * cx, cx * cx * cx};
            const double py[4] = {1.0, cy, cy * cy, cy * cy * cy};
            for (int k = 0; k < 10; ++k) {
                out[k] += px[order[k][0]] * py[order[k][1]];
            }
        }
    }
    for (double& v : out) {
        v /= static_cast<double>(img.pixel_count());
    }
    return out;
}

std::vector<double> cooccurrence_matrix(const std::vector<int>& q, int width, int height, int levels,
                                        const std::vector<std::pair<int, int>>& offsets) {
    std::vector<double> p(static_cast<std::size_t>(levels) * levels, 0.0);
    double total = 0.0;
    for (const auto& [dx, dy] : offsets) {
        for (int y = 0; y < height; ++y) {
            const int y2 = y + dy;
            if (y2 < 0 || y2 >= height) {
                continue;
            }
            for (int x = 0; x < width; ++x) {
                const int x2 = x + dx;
                if (x2 < 0 || x2 >= width) {
                    continue;
                }
                const int a = q[static_cast<std::size_t>(y) * width + x];
                const int b = q[static_cast<std::size_t>(y2) * width + x2];
                p[static_cast<std::size_t>(a) * levels + b] += 1.0;
                p[static_cast<std::size_t>(b) * levels + a] += 1.0;
                total += 2.0;
            }
        }
    }
    if (total > 0.0) {
        for (double& v : p) {
            v /= total;
        }
    }
    return p;
}

std::vector<double> haralick(const std::vector<double>& p, int levels) {
    double mi = 0.0;
    double mj = 0.0;
    for (int i = 0; i < levels; ++i) {
        for (int j = 0; j < levels; ++j) {
            const double v = p[static_cast<std::size_t>(i) * levels + j];
            mi += i * v;
            mj += j * v;
        }
    }
    double vi = 0.0, vj = 0.0, cov = 0.0;
    double contrast = 0.0, energy = 0.0, entropy = 0.0, homogeneity = 0.0;
    for (int i = 0; i < levels; ++i) {
        for (int j = 0; j < levels; ++j) {
            const double v = p[static_cast<std::size_t>(i) * levels + j];
            if (v == 0.0) {
                continue;
            }
            const double d = i - j;
            contrast += d * d * v;
            energy += v * v;
            entropy -= v * std::log(v);
            homogeneity += v / (1.0 + d * d);
            vi += (i - mi) * (i - mi) * v;
            vj += (j - mj) * (j - mj) * v;
            cov += (i - mi) * (j - mj) * v;
        }
    }
    const double denom = std::sqrt(vi * vj);
    const double correlation = denom > 1e-12 ? cov / denom : 1.0;
    return {contrast, correlation, energy, entropy, homogeneity};
}

std::vector<double> cooccurrence_impl(PatchContext& ctx, bool per_channel) {
    const int levels = ctx.config().cooccurrence_levels;
    if (levels < 2 || levels > 256 || 256 % levels != 0) {
        throw InvalidInput("cooccurrence: levels must divide 256");
    }
    const int shift_div = 256 / levels;
    static const std::vector<std::pair<int, int>> offsets{{1, 0}, {1, -1}, {0, -1}, {-1, -1}};
    std::vector<double> out;
    const int first = per_channel ? 0 : 3;
    const int last = per_channel ? 2 : 3;
    for (int c = first; c <= last; ++c) {
        const Plane& v = ctx.value(c);
        std::vector<int> q(v.data.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] = quantize8(v.data[i]) / shift_div;
        }
        const auto h = haralick(cooccurrence_matrix(q, v.width, v.height, levels, offsets), levels);
        out.insert(out.end(), h.begin(), h.end());
    }
    return out;
}

std::vector<double> hist(const Image& patch, HistVariant variant) {
    PatchContext ctx(patch, {});
    return hist_impl(ctx, variant);
}

std::vector<double> chromaticity_moments(const Image& patch) {
    PatchContext ctx(patch, {});
    return chromaticity_moments_impl(ctx);
}

std::vector<double> cooccurrence(const Image& patch, bool per_channel, int levels) {
    DescriptorConfig config;
    config.cooccurrence_levels = levels;
    PatchContext ctx(patch, config);
    return cooccurrence_impl(ctx, per_channel);
}

} // namespace texbench::desc
