// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "internal.hpp"
#include "texbench/color.hpp"
#include "texbench/error.hpp"

namespace texbench::desc {
namespace {

constexpr int kPoints = 16;
constexpr double kRadius = 2.0;
constexpr int kBorder = 2;
constexpr int kBins = kPoints * (kPoints - 1) + 3;

// Neighbour p sits at (x + R cos(2 pi p / P), y - R sin(2 pi p / P)).
// Weights are products of 8-bit axis fractions and sum to 65536.
struct Tap {
    int dx = 0;
    int dy = 0;
    int w00 = 0, w10 = 0, w01 = 0, w11 = 0;
};

const std::array<Tap, kPoints>& taps() {
    static const std::array<Tap, kPoints> t = [] {
        std::array<Tap, kPoints> out{};
        for (int p = 0; p < kPoints; ++p) {
            double px = kRadius * std::cos(2.0 * std::numbers::pi * p / kPoints);
            double py = -kRadius * std::sin(2.0 * std::numbers::pi * p / kPoints);
            if (std::abs(px - std::round(px)) < 1e-9) {
                px = std::round(px);
            }
            if (std::abs(py - std::round(py)) < 1e-9) {
                py = std::round(py);
            }
            Tap& tap = out[p];
            tap.dx = static_cast<int>(std::floor(px));
            tap.dy = static_cast<int>(std::floor(py));
            const int ax = static_cast<int>(std::lround((px - tap.dx) * 256.0));
            const int ay = static_cast<int>(std::lround((py - tap.dy) * 256.0));
            tap.w00 = (256 - ax) * (256 - ay);
            tap.w10 = ax * (256 - ay);
            tap.w01 = (256 - ax) * ay;
            tap.w11 = ax * ay;
        }
        return out;
    }();
    return t;
}

// 65536 x the bilinear samples of tap t for every pixel of the valid
// region, row-major.
void sample_plane(const Plane& p, const Tap& t, std::vector<double>& out) {
    const int w = p.width - 2 * kBorder;
    const int h = p.height - 2 * kBorder;
    out.resize(static_cast<std::size_t>(w) * h);
    const int sx = t.w10 != 0 || t.w11 != 0 ? 1 : 0;
    const int sy = t.w01 != 0 || t.w11 != 0 ? 1 : 0;
    const double w00 = t.w00, w10 = t.w10, w01 = t.w01, w11 = t.w11;
    if (sx == 0 && sy == 0) {
        for (int y = 0; y < h; ++y) {
            const double* r0 = &p.data[static_cast<std::size_t>(y + kBorder + t.dy) * p.width + kBorder + t.dx];
            double* dst = &out[static_cast<std::size_t>(y) * w];
            for (int x = 0; x < w; ++x) {
                dst[x] = w00 * r0[x];
            }
        }
        return;
    }
    for (int y = 0; y < h; ++y) {
        const double* r0 = &p.data[static_cast<std::size_t>(y + kBorder + t.dy) * p.width + kBorder + t.dx];
        const double* r1 = r0 + static_cast<std::ptrdiff_t>(sy) * p.width;
        double* dst = &out[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            dst[x] = w00 * r0[x] + w10 * r0[x + sx] + w01 * r1[x] + w11 * r1[x + sx];
        }
    }
}

const std::vector<int>& bin_table() {
    static const std::vector<int> table = [] {
        std::vector<int> t(1u << kPoints);
        for (unsigned code = 0; code < t.size(); ++code) {
            t[code] = uniform_bin(code, kPoints);
        }
        return t;
    }();
    return table;
}

void require_size(const Plane& p) {
    if (p.width <= 2 * kBorder || p.height <= 2 * kBorder) {
        throw InvalidInput("lbp: patch smaller than the sampling neighbourhood");
    }
}

std::vector<double> normalised_histogram(const std::vector<std::uint32_t>& codes) {
    const auto& table = bin_table();
    std::vector<double> hist(kBins, 0.0);
    for (std::uint32_t code : codes) {
        hist[table[code]] += 1.0;
    }
    for (double& v : hist) {
        v /= static_cast<double>(codes.size());
    }
    return hist;
}

std::vector<double> scaled_centres(const Plane& center) {
    const int w = center.width - 2 * kBorder;
    const int h = center.height - 2 * kBorder;
    std::vector<double> c(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            c[static_cast<std::size_t>(y) * w + x] = 65536.0 * center(x + kBorder, y + kBorder);
        }
    }
    return c;
}

// Normalised uniform-pattern histogram; centres from `center`, neighbours
// from `neighbour`.
std::vector<double> lbp_histogram(const Plane& center, const Plane& neighbour) {
    require_size(center);
    const std::vector<double> c = scaled_centres(center);
    std::vector<std::uint32_t> codes(c.size(), 0);
    std::vector<double> s;
    const auto& t = taps();
    for (int p = 0; p < kPoints; ++p) {
        sample_plane(neighbour, t[p], s);
        for (std::size_t i = 0; i < c.size(); ++i) {
            codes[i] |= static_cast<std::uint32_t>(s[i] >= c[i]) << p;
        }
    }
    return normalised_histogram(codes);
}

// All six (centre, neighbour) histograms over the R, G, B levels with
// centre <= neighbour, plus the neighbour sums, from one sampling pass.
void rgb_pass(PatchContext& ctx) {
    auto& sums = ctx.neighbour_sums();
    if (!sums[0].empty()) {
        return;
    }
    const std::array<const Plane*, 3> lv{&ctx.level(0), &ctx.level(1), &ctx.level(2)};
    require_size(*lv[0]);
    std::array<std::vector<double>, 3> centres;
    for (int c = 0; c < 3; ++c) {
        centres[c] = scaled_centres(*lv[c]);
    }
    const std::size_t n = centres[0].size();
    std::array<std::array<std::vector<std::uint32_t>, 3>, 3> codes;
    std::array<std::vector<double>, 3> acc;
    std::vector<double> s;
    const auto& t = taps();
    for (int nb = 0; nb < 3; ++nb) {
        acc[nb].assign(n, 0.0);
        for (int c = 0; c <= nb; ++c) {
            codes[c][nb].assign(n, 0);
        }
        for (int p = 0; p < kPoints; ++p) {
            sample_plane(*lv[nb], t[p], s);
            for (int c = 0; c <= nb; ++c) {
                std::uint32_t* code = codes[c][nb].data();
                const double* centre = centres[c].data();
                for (std::size_t i = 0; i < n; ++i) {
                    code[i] |= static_cast<std::uint32_t>(s[i] >= centre[i]) << p;
                }
            }
            double* a = acc[nb].data();
            for (std::size_t i = 0; i < n; ++i) {
                a[i] += s[i];
            }
        }
        for (int c = 0; c <= nb; ++c) {
            ctx.lbp_cache().emplace(std::make_pair(c, nb), normalised_histogram(codes[c][nb]));
        }
    }
    sums = std::move(acc);
}

const std::vector<double>& level_histogram(PatchContext& ctx, int center, int neighbour) {
    auto& cache = ctx.lbp_cache();
    const auto key = std::make_pair(center, neighbour);
    if (center < 3 && neighbour < 3 && center <= neighbour) {
        rgb_pass(ctx);
    }
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, lbp_histogram(ctx.level(center), ctx.level(neighbour))).first;
    }
    return it->second;
}

void append(std::vector<double>& out, const std::vector<double>& block) {
    out.insert(out.end(), block.begin(), block.end());
}

std::array<Plane, 3> space_planes(PatchContext& ctx, LbpSpace space) {
    const Plane& r = ctx.level(0);
    const Plane& g = ctx.level(1);
    const Plane& b = ctx.level(2);
    std::array<Plane, 3> out{Plane(r.width, r.height), Plane(r.width, r.height), Plane(r.width, r.height)};
    if (space == LbpSpace::Ohta) {
        for (std::size_t i = 0; i < r.data.size(); ++i) {
            out[0].data[i] = r.data[i] + g.data[i] + b.data[i];
            out[1].data[i] = r.data[i] - b.data[i];
            out[2].data[i] = 2.0 * g.data[i] - r.data[i] - b.data[i];
        }
    } else {
        const Image lab = convert(ctx.patch(), ColorSpace::Lab);
        for (int y = 0; y < r.height; ++y) {
            for (int x = 0; x < r.width; ++x) {
                out[0](x, y) = lab.at(x, y, 0) * 255.0 / 100.0;
                out[1](x, y) = lab.at(x, y, 1) + 128.0;
                out[2](x, y) = lab.at(x, y, 2) + 128.0;
            }
        }
    }
    return out;
}

} // namespace

int uniform_bin(unsigned code, int points) {
    if (points < 2 || points > 31) {
        throw InvalidInput("uniform_bin: unsupported point count");
    }
    const unsigned mask = (1u << points) - 1u;
    code &= mask;
    const unsigned rotated = ((code << 1) | (code >> (points - 1))) & mask;
    const int transitions = std::popcount(code ^ rotated);
    const int ones = std::popcount(code);
    if (transitions > 2) {
        return points * (points - 1) + 2;
    }
    if (ones == 0) {
        return 0;
    }
    if (ones == points) {
        return 1 + (points - 1) * points;
    }
    int start = 0;
    for (int i = 0; i < points; ++i) {
        const bool bit = (code >> i) & 1u;
        const bool prev = (code >> ((i + points - 1) % points)) & 1u;
        if (bit && !prev) {
            start = i;
            break;
        }
    }
    return 1 + (ones - 1) * points + start;
}

std::vector<double> lbp_impl(PatchContext& ctx, LbpSpace space) {
    if (space == LbpSpace::L) {
        return level_histogram(ctx, 3, 3);
    }
    if (space == LbpSpace::RGB) {
        std::vector<double> out;
        for (int c = 0; c < 3; ++c) {
            append(out, level_histogram(ctx, c, c));
        }
        return out;
    }
    const auto planes = space_planes(ctx, space);
    std::vector<double> out;
    for (const Plane& p : planes) {
        append(out, lbp_histogram(p, p));
    }
    return out;
}

std::vector<double> oclbp_impl(PatchContext& ctx) {
    std::vector<double> out;
    for (int c = 0; c < 3; ++c) {
        append(out, level_histogram(ctx, c, c));
    }
    static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
        append(out, level_histogram(ctx, pr[0], pr[1]));
    }
    return out;
}

std::vector<double> lcc_impl(PatchContext& ctx) {
    const int bins = ctx.config().lcc_bins;
    if (bins < 1) {
        throw InvalidInput("lcc: bin count must be positive");
    }
    std::vector<double> out = level_histogram(ctx, 3, 3);
    const std::array<const Plane*, 3> ch{&ctx.level(0), &ctx.level(1), &ctx.level(2)};
    rgb_pass(ctx);
    const auto& sum = ctx.neighbour_sums();
    const int w = ch[0]->width - 2 * kBorder;
    const int hgt = ch[0]->height - 2 * kBorder;
    std::vector<double> h(bins, 0.0);
    double count = 0.0;
    for (int y = 0; y < hgt; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const std::array<double, 3> a{(*ch[0])(x + kBorder, y + kBorder), (*ch[1])(x + kBorder, y + kBorder),
                                          (*ch[2])(x + kBorder, y + kBorder)};
            const std::array<double, 3> b{sum[0][i], sum[1][i], sum[2][i]};
            const double cx = a[1] * b[2] - a[2] * b[1];
            const double cy = a[2] * b[0] - a[0] * b[2];
            const double cz = a[0] * b[1] - a[1] * b[0];
            const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            const double angle = std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
            const int bin = std::clamp(static_cast<int>(angle / (std::numbers::pi / 2.0) * bins), 0, bins - 1);
            h[bin] += 1.0;
            count += 1.0;
        }
    }
    for (double& v : h) {
        v /= count;
    }
    append(out, h);
    return out;
}

std::vector<double> lbp(const Image& patch, LbpSpace space) {
    PatchContext ctx(patch, {});
    return lbp_impl(ctx, space);
}

std::vector<double> oclbp(const Image& patch) {
    PatchContext ctx(patch, {});
    return oclbp_impl(ctx);
}

std::vector<double> lcc(const Image& patch, int bins) {
    DescriptorConfig config;
    config.lcc_bins = bins;
    PatchContext ctx(patch, config);
    return lcc_impl(ctx);
}

} // namespace texbench::desc
