// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "texbench/codebook.hpp"
#include "texbench/error.hpp"
#include "texbench/filter.hpp"

namespace texbench::cb {

namespace {

constexpr int kOrient = 8;
constexpr int kSpatial = 4;

int bin_at(const SiftConfig& c, int scale) {
    return static_cast<int>(std::lround(c.bin_size * std::exp2(scale / 3.0)));
}

Plane luminance(const Image& img) {
    Plane p(img.width(), img.height());
    if (img.channels() == 1) {
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                p(x, y) = img.at(x, y, 0);
            }
        }
        return p;
    }
    if (img.channels() != 3) {
        throw InvalidInput("dense_sift: expected 1 or 3 channels");
    }
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            p(x, y) = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
        }
    }
    return p;
}

// Triangular bin weight as a correlation kernel indexed by offset from the
// bin start s: taps at x = s + d, centre (b-1)/2, half-width b.
struct Tent {
    int lo = 0;
    std::vector<double> w;
};

Tent tent(int b) {
    Tent t;
    const double c = (b - 1) / 2.0;
    t.lo = static_cast<int>(std::floor(c - b)) + 1;
    const int hi = static_cast<int>(std::ceil(c + b)) - 1;
    for (int d = t.lo; d <= hi; ++d) {
        t.w.push_back(std::max(0.0, 1.0 - std::abs(d - c) / b));
    }
    return t;
}

// out(s, y) = sum_d w[d] in(s + d, y) for s in [0, n), zero outside.
void correlate_x(const std::vector<double>& in, int w, int h, const Tent& t, int n, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(n) * h, 0.0);
    const int taps = static_cast<int>(t.w.size());
    for (int y = 0; y < h; ++y) {
        const double* row = in.data() + static_cast<std::size_t>(y) * w;
        double* o = out.data() + static_cast<std::size_t>(y) * n;
        for (int s = 0; s < n; ++s) {
            const int k0 = std::max(0, -(s + t.lo));
            const int k1 = std::min(taps, w - (s + t.lo));
            double acc = 0.0;
            for (int k = k0; k < k1; ++k) {
                acc += t.w[k] * row[s + t.lo + k];
            }
            o[s] = acc;
        }
    }
}

void correlate_y(const std::vector<double>& in, int w, int h, const Tent& t, int n, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(w) * n, 0.0);
    const int taps = static_cast<int>(t.w.size());
    for (int s = 0; s < n; ++s) {
        double* o = out.data() + static_cast<std::size_t>(s) * w;
        const int k0 = std::max(0, -(s + t.lo));
        const int k1 = std::min(taps, h - (s + t.lo));
        for (int k = k0; k < k1; ++k) {
            const double wk = t.w[k];
            const double* row = in.data() + static_cast<std::size_t>(s + t.lo + k) * w;
            for (int x = 0; x < w; ++x) {
                o[x] += wk * row[x];
            }
        }
    }
}

void one_scale(const Plane& lum, int scale, const SiftConfig& cfg, LocalDescriptorSet& out) {
    const int w = lum.width;
    const int h = lum.height;
    const int b = bin_at(cfg, scale);
    if (4 * b > w || 4 * b > h) {
        return;
    }
    const double rel = b / cfg.magnif;
    const double sigma = std::sqrt(std::max(0.0, rel * rel - 0.25));
    const std::vector<double> g = gaussian_kernel(sigma, 0);
    const Plane sm = convolve_separable(lum, g, g);

    std::vector<std::vector<double>> orient(kOrient, std::vector<double>(static_cast<std::size_t>(w) * h, 0.0));
    const double step = kOrient / (2.0 * std::numbers::pi);
    for (int y = 0; y < h; ++y) {
        const int ym = reflect_index(y - 1, h);
        const int yp = reflect_index(y + 1, h);
        for (int x = 0; x < w; ++x) {
            const double gx = 0.5 * (sm(reflect_index(x + 1, w), y) - sm(reflect_index(x - 1, w), y));
            const double gy = 0.5 * (sm(x, yp) - sm(x, ym));
            const double mag = std::sqrt(gx * gx + gy * gy);
            if (mag == 0.0) {
                continue;
            }
            double a = std::atan2(gy, gx);
            if (a < 0.0) {
                a += 2.0 * std::numbers::pi;
            }
            const double t = a * step;
            int o0 = static_cast<int>(std::floor(t));
            const double f = t - o0;
            o0 %= kOrient;
            const int o1 = (o0 + 1) % kOrient;
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            orient[o0][i] += (1.0 - f) * mag;
            orient[o1][i] += f * mag;
        }
    }

    // Pooled(o)(sx, sy): tent-weighted sum for a bin starting at (sx, sy).
    const Tent t = tent(b);
    const int nx = w - b + 1;
    const int ny = h - b + 1;
    std::vector<std::vector<double>> pooled(kOrient);
    std::vector<double> tmp;
    for (int o = 0; o < kOrient; ++o) {
        correlate_x(orient[o], w, h, t, nx, tmp);
        correlate_y(tmp, nx, h, t, ny, pooled[o]);
    }

    const float sc = static_cast<float>(std::exp2(scale / 3.0));
    const int gx_count = (w - 4 * b) / cfg.stride + 1;
    const int gy_count = (h - 4 * b) / cfg.stride + 1;
    double d[kSiftDim];
    for (int gy = 0; gy < gy_count; ++gy) {
        const int y0 = gy * cfg.stride;
        for (int gx = 0; gx < gx_count; ++gx) {
            const int x0 = gx * cfg.stride;
            for (int by = 0; by < kSpatial; ++by) {
                for (int bx = 0; bx < kSpatial; ++bx) {
                    const std::size_t at = static_cast<std::size_t>(y0 + by * b) * nx + (x0 + bx * b);
                    for (int o = 0; o < kOrient; ++o) {
                        d[(by * kSpatial + bx) * kOrient + o] = pooled[o][at];
                    }
                }
            }
            double n2 = 0.0;
            for (double v : d) {
                n2 += v * v;
            }
            if (n2 > 0.0) {
                const double inv = 1.0 / std::sqrt(n2);
                n2 = 0.0;
                for (double& v : d) {
                    v = std::min(v * inv, cfg.clip);
                    n2 += v * v;
                }
                const double inv2 = 1.0 / std::sqrt(n2);
                for (double& v : d) {
                    v *= inv2;
                }
            }
            for (double v : d) {
                out.data.push_back(static_cast<float>(v));
            }
            out.positions.push_back({x0 + 2.0f * b - 0.5f, y0 + 2.0f * b - 0.5f, sc});
        }
    }
}

} // namespace

std::size_t sift_count(int side, int scale, const SiftConfig& config) {
    const int b = bin_at(config, scale);
    if (4 * b > side) {
        return 0;
    }
    const std::size_t n = static_cast<std::size_t>((side - 4 * b) / config.stride + 1);
    return n * n;
}

LocalDescriptorSet dense_sift(const Image& patch, const SiftConfig& config) {
    if (config.bin_size < 1 || config.stride < 1 || config.scales < 1 || config.magnif <= 0.0 || config.clip <= 0.0) {
        throw InvalidInput("dense_sift: invalid configuration");
    }
    const Plane lum = luminance(patch);
    LocalDescriptorSet out;
    std::size_t total = 0;
    for (int i = 0; i < config.scales; ++i) {
        total += sift_count(std::min(patch.width(), patch.height()), i, config);
    }
    out.data.reserve(total * kSiftDim);
    out.positions.reserve(total);
    for (int i = 0; i < config.scales; ++i) {
        one_scale(lum, i, config, out);
    }
    return out;
}

} // namespace texbench::cb
