// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>

#include "texbench/chromanorm.hpp"
#include "texbench/error.hpp"
#include "texbench/filter.hpp"

namespace texbench::norm {
namespace {

constexpr double kFloor = 1.0 / 255.0;

struct State {
    Plane rr; // log input
    Plane op; // old product
    double maximum = 0.0;
};

// One ratio-product-reset-average step against the pixel at offset
// (dx, dy). Pixels whose partner falls outside keep their old product.
void compare(State& s, int dx, int dy) {
    const int w = s.rr.width;
    const int h = s.rr.height;
    Plane np = s.op;
    for (int y = std::max(0, dy); y < std::min(h, h + dy); ++y) {
        for (int x = std::max(0, dx); x < std::min(w, w + dx); ++x) {
            double ip = s.op(x - dx, y - dy) + s.rr(x, y) - s.rr(x - dx, y - dy);
            ip = std::min(ip, s.maximum);
            np(x, y) = 0.5 * (ip + s.op(x, y));
        }
    }
    s.op = std::move(np);
}

Plane log_channel(const Image& img, int c) {
    Plane p(img.width(), img.height());
    const auto d = img.data();
    for (std::size_t i = 0; i < p.data.size(); ++i) {
        p.data[i] = std::log(std::max(static_cast<double>(d[3 * i + c]), kFloor));
    }
    return p;
}

Image assemble(const Image& like, const std::vector<Plane>& logs) {
    std::vector<float> data(like.data().size());
    for (int c = 0; c < 3; ++c) {
        const Plane& l = logs[c];
        double mx = -1e300;
        for (double v : l.data) {
            mx = std::max(mx, v);
        }
        // exp(v - max) is the per-channel max rescale done in log space.
        for (std::size_t i = 0; i < l.data.size(); ++i) {
            data[3 * i + c] = static_cast<float>(std::clamp(std::exp(l.data[i] - mx), 0.0, 1.0));
        }
    }
    return Image(like.width(), like.height(), 3, like.space(), std::move(data));
}

void require(const Image& img, int iterations, const char* what) {
    if (img.channels() != 3) {
        throw InvalidInput(std::string(what) + ": expected a 3-channel image");
    }
    if (iterations < 1) {
        throw DomainError(std::string(what) + ": iterations must be >= 1");
    }
}

Plane downsample(const Plane& in) {
    Plane out((in.width + 1) / 2, (in.height + 1) / 2);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            double sum = 0.0;
            int n = 0;
            for (int j = 0; j < 2; ++j) {
                for (int i = 0; i < 2; ++i) {
                    const int sx = 2 * x + i;
                    const int sy = 2 * y + j;
                    if (sx < in.width && sy < in.height) {
                        sum += in(sx, sy);
                        ++n;
                    }
                }
            }
            out(x, y) = sum / n;
        }
    }
    return out;
}

Plane upsample(const Plane& in, int w, int h) {
    Plane out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            out(x, y) = in(x / 2, y / 2);
        }
    }
    return out;
}

} // namespace

Image retinex_frankle_mccann(const Image& linear, int iterations) {
    require(linear, iterations, "retinex_frankle_mccann");
    const int dim = std::max(linear.width(), linear.height());
    std::vector<Plane> result;
    for (int c = 0; c < 3; ++c) {
        State s;
        s.rr = log_channel(linear, c);
        s.maximum = *std::max_element(s.rr.data.begin(), s.rr.data.end());
        s.op = Plane(s.rr.width, s.rr.height, s.maximum);
        int shift = dim > 1 ? 1 << (static_cast<int>(std::floor(std::log2(dim))) - 1) : 0;
        while (std::abs(shift) >= 1) {
            for (int i = 0; i < iterations; ++i) {
                compare(s, shift, 0);
                compare(s, 0, shift);
            }
            shift = -shift / 2;
        }
        result.push_back(std::move(s.op));
    }
    return assemble(linear, result);
}

Image retinex_mccann99(const Image& linear, int iterations) {
    require(linear, iterations, "retinex_mccann99");
    static constexpr int kNeighbours[8][2] = {{0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}};
    std::vector<Plane> result;
    for (int c = 0; c < 3; ++c) {
        std::vector<Plane> pyramid{log_channel(linear, c)};
        while (pyramid.back().width * pyramid.back().height > 32) {
            pyramid.push_back(downsample(pyramid.back()));
        }
        State s;
        s.maximum = *std::max_element(pyramid[0].data.begin(), pyramid[0].data.end());
        s.op = Plane(pyramid.back().width, pyramid.back().height, s.maximum);
        for (std::size_t level = pyramid.size(); level-- > 0;) {
            s.rr = pyramid[level];
            if (s.op.width != s.rr.width || s.op.height != s.rr.height) {
                s.op = upsample(s.op, s.rr.width, s.rr.height);
            }
            for (int i = 0; i < iterations; ++i) {
                for (const auto& n : kNeighbours) {
                    compare(s, n[0], n[1]);
                }
            }
        }
        result.push_back(std::move(s.op));
    }
    return assemble(linear, result);
}

} // namespace texbench::norm
