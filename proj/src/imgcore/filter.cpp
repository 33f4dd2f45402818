// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include "texbench/filter.hpp"

#include <cmath>

#include "texbench/error.hpp"

namespace texbench {

std::vector<double> gaussian_kernel(double sigma, int order) {
    if (order < 0 || order > 2) {
        throw InvalidInput("gaussian_kernel: order must be 0, 1 or 2");
    }
    if (sigma < 0.0) {
        throw DomainError("gaussian_kernel: negative sigma");
    }
    if (sigma == 0.0) {
        switch (order) {
        case 0:
            return {1.0};
        case 1:
            return {0.5, 0.0, -0.5};
        default:
            return {1.0, -2.0, 1.0};
        }
    }
    const int r = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> g(2 * r + 1);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        g[i + r] = std::exp(-0.5 * i * i / (sigma * sigma));
        sum += g[i + r];
    }
    for (double& v : g) {
        v /= sum;
    }
    if (order == 0) {
        return g;
    }
    std::vector<double> k(g.size());
    const double s2 = sigma * sigma;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = order == 1 ? -i / s2 * g[i + r] : (i * i / (s2 * s2) - 1.0 / s2) * g[i + r];
    }
    if (order == 2) {
        double mean = 0.0;
        for (double v : k) {
            mean += v;
        }
        mean /= static_cast<double>(k.size());
        for (double& v : k) {
            v -= mean;
        }
    }
    return k;
}

Plane convolve_separable(const Plane& in, const std::vector<double>& kx, const std::vector<double>& ky) {
    const int w = in.width;
    const int h = in.height;
    const int rx = static_cast<int>(kx.size()) / 2;
    const int ry = static_cast<int>(ky.size()) / 2;
    Plane tmp(w, h);
    std::vector<double> row(w + 2 * rx);
    for (int y = 0; y < h; ++y) {
        for (int i = -rx; i < w + rx; ++i) {
            row[i + rx] = in(reflect_index(i, w), y);
        }
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int j = -rx; j <= rx; ++j) {
                acc += kx[j + rx] * row[x - j + rx];
            }
            tmp(x, y) = acc;
        }
    }
    Plane out(w, h);
    std::vector<double> col(h + 2 * ry);
    for (int x = 0; x < w; ++x) {
        for (int i = -ry; i < h + ry; ++i) {
            col[i + ry] = tmp(x, reflect_index(i, h));
        }
        for (int y = 0; y < h; ++y) {
            double acc = 0.0;
            for (int j = -ry; j <= ry; ++j) {
                acc += ky[j + ry] * col[y - j + ry];
            }
            out(x, y) = acc;
        }
    }
    return out;
}

} // namespace texbench
