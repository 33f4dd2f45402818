// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <vector>

namespace texbench {

/// Single-channel double plane, row-major.
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(int w, int h, double fill = 0.0) : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    double& operator()(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double operator()(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Symmetric boundary extension: index -1 maps to 0, n maps to n-1.
inline int reflect_index(int i, int n) {
    if (n == 1) {
        return 0;
    }
    const int period = 2 * n;
    i %= period;
    if (i < 0) {
        i += period;
    }
    return i < n ? i : period - 1 - i;
}

/// Sampled Gaussian of order 0 (unit sum), 1 (first derivative) or 2
/// (second derivative, zero mean), radius ceil(3*sigma), at least 1.
/// sigma = 0 gives the discrete identity / central differences.
std::vector<double> gaussian_kernel(double sigma, int order);

/// Convolution along x then y with symmetric boundaries. Kernels have odd
/// length and are centred.
Plane convolve_separable(const Plane& in, const std::vector<double>& kx, const std::vector<double>& ky);

} // namespace texbench
