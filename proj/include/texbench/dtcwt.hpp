// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <array>
#include <complex>
#include <vector>

namespace texbench::dtcwt {

/// Dense row-major matrix.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

struct Subbands {
    int rows = 0;
    int cols = 0;
    /// Bands ordered 15, 45, 75, 105, 135, 165 degrees.
    std::array<std::vector<std::complex<double>>, 6> band;
};

struct Pyramid {
    Mat lowpass;
    std::vector<Subbands> highpasses;
};

/// 2-D dual-tree complex wavelet transform, near_sym_a level-1 filters and
/// qshift_a filters beyond. Odd dimensions are extended by repeating the
/// last row or column.
Pyramid forward(const Mat& x, int levels);
Mat inverse(const Pyramid& pyramid);

} // namespace texbench::dtcwt
