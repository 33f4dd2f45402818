// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>

#include "texbench/kernels.hpp"

namespace texbench::simd {
namespace {

double l1_ref(const float* a, const float* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += std::fabs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
    }
    return sum;
}

double l2sqr_ref(const float* a, const float* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        sum += d * d;
    }
    return sum;
}

template <double (*Dist)(const float*, const float*, std::size_t)>
Nearest nearest_ref(const float* q, const float* matrix, std::size_t rows, std::size_t n) {
    Nearest best{0, INFINITY};
    for (std::size_t r = 0; r < rows; ++r) {
        const double d = Dist(q, matrix + r * n, n);
        if (d < best.distance) {
            best = {r, d};
        }
    }
    return best;
}

} // namespace

const KernelTable& reference_kernels() {
    static const KernelTable table{
        Isa::Reference,
        l1_ref,
        l2sqr_ref,
        nearest_ref<l1_ref>,
        nearest_ref<l2sqr_ref>,
    };
    return table;
}

} // namespace texbench::simd
