// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <arm_neon.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace texbench::simd {
namespace {

double l1_neon(const float* a, const float* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float32x4_t va = vld1q_f32(a + i);
        const float32x4_t vb = vld1q_f32(b + i);
        const float64x2_t d0 = vsubq_f64(vcvt_f64_f32(vget_low_f32(va)), vcvt_f64_f32(vget_low_f32(vb)));
        const float64x2_t d1 = vsubq_f64(vcvt_high_f64_f32(va), vcvt_high_f64_f32(vb));
        acc0 = vaddq_f64(acc0, vabsq_f64(d0));
        acc1 = vaddq_f64(acc1, vabsq_f64(d1));
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        sum += std::fabs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
    }
    return sum;
}

double l2sqr_neon(const float* a, const float* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float32x4_t va = vld1q_f32(a + i);
        const float32x4_t vb = vld1q_f32(b + i);
        const float64x2_t d0 = vsubq_f64(vcvt_f64_f32(vget_low_f32(va)), vcvt_f64_f32(vget_low_f32(vb)));
        const float64x2_t d1 = vsubq_f64(vcvt_high_f64_f32(va), vcvt_high_f64_f32(vb));
        acc0 = vfmaq_f64(acc0, d0, d0);
        acc1 = vfmaq_f64(acc1, d1, d1);
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        sum += d * d;
    }
    return sum;
}

template <double (*Dist)(const float*, const float*, std::size_t)>
Nearest nearest_neon(const float* q, const float* matrix, std::size_t rows, std::size_t n) {
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

namespace detail {

const KernelTable& neon_table() {
    static const KernelTable table{
        Isa::Neon,
        l1_neon,
        l2sqr_neon,
        nearest_neon<l1_neon>,
        nearest_neon<l2sqr_neon>,
    };
    return table;
}

} // namespace detail
} // namespace texbench::simd
