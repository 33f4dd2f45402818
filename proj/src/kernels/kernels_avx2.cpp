// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.
//
// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace texbench::simd {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Differences are taken in double so that each lane matches the scalar
// kernel term for term; only the reduction order differs.
double l1_avx2(const float* a, const float* b, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 va = _mm256_loadu_ps(a + i);
        const __m256 vb = _mm256_loadu_ps(b + i);
        const __m256d d0 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(va)),
                                         _mm256_cvtps_pd(_mm256_castps256_ps128(vb)));
        const __m256d d1 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(va, 1)),
                                         _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1)));
        acc0 = _mm256_add_pd(acc0, _mm256_andnot_pd(sign, d0));
        acc1 = _mm256_add_pd(acc1, _mm256_andnot_pd(sign, d1));
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        sum += std::fabs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
    }
    return sum;
}

double l2sqr_avx2(const float* a, const float* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 va = _mm256_loadu_ps(a + i);
        const __m256 vb = _mm256_loadu_ps(b + i);
        const __m256d d0 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(va)),
                                         _mm256_cvtps_pd(_mm256_castps256_ps128(vb)));
        const __m256d d1 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(va, 1)),
                                         _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1)));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        sum += d * d;
    }
    return sum;
}

template <double (*Dist)(const float*, const float*, std::size_t)>
Nearest nearest_avx2(const float* q, const float* matrix, std::size_t rows, std::size_t n) {
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

const KernelTable& avx2_table() {
    static const KernelTable table{
        Isa::Avx2,
        l1_avx2,
        l2sqr_avx2,
        nearest_avx2<l1_avx2>,
        nearest_avx2<l2sqr_avx2>,
    };
    return table;
}

} // namespace detail
} // namespace texbench::simd
