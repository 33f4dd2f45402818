// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace texbench::simd {

/// Result of a nearest-row scan: row index and its distance.
struct Nearest {
    std::size_t index = 0;
    double distance = 0.0;
};

/// Instruction set backing the active kernel table.
enum class Isa { Reference, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Kernel table. Every entry of a vector table must agree with the
/// reference table up to floating-point summation order.
struct KernelTable {
    Isa isa;
    /// sum_i |a_i - b_i|, accumulated in double.
    double (*l1)(const float* a, const float* b, std::size_t n);
    /// sum_i (a_i - b_i)^2, accumulated in double.
    double (*l2sqr)(const float* a, const float* b, std::size_t n);
    /// argmin over `rows` rows of `matrix` (row-major, stride n) of l1(q, row).
    /// Ties resolve to the lowest row index.
    Nearest (*nearest_l1)(const float* q, const float* matrix, std::size_t rows, std::size_t n);
    /// Same as nearest_l1 for squared L2.
    Nearest (*nearest_l2sqr)(const float* q, const float* matrix, std::size_t rows, std::size_t n);
};

const KernelTable& reference_kernels();

/// Vector kernels for `isa`, or nullptr when not compiled in or not
/// supported by the running CPU.
const KernelTable* kernels_for(Isa isa);

/// Table chosen at first use: the widest supported ISA unless the
/// TEXBENCH_SIMD environment variable names another ("ref", "avx2", "neon").
const KernelTable& active_kernels();

inline double l1(std::span<const float> a, std::span<const float> b) {
    return active_kernels().l1(a.data(), b.data(), a.size());
}

inline double l2sqr(std::span<const float> a, std::span<const float> b) {
    return active_kernels().l2sqr(a.data(), b.data(), a.size());
}

} // namespace texbench::simd
