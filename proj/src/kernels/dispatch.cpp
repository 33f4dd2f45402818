// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace texbench::simd {

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::Reference:
        return "ref";
    case Isa::Avx2:
        return "avx2";
    case Isa::Neon:
        return "neon";
    }
    return "unknown";
}

const KernelTable* kernels_for(Isa isa) {
    switch (isa) {
    case Isa::Reference:
        return &reference_kernels();
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
        __builtin_cpu_init();
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            return &detail::avx2_table();
        }
#endif
        return nullptr;
    case Isa::Neon:
#if defined(__aarch64__)
        return &detail::neon_table();
#else
        return nullptr;
#endif
    }
    return nullptr;
}

namespace {

const KernelTable& select_kernels() {
    if (const char* forced = std::getenv("TEXBENCH_SIMD")) {
        const std::string name(forced);
        for (Isa isa : {Isa::Reference, Isa::Avx2, Isa::Neon}) {
            if (name == isa_name(isa)) {
                if (const KernelTable* t = kernels_for(isa)) {
                    return *t;
                }
            }
        }
    }
    for (Isa isa : {Isa::Avx2, Isa::Neon}) {
        if (const KernelTable* t = kernels_for(isa)) {
            return *t;
        }
    }
    return reference_kernels();
}

} // namespace

const KernelTable& active_kernels() {
    static const KernelTable& table = select_kernels();
    return table;
}

} // namespace texbench::simd
