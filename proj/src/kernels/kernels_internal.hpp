// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include "texbench/kernels.hpp"

namespace texbench::simd::detail {

const KernelTable& avx2_table();
const KernelTable& neon_table();

} // namespace texbench::simd::detail
