// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <vector>

#include "texbench/codebook.hpp"

namespace texbench::cb {

bool row_less(const float* a, const float* b, int dim);

/// Row indices in lexicographic order of the rows.
std::vector<std::size_t> canonical_order(const LocalDescriptorSet& set);

/// Throws InvalidInput for a malformed or empty set.
void check_set(const LocalDescriptorSet& set, const char* who);

/// log w - 0.5 sum log(2 pi v) per component; fills inv_var (k x dim).
std::vector<double> gmm_constants(const Gmm& g, std::vector<double>& inv_var);

/// Posteriors of row x into gamma (k entries); returns log p(x).
double posteriors(const Gmm& g, const std::vector<double>& constant, const std::vector<double>& inv_var,
                  const float* x, double* gamma);

} // namespace texbench::cb
