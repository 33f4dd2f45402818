// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>

#include "internal.hpp"
#include "texbench/error.hpp"
#include "texbench/kernels.hpp"

namespace texbench::cb {

namespace {

void check_codebook(const LocalDescriptorSet& local, const Codebook& cb, const char* who) {
    check_set(local, who);
    if (cb.k < 1 || cb.dim != local.dim || cb.words.size() != static_cast<std::size_t>(cb.k) * cb.dim) {
        throw InvalidInput(std::string(who) + ": codebook does not match descriptors");
    }
}

std::vector<float> signed_sqrt_l2(const std::vector<double>& v) {
    std::vector<double> s(v.size());
    double n2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s[i] = std::copysign(std::sqrt(std::abs(v[i])), v[i]);
        n2 += s[i] * s[i];
    }
    std::vector<float> out(v.size(), 0.0f);
    if (n2 > 0.0) {
        const double inv = 1.0 / std::sqrt(n2);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] = static_cast<float>(s[i] * inv);
        }
    }
    return out;
}

} // namespace

std::vector<float> encode_bovw(const LocalDescriptorSet& local, const Codebook& cb) {
    check_codebook(local, cb, "encode_bovw");
    const auto& kern = simd::active_kernels();
    std::vector<std::size_t> counts(cb.k, 0);
    for (std::size_t i = 0; i < local.size(); ++i) {
        ++counts[kern.nearest_l2sqr(local.row(i).data(), cb.words.data(), cb.k, cb.dim).index];
    }
    std::vector<float> out(cb.k);
    const double n = static_cast<double>(local.size());
    for (int c = 0; c < cb.k; ++c) {
        out[c] = static_cast<float>(static_cast<double>(counts[c]) / n);
    }
    return out;
}

std::vector<float> encode_vlad(const LocalDescriptorSet& local, const Codebook& cb) {
    check_codebook(local, cb, "encode_vlad");
    const auto& kern = simd::active_kernels();
    const std::size_t d = static_cast<std::size_t>(cb.dim);
    std::vector<double> acc(static_cast<std::size_t>(cb.k) * d, 0.0);
    for (std::size_t i : canonical_order(local)) {
        const float* x = local.row(i).data();
        const std::size_t c = kern.nearest_l2sqr(x, cb.words.data(), cb.k, d).index;
        const float* w = cb.words.data() + c * d;
        double* a = acc.data() + c * d;
        for (std::size_t j = 0; j < d; ++j) {
            a[j] += static_cast<double>(x[j]) - w[j];
        }
    }
    return signed_sqrt_l2(acc);
}

std::vector<float> encode_fv(const LocalDescriptorSet& local, const Gmm& gmm) {
    check_set(local, "encode_fv");
    const std::size_t d = static_cast<std::size_t>(gmm.dim);
    const std::size_t k = static_cast<std::size_t>(gmm.k);
    if (gmm.k < 1 || gmm.dim != local.dim || gmm.weights.size() != k || gmm.means.size() != k * d ||
        gmm.variances.size() != k * d) {
        throw InvalidInput("encode_fv: mixture does not match descriptors");
    }
    std::vector<double> inv_var;
    const std::vector<double> constant = gmm_constants(gmm, inv_var);
    std::vector<double> inv_sd(inv_var.size());
    for (std::size_t i = 0; i < inv_var.size(); ++i) {
        inv_sd[i] = std::sqrt(inv_var[i]);
    }
    // per component: [mean gradient (d) | variance gradient (d)]
    std::vector<double> acc(k * 2 * d, 0.0);
    std::vector<double> gamma(k);
    for (std::size_t i : canonical_order(local)) {
        const float* x = local.row(i).data();
        posteriors(gmm, constant, inv_var, x, gamma.data());
        for (std::size_t c = 0; c < k; ++c) {
            const double g = gamma[c];
            if (g == 0.0) {
                continue;
            }
            const double* m = gmm.means.data() + c * d;
            const double* is = inv_sd.data() + c * d;
            double* u = acc.data() + c * 2 * d;
            double* v = u + d;
            for (std::size_t j = 0; j < d; ++j) {
                const double z = (x[j] - m[j]) * is[j];
                u[j] += g * z;
                v[j] += g * (z * z - 1.0);
            }
        }
    }
    const double n = static_cast<double>(local.size());
    for (std::size_t c = 0; c < k; ++c) {
        const double fu = 1.0 / (n * std::sqrt(gmm.weights[c]));
        const double fv = 1.0 / (n * std::sqrt(2.0 * gmm.weights[c]));
        double* u = acc.data() + c * 2 * d;
        for (std::size_t j = 0; j < d; ++j) {
            u[j] *= fu;
            u[d + j] *= fv;
        }
    }
    return signed_sqrt_l2(acc);
}

} // namespace texbench::cb
