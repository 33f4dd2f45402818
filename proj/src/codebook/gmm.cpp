// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "internal.hpp"
#include "texbench/error.hpp"
#include "texbench/kernels.hpp"

namespace texbench::cb {

namespace {

constexpr double kMinWeight = 1e-8;

struct Prepared {
    std::vector<double> constant; // log w - 0.5 sum log(2 pi v)
    std::vector<double> inv_var;
};

Prepared prepare(const Gmm& g) {
    Prepared p;
    const std::size_t d = static_cast<std::size_t>(g.dim);
    p.constant.resize(g.k);
    p.inv_var.resize(g.variances.size());
    const double log2pi = std::log(2.0 * std::numbers::pi);
    for (int c = 0; c < g.k; ++c) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double v = g.variances[c * d + j];
            s += log2pi + std::log(v);
            p.inv_var[c * d + j] = 1.0 / v;
        }
        p.constant[c] = std::log(g.weights[c]) - 0.5 * s;
    }
    return p;
}

} // namespace

// Posteriors of one row into gamma (size k); returns the row log-likelihood.
double posteriors(const Gmm& g, const std::vector<double>& constant, const std::vector<double>& inv_var,
                  const float* x, double* gamma) {
    const std::size_t d = static_cast<std::size_t>(g.dim);
    double top = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < g.k; ++c) {
        const double* m = g.means.data() + c * d;
        const double* iv = inv_var.data() + c * d;
        double q = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double r = x[j] - m[j];
            q += r * r * iv[j];
        }
        gamma[c] = constant[c] - 0.5 * q;
        top = std::max(top, gamma[c]);
    }
    double sum = 0.0;
    for (int c = 0; c < g.k; ++c) {
        gamma[c] = std::exp(gamma[c] - top);
        sum += gamma[c];
    }
    const double inv = 1.0 / sum;
    for (int c = 0; c < g.k; ++c) {
        gamma[c] *= inv;
    }
    return top + std::log(sum);
}

std::vector<double> gmm_constants(const Gmm& g, std::vector<double>& inv_var) {
    Prepared p = prepare(g);
    inv_var = std::move(p.inv_var);
    return p.constant;
}

GmmResult gmm_em(const LocalDescriptorSet& points, int k, std::uint64_t seed, const GmmConfig& config) {
    check_set(points, "gmm_em");
    if (k < 1) {
        throw InvalidInput("gmm_em: k must be positive");
    }
    if (points.size() < 10 * static_cast<std::size_t>(k)) {
        throw InvalidInput("gmm_em: needs at least 10 k rows");
    }
    if (config.max_iterations < 1 || config.tolerance < 0.0 || config.variance_floor <= 0.0) {
        throw InvalidInput("gmm_em: invalid configuration");
    }
    const std::size_t n = points.size();
    const std::size_t d = static_cast<std::size_t>(points.dim);
    const float* X = points.data.data();

    const KmeansResult km = kmeans(points, k, seed, config.init);
    GmmResult res;
    Gmm& g = res.gmm;
    g.k = k;
    g.dim = points.dim;
    g.fingerprint = km.codebook.fingerprint;
    g.weights.assign(k, 0.0);
    g.means.assign(k * d, 0.0);
    g.variances.assign(k * d, 0.0);

    // global moments, used for reseeding
    std::vector<double> global_var(d, 0.0);
    {
        std::vector<double> mean(d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                mean[j] += X[i * d + j];
            }
        }
        for (double& m : mean) {
            m /= static_cast<double>(n);
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const double r = X[i * d + j] - mean[j];
                global_var[j] += r * r;
            }
        }
        for (double& v : global_var) {
            v = std::max(v / static_cast<double>(n), config.variance_floor);
        }
    }

    {
        const auto& kern = simd::active_kernels();
        std::vector<std::size_t> counts(k, 0);
        std::vector<int> assign(n);
        for (std::size_t i = 0; i < n; ++i) {
            assign[i] = static_cast<int>(kern.nearest_l2sqr(X + i * d, km.codebook.words.data(), k, d).index);
            ++counts[assign[i]];
        }
        for (int c = 0; c < k; ++c) {
            for (std::size_t j = 0; j < d; ++j) {
                g.means[c * d + j] = km.codebook.words[c * d + j];
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = static_cast<std::size_t>(assign[i]);
            for (std::size_t j = 0; j < d; ++j) {
                const double r = X[i * d + j] - g.means[c * d + j];
                g.variances[c * d + j] += r * r;
            }
        }
        for (int c = 0; c < k; ++c) {
            for (std::size_t j = 0; j < d; ++j) {
                double& v = g.variances[c * d + j];
                v = counts[c] > 0 ? std::max(v / static_cast<double>(counts[c]), config.variance_floor) : global_var[j];
            }
            g.weights[c] = std::max(static_cast<double>(counts[c]) / static_cast<double>(n), kMinWeight);
        }
        double ws = 0.0;
        for (double w : g.weights) {
            ws += w;
        }
        for (double& w : g.weights) {
            w /= ws;
        }
    }

    std::vector<bool> reseeded(k, false);
    std::vector<double> gamma(k);
    std::vector<double> nk(k);
    std::vector<double> s1(k * d);
    std::vector<double> s2(k * d);
    std::vector<double> row_ll(n);
    for (int it = 0; it < config.max_iterations; ++it) {
        std::vector<double> inv_var;
        const std::vector<double> constant = gmm_constants(g, inv_var);
        std::fill(nk.begin(), nk.end(), 0.0);
        std::fill(s1.begin(), s1.end(), 0.0);
        std::fill(s2.begin(), s2.end(), 0.0);
        double ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const float* x = X + i * d;
            row_ll[i] = posteriors(g, constant, inv_var, x, gamma.data());
            ll += row_ll[i];
            for (int c = 0; c < k; ++c) {
                const double gc = gamma[c];
                if (gc == 0.0) {
                    continue;
                }
                nk[c] += gc;
                double* a = s1.data() + c * d;
                double* b = s2.data() + c * d;
                for (std::size_t j = 0; j < d; ++j) {
                    a[j] += gc * x[j];
                    b[j] += gc * x[j] * x[j];
                }
            }
        }
        ll /= static_cast<double>(n);
        res.log_likelihood.push_back(ll);
        res.iterations = it + 1;
        if (it > 0) {
            const double prev = res.log_likelihood[res.log_likelihood.size() - 2];
            if (ll - prev <= config.tolerance * std::abs(prev)) {
                break;
            }
        }

        for (int c = 0; c < k; ++c) {
            const double w = nk[c] / static_cast<double>(n);
            if (w < kMinWeight) {
                if (reseeded[c]) {
                    throw DegenerateError("gmm_em: component collapsed twice");
                }
                reseeded[c] = true;
                // restart on the worst explained row
                const std::size_t worst = static_cast<std::size_t>(
                    std::min_element(row_ll.begin(), row_ll.end()) - row_ll.begin());
                for (std::size_t j = 0; j < d; ++j) {
                    g.means[c * d + j] = X[worst * d + j];
                    g.variances[c * d + j] = global_var[j];
                }
                row_ll[worst] = std::numeric_limits<double>::infinity();
                g.weights[c] = 1.0 / static_cast<double>(n);
                continue;
            }
            g.weights[c] = w;
            const double inv = 1.0 / nk[c];
            for (std::size_t j = 0; j < d; ++j) {
                const double m = s1[c * d + j] * inv;
                g.means[c * d + j] = m;
                g.variances[c * d + j] = std::max(s2[c * d + j] * inv - m * m, config.variance_floor);
            }
        }
        double ws = 0.0;
        for (double w : g.weights) {
            ws += w;
        }
        for (double& w : g.weights) {
            w /= ws;
        }
    }
    return res;
}

} // namespace texbench::cb
