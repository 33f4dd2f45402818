// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>

#include "internal.hpp"
#include "texbench/error.hpp"
#include "texbench/kernels.hpp"
#include "texbench/rng.hpp"

namespace texbench::cb {

bool row_less(const float* a, const float* b, int dim) {
    for (int i = 0; i < dim; ++i) {
        if (a[i] != b[i]) {
            return a[i] < b[i];
        }
        // +0 / -0 compare equal; order them by bits so the sort is total
        const auto ba = std::bit_cast<std::uint32_t>(a[i]);
        const auto bb = std::bit_cast<std::uint32_t>(b[i]);
        if (ba != bb) {
            return ba < bb;
        }
    }
    return false;
}

std::vector<std::size_t> canonical_order(const LocalDescriptorSet& set) {
    std::vector<std::size_t> idx(set.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const float* base = set.data.data();
    const int dim = set.dim;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return row_less(base + a * dim, base + b * dim, dim);
    });
    return idx;
}

void check_set(const LocalDescriptorSet& set, const char* who) {
    if (set.dim <= 0 || set.data.size() % static_cast<std::size_t>(set.dim) != 0) {
        throw InvalidInput(std::string(who) + ": malformed descriptor set");
    }
    if (set.size() == 0) {
        throw InvalidInput(std::string(who) + ": empty descriptor set");
    }
}

std::string training_fingerprint(const LocalDescriptorSet& points, std::uint64_t seed) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto eat = [&](std::uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001b3ull;
        }
    };
    eat(static_cast<std::uint64_t>(points.dim), 4);
    eat(points.size(), 8);
    for (float f : points.data) {
        eat(std::bit_cast<std::uint32_t>(f), 4);
    }
    eat(seed, 8);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int nearest_word(std::span<const float> descriptor, const Codebook& cb) {
    if (cb.k <= 0 || static_cast<int>(descriptor.size()) != cb.dim) {
        throw InvalidInput("nearest_word: dimension mismatch");
    }
    return static_cast<int>(
        simd::active_kernels().nearest_l2sqr(descriptor.data(), cb.words.data(), cb.k, cb.dim).index);
}

KmeansResult kmeans(const LocalDescriptorSet& points, int k, std::uint64_t seed, const KmeansConfig& config) {
    check_set(points, "kmeans");
    if (k < 1) {
        throw InvalidInput("kmeans: k must be positive");
    }
    if (config.max_iterations < 1 || config.tolerance < 0.0) {
        throw InvalidInput("kmeans: invalid configuration");
    }
    const std::size_t n = points.size();
    const int dim = points.dim;
    const std::size_t d = static_cast<std::size_t>(dim);
    {
        const auto order = canonical_order(points);
        std::size_t distinct = 1;
        for (std::size_t i = 1; i < n && distinct < static_cast<std::size_t>(k); ++i) {
            const float* a = points.data.data() + order[i - 1] * d;
            const float* b = points.data.data() + order[i] * d;
            if (!std::equal(a, a + d, b)) {
                ++distinct;
            }
        }
        if (distinct < static_cast<std::size_t>(k)) {
            throw DegenerateError("kmeans: fewer distinct points than k");
        }
    }

    const auto& kern = simd::active_kernels();
    const float* X = points.data.data();
    KmeansResult res;
    Codebook& cb = res.codebook;
    cb.k = k;
    cb.dim = dim;
    cb.fingerprint = training_fingerprint(points, seed);
    cb.words.resize(static_cast<std::size_t>(k) * d);

    // k-means++
    Rng rng(seed);
    std::vector<double> d2(n);
    {
        const std::size_t first = static_cast<std::size_t>(rng.below(n));
        std::copy_n(X + first * d, d, cb.words.begin());
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = kern.l2sqr(X + i * d, cb.words.data(), d);
        }
    }
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (double v : d2) {
            total += v;
        }
        const double r = rng.uniform() * total;
        double cum = 0.0;
        std::size_t pick = n;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d2[i] > 0.0) {
                last_positive = i;
            }
            cum += d2[i];
            if (cum > r && d2[i] > 0.0) {
                pick = i;
                break;
            }
        }
        if (pick == n) {
            pick = last_positive;
        }
        float* w = cb.words.data() + static_cast<std::size_t>(c) * d;
        std::copy_n(X + pick * d, d, w);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], kern.l2sqr(X + i * d, w, d));
        }
    }

    // Lloyd
    std::vector<int> assign(n);
    std::vector<double> dist(n);
    std::vector<double> sums(static_cast<std::size_t>(k) * d);
    std::vector<std::size_t> counts(k);
    for (int it = 0; it < config.max_iterations; ++it) {
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto nr = kern.nearest_l2sqr(X + i * d, cb.words.data(), k, d);
            assign[i] = static_cast<int>(nr.index);
            dist[i] = nr.distance;
            inertia += nr.distance;
        }
        res.inertia.push_back(inertia);
        res.iterations = it + 1;
        if (it > 0) {
            const double prev = res.inertia[res.inertia.size() - 2];
            if (prev - inertia <= config.tolerance * prev) {
                break;
            }
        }
        if (inertia == 0.0) {
            break;
        }
        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            double* s = sums.data() + static_cast<std::size_t>(assign[i]) * d;
            const float* x = X + i * d;
            for (std::size_t j = 0; j < d; ++j) {
                s[j] += x[j];
            }
            ++counts[assign[i]];
        }
        for (int c = 0; c < k; ++c) {
            float* w = cb.words.data() + static_cast<std::size_t>(c) * d;
            if (counts[c] == 0) {
                // empty cluster takes the worst-fit point
                std::size_t far = 0;
                for (std::size_t i = 1; i < n; ++i) {
                    if (dist[i] > dist[far]) {
                        far = i;
                    }
                }
                std::copy_n(X + far * d, d, w);
                dist[far] = 0.0;
                continue;
            }
            const double* s = sums.data() + static_cast<std::size_t>(c) * d;
            const double inv = 1.0 / static_cast<double>(counts[c]);
            for (std::size_t j = 0; j < d; ++j) {
                w[j] = static_cast<float>(s[j] * inv);
            }
        }
    }
    return res;
}

} // namespace texbench::cb
