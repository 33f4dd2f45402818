// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "texbench/codebook.hpp"
#include "texbench/error.hpp"
#include "texbench/filter.hpp"
#include "texbench/rng.hpp"

namespace texbench::cb {
namespace {

namespace fs = std::filesystem;

Image gray_random(int size, std::uint64_t seed) {
    Rng rng(seed);
    Image img(size, size, 1, ColorSpace::Gray);
    for (float& v : img.data()) {
        v = static_cast<float>(rng.uniform());
    }
    return img;
}

LocalDescriptorSet random_set(std::size_t n, int dim, std::uint64_t seed) {
    Rng rng(seed);
    LocalDescriptorSet s;
    s.dim = dim;
    s.data.resize(n * dim);
    for (float& v : s.data) {
        v = static_cast<float>(rng.uniform());
    }
    return s;
}

// n rows around each centre with gaussian spread sd.
LocalDescriptorSet blobs(const std::vector<std::vector<double>>& centres, std::size_t per, double sd, std::uint64_t seed) {
    Rng rng(seed);
    LocalDescriptorSet s;
    s.dim = static_cast<int>(centres[0].size());
    for (std::size_t i = 0; i < per; ++i) {
        for (const auto& c : centres) {
            for (double m : c) {
                s.data.push_back(static_cast<float>(m + sd * rng.normal()));
            }
        }
    }
    return s;
}

Codebook random_codebook(int k, int dim, std::uint64_t seed) {
    const auto s = random_set(k, dim, seed);
    return {k, dim, s.data, "test"};
}

Gmm random_gmm(int k, int dim, std::uint64_t seed) {
    Rng rng(seed);
    Gmm g;
    g.k = k;
    g.dim = dim;
    g.weights.assign(k, 1.0 / k);
    for (int i = 0; i < k * dim; ++i) {
        g.means.push_back(rng.uniform());
        g.variances.push_back(rng.uniform(0.01, 0.05));
    }
    return g;
}

LocalDescriptorSet permuted(const LocalDescriptorSet& s, std::uint64_t seed) {
    std::vector<std::size_t> p(s.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = p.size(); i > 1; --i) {
        std::swap(p[i - 1], p[rng.below(i)]);
    }
    LocalDescriptorSet out;
    out.dim = s.dim;
    for (std::size_t i : p) {
        const auto r = s.row(i);
        out.data.insert(out.data.end(), r.begin(), r.end());
    }
    return out;
}

LocalDescriptorSet doubled(const LocalDescriptorSet& s) {
    LocalDescriptorSet out = s;
    out.data.insert(out.data.end(), s.data.begin(), s.data.end());
    return out;
}

double max_abs_diff(const std::vector<float>& a, const std::vector<float>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(static_cast<double>(a[i]) - b[i]));
    }
    return m;
}

// --- dense SIFT ---

TEST(DenseSift, GridArithmetic) {
    EXPECT_EQ(sift_count(200, 0), 7921u);
    EXPECT_EQ(sift_count(200, 4), 5041u); // bin 15
    EXPECT_EQ(sift_count(20, 0), 0u);
}

TEST(DenseSift, CountsDimsAndNorms) {
    const auto set = dense_sift(gray_random(200, 3));
    std::size_t expected = 0;
    for (int i = 0; i < 5; ++i) {
        expected += sift_count(200, i);
    }
    ASSERT_EQ(set.size(), expected);
    EXPECT_EQ(set.dim, 128);
    EXPECT_EQ(set.positions.size(), expected);
    for (std::size_t i = 0; i < set.size(); i += 97) {
        double n2 = 0.0;
        for (float v : set.row(i)) {
            EXPECT_GE(v, 0.0f);
            n2 += static_cast<double>(v) * v;
        }
        EXPECT_NEAR(n2, 1.0, 1e-5);
    }
    EXPECT_FLOAT_EQ(set.positions.front().x, 11.5f);
    EXPECT_FLOAT_EQ(set.positions.front().scale, 1.0f);
    EXPECT_NEAR(set.positions.back().scale, std::exp2(4.0 / 3.0), 1e-6);
}

TEST(DenseSift, ConstantPatchGivesZeros) {
    Image img(60, 60, 3, ColorSpace::LinearRgb);
    std::fill(img.data().begin(), img.data().end(), 0.4f);
    const auto set = dense_sift(img);
    ASSERT_GT(set.size(), 0u);
    for (float v : set.data) {
        ASSERT_EQ(v, 0.0f);
    }
}

TEST(DenseSift, HorizontalRampUsesOrientationZero) {
    Image img(48, 48, 1, ColorSpace::Gray);
    for (int y = 0; y < 48; ++y) {
        for (int x = 0; x < 48; ++x) {
            img.at(x, y, 0) = 0.01f * x;
        }
    }
    SiftConfig cfg;
    cfg.scales = 1;
    const auto set = dense_sift(img, cfg);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto r = set.row(i);
        for (int j = 0; j < 128; ++j) {
            if (j % 8 != 0) {
                ASSERT_EQ(r[j], 0.0f);
            }
        }
    }
}

// Per-pixel oracle for one descriptor at scale 0: explicit bilinear spatial
// weights and linear orientation split, then L2 / clip / L2.
std::vector<double> sift_oracle(const Image& img, int x0, int y0) {
    const int w = img.width();
    const int h = img.height();
    const int b = 6;
    Plane p(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            p(x, y) = img.at(x, y, 0);
        }
    }
    const auto g = gaussian_kernel(std::sqrt(1.0 - 0.25), 0);
    const Plane s = convolve_separable(p, g, g);
    std::vector<double> d(128, 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = 0.5 * (s(std::min(x + 1, w - 1), y) - s(std::max(x - 1, 0), y));
            const double gy = 0.5 * (s(x, std::min(y + 1, h - 1)) - s(x, std::max(y - 1, 0)));
            const double mag = std::hypot(gx, gy);
            if (mag == 0.0) {
                continue;
            }
            const double a = std::fmod(std::atan2(gy, gx) + 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
            const double t = a / (2.0 * std::numbers::pi) * 8.0;
            const int o = static_cast<int>(std::floor(t)) % 8;
            const double f = t - std::floor(t);
            for (int by = 0; by < 4; ++by) {
                const double wy = std::max(0.0, 1.0 - std::abs(y - (y0 + b * by + 2.5)) / b);
                for (int bx = 0; bx < 4; ++bx) {
                    const double wx = std::max(0.0, 1.0 - std::abs(x - (x0 + b * bx + 2.5)) / b);
                    d[(by * 4 + bx) * 8 + o] += wx * wy * (1.0 - f) * mag;
                    d[(by * 4 + bx) * 8 + (o + 1) % 8] += wx * wy * f * mag;
                }
            }
        }
    }
    double n = std::sqrt(std::inner_product(d.begin(), d.end(), d.begin(), 0.0));
    for (double& v : d) {
        v = std::min(v / n, 0.2);
    }
    n = std::sqrt(std::inner_product(d.begin(), d.end(), d.begin(), 0.0));
    for (double& v : d) {
        v /= n;
    }
    return d;
}

TEST(DenseSift, MatchesPerPixelOracle) {
    const Image img = gray_random(40, 11);
    SiftConfig cfg;
    cfg.scales = 1;
    const auto set = dense_sift(img, cfg);
    const int per_row = (40 - 24) / 2 + 1;
    for (auto [gx, gy] : {std::pair{0, 0}, std::pair{3, 5}, std::pair{8, 8}}) {
        const auto want = sift_oracle(img, 2 * gx, 2 * gy);
        const auto got = set.row(static_cast<std::size_t>(gy) * per_row + gx);
        for (int j = 0; j < 128; ++j) {
            ASSERT_NEAR(got[j], want[j], 1e-5) << gx << "," << gy << " component " << j;
        }
    }
}

TEST(DenseSift, RejectsBadInput) {
    SiftConfig cfg;
    cfg.stride = 0;
    EXPECT_THROW(dense_sift(gray_random(30, 1), cfg), InvalidInput);
}

// --- k-means ---

// Best 2-partition of scalar points, brute force.
std::pair<double, double> best_split(const std::vector<double>& x) {
    double best = INFINITY;
    std::pair<double, double> out;
    const int n = static_cast<int>(x.size());
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        double s[2] = {0, 0};
        int c[2] = {0, 0};
        for (int i = 0; i < n; ++i) {
            s[(mask >> i) & 1] += x[i];
            ++c[(mask >> i) & 1];
        }
        const double m[2] = {s[0] / c[0], s[1] / c[1]};
        double cost = 0.0;
        for (int i = 0; i < n; ++i) {
            cost += (x[i] - m[(mask >> i) & 1]) * (x[i] - m[(mask >> i) & 1]);
        }
        if (cost < best) {
            best = cost;
            out = {std::min(m[0], m[1]), std::max(m[0], m[1])};
        }
    }
    return out;
}

TEST(Kmeans, FourPointsMatchBruteForce) {
    const std::vector<double> x = {0, 1, 10, 11};
    const auto want = best_split(x);
    EXPECT_DOUBLE_EQ(want.first, 0.5);
    EXPECT_DOUBLE_EQ(want.second, 10.5);
    LocalDescriptorSet s;
    for (double v : x) {
        std::vector<float> row(128, 0.0f);
        row[0] = static_cast<float>(v);
        s.data.insert(s.data.end(), row.begin(), row.end());
    }
    for (std::uint64_t seed : {1u, 2u, 3u, 17u, 99u}) {
        const auto r = kmeans(s, 2, seed);
        std::vector<float> c = {r.codebook.word(0)[0], r.codebook.word(1)[0]};
        std::sort(c.begin(), c.end());
        EXPECT_FLOAT_EQ(c[0], 0.5f) << seed;
        EXPECT_FLOAT_EQ(c[1], 10.5f) << seed;
        for (int i = 1; i < 128; ++i) {
            EXPECT_EQ(r.codebook.word(0)[i], 0.0f);
        }
    }
}

TEST(Kmeans, SingleClusterIsMean) {
    const auto s = random_set(300, 5, 4);
    const auto r = kmeans(s, 1, 9);
    for (int j = 0; j < 5; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            m += s.row(i)[j];
        }
        EXPECT_NEAR(r.codebook.word(0)[j], m / 300.0, 1e-6);
    }
}

TEST(Kmeans, DeterministicAndInertiaNonIncreasing) {
    const auto s = random_set(2000, 8, 5);
    const auto a = kmeans(s, 12, 42);
    const auto b = kmeans(s, 12, 42);
    EXPECT_EQ(a.codebook.words, b.codebook.words);
    EXPECT_EQ(a.inertia, b.inertia);
    EXPECT_EQ(a.codebook.fingerprint, b.codebook.fingerprint);
    ASSERT_GE(a.inertia.size(), 2u);
    for (std::size_t i = 1; i < a.inertia.size(); ++i) {
        EXPECT_LE(a.inertia[i], a.inertia[i - 1] * (1.0 + 1e-12));
    }
    const auto c = kmeans(s, 12, 43);
    EXPECT_NE(a.codebook.fingerprint, c.codebook.fingerprint);
}

TEST(Kmeans, NoDuplicateCentroids) {
    const auto s = random_set(500, 4, 6);
    const auto r = kmeans(s, 40, 1);
    for (int i = 0; i < r.codebook.k; ++i) {
        for (int j = i + 1; j < r.codebook.k; ++j) {
            const auto a = r.codebook.word(i);
            const auto b = r.codebook.word(j);
            EXPECT_FALSE(std::equal(a.begin(), a.end(), b.begin())) << i << " " << j;
        }
    }
}

TEST(Kmeans, TooFewDistinctPointsThrows) {
    LocalDescriptorSet s;
    s.dim = 2;
    s.data = {1, 1, 1, 1, 2, 2, 2, 2};
    EXPECT_NO_THROW(kmeans(s, 2, 1));
    EXPECT_THROW(kmeans(s, 3, 1), DegenerateError);
    EXPECT_THROW(kmeans(LocalDescriptorSet{}, 1, 1), InvalidInput);
}

// --- GMM ---

TEST(Gmm, TwoBlobs) {
    const std::vector<std::vector<double>> centres = {{0.0, 0.0, 0.0, 0.0}, {5.0, 5.0, -5.0, 5.0}};
    const auto s = blobs(centres, 1000, 0.5, 8);
    const auto r = gmm_em(s, 2, 3);
    const auto& g = r.gmm;
    EXPECT_NEAR(g.weights[0] + g.weights[1], 1.0, 1e-9);
    const int first = g.means[0] < 2.5 ? 0 : 1;
    for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(g.means[first * 4 + j], centres[0][j], 0.1);
        EXPECT_NEAR(g.means[(1 - first) * 4 + j], centres[1][j], 0.1);
    }
    for (double v : g.variances) {
        EXPECT_GE(v, 1e-6);
        EXPECT_NEAR(v, 0.25, 0.05);
    }
    for (std::size_t i = 1; i < r.log_likelihood.size(); ++i) {
        EXPECT_GE(r.log_likelihood[i], r.log_likelihood[i - 1] - 1e-12 * std::abs(r.log_likelihood[i - 1]));
    }
}

TEST(Gmm, LikelihoodMonotoneOnOverlappingData) {
    const auto s = random_set(1500, 6, 12);
    GmmConfig cfg;
    cfg.max_iterations = 30;
    cfg.tolerance = 0.0;
    const auto r = gmm_em(s, 5, 2, cfg);
    ASSERT_GT(r.log_likelihood.size(), 2u);
    double ws = 0.0;
    for (double w : r.gmm.weights) {
        ws += w;
        EXPECT_GE(w, 0.0);
    }
    EXPECT_NEAR(ws, 1.0, 1e-9);
    for (std::size_t i = 1; i < r.log_likelihood.size(); ++i) {
        EXPECT_GE(r.log_likelihood[i], r.log_likelihood[i - 1] - 1e-12 * std::abs(r.log_likelihood[i - 1]));
    }
}

TEST(Gmm, NeedsTenRowsPerComponent) {
    const auto s = random_set(49, 3, 1);
    EXPECT_THROW(gmm_em(s, 5, 1), InvalidInput);
}

TEST(Gmm, VarianceFloor) {
    // one blob is a single repeated point
    LocalDescriptorSet s = blobs({{0.0, 0.0}}, 100, 1.0, 3);
    for (int i = 0; i < 100; ++i) {
        s.data.push_back(20.0f);
        s.data.push_back(20.0f);
    }
    GmmConfig cfg;
    cfg.variance_floor = 1e-3;
    const auto r = gmm_em(s, 2, 5, cfg);
    for (double v : r.gmm.variances) {
        EXPECT_GE(v, 1e-3);
    }
}

// --- assignment and encoders ---

TEST(NearestWord, MatchesBruteForceScan) {
    const auto cb = random_codebook(64, 128, 21);
    const auto q = random_set(1000, 128, 22);
    for (std::size_t i = 0; i < q.size(); ++i) {
        int best = 0;
        double bd = INFINITY;
        for (int c = 0; c < cb.k; ++c) {
            double s = 0.0;
            for (int j = 0; j < 128; ++j) {
                const double r = static_cast<double>(q.row(i)[j]) - cb.word(c)[j];
                s += r * r;
            }
            if (s < bd) {
                bd = s;
                best = c;
            }
        }
        ASSERT_EQ(nearest_word(q.row(i), cb), best) << i;
    }
}

TEST(NearestWord, TiesGoToLowestIndex) {
    Codebook cb{3, 2, {1, 0, -1, 0, 1, 0}, ""};
    const std::vector<float> q = {0, 0};
    EXPECT_EQ(nearest_word(q, cb), 0);
    const std::vector<float> wrong = {0, 0, 0};
    EXPECT_THROW(nearest_word(wrong, cb), InvalidInput);
}

TEST(Encoders, Dimensions) {
    const auto local = random_set(40, 128, 31);
    EXPECT_EQ(encode_bovw(local, random_codebook(1024, 128, 1)).size(), 1024u);
    EXPECT_EQ(encode_vlad(local, random_codebook(200, 128, 2)).size(), 25600u);
    EXPECT_EQ(encode_fv(local, random_gmm(160, 128, 3)).size(), 40960u);
}

TEST(Encoders, BovwAllNearestWordZero) {
    Codebook cb{3, 2, {0, 0, 10, 10, -10, 10}, ""};
    LocalDescriptorSet s;
    s.dim = 2;
    s.data = {0.1f, 0.2f, -0.3f, 0.1f, 0.0f, 0.0f};
    EXPECT_EQ(encode_bovw(s, cb), (std::vector<float>{1.0f, 0.0f, 0.0f}));
    s.data.insert(s.data.end(), {9.0f, 9.0f});
    const auto h = encode_bovw(s, cb);
    EXPECT_FLOAT_EQ(h[0], 0.75f);
    EXPECT_FLOAT_EQ(h[1], 0.25f);
}

TEST(Encoders, BovwSumsToOne) {
    const auto h = encode_bovw(random_set(777, 16, 4), random_codebook(50, 16, 5));
    EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), 1.0, 1e-6);
}

TEST(Encoders, VladSingleDescriptor) {
    const auto cb = random_codebook(5, 8, 7);
    LocalDescriptorSet s;
    s.dim = 8;
    for (int j = 0; j < 8; ++j) {
        s.data.push_back(cb.word(3)[j] + 0.01f * (j - 3.5f));
    }
    ASSERT_EQ(nearest_word(s.row(0), cb), 3);
    const auto v = encode_vlad(s, cb);
    std::vector<double> want(8);
    double n2 = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double r = static_cast<double>(s.data[j]) - cb.word(3)[j];
        want[j] = std::copysign(std::sqrt(std::abs(r)), r);
        n2 += want[j] * want[j];
    }
    for (int c = 0; c < 5; ++c) {
        for (int j = 0; j < 8; ++j) {
            EXPECT_NEAR(v[c * 8 + j], c == 3 ? want[j] / std::sqrt(n2) : 0.0, 1e-6);
        }
    }
}

TEST(Encoders, FvZeroMeanGradientAtComponentMean) {
    Gmm g;
    g.k = 2;
    g.dim = 4;
    g.weights = {0.5, 0.5};
    g.means = {0.2, 0.4, 0.6, 0.8, 100, 100, 100, 100};
    g.variances = {0.01, 0.02, 0.03, 0.04, 0.01, 0.01, 0.01, 0.01};
    LocalDescriptorSet s;
    s.dim = 4;
    s.data = {0.2f, 0.4f, 0.6f, 0.8f};
    // float rounding of the row leaves a residual of order 1e-8 / sd
    const auto v = encode_fv(s, g);
    ASSERT_EQ(v.size(), 16u);
    for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(v[j], 0.0, 1e-3);
        EXPECT_NEAR(v[4 + j], -0.5, 1e-6); // equal variance gradients
    }
    for (int j = 8; j < 16; ++j) {
        EXPECT_EQ(v[j], 0.0f);
    }
}

TEST(Encoders, PermutationInvariantBitwise) {
    const auto local = random_set(500, 16, 40);
    const auto perm = permuted(local, 41);
    const auto cb = random_codebook(20, 16, 42);
    const auto g = random_gmm(6, 16, 43);
    EXPECT_EQ(encode_bovw(local, cb), encode_bovw(perm, cb));
    EXPECT_EQ(encode_vlad(local, cb), encode_vlad(perm, cb));
    EXPECT_EQ(encode_fv(local, g), encode_fv(perm, g));
}

TEST(Encoders, DuplicationInvariant) {
    const auto local = random_set(300, 16, 50);
    const auto twice = doubled(local);
    const auto cb = random_codebook(20, 16, 51);
    const auto g = random_gmm(6, 16, 52);
    EXPECT_EQ(encode_bovw(local, cb), encode_bovw(twice, cb));
    EXPECT_LT(max_abs_diff(encode_vlad(local, cb), encode_vlad(twice, cb)), 1e-6);
    EXPECT_LT(max_abs_diff(encode_fv(local, g), encode_fv(twice, g)), 1e-6);
}

TEST(Encoders, UnitNormAndErrors) {
    const auto local = random_set(100, 16, 60);
    const auto cb = random_codebook(10, 16, 61);
    const auto v = encode_vlad(local, cb);
    const auto f = encode_fv(local, random_gmm(4, 16, 62));
    EXPECT_NEAR(std::inner_product(v.begin(), v.end(), v.begin(), 0.0), 1.0, 1e-5);
    EXPECT_NEAR(std::inner_product(f.begin(), f.end(), f.begin(), 0.0), 1.0, 1e-5);
    LocalDescriptorSet empty;
    empty.dim = 16;
    EXPECT_THROW(encode_bovw(empty, cb), InvalidInput);
    EXPECT_THROW(encode_vlad(empty, cb), InvalidInput);
    EXPECT_THROW(encode_fv(empty, random_gmm(4, 16, 62)), InvalidInput);
    EXPECT_THROW(encode_vlad(random_set(10, 8, 1), cb), InvalidInput);
}

TEST(Encoders, SiftEndToEnd) {
    const auto local = dense_sift(gray_random(64, 70));
    LocalDescriptorSet sample;
    for (std::size_t i = 0; i < local.size(); i += 3) {
        const auto r = local.row(i);
        sample.data.insert(sample.data.end(), r.begin(), r.end());
    }
    KmeansConfig kc;
    kc.max_iterations = 10;
    const auto cb = kmeans(sample, 16, 1, kc).codebook;
    const auto h = encode_bovw(local, cb);
    EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), 1.0, 1e-6);
}

// --- persistence ---

class Persistence : public ::testing::Test {
protected:
    fs::path dir = fs::temp_directory_path() / "texbench_codebook_test";
    void SetUp() override { fs::create_directories(dir); }
    void TearDown() override { fs::remove_all(dir); }
};

TEST_F(Persistence, CodebookRoundTrip) {
    auto cb = random_codebook(7, 5, 80);
    cb.fingerprint = "00ff00ff00ff00ff";
    save_codebook(dir / "a.rtcb", cb);
    const auto back = load_codebook(dir / "a.rtcb");
    EXPECT_EQ(back.k, 7);
    EXPECT_EQ(back.dim, 5);
    EXPECT_EQ(back.words, cb.words);
    EXPECT_EQ(back.fingerprint, cb.fingerprint);
    EXPECT_EQ(fs::file_size(dir / "a.rtcb"), 4u + 2 + 2 + 16 + 4 + 4 + 35 * 4);
}

TEST_F(Persistence, GmmRoundTrip) {
    auto g = random_gmm(3, 4, 81);
    g.fingerprint = "abc";
    save_gmm(dir / "g.rtgm", g);
    const auto back = load_gmm(dir / "g.rtgm");
    EXPECT_EQ(back.weights, g.weights);
    EXPECT_EQ(back.means, g.means);
    EXPECT_EQ(back.variances, g.variances);
    EXPECT_EQ(back.fingerprint, "abc");
}

TEST_F(Persistence, CorruptFiles) {
    EXPECT_THROW(load_codebook(dir / "missing"), IoError);
    save_codebook(dir / "a.rtcb", random_codebook(2, 2, 1));
    EXPECT_THROW(load_gmm(dir / "a.rtcb"), FormatError);
    fs::resize_file(dir / "a.rtcb", fs::file_size(dir / "a.rtcb") - 1);
    EXPECT_THROW(load_codebook(dir / "a.rtcb"), FormatError);
    std::ofstream(dir / "a.rtcb", std::ios::app) << "xx";
    EXPECT_THROW(load_codebook(dir / "a.rtcb"), FormatError);
}

} // namespace
} // namespace texbench::cb
