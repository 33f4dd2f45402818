// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>

#include <gtest/gtest.h>

#include "texbench/chromanorm.hpp"
#include "texbench/error.hpp"
#include "texbench/rng.hpp"

namespace texbench::norm {
namespace {

Image constant(int w, int h, Rgb c) {
    Image img(w, h, 3, ColorSpace::LinearRgb);
    auto d = img.data();
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = static_cast<float>(c[i % 3]);
    }
    return img;
}

// Piecewise-constant patches of random colour, the classic Mondrian scene.
Image mondrian(int size, int cell, std::uint64_t seed, double lo = 0.05, double hi = 0.9) {
    Rng rng(seed);
    const int cells = (size + cell - 1) / cell;
    std::vector<Rgb> colours(static_cast<std::size_t>(cells) * cells);
    for (auto& c : colours) {
        for (double& v : c) {
            v = rng.uniform(lo, hi);
        }
    }
    Image img(size, size, 3, ColorSpace::LinearRgb);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const Rgb& c = colours[static_cast<std::size_t>(y / cell) * cells + x / cell];
            for (int k = 0; k < 3; ++k) {
                img.at(x, y, k) = static_cast<float>(c[k]);
            }
        }
    }
    return img;
}

Image noise(int size, std::uint64_t seed) {
    Rng rng(seed);
    Image img(size, size, 3, ColorSpace::LinearRgb);
    for (float& v : img.data()) {
        v = static_cast<float>(rng.uniform(0.05, 0.9));
    }
    return img;
}

Image cast(const Image& img, Rgb k) {
    Image out = img;
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = static_cast<float>(d[i] * k[i % 3]);
    }
    return out;
}

// max |a - s b| / max |a| with the least-squares global scalar s.
double relative_difference_up_to_scale(const Image& a, const Image& b) {
    double ab = 0.0;
    double bb = 0.0;
    double amax = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        ab += static_cast<double>(a.data()[i]) * b.data()[i];
        bb += static_cast<double>(b.data()[i]) * b.data()[i];
        amax = std::max(amax, static_cast<double>(std::abs(a.data()[i])));
    }
    const double s = ab / bb;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - s * b.data()[i]));
    }
    return worst / amax;
}

void expect_valid_estimate(const IlluminantEstimate& e) {
    const double n = std::sqrt(e.rgb[0] * e.rgb[0] + e.rgb[1] * e.rgb[1] + e.rgb[2] * e.rgb[2]);
    EXPECT_NEAR(n, 1.0, 1e-9);
    for (double v : e.rgb) {
        EXPECT_GT(v, 0.0);
    }
}

TEST(GrayWorld, ConstantBecomesAchromatic) {
    const auto r = gray_world(constant(8, 8, {0.8, 0.4, 0.2}));
    for (std::size_t i = 0; i < r.image.pixel_count(); ++i) {
        EXPECT_FLOAT_EQ(r.image.data()[3 * i], r.image.data()[3 * i + 1]);
        EXPECT_FLOAT_EQ(r.image.data()[3 * i], r.image.data()[3 * i + 2]);
    }
    expect_valid_estimate(r.estimate);
}

TEST(GrayWorld, BalancedImageOnlyRescaled) {
    Image img = mondrian(64, 8, 3);
    // Force equal channel means by permuting channels into each other.
    Image bal(64, 64, 3, ColorSpace::LinearRgb);
    for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
            const float v = img.at(x, y, 0);
            bal.at(x, y, 0) = v;
            bal.at(63 - x, y, 1) = v;
            bal.at(x, 63 - y, 2) = v;
        }
    }
    const auto r = gray_world(bal);
    EXPECT_LT(relative_difference_up_to_scale(r.image, bal), 1e-6);
}

TEST(GrayWorld, DiagonalCastCancels) {
    const Image img = mondrian(96, 12, 5);
    const auto ref = gray_world(img);
    const auto got = gray_world(cast(img, {1.0, 0.5, 0.25}));
    EXPECT_LT(relative_difference_up_to_scale(got.image, ref.image), 1e-6);
}

TEST(GrayWorld, IdempotentAndZeroChannelIsDegenerate) {
    const Image once = gray_world(noise(32, 2)).image;
    const Image twice = gray_world(once).image;
    EXPECT_LT(relative_difference_up_to_scale(twice, once), 1e-6);
    EXPECT_THROW(gray_world(constant(4, 4, {0.5, 0.0, 0.5})), DegenerateError);
}

TEST(GrayEdge, ConstantFallsBack) {
    const Image img = constant(16, 16, {0.3, 0.6, 0.2});
    for (int order : {1, 2}) {
        const auto r = gray_edge(img, order);
        EXPECT_TRUE(r.estimate.fallback);
        EXPECT_EQ(r.image, img);
        expect_valid_estimate(r.estimate);
    }
}

TEST(GrayEdge, DiagonalCastCancels) {
    const Image img = mondrian(96, 12, 6);
    for (int order : {1, 2}) {
        for (double p : {1.0, 6.0}) {
            const auto ref = gray_edge(img, order, p, 2.0);
            const auto got = gray_edge(cast(img, {0.4, 1.0, 0.7}), order, p, 2.0);
            EXPECT_FALSE(got.estimate.fallback);
            EXPECT_LT(relative_difference_up_to_scale(got.image, ref.image), 1e-6) << order << " " << p;
            expect_valid_estimate(got.estimate);
        }
    }
}

TEST(GrayEdge, OrderZeroIsGrayWorld) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Image img = noise(24, 100 + seed);
        const auto a = gray_edge(img, 0, 1.0, 0.0);
        const auto b = gray_world(img);
        EXPECT_EQ(a.image, b.image);
        EXPECT_EQ(a.estimate.rgb, b.estimate.rgb);
    }
}

TEST(GrayEdge, MaxNorm) {
    const auto e = estimate_illuminant(mondrian(48, 8, 1), 1, std::numeric_limits<double>::infinity(), 1.0);
    expect_valid_estimate(e);
    EXPECT_THROW(estimate_illuminant(mondrian(8, 4, 1), 1, 0.5, 1.0), DomainError);
}

TEST(WeightedGrayEdge, ConstantFallsBack) {
    const Image img = constant(16, 16, {0.3, 0.6, 0.2});
    const auto r = weighted_gray_edge(img);
    EXPECT_TRUE(r.estimate.fallback);
    EXPECT_EQ(r.image, img);
}

TEST(WeightedGrayEdge, UnitWeightsEqualGrayEdge) {
    const Image img = mondrian(64, 8, 9);
    WeightedGrayEdgeOptions o;
    o.kappa = 0.0;
    o.sigma = 2.0;
    const auto a = weighted_gray_edge(img, o);
    const auto b = gray_edge(img, 1, 1.0, 2.0);
    EXPECT_EQ(a.estimate.rgb, b.estimate.rgb);
    EXPECT_EQ(a.image, b.image);
}

TEST(WeightedGrayEdge, RecoversDiagonalCast) {
    const Rgb truth{1.0, 0.7, 0.4};
    const Image scene = cast(mondrian(200, 10, 21, 0.1, 0.9), truth);
    WeightedGrayEdgeOptions o;
    o.sigma = 1.0;
    const auto r = weighted_gray_edge(scene, o);
    EXPECT_LT(angular_error_deg(r.estimate.rgb, truth), 2.0);
    expect_valid_estimate(r.estimate);
}

TEST(Retinex, ConstantIsFixedPoint) {
    const Image img = constant(40, 40, {0.4, 0.4, 0.4});
    for (const Image& out : {retinex_frankle_mccann(img), retinex_mccann99(img)}) {
        for (float v : out.data()) {
            EXPECT_FLOAT_EQ(v, 1.0f);
        }
    }
}

Image two_region(int w, int h) {
    Image img(w, h, 3, ColorSpace::LinearRgb);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                img.at(x, y, c) = x < w / 2 ? 0.25f : 1.0f;
            }
        }
    }
    return img;
}

TEST(Retinex, TwoRegionResetToMax) {
    const Image img = two_region(64, 64);
    const Image fm = retinex_frankle_mccann(img);
    const Image mc = retinex_mccann99(img);
    double mad = 0.0;
    for (int y = 0; y < 64; ++y) {
        for (int x = 32; x < 64; ++x) {
            EXPECT_NEAR(fm.at(x, y, 0), 1.0, 1e-6);
        }
    }
    for (std::size_t i = 0; i < fm.data().size(); ++i) {
        mad += std::abs(fm.data()[i] - mc.data()[i]);
    }
    // Pilot run: 0.0436 at the default 4 iterations on 64x64.
    EXPECT_LE(mad / static_cast<double>(fm.data().size()), 0.05);
}

TEST(Retinex, HandTrace) {
    // 4x1 image, log r = (l, l, 0, 0) with l = ln 0.25, one iteration per
    // shift. Shift 2: x=2,3 compare with x=0,1, IP = 0 - l > 0 resets to 0.
    // Shift -1: x=1 compares with x=2, IP = 0 + l - 0, NP = l/2; x=0 and
    // x=2 see equal neighbours and stay 0. The schedule ends there.
    Image img(4, 1, 3, ColorSpace::LinearRgb);
    for (int x = 0; x < 4; ++x) {
        for (int c = 0; c < 3; ++c) {
            img.at(x, 0, c) = x < 2 ? 0.25f : 1.0f;
        }
    }
    const Image out = retinex_frankle_mccann(img, 1);
    EXPECT_NEAR(out.at(0, 0, 0), 1.0, 1e-7);
    EXPECT_NEAR(out.at(1, 0, 0), 0.5, 1e-7);
    EXPECT_NEAR(out.at(2, 0, 1), 1.0, 1e-7);
    EXPECT_NEAR(out.at(3, 0, 2), 1.0, 1e-7);
}

TEST(Retinex, OutputRangeAndOrderPreserving) {
    Image ramp(128, 8, 3, ColorSpace::LinearRgb);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 128; ++x) {
            ramp.at(x, y, 0) = static_cast<float>(0.05 + 0.9 * x / 127.0);
            ramp.at(x, y, 1) = static_cast<float>(0.9 - 0.8 * x / 127.0);
            ramp.at(x, y, 2) = 0.5f;
        }
    }
    for (const Image& out : {retinex_frankle_mccann(ramp), retinex_mccann99(ramp)}) {
        for (int x = 1; x < 128; ++x) {
            EXPECT_GE(out.at(x, 4, 0), out.at(x - 1, 4, 0));
            EXPECT_LE(out.at(x, 4, 1), out.at(x - 1, 4, 1));
        }
        for (float v : out.data()) {
            EXPECT_GE(v, 0.0f);
            EXPECT_LE(v, 1.0f);
        }
    }
    const Image n = noise(50, 4);
    for (const Image& out : {retinex_frankle_mccann(n), retinex_mccann99(n)}) {
        for (float v : out.data()) {
            EXPECT_GE(v, 0.0f);
            EXPECT_LE(v, 1.0f);
        }
    }
}

TEST(Registry, NamesAndDispatch) {
    EXPECT_EQ(normalizer_names().size(), 6u);
    EXPECT_TRUE(is_normalizer("gray-world"));
    EXPECT_FALSE(is_normalizer("grey-world"));
    const Image img = mondrian(40, 8, 2);
    EXPECT_EQ(normalize(img, "none"), img);
    EXPECT_EQ(normalize(img, "gray-world"), gray_world(img).image);
    EXPECT_THROW(normalize(img, "bogus"), InvalidInput);
    const Image srgb = to_srgb8(img);
    for (const auto& name : normalizer_names()) {
        const Image out = normalize(srgb, name);
        EXPECT_EQ(out.space(), ColorSpace::Srgb8) << name;
        EXPECT_EQ(out.width(), 40);
    }
}

TEST(Registry, GrayWorldOnPrimaryShotKeepsImage) {
    const Image red = constant(8, 8, {0.7, 0.0, 0.0});
    EXPECT_EQ(normalize(red, "gray-world"), red);
}

} // namespace
} // namespace texbench::norm
