// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "texbench/color.hpp"
#include "texbench/dataset.hpp"
#include "texbench/error.hpp"
#include "texbench/light.hpp"
#include "texbench/png_io.hpp"
#include "texbench/synth.hpp"

namespace texbench::light {
namespace {

namespace fs = std::filesystem;

// Direct evaluation of the daylight-locus cubic, written independently of
// the library.
Chromaticity locus_oracle(double t, bool high) {
    const double u = 1000.0 / t;
    const double x = high ? 0.23704 + 0.24748 * u + 1.9018 * u * u - 2.0064 * u * u * u
                          : 0.244063 + 0.09911 * u + 2.9678 * u * u - 4.6070 * u * u * u;
    return {x, -3.0 * x * x + 2.87 * x - 0.275};
}

Image flat_albedo(double v) {
    Image img(800, 800, 3, ColorSpace::LinearRgb);
    for (float& s : img.data()) {
        s = static_cast<float>(v);
    }
    return img;
}

TEST(Catalog, SizeAndGroups) {
    const auto& cat = condition_catalog();
    ASSERT_EQ(cat.size(), 46u);
    std::map<ConditionKind, int> groups;
    std::set<std::string> ids;
    for (const auto& c : cat) {
        ++groups[c.kind];
        ids.insert(c.id);
    }
    EXPECT_EQ(ids.size(), 46u);
    EXPECT_EQ(groups[ConditionKind::Intensity], 4);
    EXPECT_EQ(groups[ConditionKind::Direction], 9);
    EXPECT_EQ(groups[ConditionKind::Daylight], 12);
    EXPECT_EQ(groups[ConditionKind::Led], 6);
    EXPECT_EQ(groups[ConditionKind::ColorAndDirection], 9);
    EXPECT_EQ(groups[ConditionKind::MultiIlluminant], 3);
    EXPECT_EQ(groups[ConditionKind::Primary], 3);
}

TEST(Catalog, DaylightTemperatures) {
    std::vector<double> ccts;
    for (const auto& c : condition_catalog()) {
        if (c.kind == ConditionKind::Daylight) {
            ccts.push_back(c.cct);
        }
    }
    ASSERT_EQ(ccts.size(), 12u);
    for (std::size_t i = 0; i < ccts.size(); ++i) {
        EXPECT_EQ(ccts[i], 4000.0 + 500.0 * static_cast<double>(i));
    }
}

TEST(Catalog, ParametersPerKind) {
    const auto* i50 = find_condition("I50");
    ASSERT_NE(i50, nullptr);
    EXPECT_EQ(i50->intensity, 0.5);
    EXPECT_EQ(i50->theta, 90.0);
    const auto* dir = find_condition("DIR24");
    ASSERT_NE(dir, nullptr);
    EXPECT_EQ(dir->theta, 24.0);
    const auto* led = find_condition("L27");
    ASSERT_NE(led, nullptr);
    EXPECT_EQ(led->led_cct, 2700.0);
    const auto* combo = find_condition("D95_60");
    ASSERT_NE(combo, nullptr);
    EXPECT_EQ(combo->cct, 9500.0);
    EXPECT_EQ(combo->theta, 60.0);
    const auto* multi = find_condition("D65-L27");
    ASSERT_NE(multi, nullptr);
    ASSERT_TRUE(multi->second.has_value());
    EXPECT_EQ(multi->illuminant.name(), "D65");
    EXPECT_EQ(multi->second->name(), "L27");
    EXPECT_EQ(find_condition("bogus"), nullptr);
    EXPECT_THROW(catalog_index("bogus"), InvalidInput);
    EXPECT_EQ(catalog_index("I100"), 0u);
    EXPECT_EQ(catalog_index("BLUE"), 45u);
}

TEST(Locus, PrintedValues) {
    const auto c6500 = cct_to_chromaticity(6500);
    EXPECT_NEAR(c6500.x, 0.3128, 5e-4);
    EXPECT_NEAR(c6500.y, 0.3292, 5e-4);
    const auto c4000 = cct_to_chromaticity(4000);
    EXPECT_NEAR(c4000.x, 0.3823, 5e-4);
    EXPECT_NEAR(c4000.y, 0.3838, 5e-4);
}

TEST(Locus, MatchesOracleAndBranchesMeetAt7000) {
    for (double t = 4000; t <= 25000; t += 250) {
        const auto c = cct_to_chromaticity(t);
        const auto o = locus_oracle(t, t > 7000);
        EXPECT_DOUBLE_EQ(c.x, o.x);
        EXPECT_DOUBLE_EQ(c.y, o.y);
    }
    EXPECT_LT(std::abs(locus_oracle(7000, false).x - locus_oracle(7000, true).x), 5e-4);
}

TEST(Locus, SweepIsMonotoneAndOnParabola) {
    double prev = 1.0;
    for (double t = 4000; t <= 9500; t += 500) {
        const auto c = cct_to_chromaticity(t);
        EXPECT_EQ(c.y, -3.0 * c.x * c.x + 2.87 * c.x - 0.275);
        EXPECT_LT(c.x, prev);
        prev = c.x;
    }
}

TEST(Locus, DomainErrors) {
    EXPECT_THROW(cct_to_chromaticity(3999), DomainError);
    EXPECT_THROW(cct_to_chromaticity(25001), DomainError);
}

TEST(IlluminantRgb, WhitePointAndWarmCast) {
    const Rgb d65 = chromaticity_to_rgb({0.3127, 0.3290});
    for (double v : d65) {
        EXPECT_NEAR(v, 1.0, 1e-3);
    }
    const Rgb warm = chromaticity_to_rgb(cct_to_chromaticity(4000));
    EXPECT_EQ(warm[0], 1.0);
    EXPECT_LT(warm[2], warm[0]);
    EXPECT_EQ(primary_rgb(PrimaryColor::Red), (Rgb{1, 0, 0}));
    EXPECT_EQ(illuminant_rgb(Illuminant{}), (Rgb{1, 1, 1}));
}

TEST(IlluminantRgb, PlanckianLocus) {
    // Tabulated blackbody chromaticities (CIE 1931, 2 degree observer).
    const std::map<double, Chromaticity> table{
        {3000, {0.4369, 0.4041}}, {4000, {0.3805, 0.3768}}, {5000, {0.3451, 0.3516}}, {6500, {0.3135, 0.3236}}};
    for (const auto& [t, c] : table) {
        const auto p = planckian_locus(t);
        EXPECT_NEAR(p.x, c.x, 1e-3) << t;
        EXPECT_NEAR(p.y, c.y, 1e-3) << t;
    }
    EXPECT_THROW(planckian_locus(1000), DomainError);
}

TEST(IlluminantRgb, LedModels) {
    const Illuminant l40{Illuminant::Family::Led, 4000, PrimaryColor::Red};
    const Rgb day = illuminant_rgb(Illuminant{Illuminant::Family::Daylight, 4000, PrimaryColor::Red});
    EXPECT_EQ(illuminant_rgb(l40, {}, LedModel::DaylightLocus), day);
    EXPECT_NE(illuminant_rgb(l40, {}, LedModel::Planckian), day);
}

TEST(IlluminantRgb, LedOverride) {
    const Illuminant l27{Illuminant::Family::Led, 2700, PrimaryColor::Red};
    const Rgb approx = illuminant_rgb(l27);
    EXPECT_EQ(approx[0], 1.0);
    EXPECT_LT(approx[2], 0.6);
    const Rgb custom = illuminant_rgb(l27, {{"L27", {0.3127, 0.3290}}});
    EXPECT_NEAR(custom[2], 1.0, 1e-3);
}

TEST(Render, ApplyIlluminant) {
    Image img(1, 1, 3, ColorSpace::LinearRgb, {0.5f, 0.5f, 0.5f});
    const Image out = apply_illuminant(img, {1.0, 0.5, 0.25});
    EXPECT_EQ(out.at(0, 0, 0), 0.5f);
    EXPECT_EQ(out.at(0, 0, 1), 0.25f);
    EXPECT_EQ(out.at(0, 0, 2), 0.125f);
    EXPECT_EQ(apply_illuminant(img, {1, 1, 1}), img);
    const Image blue = apply_illuminant(img, primary_rgb(PrimaryColor::Blue));
    EXPECT_EQ(blue.at(0, 0, 0), 0.0f);
    EXPECT_EQ(blue.at(0, 0, 1), 0.0f);
}

TEST(Render, ApplyIntensity) {
    Image img(2, 1, 3, ColorSpace::LinearRgb, {0.5f, 0.25f, 1.0f, 0.0f, 0.75f, 0.125f});
    EXPECT_EQ(apply_intensity(img, 1.0), img);
    const Image half = apply_intensity(img, 0.5);
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(half.data()[i], img.data()[i] * 0.5f);
    }
    EXPECT_THROW(apply_intensity(img, 0.0), DomainError);
    EXPECT_THROW(apply_intensity(img, 1.5), DomainError);
}

TEST(Render, DirectionRamp) {
    EXPECT_EQ(direction_gain(90, 0, 800), 1.0);
    const double top = 1.0 + 0.6 * 66.0 / 66.0 * 0.5;
    const double bottom = 1.0 - 0.6 * 66.0 / 66.0 * 0.5;
    EXPECT_NEAR(top / bottom, 1.857, 1e-3);
    EXPECT_DOUBLE_EQ(direction_gain(24, 0, 800), top);
    EXPECT_DOUBLE_EQ(direction_gain(24, 800, 800), bottom);

    const Image img = flat_albedo(0.5);
    EXPECT_EQ(apply_direction(img, 90), img);
    const Image shaded = apply_direction(img, 24);
    for (int y = 1; y < 800; ++y) {
        EXPECT_LE(shaded.at(0, y), shaded.at(0, y - 1));
    }
}

TEST(Render, NeutralConditionIsPlainEncoding) {
    const Image albedo = generate_texture(corpus_class_spec(2, 5));
    EXPECT_EQ(render_condition(albedo, *find_condition("I100")), to_srgb8(albedo));
    RenderOptions linear;
    linear.encode_srgb8 = false;
    EXPECT_EQ(render_condition(albedo, *find_condition("I100"), linear), albedo);
}

TEST(Render, MatchesComposedSteps) {
    const Image albedo = generate_texture(corpus_class_spec(1, 5));
    RenderOptions linear;
    linear.encode_srgb8 = false;
    for (const char* id : {"D40", "L50", "D95_24", "I25", "DIR48", "GREEN"}) {
        const LightCondition& c = *find_condition(id);
        const double irr = band_lit(c) ? linear.band_irradiance : 1.0;
        const Image manual = apply_intensity(
            apply_direction(apply_illuminant(albedo, illuminant_rgb(c.illuminant)), c.theta, irr), c.intensity);
        EXPECT_EQ(render_condition(albedo, c, linear), manual) << id;
    }
}

TEST(Render, MultiIlluminantHalves) {
    const Image albedo = flat_albedo(0.5);
    RenderOptions linear;
    linear.encode_srgb8 = false;
    for (const char* id : {"D65-D95", "D65-L27", "D95-L27"}) {
        const LightCondition& c = *find_condition(id);
        const Image out = render_condition(albedo, c, linear);
        const Rgb a = illuminant_rgb(c.illuminant);
        const Rgb b = illuminant_rgb(*c.second);
        for (int k = 0; k < 3; ++k) {
            EXPECT_FLOAT_EQ(out.at(10, 400, k), static_cast<float>(0.5 * a[k] * linear.band_irradiance)) << id;
            EXPECT_FLOAT_EQ(out.at(790, 400, k), static_cast<float>(0.5 * b[k] * linear.band_irradiance)) << id;
        }
        EXPECT_NE(out.at(10, 400, 2), out.at(790, 400, 2)) << id;
    }
}

TEST(Render, FullCatalogGivesDistinctImages) {
    const Image albedo = generate_texture(corpus_class_spec(0, 5));
    std::set<std::vector<float>> seen;
    for (const auto& c : condition_catalog()) {
        const Image out = render_condition(albedo, c);
        seen.emplace(out.data().begin(), out.data().end());
    }
    EXPECT_EQ(seen.size(), 46u);
}

TEST(Synth, Deterministic) {
    for (int cls = 0; cls < 4; ++cls) {
        const auto spec = corpus_class_spec(cls, 42);
        EXPECT_EQ(generate_texture(spec), generate_texture(spec));
    }
}

TEST(Synth, AlbedoOnDyadicGrid) {
    const Image img = generate_texture(corpus_class_spec(3, 42));
    for (float v : img.data()) {
        const double scaled = static_cast<double>(v) / kAlbedoStep;
        EXPECT_EQ(scaled, std::round(scaled));
        EXPECT_GT(v, 0.0f);
        EXPECT_LT(v, 1.0f);
    }
}

TEST(Synth, DifferentSeedsDiffer) {
    for (int cls = 0; cls < 4; ++cls) {
        auto a = corpus_class_spec(cls, 1);
        auto b = a;
        b.seed += 1;
        const Image x = generate_texture(a);
        const Image y = generate_texture(b);
        std::size_t diff = 0;
        for (std::size_t i = 0; i < x.pixel_count(); ++i) {
            for (int c = 0; c < 3; ++c) {
                if (x.data()[3 * i + c] != y.data()[3 * i + c]) {
                    ++diff;
                    break;
                }
            }
        }
        EXPECT_GE(diff, x.pixel_count() / 100) << generator_name(a.generator);
    }
}

// Magnitude-weighted histogram of gradient orientation (1-degree bins,
// modulo 180), central differences on luminance.
double dominant_orientation(const Image& img) {
    std::vector<double> hist(180, 0.0);
    auto lum = [&](int x, int y) {
        return 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
    };
    for (int y = 1; y + 1 < img.height(); ++y) {
        for (int x = 1; x + 1 < img.width(); ++x) {
            const double gx = lum(x + 1, y) - lum(x - 1, y);
            const double gy = lum(x, y + 1) - lum(x, y - 1);
            double a = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
            a = std::fmod(a + 360.0, 180.0);
            hist[static_cast<std::size_t>(a) % 180] += std::hypot(gx, gy);
        }
    }
    std::vector<double> smooth(180);
    for (int i = 0; i < 180; ++i) {
        for (int d = -2; d <= 2; ++d) {
            smooth[i] += hist[(i + d + 180) % 180];
        }
    }
    return static_cast<double>(std::max_element(smooth.begin(), smooth.end()) - smooth.begin()) + 0.5;
}

TEST(Synth, StripeOrientation) {
    for (double angle : {0.0, 30.0, 75.0, 120.0, 165.0}) {
        SyntheticClassSpec spec;
        spec.generator = Generator::Stripe;
        spec.base_albedo = {0.5, 0.4, 0.3};
        spec.orientation_deg = angle;
        spec.seed = 9;
        const double got = dominant_orientation(generate_texture(spec));
        double diff = std::abs(got - angle);
        diff = std::min(diff, 180.0 - diff);
        EXPECT_LE(diff, 5.0) << "angle " << angle << " got " << got;
    }
}

TEST(Synth, CorpusClassesDistinct) {
    std::set<std::vector<double>> means;
    for (int cls = 0; cls < 12; ++cls) {
        const Image img = generate_texture(corpus_class_spec(cls, 1));
        std::vector<double> m(3, 0.0);
        for (std::size_t i = 0; i < img.pixel_count(); ++i) {
            for (int c = 0; c < 3; ++c) {
                m[c] += img.data()[3 * i + c];
            }
        }
        for (double& v : m) {
            v = std::round(v / static_cast<double>(img.pixel_count()) * 100.0);
        }
        means.insert(m);
    }
    EXPECT_EQ(means.size(), 12u);
}

class DatasetTest : public ::testing::Test {
protected:
    void SetUp() override {
        root_ = fs::path(TEXBENCH_TEST_TMP) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
        fs::remove_all(root_);
    }
    CorpusOptions small() const {
        CorpusOptions o;
        o.classes = 2;
        o.seed = 3;
        o.conditions = {"D65", "I100", "L27"};
        return o;
    }
    fs::path root_;
};

TEST_F(DatasetTest, RoundTrip) {
    const SyntheticCorpus corpus(small());
    write_dataset(root_, corpus);
    const DiskDataset ds = load_dataset(root_);
    EXPECT_TRUE(ds.complete());
    EXPECT_EQ(ds.classes(), (std::vector<int>{0, 1}));
    EXPECT_EQ(ds.conditions(), (std::vector<std::string>{"I100", "D65", "L27"}));
    for (int cls : ds.classes()) {
        for (const auto& id : ds.conditions()) {
            EXPECT_EQ(ds.image(cls, id), corpus.image(cls, id));
        }
    }
}

TEST_F(DatasetTest, MissingFileIsReported) {
    write_dataset(root_, SyntheticCorpus(small()));
    fs::remove(root_ / "1" / "L27.png");
    const DiskDataset ds = load_dataset(root_);
    EXPECT_FALSE(ds.complete());
    ASSERT_EQ(ds.missing().size(), 1u);
    EXPECT_EQ(ds.missing()[0], (MissingEntry{1, "L27"}));
    EXPECT_THROW(ds.image(1, "L27"), IoError);
}

TEST_F(DatasetTest, UnknownConditionNamesFile) {
    write_dataset(root_, SyntheticCorpus(small()));
    fs::copy_file(root_ / "0" / "D65.png", root_ / "0" / "D66.png");
    try {
        load_dataset(root_);
        FAIL() << "expected FormatError";
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("D66.png"), std::string::npos);
    }
}

TEST_F(DatasetTest, WithoutManifestExpectsFullCatalog) {
    write_dataset(root_, SyntheticCorpus(small()));
    fs::remove(root_ / "catalog.json");
    const DiskDataset ds = load_dataset(root_);
    EXPECT_EQ(ds.conditions().size(), 46u);
    EXPECT_EQ(ds.missing().size(), 2u * 43u);
}

} // namespace
} // namespace texbench::light
