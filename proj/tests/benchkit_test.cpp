// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "texbench/benchkit.hpp"
#include "texbench/config.hpp"
#include "texbench/error.hpp"
#include "texbench/patches.hpp"
#include "texbench/rng.hpp"

namespace texbench::bench {
namespace {

namespace fs = std::filesystem;

bool has_subset(const TaskSuite& s, const std::string& a, const std::string& b) {
    return std::any_of(s.subsets.begin(), s.subsets.end(),
                       [&](const Subset& x) { return x.train == a && x.test == b; });
}

// Hand-built feature set: class c, condition cond -> base(c, cond) + noise.
FeatureSet toy_features(const std::vector<int>& classes, const std::vector<std::string>& conds, double noise,
                        std::uint64_t seed, double cond_shift = 0.0) {
    Rng rng(seed);
    FeatureSet s;
    s.descriptor = "toy";
    s.dim = 4;
    for (int c : classes) {
        for (std::size_t k = 0; k < conds.size(); ++k) {
            for (int p = 0; p < 16; ++p) {
                FeatureEntry e{c, conds[k], p, {}};
                for (int j = 0; j < 4; ++j) {
                    e.values.push_back(static_cast<float>(10.0 * c + j + cond_shift * k + noise * rng.normal()));
                }
                s.entries.push_back(e);
            }
        }
    }
    s.finalize();
    return s;
}

// --- tasks ---

TEST(Tasks, SubsetCounts) {
    const auto suites = build_tasks();
    ASSERT_EQ(suites.size(), 9u);
    const std::vector<std::size_t> want = {46, 12, 72, 132, 30, 72, 72, 36, 6};
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(suites[i].name, task_names()[i]);
        EXPECT_EQ(suites[i].subsets.size(), want[i]) << suites[i].name;
        for (std::size_t j = 0; j < suites[i].subsets.size(); ++j) {
            EXPECT_EQ(suites[i].subsets[j].id, static_cast<int>(j) + 1);
            EXPECT_NE(light::find_condition(suites[i].subsets[j].train), nullptr);
            EXPECT_NE(light::find_condition(suites[i].subsets[j].test), nullptr);
        }
    }
}

TEST(Tasks, OrderedPairs) {
    const auto suites = build_tasks();
    const auto& day = find_task(suites, "daylight");
    EXPECT_TRUE(has_subset(day, "D65", "D95"));
    EXPECT_TRUE(has_subset(day, "D95", "D65"));
    EXPECT_FALSE(has_subset(day, "D65", "D65"));
    const auto& nv = find_task(suites, "no-variations");
    for (const auto& s : nv.subsets) {
        EXPECT_EQ(s.train, s.test);
    }
    const auto& dvl = find_task(suites, "daylight-vs-led");
    for (const auto& s : dvl.subsets) {
        EXPECT_EQ(light::find_condition(s.train)->kind, light::ConditionKind::Daylight);
        EXPECT_EQ(light::find_condition(s.test)->kind, light::ConditionKind::Led);
    }
}

TEST(Tasks, TempAndDirectionNeedsBothToChange) {
    const auto suites = build_tasks();
    const auto& both = find_task(suites, "temp-and-direction");
    EXPECT_FALSE(has_subset(both, "D65_24", "D65_60"));
    EXPECT_FALSE(has_subset(both, "D65_24", "D95_24"));
    EXPECT_TRUE(has_subset(both, "D65_24", "D95_60"));
    const auto& either = find_task(suites, "temp-or-direction");
    EXPECT_TRUE(has_subset(either, "D65_24", "D65_60"));
    EXPECT_TRUE(has_subset(either, "D65_24", "D95_24"));
    for (const auto& s : both.subsets) {
        EXPECT_TRUE(has_subset(either, s.train, s.test));
    }
}

TEST(Tasks, IncompleteCatalogListsMissingIds) {
    auto cat = light::condition_catalog();
    cat.erase(std::remove_if(cat.begin(), cat.end(), [](const auto& c) { return c.id == "D70" || c.id == "L27"; }),
              cat.end());
    try {
        build_tasks(cat);
        FAIL() << "expected InvalidInput";
    } catch (const InvalidInput& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("D70"), std::string::npos);
        EXPECT_NE(msg.find("L27"), std::string::npos);
    }
    EXPECT_THROW(task_index("bogus"), InvalidInput);
}

// --- l1 and 1-NN ---

TEST(L1, Examples) {
    const std::vector<float> a = {1, 2, 3};
    const std::vector<float> b = {2, 0, 3};
    EXPECT_DOUBLE_EQ(l1(a, b), 3.0);
    EXPECT_DOUBLE_EQ(l1(a, a), 0.0);
    const std::vector<float> c = {1, 2};
    EXPECT_THROW(l1(a, c), InvalidInput);
}

TEST(L1, MetricProperties) {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        std::vector<float> x(37), y(37), z(37);
        for (int i = 0; i < 37; ++i) {
            x[i] = static_cast<float>(rng.normal());
            y[i] = static_cast<float>(rng.normal());
            z[i] = static_cast<float>(rng.normal());
        }
        EXPECT_GE(l1(x, y), 0.0);
        EXPECT_DOUBLE_EQ(l1(x, y), l1(y, x));
        EXPECT_LE(l1(x, z), l1(x, y) + l1(y, z) + 1e-9);
    }
}

TEST(Classify, Examples) {
    FeatureMatrix train;
    train.push(std::vector<float>{0});
    train.push(std::vector<float>{10});
    FeatureMatrix test;
    test.push(std::vector<float>{2});
    test.push(std::vector<float>{10});
    test.push(std::vector<float>{5}); // equidistant
    EXPECT_EQ(classify_1nn(train, {7, 9}, test), (std::vector<int>{7, 9, 7}));
    EXPECT_EQ(classify_1nn(train, {9, 7}, test), (std::vector<int>{9, 7, 9}));
    EXPECT_THROW(classify_1nn(FeatureMatrix{}, {}, test), InvalidInput);
    EXPECT_THROW(classify_1nn(train, {1}, test), InvalidInput);
}

// --- evaluation ---

TEST(Evaluate, SeparableFeatures) {
    const auto fs = toy_features({0, 1, 2}, {"I100", "I75"}, 0.1, 1);
    TaskSuite suite{"intensity", {{1, "I100", "I75"}, {2, "I75", "I100"}}};
    const auto r = evaluate(fs, suite);
    ASSERT_EQ(r.subsets.size(), 2u);
    for (const auto& s : r.subsets) {
        EXPECT_EQ(s.n_test, 3 * 8);
        EXPECT_EQ(s.accuracy, 1.0);
    }
    EXPECT_EQ(r.avg, 1.0);
    EXPECT_EQ(r.min, 1.0);
    EXPECT_EQ(r.per_class.size(), 3u);
    EXPECT_EQ(r.per_class.at(1), (std::pair<int, int>{16, 16}));
}

TEST(Evaluate, SelfMatchDiagnostic) {
    // pure noise: chance level normally, 1.0 when testing on the train patches
    const auto fs = toy_features({0, 1, 2, 3}, {"D65"}, 100.0, 2);
    TaskSuite suite{"no-variations", {{1, "D65", "D65"}}};
    EvalOptions o;
    o.same_patches = true;
    EXPECT_EQ(evaluate(fs, suite, o).avg, 1.0);
    EXPECT_LT(evaluate(fs, suite).avg, 1.0);
}

TEST(Evaluate, AggregatesAreRecomputable) {
    const auto fs = toy_features({0, 1, 2, 3, 4}, {"D40", "D45", "D50"}, 6.0, 3, 3.0);
    const auto suites = build_tasks();
    TaskSuite day{"daylight", {}};
    for (const auto& s : find_task(suites, "daylight").subsets) {
        if (s.train <= "D50" && s.test <= "D50") {
            day.subsets.push_back(s);
        }
    }
    ASSERT_EQ(day.subsets.size(), 6u);
    const auto r = evaluate(fs, day);
    double sum = 0.0;
    double mn = 1.0;
    int correct = 0;
    for (const auto& s : r.subsets) {
        EXPECT_GE(s.accuracy, 0.0);
        EXPECT_LE(s.accuracy, 1.0);
        EXPECT_EQ(s.accuracy, static_cast<double>(s.correct) / s.n_test);
        sum += s.accuracy;
        mn = std::min(mn, s.accuracy);
        correct += s.correct;
    }
    EXPECT_DOUBLE_EQ(r.avg, sum / 6.0);
    EXPECT_EQ(r.min, mn);
    int pc = 0;
    for (const auto& [cls, v] : r.per_class) {
        pc += v.first;
        EXPECT_EQ(v.second, 6 * 8);
    }
    EXPECT_EQ(pc, correct);
}

TEST(Evaluate, MissingEntriesAreNamed) {
    const auto fs = toy_features({0, 1}, {"I100"}, 0.1, 4);
    TaskSuite suite{"intensity", {{1, "I100", "I50"}}};
    try {
        evaluate(fs, suite);
        FAIL() << "expected InvalidInput";
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("I50"), std::string::npos);
    }
}

TEST(Evaluate, InvariantFeaturesMatchNoVariations) {
    // features identical across conditions -> cross-condition subsets equal the diagonal ones
    FeatureSet fs = toy_features({0, 1, 2}, {"I100"}, 4.0, 5);
    const auto base = fs.entries;
    for (const char* c : {"I75", "I50", "I25"}) {
        for (auto e : base) {
            e.condition = c;
            fs.entries.push_back(e);
        }
    }
    fs.finalize();
    const auto suites = build_tasks();
    const auto inten = evaluate(fs, find_task(suites, "intensity"));
    TaskSuite diag{"no-variations", {}};
    for (const auto& s : find_task(suites, "no-variations").subsets) {
        if (s.train[0] == 'I') {
            diag.subsets.push_back(s);
        }
    }
    const auto nv = evaluate(fs, diag);
    for (const auto& s : inten.subsets) {
        const auto it = std::find_if(nv.subsets.begin(), nv.subsets.end(),
                                     [&](const SubsetResult& d) { return d.train == s.train; });
        ASSERT_NE(it, nv.subsets.end());
        EXPECT_EQ(s.correct, it->correct) << s.train << "->" << s.test;
    }
}

// --- delta curves ---

EvalResult fake_result(const std::string& task) {
    EvalResult r;
    r.task = task;
    const auto suites = build_tasks();
    for (const auto& s : find_task(suites, task).subsets) {
        r.subsets.push_back({s.id, s.train, s.test, 10, s.id % 10, (s.id % 10) / 10.0});
    }
    r.aggregate();
    return r;
}

TEST(DeltaCurves, IntensityBuckets) {
    const auto c = delta_curves(fake_result("intensity"));
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0].delta, 25.0);
    EXPECT_EQ(c[1].delta, 50.0);
    EXPECT_EQ(c[2].delta, 75.0);
    EXPECT_EQ(c[0].subsets + c[1].subsets + c[2].subsets, 12);
}

TEST(DeltaCurves, DaylightBuckets) {
    const auto r = fake_result("daylight");
    const auto c = delta_curves(r);
    ASSERT_EQ(c.size(), 11u);
    int total = 0;
    double weighted = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_EQ(c[i].delta, 500.0 * (i + 1));
        total += c[i].subsets;
        weighted += c[i].accuracy * c[i].subsets;
    }
    EXPECT_EQ(total, 132);
    EXPECT_NEAR(weighted / total, r.avg, 1e-12);
}

TEST(DeltaCurves, DirectionAndErrors) {
    const auto c = delta_curves(fake_result("direction"));
    EXPECT_EQ(c.front().delta, 6.0);
    EXPECT_EQ(c.back().delta, 66.0);
    EXPECT_THROW(delta_curves(fake_result("led")), InvalidInput);
}

// --- reports ---

TEST(Report, AvgMinFormatting) {
    EvalResult r;
    r.descriptor = "d";
    r.normalizer = "none";
    r.task = "intensity";
    r.subsets = {{1, "I100", "I75", 2, 1, 0.5}, {2, "I75", "I100", 2, 2, 1.0}};
    r.aggregate();
    EXPECT_EQ(format_avg_min(r.avg, r.min), "75.00 (50.00)");
    const std::string table = summary_table({r});
    EXPECT_NE(table.find("75.00 (50.00)"), std::string::npos);
    EXPECT_NE(summary_csv({r}).find("d,none,intensity,2,75.00,50.00"), std::string::npos);
}

TEST(Report, CsvRoundTripAndOrdering) {
    auto a = fake_result("daylight");
    a.descriptor = "zeta";
    a.normalizer = "none";
    auto b = fake_result("intensity");
    b.descriptor = "alpha";
    b.normalizer = "none";
    auto c = fake_result("no-variations");
    c.descriptor = "alpha";
    c.normalizer = "none";
    std::reverse(a.subsets.begin(), a.subsets.end());
    std::ostringstream out;
    write_results_csv(out, {a, b, c});
    const std::string text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 132 + 12 + 46);
    std::istringstream lines(text);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    EXPECT_EQ(header, "descriptor,normalizer,task,subset_id,train_cond,test_cond,n_test,accuracy");
    EXPECT_EQ(first.rfind("alpha,none,no-variations,1,I100,I100,", 0), 0u) << first;

    std::istringstream in(text);
    const auto back = read_results_csv(in);
    ASSERT_EQ(back.size(), 3u);
    std::ostringstream again;
    write_results_csv(again, back);
    EXPECT_EQ(again.str(), text);
    for (const auto& r : back) {
        const auto& orig = r.descriptor == "zeta" ? a : (r.task == "intensity" ? b : c);
        EXPECT_DOUBLE_EQ(r.avg, orig.avg);
        EXPECT_EQ(r.min, orig.min);
    }
}

TEST(Report, MalformedCsv) {
    std::istringstream bad_header("a,b\n");
    EXPECT_THROW(read_results_csv(bad_header), FormatError);
    std::istringstream short_row("descriptor,normalizer,task,subset_id,train_cond,test_cond,n_test,accuracy\nx,y\n");
    EXPECT_THROW(read_results_csv(short_row), FormatError);
}

TEST(Report, PerClassCsv) {
    const auto fs = toy_features({0, 1}, {"I100", "I75"}, 0.1, 6);
    const auto r = evaluate(fs, TaskSuite{"intensity", {{1, "I100", "I75"}}});
    std::ostringstream out;
    write_per_class_csv(out, {r});
    EXPECT_EQ(out.str(), "descriptor,normalizer,task,class_id,n_test,accuracy\n"
                         "toy,none,intensity,0,8,1.000000\n"
                         "toy,none,intensity,1,8,1.000000\n");
}

// --- feature cache ---

class Cache : public ::testing::Test {
protected:
    fs::path dir = fs::temp_directory_path() / "texbench_benchkit_test";
    void SetUp() override { fs::create_directories(dir); }
    void TearDown() override { fs::remove_all(dir); }
};

TEST_F(Cache, ByteLayout) {
    FeatureSet s;
    s.descriptor = "ab";
    s.normalizer = "n";
    s.dim = 1;
    s.entries.push_back({258, "D65", 7, {1.0f}});
    std::ostringstream out;
    write_features(out, s);
    const std::string b = out.str();
    const std::string want = std::string("RTFX") + std::string("\x01\x00", 2) + std::string("\x02\x00", 2) + "ab" +
                             std::string("\x01\x00", 2) + "n" + std::string("\x01\x00\x00\x00", 4) +
                             std::string("\x01\x00\x00\x00", 4) + std::string("\x02\x01", 2) +
                             std::string("\x03\x00", 2) + "D65" + std::string("\x07", 1) +
                             std::string("\x00\x00\x80\x3f", 4);
    EXPECT_EQ(b, want);
}

TEST_F(Cache, RoundTripIsBitExact) {
    auto s = toy_features({0, 3}, {"D65", "L27"}, 1.0, 7);
    s.normalizer = "gray-world";
    save_features(dir / "a.rtfx", s);
    const auto back = load_features(dir / "a.rtfx");
    EXPECT_EQ(back.descriptor, "toy");
    EXPECT_EQ(back.normalizer, "gray-world");
    ASSERT_EQ(back.entries.size(), s.entries.size());
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        EXPECT_EQ(back.entries[i].values, s.entries[i].values);
        EXPECT_EQ(back.entries[i].condition, s.entries[i].condition);
    }
    save_features(dir / "b.rtfx", back);
    std::ifstream a(dir / "a.rtfx", std::ios::binary), b(dir / "b.rtfx", std::ios::binary);
    EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}), std::string(std::istreambuf_iterator<char>(b), {}));
}

TEST_F(Cache, CachedEvaluationMatches) {
    const auto s = toy_features({0, 1, 2}, {"I100", "I75", "I50", "I25"}, 8.0, 8, 2.0);
    save_features(dir / "c.rtfx", s);
    const auto suites = build_tasks();
    const auto& suite = find_task(suites, "intensity");
    const auto a = evaluate(s, suite);
    const auto b = evaluate(load_features(dir / "c.rtfx"), suite);
    ASSERT_EQ(a.subsets.size(), b.subsets.size());
    for (std::size_t i = 0; i < a.subsets.size(); ++i) {
        EXPECT_EQ(a.subsets[i].correct, b.subsets[i].correct);
    }
}

TEST_F(Cache, CorruptFiles) {
    EXPECT_THROW(load_features(dir / "missing"), IoError);
    save_features(dir / "d.rtfx", toy_features({0}, {"D65"}, 0.0, 9));
    fs::resize_file(dir / "d.rtfx", fs::file_size(dir / "d.rtfx") - 2);
    EXPECT_THROW(load_features(dir / "d.rtfx"), FormatError);
    std::ofstream(dir / "e.rtfx", std::ios::binary) << "RTFY";
    EXPECT_THROW(load_features(dir / "e.rtfx"), FormatError);
}

TEST(FeatureSetTest, DuplicateEntriesRejected) {
    FeatureSet s;
    s.dim = 1;
    s.entries = {{0, "D65", 0, {1}}, {0, "D65", 0, {2}}};
    EXPECT_THROW(s.finalize(), InvalidInput);
}

TEST(FeatureSetTest, CanonicalOrder) {
    FeatureSet s;
    s.dim = 1;
    s.entries = {{1, "I100", 0, {1}}, {0, "L27", 3, {2}}, {0, "I75", 1, {3}}, {0, "I75", 0, {4}}};
    s.finalize();
    EXPECT_EQ(s.entries[0].values[0], 4.0f);
    EXPECT_EQ(s.entries[1].values[0], 3.0f);
    EXPECT_EQ(s.entries[2].values[0], 2.0f);
    EXPECT_EQ(s.entries[3].values[0], 1.0f);
    EXPECT_EQ(s.find(0, "L27", 3)->values[0], 2.0f);
    EXPECT_EQ(s.find(0, "L27", 4), nullptr);
}

// --- extraction pipeline ---

light::CorpusOptions small_corpus(std::vector<std::string> conds) {
    light::CorpusOptions o;
    o.classes = 2;
    o.seed = 5;
    o.conditions = std::move(conds);
    o.render.encode_srgb8 = false;
    return o;
}

TEST(Extract, MatchesDirectDescriptorCalls) {
    light::SyntheticCorpus corpus(small_corpus({"D65", "I50"}));
    std::size_t calls = 0;
    ExtractOptions o;
    o.progress = [&](std::size_t done, std::size_t total) {
        ++calls;
        EXPECT_EQ(total, 4u);
        EXPECT_EQ(done, calls);
    };
    const auto sets = extract_features(corpus, {"hist-l", "hist-chrom-rgb"}, "none", o);
    ASSERT_EQ(sets.size(), 2u);
    EXPECT_EQ(sets[0].entries.size(), 2u * 2 * 16);
    EXPECT_EQ(sets[1].dim, 768u);
    const auto tiles = extract_patches(corpus.image(1, "I50"), 1, "I50");
    for (const auto& t : tiles) {
        EXPECT_EQ(sets[1].find(1, "I50", t.grid_pos.index())->values,
                  desc::extract("hist-chrom-rgb", t.image).values);
    }
    EXPECT_THROW(extract_features(corpus, {"nope"}, "none"), InvalidInput);
    EXPECT_THROW(extract_features(corpus, {"hist-l"}, "nope"), InvalidInput);
    EXPECT_THROW(extract_features(corpus, {"bovw"}, "none"), InvalidInput);
}

TEST(Extract, ChromaticityHistogramIntensityInvariance) {
    light::SyntheticCorpus corpus(small_corpus({"I100", "I75", "I50", "I25"}));
    const auto fs = extract_features(corpus, {"hist-chrom-rgb"}, "none")[0];
    for (const auto& e : fs.entries) {
        ASSERT_EQ(e.values, fs.find(e.class_id, "I100", e.grid_pos)->values) << e.condition;
    }
}

TEST(Extract, SeparableCorpusNoVariations) {
    light::SyntheticCorpus corpus(light::CorpusOptions{});
    const auto fs = extract_features(corpus, {"hist-rgb"}, "none")[0];
    const auto suites = build_tasks();
    const auto r = evaluate(fs, find_task(suites, "no-variations"));
    EXPECT_EQ(r.subsets.size(), 46u);
    EXPECT_GE(r.avg, 0.95);
}

TEST(Extract, NormalizerIsApplied) {
    light::SyntheticCorpus corpus(small_corpus({"D40", "D95"}));
    const auto raw = extract_features(corpus, {"hist-rgb"}, "none")[0];
    const auto gw = extract_features(corpus, {"hist-rgb"}, "gray-world")[0];
    EXPECT_EQ(gw.normalizer, "gray-world");
    EXPECT_NE(raw.find(0, "D40", 0)->values, gw.find(0, "D40", 0)->values);
}

TEST(Extract, CodebookDescriptors) {
    light::SyntheticCorpus corpus(small_corpus({"D65"}));
    CodebookTraining t;
    t.classes = 1;
    t.conditions = {"D65"};
    t.patches_per_image = 1;
    t.samples = 400;
    t.bovw_k = 8;
    t.vlad_k = 4;
    t.fv_k = 3;
    t.kmeans.max_iterations = 5;
    t.gmm.max_iterations = 5;
    const auto rows = training_descriptors(t, {});
    ASSERT_EQ(rows.size(), 400u);
    EXPECT_EQ(rows.dim, 128);
    EXPECT_EQ(rows.data, training_descriptors(t, {}).data);
    const auto books = train_codebooks(rows, t);
    ExtractOptions o;
    o.bovw = &books.bovw;
    o.vlad = &books.vlad;
    o.fv = &books.fv;
    o.sift.scales = 2;
    const auto sets = extract_features(corpus, {"bovw", "vlad", "fv", "hist-l"}, "none", o);
    EXPECT_EQ(sets[0].dim, 8u);
    EXPECT_EQ(sets[1].dim, 4u * 128);
    EXPECT_EQ(sets[2].dim, 3u * 256);
    EXPECT_EQ(sets[3].dim, 256u);
    EXPECT_EQ(sets[0].entries.size(), 32u);
}

// --- config ---

TEST(ConfigTest, RoundTrip) {
    Config c;
    c.classes = 5;
    c.seed = 99;
    c.normalizer.edge_p = INFINITY;
    c.descriptors.granulometry_sizes = {3, 9};
    c.render.leds["L27"] = {0.46, 0.41};
    c.codebook.conditions = {"D65"};
    const std::string text = config_to_json(c);
    const Config back = config_from_json(text);
    EXPECT_EQ(back.classes, 5);
    EXPECT_EQ(back.seed, 99u);
    EXPECT_TRUE(std::isinf(back.normalizer.edge_p));
    EXPECT_EQ(back.descriptors.granulometry_sizes, (std::vector<int>{3, 9}));
    EXPECT_DOUBLE_EQ(back.render.leds.at("L27").x, 0.46);
    EXPECT_EQ(config_to_json(back), text);
}

TEST(ConfigTest, PartialAndInvalid) {
    const Config c = config_from_json(R"({"corpus": {"classes": 3}, "sift": {"stride": 4}})");
    EXPECT_EQ(c.classes, 3);
    EXPECT_EQ(c.sift.stride, 4);
    EXPECT_EQ(c.sift.bin_size, 6);
    EXPECT_THROW(config_from_json(R"({"corpus": {"clases": 3}})"), FormatError);
    EXPECT_THROW(config_from_json(R"({"corpus": {"classes": "x"}})"), FormatError);
    EXPECT_THROW(config_from_json(R"({"protocol": {"subset_weighting": "by-count"}})"), FormatError);
    EXPECT_THROW(config_from_json("{"), FormatError);
}

} // namespace
} // namespace texbench::bench
