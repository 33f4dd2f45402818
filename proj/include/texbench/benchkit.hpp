// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "texbench/chromanorm.hpp"
#include "texbench/codebook.hpp"
#include "texbench/dataset.hpp"
#include "texbench/descriptors.hpp"
#include "texbench/light.hpp"

namespace texbench::bench {

// Tasks

/// no-variations, intensity, direction, daylight, led, daylight-vs-led,
/// temp-or-direction, temp-and-direction, multi-illuminant.
const std::vector<std::string>& task_names();
std::size_t task_index(std::string_view name); ///< InvalidInput when unknown

struct Subset {
    int id = 0;
    std::string train;
    std::string test;
};

struct TaskSuite {
    std::string name;
    std::vector<Subset> subsets;
};

/// The nine suites, in task_names() order. Throws InvalidInput listing the
/// missing ids when the catalog lacks a condition a suite needs.
std::vector<TaskSuite> build_tasks(const std::vector<light::LightCondition>& catalog = light::condition_catalog());
const TaskSuite& find_task(const std::vector<TaskSuite>& suites, std::string_view name);

// Classification

/// sum |x_i - y_i|. Throws InvalidInput on a dimension mismatch.
double l1(std::span<const float> x, std::span<const float> y);

/// Row-major matrix of feature vectors.
struct FeatureMatrix {
    std::size_t dim = 0;
    std::vector<float> data;

    std::size_t rows() const { return dim > 0 ? data.size() / dim : 0; }
    std::span<const float> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
    void push(std::span<const float> v);
};

/// Label of the L1-nearest training row for each test row; ties go to the
/// lowest training index. The classifier sees only vectors and labels.
std::vector<int> classify_1nn(const FeatureMatrix& train, const std::vector<int>& labels, const FeatureMatrix& test);

// Features

struct FeatureEntry {
    int class_id = 0;
    std::string condition;
    int grid_pos = 0; ///< row * 4 + col
    std::vector<float> values;
};

/// Features of one descriptor over a dataset, ordered by class, catalog
/// position of the condition, then grid position.
struct FeatureSet {
    std::string descriptor;
    std::string normalizer = "none";
    std::uint32_t dim = 0;
    std::vector<FeatureEntry> entries;

    /// nullptr when absent.
    const FeatureEntry* find(int class_id, const std::string& condition, int grid_pos) const;
    std::vector<int> classes() const;
    /// Sorts entries into the canonical order and rebuilds the index.
    void finalize();

private:
    std::map<std::tuple<int, std::string, int>, std::size_t> index_;
};

/// RTFX cache: magic, u16 version, descriptor and normalizer names (u16
/// length + UTF-8), u32 dim, u32 count, then per entry u16 class, condition
/// string, u8 grid position and dim little-endian f32.
void save_features(const std::filesystem::path& path, const FeatureSet& set);
FeatureSet load_features(const std::filesystem::path& path);
void write_features(std::ostream& out, const FeatureSet& set);
FeatureSet read_features(std::istream& in, const std::string& what = "feature cache");

/// Texture descriptors plus bovw, vlad and fv.
const std::vector<std::string>& all_descriptor_names();
bool is_codebook_descriptor(std::string_view name);

struct ExtractOptions {
    desc::DescriptorConfig descriptors;
    norm::NormalizerConfig normalizer;
    cb::SiftConfig sift;
    const cb::Codebook* bovw = nullptr;
    const cb::Codebook* vlad = nullptr;
    const cb::Gmm* fv = nullptr;
    /// Restrict to these conditions; empty means all of the source.
    std::vector<std::string> conditions;
    /// Called after each image with (done, total).
    std::function<void(std::size_t, std::size_t)> progress;
};

/// Normalizes every image, cuts its 16 patches and extracts each named
/// descriptor. Output order follows `descriptors`.
std::vector<FeatureSet> extract_features(const light::ImageSource& source, const std::vector<std::string>& descriptors,
                                         const std::string& normalizer, const ExtractOptions& options = {});

// Evaluation

/// One line of the long-form results CSV.
struct SubsetResult {
    int subset_id = 0;
    std::string train;
    std::string test;
    int n_test = 0;
    int correct = 0;
    double accuracy = 0.0;
};

struct EvalResult {
    std::string descriptor;
    std::string normalizer;
    std::string task;
    std::vector<SubsetResult> subsets;
    double avg = 0.0; ///< subsets weighted equally
    double min = 0.0;
    /// class id -> (correct, total) over all subsets.
    std::map<int, std::pair<int, int>> per_class;

    /// Recomputes avg and min from subsets.
    void aggregate();
};

struct EvalOptions {
    /// Test on the training patches (self-match diagnostic).
    bool same_patches = false;
};

/// Per subset: train rows are the 8 chessboard-train patches of every class
/// under the train condition, test rows the 8 test patches under the test
/// condition. Throws InvalidInput naming missing entries.
EvalResult evaluate(const FeatureSet& features, const TaskSuite& suite, const EvalOptions& options = {});

struct DeltaPoint {
    double delta = 0.0;
    double accuracy = 0.0; ///< mean over the subsets in the bucket
    int subsets = 0;
};

/// Accuracy grouped by |train - test| of the task parameter: intensity
/// (percentage points), daylight (kelvin) or direction (degrees).
std::vector<DeltaPoint> delta_curves(const EvalResult& result);

// Reports

/// Long-form CSV: descriptor, normalizer, task, subset_id, train_cond,
/// test_cond, n_test, accuracy. Rows sorted by descriptor, normalizer, task
/// order, subset id.
void write_results_csv(std::ostream& out, std::vector<EvalResult> results);
/// Parses write_results_csv output back into grouped results (per_class empty).
std::vector<EvalResult> read_results_csv(std::istream& in);

void write_per_class_csv(std::ostream& out, std::vector<EvalResult> results);

/// "75.00 (50.00)": avg and min in percent.
std::string format_avg_min(double avg, double min);
/// Pivot with one row per descriptor/normalizer and one column per task.
std::string summary_table(const std::vector<EvalResult>& results);
/// descriptor, normalizer, task, subsets, avg, min (percent, 2 decimals).
std::string summary_csv(const std::vector<EvalResult>& results);

// Codebook training

struct CodebookTraining {
    /// Held-out classes use ids [first_class, first_class + classes), disjoint
    /// from the evaluation corpus, generated with their own seed.
    int first_class = 12;
    int classes = 8;
    std::uint64_t corpus_seed = 7919;
    std::vector<std::string> conditions{"D65", "I50", "DIR42", "L40"};
    int patches_per_image = 2;
    std::size_t samples = 25000;
    std::uint64_t seed = 1;
    int bovw_k = 1024;
    int vlad_k = 200;
    int fv_k = 160;
    cb::KmeansConfig kmeans;
    cb::GmmConfig gmm;
};

/// Dense SIFT rows sampled without replacement from the held-out corpus.
cb::LocalDescriptorSet training_descriptors(const CodebookTraining& training, const cb::SiftConfig& sift,
                                            const light::RenderOptions& render = {});

struct TrainedCodebooks {
    cb::Codebook bovw;
    cb::Codebook vlad;
    cb::Gmm fv;
};

TrainedCodebooks train_codebooks(const cb::LocalDescriptorSet& rows, const CodebookTraining& training);

} // namespace texbench::bench
