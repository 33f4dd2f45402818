// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>

#include "texbench/benchkit.hpp"
#include "texbench/error.hpp"
#include "texbench/kernels.hpp"
#include "texbench/patches.hpp"

namespace texbench::bench {

double l1(std::span<const float> x, std::span<const float> y) {
    if (x.size() != y.size()) {
        throw InvalidInput("l1: dimension mismatch");
    }
    return simd::l1(x, y);
}

void FeatureMatrix::push(std::span<const float> v) {
    if (dim == 0 && data.empty()) {
        dim = v.size();
    }
    if (v.size() != dim) {
        throw InvalidInput("FeatureMatrix: dimension mismatch");
    }
    data.insert(data.end(), v.begin(), v.end());
}

std::vector<int> classify_1nn(const FeatureMatrix& train, const std::vector<int>& labels, const FeatureMatrix& test) {
    if (train.rows() == 0) {
        throw InvalidInput("classify_1nn: empty training set");
    }
    if (labels.size() != train.rows()) {
        throw InvalidInput("classify_1nn: one label per training row required");
    }
    if (test.rows() > 0 && test.dim != train.dim) {
        throw InvalidInput("classify_1nn: dimension mismatch");
    }
    const auto& k = simd::active_kernels();
    std::vector<int> out(test.rows());
    for (std::size_t i = 0; i < test.rows(); ++i) {
        out[i] = labels[k.nearest_l1(test.row(i).data(), train.data.data(), train.rows(), train.dim).index];
    }
    return out;
}

void EvalResult::aggregate() {
    if (subsets.empty()) {
        avg = min = 0.0;
        return;
    }
    double sum = 0.0;
    min = 1.0;
    for (const auto& s : subsets) {
        sum += s.accuracy;
        min = std::min(min, s.accuracy);
    }
    avg = sum / static_cast<double>(subsets.size());
}

EvalResult evaluate(const FeatureSet& features, const TaskSuite& suite, const EvalOptions& options) {
    const std::vector<int> classes = features.classes();
    if (classes.empty()) {
        throw InvalidInput("evaluate: no features");
    }
    std::vector<int> train_pos;
    std::vector<int> test_pos;
    for (int r = 0; r < kGridSize; ++r) {
        for (int c = 0; c < kGridSize; ++c) {
            const GridPos g{r, c};
            (g.is_train() ? train_pos : test_pos).push_back(g.index());
        }
    }
    if (options.same_patches) {
        test_pos = train_pos;
    }

    // report every missing entry at once
    std::string missing;
    std::size_t missing_count = 0;
    auto need = [&](int cls, const std::string& cond, int pos) -> const FeatureEntry* {
        const FeatureEntry* e = features.find(cls, cond, pos);
        if (e == nullptr) {
            if (++missing_count <= 20) {
                missing += "\n  class " + std::to_string(cls) + " " + cond + " patch " + std::to_string(pos);
            }
        }
        return e;
    };

    EvalResult res;
    res.descriptor = features.descriptor;
    res.normalizer = features.normalizer;
    res.task = suite.name;
    for (const Subset& sub : suite.subsets) {
        FeatureMatrix train;
        FeatureMatrix test;
        train.dim = test.dim = features.dim;
        std::vector<int> labels;
        std::vector<int> truth;
        for (int cls : classes) {
            for (int p : train_pos) {
                if (const auto* e = need(cls, sub.train, p)) {
                    train.push(e->values);
                    labels.push_back(cls);
                }
            }
            for (int p : test_pos) {
                if (const auto* e = need(cls, sub.test, p)) {
                    test.push(e->values);
                    truth.push_back(cls);
                }
            }
        }
        if (missing_count > 0) {
            continue;
        }
        const std::vector<int> pred = classify_1nn(train, labels, test);
        SubsetResult sr;
        sr.subset_id = sub.id;
        sr.train = sub.train;
        sr.test = sub.test;
        sr.n_test = static_cast<int>(pred.size());
        for (std::size_t i = 0; i < pred.size(); ++i) {
            const bool ok = pred[i] == truth[i];
            sr.correct += ok ? 1 : 0;
            auto& pc = res.per_class[truth[i]];
            pc.first += ok ? 1 : 0;
            pc.second += 1;
        }
        sr.accuracy = static_cast<double>(sr.correct) / static_cast<double>(sr.n_test);
        res.subsets.push_back(sr);
    }
    if (missing_count > 0) {
        throw InvalidInput("evaluate: " + std::to_string(missing_count) + " missing feature entries for " +
                           features.descriptor + ":" + missing + (missing_count > 20 ? "\n  ..." : ""));
    }
    res.aggregate();
    return res;
}

std::vector<DeltaPoint> delta_curves(const EvalResult& result) {
    enum { Intensity, Daylight, Direction } which;
    if (result.task == "intensity") {
        which = Intensity;
    } else if (result.task == "daylight") {
        which = Daylight;
    } else if (result.task == "direction") {
        which = Direction;
    } else {
        throw InvalidInput("delta_curves: task " + result.task + " has no scalar parameter");
    }
    std::map<long, std::pair<double, int>> buckets;
    for (const auto& s : result.subsets) {
        const auto* a = light::find_condition(s.train);
        const auto* b = light::find_condition(s.test);
        if (a == nullptr || b == nullptr) {
            throw InvalidInput("delta_curves: unknown condition in subset " + std::to_string(s.subset_id));
        }
        double d = 0.0;
        switch (which) {
        case Intensity:
            d = 100.0 * std::abs(a->intensity - b->intensity);
            break;
        case Daylight:
            d = std::abs(a->cct - b->cct);
            break;
        case Direction:
            d = std::abs(a->theta - b->theta);
            break;
        }
        auto& bucket = buckets[std::lround(d)];
        bucket.first += s.accuracy;
        bucket.second += 1;
    }
    std::vector<DeltaPoint> out;
    for (const auto& [d, b] : buckets) {
        out.push_back({static_cast<double>(d), b.first / b.second, b.second});
    }
    return out;
}

} // namespace texbench::bench
