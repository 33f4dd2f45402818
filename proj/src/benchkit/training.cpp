// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <numeric>

#include "texbench/benchkit.hpp"
#include "texbench/error.hpp"
#include "texbench/patches.hpp"
#include "texbench/rng.hpp"
#include "texbench/synth.hpp"

namespace texbench::bench {

cb::LocalDescriptorSet training_descriptors(const CodebookTraining& training, const cb::SiftConfig& sift,
                                            const light::RenderOptions& render) {
    if (training.classes < 1 || training.first_class < 0 || training.conditions.empty() ||
        training.patches_per_image < 1 || training.patches_per_image > kGridSize * kGridSize || training.samples == 0) {
        throw InvalidInput("training_descriptors: invalid configuration");
    }
    std::vector<const light::LightCondition*> conds;
    for (const auto& id : training.conditions) {
        const auto* c = light::find_condition(id);
        if (c == nullptr) {
            throw InvalidInput("training_descriptors: unknown condition " + id);
        }
        conds.push_back(c);
    }
    const std::size_t patches = static_cast<std::size_t>(training.classes) * conds.size() * training.patches_per_image;
    const std::size_t per_patch = (training.samples + patches - 1) / patches;
    const int step = kGridSize * kGridSize / training.patches_per_image;

    Rng rng(training.seed);
    cb::LocalDescriptorSet out;
    for (int k = 0; k < training.classes; ++k) {
        const Image albedo = light::generate_texture(light::corpus_class_spec(training.first_class + k, training.corpus_seed));
        for (const auto* c : conds) {
            const Image img = light::render_condition(albedo, *c, render);
            const auto tiles = extract_patches(img, training.first_class + k, c->id);
            for (int p = 0; p < training.patches_per_image; ++p) {
                const auto local = cb::dense_sift(tiles[static_cast<std::size_t>(p * step)].image, sift);
                std::vector<std::size_t> idx(local.size());
                std::iota(idx.begin(), idx.end(), std::size_t{0});
                const std::size_t m = std::min(per_patch, idx.size());
                for (std::size_t i = 0; i < m; ++i) {
                    std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
                    const auto r = local.row(idx[i]);
                    out.data.insert(out.data.end(), r.begin(), r.end());
                    out.positions.push_back(local.positions[idx[i]]);
                }
            }
        }
    }
    if (out.size() > training.samples) {
        out.data.resize(training.samples * out.dim);
        out.positions.resize(training.samples);
    }
    return out;
}

TrainedCodebooks train_codebooks(const cb::LocalDescriptorSet& rows, const CodebookTraining& training) {
    TrainedCodebooks t;
    t.bovw = cb::kmeans(rows, training.bovw_k, training.seed, training.kmeans).codebook;
    t.vlad = cb::kmeans(rows, training.vlad_k, training.seed + 1, training.kmeans).codebook;
    t.fv = cb::gmm_em(rows, training.fv_k, training.seed + 2, training.gmm).gmm;
    return t;
}

} // namespace texbench::bench
