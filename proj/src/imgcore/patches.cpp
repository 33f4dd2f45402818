// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include "texbench/patches.hpp"

#include <array>

#include "texbench/error.hpp"

namespace texbench {

std::vector<Patch> extract_patches(const Image& img, int class_id, const std::string& condition) {
    if (img.width() != kImageSize || img.height() != kImageSize) {
        throw InvalidInput("extract_patches: expected an 800x800 image, got " + std::to_string(img.width()) +
                           "x" + std::to_string(img.height()));
    }
    std::vector<Patch> patches;
    patches.reserve(kGridSize * kGridSize);
    for (int r = 0; r < kGridSize; ++r) {
        for (int c = 0; c < kGridSize; ++c) {
            patches.push_back(Patch{img.crop(c * kPatchSize, r * kPatchSize, kPatchSize, kPatchSize), class_id,
                                    condition, GridPos{r, c}});
        }
    }
    return patches;
}

std::pair<std::vector<Patch>, std::vector<Patch>> chessboard_split(std::vector<Patch> patches) {
    if (patches.size() != kGridSize * kGridSize) {
        throw InvalidInput("chessboard_split: expected 16 patches, got " + std::to_string(patches.size()));
    }
    std::array<bool, kGridSize * kGridSize> seen{};
    for (const Patch& p : patches) {
        const GridPos g = p.grid_pos;
        if (g.row < 0 || g.row >= kGridSize || g.col < 0 || g.col >= kGridSize) {
            throw InvalidInput("chessboard_split: grid position out of range");
        }
        if (seen[g.index()]) {
            throw InvalidInput("chessboard_split: duplicate grid position (" + std::to_string(g.row) + "," +
                               std::to_string(g.col) + ")");
        }
        seen[g.index()] = true;
    }
    std::vector<Patch> train;
    std::vector<Patch> test;
    for (Patch& p : patches) {
        (p.grid_pos.is_train() ? train : test).push_back(std::move(p));
    }
    return {std::move(train), std::move(test)};
}

} // namespace texbench
