// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "texbench/image.hpp"

namespace texbench {

inline constexpr int kImageSize = 800;
inline constexpr int kPatchSize = 200;
inline constexpr int kGridSize = 4;

struct GridPos {
    int row = 0;
    int col = 0;

    int index() const { return row * kGridSize + col; }
    /// Train patches sit on the even squares of the chessboard.
    bool is_train() const { return (row + col) % 2 == 0; }

    friend bool operator==(const GridPos&, const GridPos&) = default;
};

/// One 200x200 tile of an 800x800 texture image.
struct Patch {
    Image image;
    int class_id = 0;
    std::string condition; ///< stable light-condition id
    GridPos grid_pos;
};

/// Splits an 800x800 image into its 4x4 grid of 200x200 tiles, row-major.
/// Throws InvalidInput for any other size.
std::vector<Patch> extract_patches(const Image& img, int class_id, const std::string& condition);

/// Chessboard partition: (row+col) even goes to train, odd to test.
/// Requires 16 patches with distinct grid positions (InvalidInput otherwise).
std::pair<std::vector<Patch>, std::vector<Patch>> chessboard_split(std::vector<Patch> patches);

} // namespace texbench
