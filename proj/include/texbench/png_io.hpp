// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <filesystem>

#include "texbench/image.hpp"

namespace texbench {

/// Reads an 8-bit PNG. Gray files become Gray images, everything else
/// Srgb8 RGB (alpha is composited away by libpng). Byte v maps to v/255.
/// Throws IoError on unreadable files and InvalidInput on 16-bit data.
Image read_png(const std::filesystem::path& path);

/// Writes a Gray or Srgb8 image as 8-bit PNG (samples quantised with
/// round(v*255)).
void write_png(const std::filesystem::path& path, const Image& img);

} // namespace texbench
