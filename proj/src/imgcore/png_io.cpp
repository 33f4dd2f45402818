// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include "texbench/png_io.hpp"

#include <png.h>

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "texbench/color.hpp"
#include "texbench/error.hpp"

namespace texbench {

Image read_png(const std::filesystem::path& path) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        throw IoError("read_png: " + path.string() + ": " + png.message);
    }
    if (png.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&png);
        throw InvalidInput("read_png: " + path.string() + ": only 8-bit images are supported");
    }
    const bool gray = (png.format & PNG_FORMAT_FLAG_COLOR) == 0;
    png.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    const int channels = gray ? 1 : 3;
    std::vector<std::uint8_t> bytes(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, bytes.data(), 0, nullptr)) {
        throw IoError("read_png: " + path.string() + ": " + png.message);
    }
    std::vector<float> data(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        data[i] = static_cast<float>(bytes[i] / 255.0);
    }
    return Image(static_cast<int>(png.width), static_cast<int>(png.height), channels,
                 gray ? ColorSpace::Gray : ColorSpace::Srgb8, std::move(data));
}

void write_png(const std::filesystem::path& path, const Image& img) {
    const bool gray = img.channels() == 1;
    if (gray ? img.space() != ColorSpace::Gray : img.space() != ColorSpace::Srgb8) {
        throw InvalidInput("write_png: expected a Gray or Srgb8 image, got " +
                           std::string(color_space_name(img.space())));
    }
    std::vector<std::uint8_t> bytes(img.data().size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        bytes[i] = static_cast<std::uint8_t>(quantize8(img.data()[i]));
    }
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(img.width());
    png.height = static_cast<png_uint_32>(img.height());
    png.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    png.flags = PNG_IMAGE_FLAG_FAST;
    if (!png_image_write_to_file(&png, path.c_str(), 0, bytes.data(), 0, nullptr)) {
        throw IoError("write_png: " + path.string() + ": " + png.message);
    }
}

} // namespace texbench
