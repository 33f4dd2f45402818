// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include "texbench/image.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "texbench/error.hpp"

namespace texbench {

std::string_view color_space_name(ColorSpace space) {
    switch (space) {
    case ColorSpace::Srgb8:
        return "srgb8";
    case ColorSpace::LinearRgb:
        return "linear-rgb";
    case ColorSpace::Gray:
        return "gray";
    case ColorSpace::Hsv:
        return "hsv";
    case ColorSpace::Lab:
        return "lab";
    case ColorSpace::Ohta:
        return "ohta";
    case ColorSpace::ChromaticityRgb:
        return "chromaticity-rgb";
    }
    return "unknown";
}

Image::Image(int width, int height, int channels, ColorSpace space)
    : width_(width), height_(height), channels_(channels), space_(space) {
    if (width < 0 || height < 0 || (channels != 1 && channels != 3)) {
        throw InvalidInput("image: bad geometry " + std::to_string(width) + "x" +
                           std::to_string(height) + "x" + std::to_string(channels));
    }
    data_.assign(static_cast<std::size_t>(width) * height * channels, 0.0f);
}

Image::Image(int width, int height, int channels, ColorSpace space, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), space_(space), data_(std::move(data)) {
    if (width < 0 || height < 0 || (channels != 1 && channels != 3)) {
        throw InvalidInput("image: bad geometry");
    }
    if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
        throw InvalidInput("image: data length " + std::to_string(data_.size()) +
                           " does not match geometry");
    }
    validate();
}

void Image::validate() const {
    switch (space_) {
    case ColorSpace::Srgb8:
    case ColorSpace::LinearRgb:
    case ColorSpace::Gray:
        for (float v : data_) {
            if (!(v >= 0.0f && v <= 1.0f)) {
                throw InvalidInput("image: sample " + std::to_string(v) + " outside [0,1] for " +
                                   std::string(color_space_name(space_)));
            }
        }
        break;
    case ColorSpace::ChromaticityRgb:
        if (channels_ != 3) {
            throw InvalidInput("image: chromaticity needs 3 channels");
        }
        for (std::size_t i = 0; i < data_.size(); i += 3) {
            const double s = static_cast<double>(data_[i]) + data_[i + 1] + data_[i + 2];
            if (std::fabs(s - 1.0) > 1e-6) {
                throw InvalidInput("image: chromaticity triple does not sum to 1");
            }
        }
        break;
    default:
        for (float v : data_) {
            if (!std::isfinite(v)) {
                throw InvalidInput("image: non-finite sample");
            }
        }
        break;
    }
}

Image Image::channel(int c, ColorSpace space) const {
    if (c < 0 || c >= channels_) {
        throw InvalidInput("image: channel index out of range");
    }
    Image out(width_, height_, 1, space);
    const std::size_t n = pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        out.data_[i] = data_[i * channels_ + c];
    }
    return out;
}

Image Image::crop(int x0, int y0, int w, int h) const {
    if (x0 < 0 || y0 < 0 || w < 0 || h < 0 || x0 + w > width_ || y0 + h > height_) {
        throw InvalidInput("image: crop rectangle outside image");
    }
    Image out(w, h, channels_, space_);
    const std::size_t row = static_cast<std::size_t>(w) * channels_;
    for (int y = 0; y < h; ++y) {
        const float* src = data_.data() + index(x0, y0 + y, 0);
        std::copy(src, src + row, out.data_.data() + y * row);
    }
    return out;
}

Image Image::with_space(ColorSpace space) const& {
    Image out = *this;
    out.space_ = space;
    return out;
}

Image Image::with_space(ColorSpace space) && {
    space_ = space;
    return std::move(*this);
}

std::vector<double> to_planar(const Image& img) {
    const std::size_t n = img.pixel_count();
    const int ch = img.channels();
    std::vector<double> out(n * ch);
    const auto src = img.data();
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < ch; ++c) {
            out[c * n + i] = src[i * ch + c];
        }
    }
    return out;
}

} // namespace texbench
