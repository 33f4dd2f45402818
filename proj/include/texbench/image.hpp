// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace texbench {

/// Colour space tag carried by every image.
///
/// Srgb8, LinearRgb and Gray hold samples in [0,1] (8-bit data stored as
/// v/255). The derived spaces use their native ranges:
///   Hsv              H in [0,1) (wrapped), S and V in [0,1]
///   Lab              L* in [0,100], a* and b* unbounded (D65 white)
///   Ohta             I1 in [0,1], I2 and I3 offset by 0.5 into [0,1]
///   ChromaticityRgb  (r,g,b) summing to 1
enum class ColorSpace { Srgb8, LinearRgb, Gray, Hsv, Lab, Ohta, ChromaticityRgb };

std::string_view color_space_name(ColorSpace space);

/// Row-major, channel-interleaved raster.
class Image {
public:
    Image() = default;

    /// Zero-filled image.
    Image(int width, int height, int channels, ColorSpace space);

    /// Takes ownership of `data`; validates length and the range
    /// invariants of `space` (throws InvalidInput).
    Image(int width, int height, int channels, ColorSpace space, std::vector<float> data);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    ColorSpace space() const { return space_; }
    bool empty() const { return data_.empty(); }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

    std::span<const float> data() const { return data_; }
    std::span<float> data() { return data_; }

    float at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }
    float& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }

    /// Copy of one channel as a single-channel image tagged `space`.
    Image channel(int c, ColorSpace space) const;

    /// Copy of the rectangle [x0, x0+w) x [y0, y0+h).
    Image crop(int x0, int y0, int w, int h) const;

    /// Retag without touching samples; used by the normalizers when the
    /// numeric convention of the data is already that of `space`.
    Image with_space(ColorSpace space) const&;
    Image with_space(ColorSpace space) &&;

    /// Throws InvalidInput if the range invariants of the tag do not hold.
    void validate() const;

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    ColorSpace space_ = ColorSpace::Gray;
    std::vector<float> data_;
};

/// Channel-planar copy in double precision; plane c occupies
/// [c*w*h, (c+1)*w*h).
std::vector<double> to_planar(const Image& img);

} // namespace texbench
