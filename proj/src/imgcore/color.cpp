// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include "texbench/color.hpp"

#include <vector>

#include "texbench/error.hpp"

namespace texbench {
namespace {

Mat3 invert(const Mat3& m) {
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    Mat3 r{};
    r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return r;
}

void require_rgb(const Image& img, const char* what) {
    if (img.channels() != 3) {
        throw InvalidInput(std::string(what) + ": expected a 3-channel image");
    }
    if (img.space() != ColorSpace::Srgb8 && img.space() != ColorSpace::LinearRgb) {
        throw InvalidInput(std::string(what) + ": expected Srgb8 or LinearRgb input, got " +
                           std::string(color_space_name(img.space())));
    }
}

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

} // namespace

const Mat3& srgb_to_xyz_matrix() {
    static const Mat3 m{{{0.4124, 0.3576, 0.1805}, {0.2126, 0.7152, 0.0722}, {0.0193, 0.1192, 0.9505}}};
    return m;
}

const Mat3& xyz_to_srgb_matrix() {
    static const Mat3 m = invert(srgb_to_xyz_matrix());
    return m;
}

Rgb apply(const Mat3& m, const Rgb& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

double srgb_decode(double v) {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double srgb_encode(double v) {
    v = std::clamp(v, 0.0, 1.0);
    return v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

int encode_srgb8(double linear) {
    // thresholds[k] is the linear value where the code switches from k to k+1.
    static const std::array<double, 255> thresholds = [] {
        std::array<double, 255> t{};
        for (int k = 0; k < 255; ++k) {
            t[k] = srgb_decode((k + 0.5) / 255.0);
        }
        return t;
    }();
    return static_cast<int>(std::upper_bound(thresholds.begin(), thresholds.end(), linear) - thresholds.begin());
}

Rgb rgb_to_hsv(const Rgb& c) {
    const double mx = std::max({c[0], c[1], c[2]});
    const double mn = std::min({c[0], c[1], c[2]});
    const double delta = mx - mn;
    double h = 0.0;
    if (delta > 0.0) {
        if (mx == c[0]) {
            h = (c[1] - c[2]) / delta;
        } else if (mx == c[1]) {
            h = 2.0 + (c[2] - c[0]) / delta;
        } else {
            h = 4.0 + (c[0] - c[1]) / delta;
        }
        h /= 6.0;
        if (h < 0.0) {
            h += 1.0;
        }
        if (h >= 1.0) {
            h -= 1.0;
        }
    }
    const double s = mx > 0.0 ? delta / mx : 0.0;
    return {h, s, mx};
}

Rgb linear_rgb_to_lab(const Rgb& linear) {
    static const Rgb white = apply(srgb_to_xyz_matrix(), {1.0, 1.0, 1.0});
    const Rgb xyz = apply(srgb_to_xyz_matrix(), linear);
    const double fx = lab_f(xyz[0] / white[0]);
    const double fy = lab_f(xyz[1] / white[1]);
    const double fz = lab_f(xyz[2] / white[2]);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Image to_grayscale(const Image& img) {
    require_rgb(img, "to_grayscale");
    Image out(img.width(), img.height(), 1, ColorSpace::Gray);
    const auto src = img.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const double l = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
        dst[i] = static_cast<float>(std::clamp(l, 0.0, 1.0));
    }
    return out;
}

Image convert(const Image& img, ColorSpace target) {
    require_rgb(img, "convert");
    const bool decode = img.space() == ColorSpace::Srgb8;
    const std::size_t n = img.pixel_count();
    const auto src = img.data();
    std::vector<float> out(n * 3);
    for (std::size_t i = 0; i < n; ++i) {
        const Rgb c{src[3 * i], src[3 * i + 1], src[3 * i + 2]};
        Rgb r{};
        switch (target) {
        case ColorSpace::Hsv:
            r = rgb_to_hsv(c);
            break;
        case ColorSpace::Lab:
            r = linear_rgb_to_lab(decode ? Rgb{srgb_decode(c[0]), srgb_decode(c[1]), srgb_decode(c[2])} : c);
            break;
        case ColorSpace::Ohta:
            r = {(c[0] + c[1] + c[2]) / 3.0, (c[0] - c[2]) / 2.0 + 0.5, (2.0 * c[1] - c[0] - c[2]) / 4.0 + 0.5};
            break;
        case ColorSpace::ChromaticityRgb: {
            const double s = c[0] + c[1] + c[2];
            if (s > 0.0) {
                r = {c[0] / s, c[1] / s, c[2] / s};
            } else {
                r = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
            }
            break;
        }
        default:
            throw InvalidInput("convert: unsupported target " + std::string(color_space_name(target)));
        }
        for (int k = 0; k < 3; ++k) {
            out[3 * i + k] = static_cast<float>(r[k]);
        }
    }
    return Image(img.width(), img.height(), 3, target, std::move(out));
}

Image to_linear(const Image& img) {
    if (img.space() == ColorSpace::LinearRgb) {
        return img;
    }
    require_rgb(img, "to_linear");
    static const std::array<float, 256> lut = [] {
        std::array<float, 256> t{};
        for (int k = 0; k < 256; ++k) {
            t[k] = static_cast<float>(srgb_decode(k / 255.0));
        }
        return t;
    }();
    std::vector<float> out(img.data().begin(), img.data().end());
    for (float& v : out) {
        v = lut[quantize8(v)];
    }
    return Image(img.width(), img.height(), 3, ColorSpace::LinearRgb, std::move(out));
}

Image to_srgb8(const Image& img) {
    if (img.space() == ColorSpace::Srgb8) {
        return img;
    }
    require_rgb(img, "to_srgb8");
    std::vector<float> out(img.data().begin(), img.data().end());
    for (float& v : out) {
        v = static_cast<float>(encode_srgb8(v) / 255.0);
    }
    return Image(img.width(), img.height(), 3, ColorSpace::Srgb8, std::move(out));
}

} // namespace texbench
