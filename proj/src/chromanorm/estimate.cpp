// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>
#include <limits>
#include <numbers>

#include "texbench/chromanorm.hpp"
#include "texbench/error.hpp"
#include "texbench/filter.hpp"

namespace texbench::norm {
namespace {

void require_rgb(const Image& img, const char* what) {
    if (img.channels() != 3) {
        throw InvalidInput(std::string(what) + ": expected a 3-channel image");
    }
}

Plane channel_plane(const Image& img, int c) {
    Plane p(img.width(), img.height());
    const auto d = img.data();
    for (std::size_t i = 0; i < p.data.size(); ++i) {
        p.data[i] = d[3 * i + c];
    }
    return p;
}

// Derivative components whose Euclidean norm is the edge magnitude of the
// given order: {f}, {fx, fy} or {fxx, fyy, 2 fxy}.
std::vector<Plane> derivative_components(const Plane& f, int order, double sigma) {
    const auto g0 = gaussian_kernel(sigma, 0);
    switch (order) {
    case 0:
        return {sigma > 0.0 ? convolve_separable(f, g0, g0) : f};
    case 1: {
        const auto g1 = gaussian_kernel(sigma, 1);
        return {convolve_separable(f, g1, g0), convolve_separable(f, g0, g1)};
    }
    case 2: {
        const auto g1 = gaussian_kernel(sigma, 1);
        const auto g2 = gaussian_kernel(sigma, 2);
        Plane fxy = convolve_separable(f, g1, g1);
        for (double& v : fxy.data) {
            v *= 2.0;
        }
        return {convolve_separable(f, g2, g0), convolve_separable(f, g0, g2), std::move(fxy)};
    }
    default:
        throw InvalidInput("edge order must be 0, 1 or 2");
    }
}

double minkowski(const std::vector<double>& values, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values) {
            m = std::max(m, v);
        }
        return m;
    }
    double acc = 0.0;
    for (double v : values) {
        acc += std::pow(v, p);
    }
    return std::pow(acc / static_cast<double>(values.size()), 1.0 / p);
}

void check_params(double p, double sigma) {
    if (!(p >= 1.0)) {
        throw DomainError("Minkowski norm p must be >= 1");
    }
    if (!(sigma >= 0.0)) {
        throw DomainError("sigma must be >= 0");
    }
}

std::vector<double> magnitudes(const std::vector<Plane>& comps) {
    std::vector<double> m(comps[0].data.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        double s = 0.0;
        for (const Plane& c : comps) {
            s += c.data[i] * c.data[i];
        }
        m[i] = std::sqrt(s);
    }
    return m;
}

Rgb channel_energies(const Image& img, int order, double p, double sigma) {
    Rgb e{};
    for (int c = 0; c < 3; ++c) {
        e[c] = minkowski(magnitudes(derivative_components(channel_plane(img, c), order, sigma)), p);
    }
    return e;
}

// Below this a channel carries no signal; filtering a constant image
// leaves rounding residue around 1e-17.
constexpr double kNoSignal = 1e-10;

bool usable(const Rgb& e) {
    for (double v : e) {
        if (!(v > kNoSignal) || !std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

IlluminantEstimate to_estimate(const Rgb& e) {
    if (!usable(e)) {
        return {{1.0 / std::numbers::sqrt3, 1.0 / std::numbers::sqrt3, 1.0 / std::numbers::sqrt3}, true};
    }
    const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    return {{e[0] / n, e[1] / n, e[2] / n}, false};
}

} // namespace

double angular_error_deg(const Rgb& a, const Rgb& b) {
    const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    const double nb = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    return std::acos(std::clamp(dot / (na * nb), -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

IlluminantEstimate estimate_illuminant(const Image& linear, int order, double p, double sigma) {
    require_rgb(linear, "estimate_illuminant");
    check_params(p, sigma);
    return to_estimate(channel_energies(linear, order, p, sigma));
}

Image von_kries(const Image& linear, const Rgb& estimate) {
    require_rgb(linear, "von_kries");
    const auto src = linear.data();
    std::vector<double> out(src.size());
    double mx = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        out[i] = src[i] / estimate[i % 3];
        mx = std::max(mx, out[i]);
    }
    std::vector<float> data(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        data[i] = mx > 0.0 ? static_cast<float>(std::min(out[i] / mx, 1.0)) : 0.0f;
    }
    return Image(linear.width(), linear.height(), 3, linear.space(), std::move(data));
}

Normalized gray_world(const Image& linear) {
    require_rgb(linear, "gray_world");
    const Rgb e = channel_energies(linear, 0, 1.0, 0.0);
    if (!usable(e)) {
        throw DegenerateError("gray_world: a channel has zero mean");
    }
    const IlluminantEstimate est = to_estimate(e);
    return {von_kries(linear, est.rgb), est};
}

Normalized gray_edge(const Image& linear, int order, double p, double sigma) {
    const IlluminantEstimate est = estimate_illuminant(linear, order, p, sigma);
    return {est.fallback ? linear : von_kries(linear, est.rgb), est};
}

Normalized weighted_gray_edge(const Image& linear, const WeightedGrayEdgeOptions& o) {
    require_rgb(linear, "weighted_gray_edge");
    check_params(o.p, o.sigma);
    if (o.iterations < 1) {
        throw DomainError("weighted_gray_edge: iterations must be >= 1");
    }
    std::vector<std::vector<Plane>> comps;
    for (int c = 0; c < 3; ++c) {
        comps.push_back(derivative_components(channel_plane(linear, c), o.order, o.sigma));
    }
    const std::size_t n = comps[0][0].data.size();
    const std::size_t k = comps[0].size();

    Rgb cumulative{1.0, 1.0, 1.0};
    IlluminantEstimate est;
    std::vector<double> mag(n);
    for (int it = 0; it < o.iterations; ++it) {
        Rgb energy{};
        std::vector<double> weighted[3];
        for (auto& w : weighted) {
            w.resize(n);
        }
        for (std::size_t i = 0; i < n; ++i) {
            double proj2 = 0.0;
            double total2 = 0.0;
            double m2[3] = {0.0, 0.0, 0.0};
            for (std::size_t j = 0; j < k; ++j) {
                double dot = 0.0;
                for (int c = 0; c < 3; ++c) {
                    const double d = comps[c][j].data[i] / cumulative[c];
                    dot += d;
                    m2[c] += d * d;
                }
                proj2 += dot * dot / 3.0;
            }
            total2 = m2[0] + m2[1] + m2[2];
            const double ratio = total2 > 0.0 ? std::sqrt(std::min(proj2 / total2, 1.0)) : 0.0;
            const double w = std::pow(ratio, o.kappa);
            for (int c = 0; c < 3; ++c) {
                weighted[c][i] = w * std::sqrt(m2[c]);
            }
        }
        for (int c = 0; c < 3; ++c) {
            energy[c] = minkowski(weighted[c], o.p);
        }
        if (it == 0) {
            est = to_estimate(energy);
            if (est.fallback) {
                return {linear, est};
            }
            cumulative = est.rgb;
            continue;
        }
        const IlluminantEstimate next =
            to_estimate({cumulative[0] * energy[0], cumulative[1] * energy[1], cumulative[2] * energy[2]});
        if (next.fallback) {
            break;
        }
        const double change = angular_error_deg(next.rgb, est.rgb);
        if (change < o.tolerance_deg) {
            break;
        }
        est = next;
        cumulative = est.rgb;
    }
    return {von_kries(linear, est.rgb), est};
}

} // namespace texbench::norm
