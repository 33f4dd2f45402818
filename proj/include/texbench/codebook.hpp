// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "texbench/image.hpp"

namespace texbench::cb {

inline constexpr int kSiftDim = 128;

struct Keypoint {
    float x = 0.0f; ///< descriptor centre, pixels
    float y = 0.0f;
    float scale = 1.0f; ///< 2^(i/3)
};

/// Row-major n x dim descriptor matrix with positions.
struct LocalDescriptorSet {
    int dim = kSiftDim;
    std::vector<float> data;
    std::vector<Keypoint> positions;

    std::size_t size() const { return dim > 0 ? data.size() / static_cast<std::size_t>(dim) : 0; }
    std::span<const float> row(std::size_t i) const {
        return {data.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

struct SiftConfig {
    int bin_size = 6;    ///< at scale 0; scale i uses round(bin_size * 2^(i/3))
    int stride = 2;
    int scales = 5;      ///< i = 0 .. scales-1
    double magnif = 6.0; ///< smoothing sigma = sqrt((bin/magnif)^2 - 1/4)
    double clip = 0.2;
};

/// Dense SIFT on the luminance of an RGB patch (or a Gray image): 4x4
/// spatial bins, 8 orientations, triangular spatial and orientation
/// interpolation, L2 / clip / L2. Scales are concatenated in order.
LocalDescriptorSet dense_sift(const Image& patch, const SiftConfig& config = {});

/// Number of descriptors dense_sift emits at scale i for a square side.
std::size_t sift_count(int side, int scale, const SiftConfig& config = {});

struct KmeansConfig {
    int max_iterations = 100;
    double tolerance = 1e-4; ///< relative inertia decrease
};

struct Codebook {
    int k = 0;
    int dim = 0;
    std::vector<float> words; ///< k x dim
    std::string fingerprint;

    std::span<const float> word(int i) const {
        return {words.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
};

struct KmeansResult {
    Codebook codebook;
    std::vector<double> inertia; ///< after each assignment step
    int iterations = 0;
};

/// k-means++ seeding from `seed`, then Lloyd iterations. Throws
/// DegenerateError when fewer than k distinct rows exist.
KmeansResult kmeans(const LocalDescriptorSet& points, int k, std::uint64_t seed, const KmeansConfig& config = {});

struct Gmm {
    int k = 0;
    int dim = 0;
    std::vector<double> weights;   ///< k
    std::vector<double> means;     ///< k x dim
    std::vector<double> variances; ///< k x dim, diagonal
    std::string fingerprint;
};

struct GmmConfig {
    int max_iterations = 100;
    double tolerance = 1e-5; ///< relative log-likelihood increase
    double variance_floor = 1e-6;
    KmeansConfig init;
};

struct GmmResult {
    Gmm gmm;
    std::vector<double> log_likelihood; ///< mean per-sample, per iteration
    int iterations = 0;
};

/// Diagonal EM initialised from kmeans(k, seed). Needs at least 10 k rows.
GmmResult gmm_em(const LocalDescriptorSet& points, int k, std::uint64_t seed, const GmmConfig& config = {});

/// Index of the nearest word (squared L2, ties to the lowest index).
int nearest_word(std::span<const float> descriptor, const Codebook& cb);

/// Hard-assignment word histogram, sums to 1.
std::vector<float> encode_bovw(const LocalDescriptorSet& local, const Codebook& cb);
/// Residual sums per nearest word, signed square root, global L2.
std::vector<float> encode_vlad(const LocalDescriptorSet& local, const Codebook& cb);
/// Improved Fisher vector: per component [mean gradient | variance
/// gradient], signed square root, global L2.
std::vector<float> encode_fv(const LocalDescriptorSet& local, const Gmm& gmm);

/// Hash of the training rows and seed, hex.
std::string training_fingerprint(const LocalDescriptorSet& points, std::uint64_t seed);

/// Binary persistence: magic "RTCB" / "RTGM", u16 version, fingerprint
/// (u16 length + bytes), u32 k, u32 dim, then little-endian payload (f32
/// words; f64 weights, means, variances).
void save_codebook(const std::filesystem::path& path, const Codebook& cb);
Codebook load_codebook(const std::filesystem::path& path);
void save_gmm(const std::filesystem::path& path, const Gmm& gmm);
Gmm load_gmm(const std::filesystem::path& path);

} // namespace texbench::cb
