// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>
#include <fstream>

#include "texbench/binio.hpp"
#include "texbench/codebook.hpp"
#include "texbench/error.hpp"

namespace texbench::cb {

namespace {

constexpr std::uint16_t kVersion = 1;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

struct Header {
    std::string fingerprint;
    std::uint32_t k = 0;
    std::uint32_t dim = 0;
};

void put_header(std::ostream& out, const char* magic, const std::string& fp, int k, int dim) {
    out.write(magic, 4);
    binio::put_u16(out, kVersion);
    binio::put_string(out, fp);
    binio::put_u32(out, static_cast<std::uint32_t>(k));
    binio::put_u32(out, static_cast<std::uint32_t>(dim));
}

Header get_header(binio::Reader& r, const char* magic) {
    r.magic(magic);
    if (r.u16() != kVersion) {
        throw FormatError(std::string(magic) + ": unsupported version");
    }
    Header h;
    h.fingerprint = r.string();
    h.k = r.u32();
    h.dim = r.u32();
    if (h.k == 0 || h.dim == 0 || h.k > (1u << 20) || h.dim > (1u << 16)) {
        throw FormatError(std::string(magic) + ": implausible size");
    }
    return h;
}

} // namespace

void save_codebook(const std::filesystem::path& path, const Codebook& cb) {
    if (cb.k < 1 || cb.dim < 1 || cb.words.size() != static_cast<std::size_t>(cb.k) * cb.dim) {
        throw InvalidInput("save_codebook: malformed codebook");
    }
    auto out = open_out(path);
    put_header(out, "RTCB", cb.fingerprint, cb.k, cb.dim);
    for (float f : cb.words) {
        binio::put_f32(out, f);
    }
    finish(out, path);
}

Codebook load_codebook(const std::filesystem::path& path) {
    auto in = open_in(path);
    binio::Reader r(in, path.string());
    const Header h = get_header(r, "RTCB");
    Codebook cb;
    cb.k = static_cast<int>(h.k);
    cb.dim = static_cast<int>(h.dim);
    cb.fingerprint = h.fingerprint;
    cb.words.resize(static_cast<std::size_t>(h.k) * h.dim);
    for (float& f : cb.words) {
        f = r.f32();
    }
    if (!r.at_end()) {
        throw FormatError(path.string() + ": trailing bytes");
    }
    return cb;
}

void save_gmm(const std::filesystem::path& path, const Gmm& gmm) {
    const std::size_t kd = static_cast<std::size_t>(gmm.k) * gmm.dim;
    if (gmm.k < 1 || gmm.dim < 1 || gmm.weights.size() != static_cast<std::size_t>(gmm.k) || gmm.means.size() != kd ||
        gmm.variances.size() != kd) {
        throw InvalidInput("save_gmm: malformed mixture");
    }
    auto out = open_out(path);
    put_header(out, "RTGM", gmm.fingerprint, gmm.k, gmm.dim);
    for (double v : gmm.weights) {
        binio::put_f64(out, v);
    }
    for (double v : gmm.means) {
        binio::put_f64(out, v);
    }
    for (double v : gmm.variances) {
        binio::put_f64(out, v);
    }
    finish(out, path);
}

Gmm load_gmm(const std::filesystem::path& path) {
    auto in = open_in(path);
    binio::Reader r(in, path.string());
    const Header h = get_header(r, "RTGM");
    Gmm g;
    g.k = static_cast<int>(h.k);
    g.dim = static_cast<int>(h.dim);
    g.fingerprint = h.fingerprint;
    const std::size_t kd = static_cast<std::size_t>(h.k) * h.dim;
    g.weights.resize(h.k);
    g.means.resize(kd);
    g.variances.resize(kd);
    for (double& v : g.weights) {
        v = r.f64();
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw FormatError(path.string() + ": bad mixture weight");
        }
    }
    for (double& v : g.means) {
        v = r.f64();
    }
    for (double& v : g.variances) {
        v = r.f64();
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw FormatError(path.string() + ": bad variance");
        }
    }
    if (!r.at_end()) {
        throw FormatError(path.string() + ": trailing bytes");
    }
    return g;
}

} // namespace texbench::cb
