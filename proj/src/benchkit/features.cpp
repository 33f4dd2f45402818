// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <fstream>
#include <set>

#include "texbench/benchkit.hpp"
#include "texbench/binio.hpp"
#include "texbench/error.hpp"
#include "texbench/patches.hpp"

namespace texbench::bench {

namespace {

constexpr std::uint16_t kCacheVersion = 1;

std::size_t condition_rank(const std::string& id) {
    const auto* c = light::find_condition(id);
    return c == nullptr ? light::condition_catalog().size() : light::catalog_index(id);
}

} // namespace

const FeatureEntry* FeatureSet::find(int class_id, const std::string& condition, int grid_pos) const {
    if (index_.size() != entries.size()) {
        for (const auto& e : entries) {
            if (e.class_id == class_id && e.grid_pos == grid_pos && e.condition == condition) {
                return &e;
            }
        }
        return nullptr;
    }
    const auto it = index_.find({class_id, condition, grid_pos});
    return it == index_.end() ? nullptr : &entries[it->second];
}

std::vector<int> FeatureSet::classes() const {
    std::set<int> s;
    for (const auto& e : entries) {
        s.insert(e.class_id);
    }
    return {s.begin(), s.end()};
}

void FeatureSet::finalize() {
    for (const auto& e : entries) {
        if (e.values.size() != dim) {
            throw InvalidInput("FeatureSet: entry dimension differs from " + std::to_string(dim));
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const FeatureEntry& a, const FeatureEntry& b) {
        const auto ra = condition_rank(a.condition);
        const auto rb = condition_rank(b.condition);
        return std::tie(a.class_id, ra, a.condition, a.grid_pos) < std::tie(b.class_id, rb, b.condition, b.grid_pos);
    });
    index_.clear();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (!index_.emplace(std::tuple{e.class_id, e.condition, e.grid_pos}, i).second) {
            throw InvalidInput("FeatureSet: duplicate entry for class " + std::to_string(e.class_id) + " " +
                               e.condition + " patch " + std::to_string(e.grid_pos));
        }
    }
}

void write_features(std::ostream& out, const FeatureSet& set) {
    if (set.entries.size() > 0xFFFFFFFFu) {
        throw InvalidInput("write_features: too many entries");
    }
    out.write("RTFX", 4);
    binio::put_u16(out, kCacheVersion);
    binio::put_string(out, set.descriptor);
    binio::put_string(out, set.normalizer);
    binio::put_u32(out, set.dim);
    binio::put_u32(out, static_cast<std::uint32_t>(set.entries.size()));
    for (const auto& e : set.entries) {
        if (e.class_id < 0 || e.class_id > 0xFFFF || e.grid_pos < 0 || e.grid_pos > 0xFF) {
            throw InvalidInput("write_features: class or grid position out of range");
        }
        if (e.values.size() != set.dim) {
            throw InvalidInput("write_features: entry dimension mismatch");
        }
        binio::put_u16(out, static_cast<std::uint16_t>(e.class_id));
        binio::put_string(out, e.condition);
        binio::put_u8(out, static_cast<std::uint8_t>(e.grid_pos));
        for (float v : e.values) {
            binio::put_f32(out, v);
        }
    }
}

FeatureSet read_features(std::istream& in, const std::string& what) {
    binio::Reader r(in, what);
    r.magic("RTFX");
    if (r.u16() != kCacheVersion) {
        throw FormatError(what + ": unsupported version");
    }
    FeatureSet set;
    set.descriptor = r.string();
    set.normalizer = r.string();
    set.dim = r.u32();
    const std::uint32_t count = r.u32();
    if (set.dim == 0 || set.dim > (1u << 20)) {
        throw FormatError(what + ": implausible dimension");
    }
    set.entries.reserve(std::min<std::uint32_t>(count, 1u << 16));
    for (std::uint32_t i = 0; i < count; ++i) {
        FeatureEntry e;
        e.class_id = r.u16();
        e.condition = r.string();
        e.grid_pos = r.u8();
        e.values.resize(set.dim);
        for (float& v : e.values) {
            v = r.f32();
        }
        set.entries.push_back(std::move(e));
    }
    if (!r.at_end()) {
        throw FormatError(what + ": trailing bytes");
    }
    try {
        set.finalize();
    } catch (const InvalidInput& e) {
        throw FormatError(what + ": " + e.what());
    }
    return set;
}

void save_features(const std::filesystem::path& path, const FeatureSet& set) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    write_features(out, set);
    out.flush();
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

FeatureSet load_features(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    return read_features(in, path.string());
}

const std::vector<std::string>& all_descriptor_names() {
    static const std::vector<std::string> names = [] {
        auto n = desc::descriptor_names();
        n.insert(n.end(), {"bovw", "vlad", "fv"});
        return n;
    }();
    return names;
}

bool is_codebook_descriptor(std::string_view name) { return name == "bovw" || name == "vlad" || name == "fv"; }

std::vector<FeatureSet> extract_features(const light::ImageSource& source, const std::vector<std::string>& descriptors,
                                         const std::string& normalizer, const ExtractOptions& options) {
    if (descriptors.empty()) {
        throw InvalidInput("extract_features: no descriptors");
    }
    if (!norm::is_normalizer(normalizer)) {
        throw InvalidInput("unknown normalizer: " + normalizer);
    }
    std::vector<std::string> texture;
    bool need_sift = false;
    for (const auto& d : descriptors) {
        if (d == "bovw" || d == "vlad") {
            const cb::Codebook* c = d == "bovw" ? options.bovw : options.vlad;
            if (c == nullptr) {
                throw InvalidInput("extract_features: " + d + " needs a codebook");
            }
            need_sift = true;
        } else if (d == "fv") {
            if (options.fv == nullptr) {
                throw InvalidInput("extract_features: fv needs a mixture");
            }
            need_sift = true;
        } else if (!desc::is_descriptor(d)) {
            throw InvalidInput("unknown descriptor: " + d);
        } else {
            texture.push_back(d);
        }
    }

    std::vector<FeatureSet> out(descriptors.size());
    for (std::size_t i = 0; i < descriptors.size(); ++i) {
        out[i].descriptor = descriptors[i];
        out[i].normalizer = normalizer;
    }
    const std::vector<std::string> conditions = options.conditions.empty() ? source.conditions() : options.conditions;
    const std::vector<int> classes = source.classes();
    const std::size_t total = classes.size() * conditions.size();
    std::size_t done = 0;
    for (int cls : classes) {
        for (const auto& cond : conditions) {
            Image img = source.image(cls, cond);
            if (normalizer != "none") {
                img = norm::normalize(img, normalizer, options.normalizer);
            }
            for (const Patch& p : extract_patches(img, cls, cond)) {
                std::vector<desc::FeatureVector> tex;
                if (!texture.empty()) {
                    tex = desc::extract_many(texture, p.image, options.descriptors);
                }
                cb::LocalDescriptorSet local;
                if (need_sift) {
                    local = cb::dense_sift(p.image, options.sift);
                }
                std::size_t t = 0;
                for (std::size_t i = 0; i < descriptors.size(); ++i) {
                    FeatureEntry e;
                    e.class_id = cls;
                    e.condition = cond;
                    e.grid_pos = p.grid_pos.index();
                    const auto& d = descriptors[i];
                    if (d == "bovw") {
                        e.values = cb::encode_bovw(local, *options.bovw);
                    } else if (d == "vlad") {
                        e.values = cb::encode_vlad(local, *options.vlad);
                    } else if (d == "fv") {
                        e.values = cb::encode_fv(local, *options.fv);
                    } else {
                        e.values = std::move(tex[t++].values);
                    }
                    out[i].dim = static_cast<std::uint32_t>(e.values.size());
                    out[i].entries.push_back(std::move(e));
                }
            }
            ++done;
            if (options.progress) {
                options.progress(done, total);
            }
        }
    }
    for (auto& s : out) {
        s.finalize();
    }
    return out;
}

} // namespace texbench::bench
