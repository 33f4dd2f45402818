// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include <json.hpp>

#include "texbench/dataset.hpp"
#include "texbench/error.hpp"
#include "texbench/png_io.hpp"
#include "texbench/synth.hpp"

namespace texbench::light {

namespace fs = std::filesystem;

namespace {

std::optional<int> parse_class(const std::string& s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v < 0 || v > 65535) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string> all_ids() {
    std::vector<std::string> ids;
    for (const auto& c : condition_catalog()) {
        ids.push_back(c.id);
    }
    return ids;
}

std::vector<std::string> catalog_sorted(std::vector<std::string> ids) {
    for (const auto& id : ids) {
        if (!find_condition(id)) {
            throw InvalidInput("unknown condition id '" + id + "'");
        }
    }
    std::sort(ids.begin(), ids.end(),
              [](const std::string& a, const std::string& b) { return catalog_index(a) < catalog_index(b); });
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

std::vector<std::string> manifest_conditions(const fs::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot read " + file.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(file.string() + ": " + e.what());
    }
    std::vector<std::string> ids;
    if (!j.contains("conditions") || !j["conditions"].is_array()) {
        throw FormatError(file.string() + ": missing 'conditions' array");
    }
    for (const auto& c : j["conditions"]) {
        const std::string id = c.at("id").get<std::string>();
        if (!find_condition(id)) {
            throw FormatError(file.string() + ": unknown condition id '" + id + "'");
        }
        ids.push_back(id);
    }
    return catalog_sorted(std::move(ids));
}

} // namespace

DiskDataset::DiskDataset(fs::path root) : root_(std::move(root)) {
    if (!fs::is_directory(root_)) {
        throw IoError("dataset root " + root_.string() + " is not a directory");
    }
    const fs::path manifest = root_ / "catalog.json";
    conditions_ = fs::exists(manifest) ? manifest_conditions(manifest) : all_ids();

    std::map<int, std::set<std::string>> present;
    for (const auto& dir : fs::directory_iterator(root_)) {
        if (!dir.is_directory()) {
            continue;
        }
        const auto cls = parse_class(dir.path().filename().string());
        if (!cls) {
            throw FormatError("unexpected directory " + dir.path().string() + " (class ids are integers)");
        }
        auto& ids = present[*cls];
        for (const auto& file : fs::directory_iterator(dir.path())) {
            if (file.path().extension() != ".png") {
                continue;
            }
            const std::string id = file.path().stem().string();
            if (!find_condition(id)) {
                throw FormatError("unknown condition id '" + id + "' in " + file.path().string());
            }
            ids.insert(id);
        }
    }
    for (const auto& [cls, ids] : present) {
        classes_.push_back(cls);
        for (const auto& id : conditions_) {
            if (!ids.count(id)) {
                missing_.push_back({cls, id});
            }
        }
    }
}

fs::path DiskDataset::path_of(int class_id, const std::string& condition) const {
    return root_ / std::to_string(class_id) / (condition + ".png");
}

Image DiskDataset::image(int class_id, const std::string& condition) const {
    const fs::path p = path_of(class_id, condition);
    if (!fs::exists(p)) {
        throw IoError("missing dataset image " + p.string());
    }
    Image img = read_png(p);
    if (img.channels() != 3) {
        throw FormatError(p.string() + ": expected an RGB image");
    }
    return img;
}

DiskDataset load_dataset(const fs::path& root) {
    return DiskDataset(root);
}

SyntheticCorpus::SyntheticCorpus(CorpusOptions options) : options_(std::move(options)) {
    if (options_.classes < 1) {
        throw InvalidInput("synthetic corpus needs at least one class");
    }
    options_.conditions = options_.conditions.empty() ? all_ids() : catalog_sorted(options_.conditions);
}

std::vector<int> SyntheticCorpus::classes() const {
    std::vector<int> c(static_cast<std::size_t>(options_.classes));
    for (int i = 0; i < options_.classes; ++i) {
        c[static_cast<std::size_t>(i)] = i;
    }
    return c;
}

std::vector<std::string> SyntheticCorpus::conditions() const {
    return options_.conditions;
}

const Image& SyntheticCorpus::albedo(int class_id) const {
    if (class_id < 0 || class_id >= options_.classes) {
        throw InvalidInput("class id " + std::to_string(class_id) + " outside the corpus");
    }
    {
        std::lock_guard lock(mutex_);
        if (auto it = albedo_.find(class_id); it != albedo_.end()) {
            return *it->second;
        }
    }
    auto img = std::make_shared<const Image>(generate_texture(corpus_class_spec(class_id, options_.seed)));
    std::lock_guard lock(mutex_);
    return *albedo_.emplace(class_id, std::move(img)).first->second;
}

Image SyntheticCorpus::image(int class_id, const std::string& condition) const {
    const LightCondition* cond = find_condition(condition);
    if (!cond) {
        throw InvalidInput("unknown condition id '" + condition + "'");
    }
    return render_condition(albedo(class_id), *cond, options_.render);
}

std::string catalog_json(const std::vector<std::string>& condition_ids, int classes, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["classes"] = classes;
    j["seed"] = seed;
    auto& conds = j["conditions"] = nlohmann::ordered_json::array();
    for (const auto& id : condition_ids) {
        const LightCondition& c = *find_condition(id);
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["kind"] = kind_name(c.kind);
        e["intensity"] = c.intensity;
        e["theta"] = c.theta;
        e["cct"] = c.cct;
        e["led_cct"] = c.led_cct;
        e["illuminant"] = c.illuminant.name();
        if (c.second) {
            e["second"] = c.second->name();
        }
        conds.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

void write_dataset(const fs::path& root, const SyntheticCorpus& corpus) {
    if (!corpus.options().render.encode_srgb8) {
        throw InvalidInput("write_dataset: PNG output needs sRGB-encoded rendering");
    }
    fs::create_directories(root);
    for (int cls : corpus.classes()) {
        const fs::path dir = root / std::to_string(cls);
        fs::create_directories(dir);
        for (const auto& id : corpus.conditions()) {
            write_png(dir / (id + ".png"), corpus.image(cls, id));
        }
    }
    std::ofstream out(root / "catalog.json", std::ios::binary);
    out << catalog_json(corpus.conditions(), corpus.options().classes, corpus.options().seed);
    if (!out) {
        throw IoError("cannot write " + (root / "catalog.json").string());
    }
}

} // namespace texbench::light
