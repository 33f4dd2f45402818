// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "texbench/image.hpp"
#include "texbench/light.hpp"

namespace texbench::light {

/// Read-only grid of texture images indexed by (class id, condition id).
class ImageSource {
public:
    virtual ~ImageSource() = default;

    /// Class ids in ascending order.
    virtual std::vector<int> classes() const = 0;
    /// Condition ids in catalog order.
    virtual std::vector<std::string> conditions() const = 0;
    virtual Image image(int class_id, const std::string& condition) const = 0;
};

/// A class/condition pair with no file on disk.
struct MissingEntry {
    int class_id = 0;
    std::string condition;
    friend bool operator==(const MissingEntry&, const MissingEntry&) = default;
};

/// Dataset stored as `<root>/<class_id>/<condition_id>.png`. Images are read
/// lazily.
class DiskDataset final : public ImageSource {
public:
    explicit DiskDataset(std::filesystem::path root);

    std::vector<int> classes() const override { return classes_; }
    std::vector<std::string> conditions() const override { return conditions_; }

    /// Throws IoError naming the file when the entry is missing or unreadable.
    Image image(int class_id, const std::string& condition) const override;

    const std::filesystem::path& root() const { return root_; }
    bool complete() const { return missing_.empty(); }
    const std::vector<MissingEntry>& missing() const { return missing_; }
    std::filesystem::path path_of(int class_id, const std::string& condition) const;

private:
    std::filesystem::path root_;
    std::vector<int> classes_;
    std::vector<std::string> conditions_;
    std::vector<MissingEntry> missing_;
};

/// Scans `root`. Unknown condition ids and non-numeric class directories
/// throw FormatError naming the offending path. When `catalog.json` is
/// present its condition list defines the expected grid; otherwise the full
/// catalog is expected.
DiskDataset load_dataset(const std::filesystem::path& root);

struct CorpusOptions {
    int classes = 12;
    std::uint64_t seed = 1;
    /// Condition ids to render; empty means the full catalog.
    std::vector<std::string> conditions;
    RenderOptions render;
};

/// Synthetic corpus rendered on demand from the class recipes. Albedo maps
/// are generated once and kept.
class SyntheticCorpus final : public ImageSource {
public:
    explicit SyntheticCorpus(CorpusOptions options);

    std::vector<int> classes() const override;
    std::vector<std::string> conditions() const override;
    Image image(int class_id, const std::string& condition) const override;

    const Image& albedo(int class_id) const;
    const CorpusOptions& options() const { return options_; }

private:
    CorpusOptions options_;
    mutable std::mutex mutex_;
    mutable std::map<int, std::shared_ptr<const Image>> albedo_;
};

/// Renders `corpus` to `root` as 8-bit sRGB PNG files and writes the
/// `catalog.json` manifest. Requires `corpus.options().render.encode_srgb8`.
void write_dataset(const std::filesystem::path& root, const SyntheticCorpus& corpus);

/// Manifest text written next to the images.
std::string catalog_json(const std::vector<std::string>& condition_ids, int classes, std::uint64_t seed);

} // namespace texbench::light
