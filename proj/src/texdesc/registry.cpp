// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "internal.hpp"
#include "texbench/error.hpp"

namespace texbench::desc {
namespace {

struct Entry {
    const char* name;
    bool informational;
    std::function<std::size_t(const DescriptorConfig&)> dim;
    std::function<std::vector<double>(PatchContext&)> compute;
};

std::size_t gabor_dim(const GaborBankConfig& b) {
    return static_cast<std::size_t>(2 * b.orientations * b.scales);
}

std::size_t opponent_dim(const GaborBankConfig& b) {
    const std::size_t pairs = static_cast<std::size_t>(b.scales + 2 * std::max(0, b.scales - 1));
    return 3 * gabor_dim(b) + pairs * b.orientations * 2;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table{
        {"hist-l", false, [](const auto&) { return std::size_t{256}; },
         [](PatchContext& c) { return hist_impl(c, HistVariant::Gray); }},
        {"hist-hv", false, [](const auto&) { return std::size_t{512}; },
         [](PatchContext& c) { return hist_impl(c, HistVariant::HV); }},
        {"hist-rgb", false, [](const auto&) { return std::size_t{768}; },
         [](PatchContext& c) { return hist_impl(c, HistVariant::Rgb); }},
        {"hist-chrom-rgb", false, [](const auto&) { return std::size_t{768}; },
         [](PatchContext& c) { return hist_impl(c, HistVariant::Chromaticity); }},
        {"chrom-moments", false, [](const auto&) { return std::size_t{10}; },
         [](PatchContext& c) { return chromaticity_moments_impl(c); }},
        {"coocc-rgb", false, [](const auto&) { return std::size_t{15}; },
         [](PatchContext& c) { return cooccurrence_impl(c, true); }},
        {"coocc-l", false, [](const auto&) { return std::size_t{5}; },
         [](PatchContext& c) { return cooccurrence_impl(c, false); }},
        {"dtcwt", true, [](const DescriptorConfig& k) { return static_cast<std::size_t>(3 * k.dtcwt_levels * 6 * 2); },
         [](PatchContext& c) { return dtcwt_impl(c); }},
        {"gabor-rgb", false, [](const DescriptorConfig& k) { return 3 * gabor_dim(k.gabor); },
         [](PatchContext& c) { return gabor_impl(c, GaborMode::RGB); }},
        {"gabor-l", false, [](const DescriptorConfig& k) { return gabor_dim(k.gabor); },
         [](PatchContext& c) { return gabor_impl(c, GaborMode::L); }},
        {"opp-gabor", false, [](const DescriptorConfig& k) { return opponent_dim(k.gabor); },
         [](PatchContext& c) { return opponent_gabor_impl(c); }},
        {"gist", true,
         [](const DescriptorConfig& k) {
             return static_cast<std::size_t>(k.gist.orientations * k.gist.scales * k.gist_grid * k.gist_grid);
         },
         [](PatchContext& c) { return gist_impl(c); }},
        {"granulometry", true,
         [](const DescriptorConfig& k) { return static_cast<std::size_t>(3 * 4) * k.granulometry_sizes.size(); },
         [](PatchContext& c) { return granulometry_impl(c); }},
        {"hog", false,
         [](const DescriptorConfig& k) { return static_cast<std::size_t>(k.hog_cells * k.hog_cells * k.hog_bins); },
         [](PatchContext& c) { return hog_impl(c); }},
        {"lbp-l", false, [](const auto&) { return std::size_t{243}; },
         [](PatchContext& c) { return lbp_impl(c, LbpSpace::L); }},
        {"lbp-rgb", false, [](const auto&) { return std::size_t{729}; },
         [](PatchContext& c) { return lbp_impl(c, LbpSpace::RGB); }},
        {"lbp-lab", false, [](const auto&) { return std::size_t{729}; },
         [](PatchContext& c) { return lbp_impl(c, LbpSpace::Lab); }},
        {"lbp-ohta", false, [](const auto&) { return std::size_t{729}; },
         [](PatchContext& c) { return lbp_impl(c, LbpSpace::Ohta); }},
        {"oclbp", false, [](const auto&) { return std::size_t{1458}; },
         [](PatchContext& c) { return oclbp_impl(c); }},
        {"lcc", false, [](const DescriptorConfig& k) { return static_cast<std::size_t>(243 + k.lcc_bins); },
         [](PatchContext& c) { return lcc_impl(c); }},
    };
    return table;
}

const Entry& find(std::string_view name) {
    for (const auto& e : entries()) {
        if (name == e.name) {
            return e;
        }
    }
    throw InvalidInput("unknown descriptor: " + std::string(name));
}

FeatureVector run(const Entry& e, PatchContext& ctx) {
    const auto values = e.compute(ctx);
    const std::size_t expected = e.dim(ctx.config());
    if (values.size() != expected) {
        throw Error(std::string(e.name) + ": emitted " + std::to_string(values.size()) + " values, declared " +
                    std::to_string(expected));
    }
    FeatureVector fv;
    fv.descriptor = e.name;
    fv.values.reserve(values.size());
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw Error(std::string(e.name) + ": non-finite feature value");
        }
        fv.values.push_back(static_cast<float>(v));
    }
    return fv;
}

} // namespace

const std::vector<std::string>& descriptor_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& e : entries()) {
            n.emplace_back(e.name);
        }
        return n;
    }();
    return names;
}

bool is_descriptor(std::string_view name) {
    const auto& n = descriptor_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

std::size_t descriptor_dim(std::string_view name, const DescriptorConfig& config) {
    return find(name).dim(config);
}

bool dim_is_informational(std::string_view name) {
    return find(name).informational;
}

FeatureVector extract(std::string_view name, const Image& patch, const DescriptorConfig& config) {
    const Entry& e = find(name);
    PatchContext ctx(patch, config);
    return run(e, ctx);
}

std::vector<FeatureVector> extract_many(const std::vector<std::string>& names, const Image& patch,
                                        const DescriptorConfig& config) {
    std::vector<const Entry*> selected;
    for (const auto& n : names) {
        selected.push_back(&find(n));
    }
    PatchContext ctx(patch, config);
    std::vector<FeatureVector> out;
    for (const Entry* e : selected) {
        out.push_back(run(*e, ctx));
    }
    return out;
}

} // namespace texbench::desc
