// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "texbench/config.hpp"
#include "texbench/error.hpp"

namespace texbench::bench {

namespace {

using json = nlohmann::ordered_json;

// Typed reader over one JSON object; remembers which keys were consumed.
class Obj {
public:
    Obj(json j, std::string path) : j_(std::move(j)), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw FormatError("config " + path_ + ": expected an object");
        }
    }

    template <typename T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return;
        }
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw FormatError("config " + where(key) + ": wrong type");
        }
    }

    // number, or the strings "inf" / "infinity"
    void get_real(const char* key, double& out) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return;
        }
        const json& v = j_.at(key);
        if (v.is_number()) {
            out = v.get<double>();
        } else if (v.is_string() && (v == "inf" || v == "infinity")) {
            out = std::numeric_limits<double>::infinity();
        } else {
            throw FormatError("config " + where(key) + ": expected a number");
        }
    }

    void get_choice(const char* key, std::string& out, const std::set<std::string>& allowed) {
        get(key, out);
        if (!allowed.count(out)) {
            throw FormatError("config " + where(key) + ": unsupported value '" + out + "'");
        }
    }

    Obj child(const char* key) {
        seen_.insert(key);
        return Obj(j_.contains(key) ? j_.at(key) : json::object(), where(key));
    }

    const json& raw(const char* key) {
        seen_.insert(key);
        static const json null;
        return j_.contains(key) ? j_.at(key) : null;
    }

    void done() const {
        for (const auto& [k, v] : j_.items()) {
            if (!seen_.count(k)) {
                throw FormatError("config: unknown key " + where(k.c_str()));
            }
        }
    }

    std::string where(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    json j_;
    std::string path_;
    std::set<std::string> seen_;
};

json real(double v) { return std::isinf(v) ? json("inf") : json(v); }

std::string pad_name(desc::PadMode m) { return m == desc::PadMode::Circular ? "circular" : "reflect"; }

json bank_json(const desc::GaborBankConfig& b) {
    json j;
    j["orientations"] = b.orientations;
    j["scales"] = b.scales;
    j["top_frequency"] = b.top_frequency;
    j["bandwidth_octaves"] = b.bandwidth_octaves;
    j["pad"] = b.pad;
    j["pad_mode"] = pad_name(b.pad_mode);
    j["max_decimation"] = b.max_decimation;
    return j;
}

void read_bank(Obj o, desc::GaborBankConfig& b) {
    o.get("orientations", b.orientations);
    o.get("scales", b.scales);
    o.get("top_frequency", b.top_frequency);
    o.get("bandwidth_octaves", b.bandwidth_octaves);
    o.get("pad", b.pad);
    std::string mode = pad_name(b.pad_mode);
    o.get_choice("pad_mode", mode, {"reflect", "circular"});
    b.pad_mode = mode == "circular" ? desc::PadMode::Circular : desc::PadMode::Reflect;
    o.get("max_decimation", b.max_decimation);
    o.done();
}

} // namespace

std::string config_to_json(const Config& c) {
    json j;
    j["corpus"] = {{"classes", c.classes}, {"seed", c.seed}};

    json r;
    r["encode_srgb8"] = c.render.encode_srgb8;
    r["blend_band"] = c.render.blend_band;
    r["band_irradiance"] = c.render.band_irradiance;
    r["led_model"] = c.render.led_model == light::LedModel::Planckian ? "planckian" : "daylight-locus";
    json leds = json::object();
    for (const auto& [name, xy] : c.render.leds) {
        leds[name] = {xy.x, xy.y};
    }
    r["leds"] = leds;
    j["render"] = r;

    json n;
    n["edge_order"] = c.normalizer.edge_order;
    n["edge_p"] = real(c.normalizer.edge_p);
    n["edge_sigma"] = c.normalizer.edge_sigma;
    const auto& w = c.normalizer.weighted;
    n["weighted"] = {{"order", w.order},         {"p", real(w.p)},     {"sigma", w.sigma},
                     {"iterations", w.iterations}, {"kappa", w.kappa}, {"tolerance_deg", w.tolerance_deg}};
    n["retinex_iterations"] = c.normalizer.retinex_iterations;
    j["normalizer"] = n;

    const auto& d = c.descriptors;
    json dj;
    dj["gabor"] = bank_json(d.gabor);
    dj["gist"] = bank_json(d.gist);
    dj["gist_grid"] = d.gist_grid;
    dj["cooccurrence_levels"] = d.cooccurrence_levels;
    dj["granulometry_sizes"] = d.granulometry_sizes;
    dj["dtcwt_levels"] = d.dtcwt_levels;
    dj["hog_cells"] = d.hog_cells;
    dj["hog_bins"] = d.hog_bins;
    dj["lcc_bins"] = d.lcc_bins;
    j["descriptors"] = dj;

    j["sift"] = {{"bin_size", c.sift.bin_size}, {"stride", c.sift.stride}, {"scales", c.sift.scales},
                 {"magnif", c.sift.magnif},     {"clip", c.sift.clip}};

    const auto& t = c.codebook;
    json cj;
    cj["first_class"] = t.first_class;
    cj["classes"] = t.classes;
    cj["corpus_seed"] = t.corpus_seed;
    cj["conditions"] = t.conditions;
    cj["patches_per_image"] = t.patches_per_image;
    cj["samples"] = t.samples;
    cj["seed"] = t.seed;
    cj["bovw_k"] = t.bovw_k;
    cj["vlad_k"] = t.vlad_k;
    cj["fv_k"] = t.fv_k;
    cj["kmeans"] = {{"max_iterations", t.kmeans.max_iterations}, {"tolerance", t.kmeans.tolerance}};
    cj["gmm"] = {{"max_iterations", t.gmm.max_iterations},
                 {"tolerance", t.gmm.tolerance},
                 {"variance_floor", t.gmm.variance_floor}};
    j["codebook"] = cj;

    j["protocol"] = {{"bovw_normalization", c.bovw_normalization},
                     {"subset_weighting", c.subset_weighting},
                     {"tie_break", c.tie_break},
                     {"subset_order", c.subset_order}};
    return j.dump(2) + "\n";
}

Config config_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("config: ") + e.what());
    }
    Config c;
    Obj top(j, "");
    {
        Obj o = top.child("corpus");
        o.get("classes", c.classes);
        o.get("seed", c.seed);
        o.done();
    }
    {
        Obj o = top.child("render");
        o.get("encode_srgb8", c.render.encode_srgb8);
        o.get("blend_band", c.render.blend_band);
        o.get("band_irradiance", c.render.band_irradiance);
        std::string model = c.render.led_model == light::LedModel::Planckian ? "planckian" : "daylight-locus";
        o.get_choice("led_model", model, {"planckian", "daylight-locus"});
        c.render.led_model = model == "planckian" ? light::LedModel::Planckian : light::LedModel::DaylightLocus;
        const json& leds = o.raw("leds");
        if (!leds.is_null()) {
            if (!leds.is_object()) {
                throw FormatError("config render.leds: expected an object");
            }
            c.render.leds.clear();
            for (const auto& [name, xy] : leds.items()) {
                if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number()) {
                    throw FormatError("config render.leds." + name + ": expected [x, y]");
                }
                c.render.leds[name] = {xy[0].get<double>(), xy[1].get<double>()};
            }
        }
        o.done();
    }
    {
        Obj o = top.child("normalizer");
        o.get("edge_order", c.normalizer.edge_order);
        o.get_real("edge_p", c.normalizer.edge_p);
        o.get("edge_sigma", c.normalizer.edge_sigma);
        Obj w = o.child("weighted");
        auto& wo = c.normalizer.weighted;
        w.get("order", wo.order);
        w.get_real("p", wo.p);
        w.get("sigma", wo.sigma);
        w.get("iterations", wo.iterations);
        w.get("kappa", wo.kappa);
        w.get("tolerance_deg", wo.tolerance_deg);
        w.done();
        o.get("retinex_iterations", c.normalizer.retinex_iterations);
        o.done();
    }
    {
        Obj o = top.child("descriptors");
        auto& d = c.descriptors;
        read_bank(o.child("gabor"), d.gabor);
        read_bank(o.child("gist"), d.gist);
        o.get("gist_grid", d.gist_grid);
        o.get("cooccurrence_levels", d.cooccurrence_levels);
        o.get("granulometry_sizes", d.granulometry_sizes);
        o.get("dtcwt_levels", d.dtcwt_levels);
        o.get("hog_cells", d.hog_cells);
        o.get("hog_bins", d.hog_bins);
        o.get("lcc_bins", d.lcc_bins);
        o.done();
    }
    {
        Obj o = top.child("sift");
        o.get("bin_size", c.sift.bin_size);
        o.get("stride", c.sift.stride);
        o.get("scales", c.sift.scales);
        o.get("magnif", c.sift.magnif);
        o.get("clip", c.sift.clip);
        o.done();
    }
    {
        Obj o = top.child("codebook");
        auto& t = c.codebook;
        o.get("first_class", t.first_class);
        o.get("classes", t.classes);
        o.get("corpus_seed", t.corpus_seed);
        o.get("conditions", t.conditions);
        o.get("patches_per_image", t.patches_per_image);
        o.get("samples", t.samples);
        o.get("seed", t.seed);
        o.get("bovw_k", t.bovw_k);
        o.get("vlad_k", t.vlad_k);
        o.get("fv_k", t.fv_k);
        Obj k = o.child("kmeans");
        k.get("max_iterations", t.kmeans.max_iterations);
        k.get("tolerance", t.kmeans.tolerance);
        k.done();
        Obj g = o.child("gmm");
        g.get("max_iterations", t.gmm.max_iterations);
        g.get("tolerance", t.gmm.tolerance);
        g.get("variance_floor", t.gmm.variance_floor);
        g.done();
        t.gmm.init = t.kmeans;
        o.done();
    }
    {
        Obj o = top.child("protocol");
        o.get_choice("bovw_normalization", c.bovw_normalization, {"sum1"});
        o.get_choice("subset_weighting", c.subset_weighting, {"equal"});
        o.get_choice("tie_break", c.tie_break, {"lowest-train-index"});
        o.get_choice("subset_order", c.subset_order, {"ordered"});
        o.done();
    }
    top.done();
    if (c.classes < 1 || c.classes > 0xFFFF) {
        throw FormatError("config corpus.classes: out of range");
    }
    return c;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return config_from_json(s.str());
}

void save_config(const std::filesystem::path& path, const Config& config) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << config_to_json(config);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

light::CorpusOptions corpus_options(const Config& config) {
    light::CorpusOptions o;
    o.classes = config.classes;
    o.seed = config.seed;
    o.render = config.render;
    return o;
}

ExtractOptions extract_options(const Config& config) {
    ExtractOptions o;
    o.descriptors = config.descriptors;
    o.normalizer = config.normalizer;
    o.sift = config.sift;
    return o;
}

} // namespace texbench::bench
