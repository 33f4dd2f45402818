// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef __GLIBC__
#include <malloc.h>
#endif

#include <CLI11.hpp>

#include "texbench/benchkit.hpp"
#include "texbench/config.hpp"
#include "texbench/error.hpp"

namespace fs = std::filesystem;
using namespace texbench;

namespace {

bench::Config load_or_default(const std::string& path) {
    return path.empty() ? bench::Config{} : bench::load_config(path);
}

std::ofstream open_text(const fs::path& path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

std::vector<bench::EvalResult> read_results(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    return bench::read_results_csv(in);
}

struct SynthArgs {
    std::string out;
    std::optional<int> classes;
    std::optional<std::uint64_t> seed;
    std::string config;
};

int run_synth(const SynthArgs& a) {
    bench::Config cfg = load_or_default(a.config);
    if (a.classes) {
        cfg.classes = *a.classes;
    }
    if (a.seed) {
        cfg.seed = *a.seed;
    }
    auto opts = bench::corpus_options(cfg);
    opts.render.encode_srgb8 = true;
    light::SyntheticCorpus corpus(opts);
    light::write_dataset(a.out, corpus);
    std::fprintf(stderr, "wrote %d classes x %zu conditions to %s\n", cfg.classes, corpus.conditions().size(),
                 a.out.c_str());
    return 0;
}

struct CodebookArgs {
    std::string out;
    std::string config;
};

int run_codebook(const CodebookArgs& a) {
    const bench::Config cfg = load_or_default(a.config);
    std::fprintf(stderr, "sampling %zu dense SIFT rows\n", cfg.codebook.samples);
    const auto rows = bench::training_descriptors(cfg.codebook, cfg.sift, cfg.render);
    std::fprintf(stderr, "training codebooks (k = %d, %d, %d)\n", cfg.codebook.bovw_k, cfg.codebook.vlad_k,
                 cfg.codebook.fv_k);
    const auto books = bench::train_codebooks(rows, cfg.codebook);
    fs::create_directories(a.out);
    cb::save_codebook(fs::path(a.out) / "bovw.rtcb", books.bovw);
    cb::save_codebook(fs::path(a.out) / "vlad.rtcb", books.vlad);
    cb::save_gmm(fs::path(a.out) / "fv.rtgm", books.fv);
    return 0;
}

struct ExtractArgs {
    std::string dataset;
    std::vector<std::string> descriptors;
    std::string normalizer = "none";
    std::string cache;
    std::string config;
    std::string codebook_dir;
    bool quiet = false;
};

int run_extract(const ExtractArgs& a) {
    const bench::Config cfg = load_or_default(a.config);
    auto opts = bench::extract_options(cfg);
    const auto dataset = light::load_dataset(a.dataset);
    if (!dataset.complete()) {
        const auto& m = dataset.missing().front();
        throw IoError(a.dataset + ": " + std::to_string(dataset.missing().size()) + " missing images, first " +
                      std::to_string(m.class_id) + "/" + m.condition);
    }
    cb::Codebook bovw, vlad;
    cb::Gmm fv;
    for (const auto& d : a.descriptors) {
        if (!bench::is_codebook_descriptor(d)) {
            continue;
        }
        if (a.codebook_dir.empty()) {
            throw InvalidInput(d + " needs --codebook-dir");
        }
        const fs::path dir = a.codebook_dir;
        if (d == "bovw") {
            bovw = cb::load_codebook(dir / "bovw.rtcb");
            opts.bovw = &bovw;
        } else if (d == "vlad") {
            vlad = cb::load_codebook(dir / "vlad.rtcb");
            opts.vlad = &vlad;
        } else {
            fv = cb::load_gmm(dir / "fv.rtgm");
            opts.fv = &fv;
        }
    }
    if (!a.quiet) {
        opts.progress = [](std::size_t done, std::size_t total) {
            if (done == total || done % 46 == 0) {
                std::fprintf(stderr, "\r%zu/%zu images", done, total);
                if (done == total) {
                    std::fputc('\n', stderr);
                }
            }
        };
    }
    const auto sets = bench::extract_features(dataset, a.descriptors, a.normalizer, opts);
    if (sets.size() == 1) {
        bench::save_features(a.cache, sets.front());
        return 0;
    }
    // several descriptors: --cache names a directory
    fs::create_directories(a.cache);
    for (const auto& s : sets) {
        bench::save_features(fs::path(a.cache) / (s.descriptor + "." + s.normalizer + ".rtfx"), s);
    }
    return 0;
}

struct EvalArgs {
    std::vector<std::string> caches;
    std::string task = "all";
    std::string out;
    std::string per_class;
    bool same_patches = false;
};

int run_eval(const EvalArgs& a) {
    const auto suites = bench::build_tasks();
    std::vector<const bench::TaskSuite*> chosen;
    if (a.task == "all") {
        for (const auto& s : suites) {
            chosen.push_back(&s);
        }
    } else {
        chosen.push_back(&bench::find_task(suites, a.task));
    }
    bench::EvalOptions opts;
    opts.same_patches = a.same_patches;
    std::vector<bench::EvalResult> results;
    for (const auto& path : a.caches) {
        const auto features = bench::load_features(path);
        for (const auto* suite : chosen) {
            results.push_back(bench::evaluate(features, *suite, opts));
        }
    }
    if (!a.per_class.empty()) {
        auto out = open_text(a.per_class);
        bench::write_per_class_csv(out, results);
    }
    if (a.out.empty() || a.out == "-") {
        bench::write_results_csv(std::cout, std::move(results));
        return 0;
    }
    auto out = open_text(a.out);
    bench::write_results_csv(out, std::move(results));
    return 0;
}

int run_report(const std::string& in, const std::string& format) {
    const auto results = read_results(in);
    std::cout << (format == "csv" ? bench::summary_csv(results) : bench::summary_table(results));
    return 0;
}

int run_curves(const std::string& in, const std::string& task) {
    std::cout << "descriptor,normalizer,task,delta,accuracy,subsets\n";
    for (const auto& r : read_results(in)) {
        if (r.task != task) {
            continue;
        }
        for (const auto& p : bench::delta_curves(r)) {
            char line[256];
            std::snprintf(line, sizeof line, "%s,%s,%s,%g,%.6f,%d\n", r.descriptor.c_str(), r.normalizer.c_str(),
                          r.task.c_str(), p.delta, p.accuracy, p.subsets);
            std::cout << line;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
#ifdef __GLIBC__
    // feature sets are built from many mid-sized buffers; keep them on the heap
    mallopt(M_MMAP_THRESHOLD, 64 << 20);
    mallopt(M_TRIM_THRESHOLD, 256 << 20);
#endif
    CLI::App app{"texture classification benchmark under varying illumination"};
    app.require_subcommand(1);

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "render the synthetic corpus as PNG files");
    s->add_option("--out", synth.out, "output directory")->required();
    s->add_option("--classes", synth.classes, "number of classes")->check(CLI::Range(1, 65535));
    s->add_option("--seed", synth.seed, "corpus seed");
    s->add_option("--config", synth.config, "JSON config");

    CodebookArgs codebook;
    auto* c = app.add_subcommand("codebook", "train BoVW/VLAD codebooks and the FV mixture");
    c->add_option("--out", codebook.out, "output directory")->required();
    c->add_option("--config", codebook.config, "JSON config");

    ExtractArgs extract;
    auto* e = app.add_subcommand("extract", "compute a feature cache");
    e->add_option("--dataset", extract.dataset, "dataset root")->required();
    e->add_option("--descriptor", extract.descriptors, "descriptor name (repeatable)")
        ->required()
        ->check(CLI::IsMember(bench::all_descriptor_names()));
    e->add_option("--normalize", extract.normalizer, "colour normalization")->check([](const std::string& v) {
        return norm::is_normalizer(v) ? std::string() : "unknown normalizer " + v;
    });
    e->add_option("--cache", extract.cache, "output cache file (directory for several descriptors)")->required();
    e->add_option("--config", extract.config, "JSON config");
    e->add_option("--codebook-dir", extract.codebook_dir, "directory written by `codebook`");
    e->add_flag("--quiet", extract.quiet, "no progress output");

    EvalArgs eval;
    auto* v = app.add_subcommand("eval", "run task suites on feature caches");
    v->add_option("--cache", eval.caches, "feature cache (repeatable)")->required();
    std::vector<std::string> task_choices = bench::task_names();
    task_choices.push_back("all");
    v->add_option("--task", eval.task, "task name or all")->check(CLI::IsMember(task_choices));
    v->add_option("--out", eval.out, "results CSV (stdout when omitted)");
    v->add_option("--per-class", eval.per_class, "per-class accuracy CSV");
    v->add_flag("--same-patches", eval.same_patches, "test on the training patches");

    std::string report_in;
    std::string report_format = "table";
    auto* r = app.add_subcommand("report", "summarize a results CSV as avg (min)");
    r->add_option("--in", report_in, "results CSV")->required();
    r->add_option("--format", report_format, "csv or table")->check(CLI::IsMember({"csv", "table"}));

    std::string curves_in;
    std::string curves_task;
    auto* k = app.add_subcommand("curves", "accuracy against parameter difference");
    k->add_option("--in", curves_in, "results CSV")->required();
    k->add_option("--task", curves_task, "intensity, daylight or direction")
        ->required()
        ->check(CLI::IsMember({"intensity", "daylight", "direction"}));

    std::string config_out;
    auto* d = app.add_subcommand("config", "write the default config");
    d->add_option("--out", config_out, "output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*s) {
            return run_synth(synth);
        }
        if (*c) {
            return run_codebook(codebook);
        }
        if (*e) {
            return run_extract(extract);
        }
        if (*v) {
            return run_eval(eval);
        }
        if (*r) {
            return run_report(report_in, report_format);
        }
        if (*k) {
            return run_curves(curves_in, curves_task);
        }
        if (*d) {
            if (config_out.empty()) {
                std::cout << bench::config_to_json(bench::Config{});
            } else {
                bench::save_config(config_out, bench::Config{});
            }
            return 0;
        }
    } catch (const Error& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
