// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "texbench/benchkit.hpp"
#include "texbench/error.hpp"

namespace texbench::bench {

namespace {

constexpr const char* kHeader = "descriptor,normalizer,task,subset_id,train_cond,test_cond,n_test,accuracy";

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void sort_results(std::vector<EvalResult>& results) {
    std::stable_sort(results.begin(), results.end(), [](const EvalResult& a, const EvalResult& b) {
        return std::tuple(a.descriptor, a.normalizer, task_index(a.task)) <
               std::tuple(b.descriptor, b.normalizer, task_index(b.task));
    });
    for (auto& r : results) {
        std::stable_sort(r.subsets.begin(), r.subsets.end(),
                         [](const SubsetResult& a, const SubsetResult& b) { return a.subset_id < b.subset_id; });
    }
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

} // namespace

void write_results_csv(std::ostream& out, std::vector<EvalResult> results) {
    sort_results(results);
    out << kHeader << '\n';
    for (const auto& r : results) {
        for (const auto& s : r.subsets) {
            out << r.descriptor << ',' << r.normalizer << ',' << r.task << ',' << s.subset_id << ',' << s.train << ','
                << s.test << ',' << s.n_test << ',' << fixed(s.accuracy, 6) << '\n';
        }
    }
}

std::vector<EvalResult> read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw FormatError("results CSV: unexpected header");
    }
    std::vector<EvalResult> out;
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> where;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != 8) {
            throw FormatError("results CSV line " + std::to_string(lineno) + ": expected 8 fields");
        }
        SubsetResult s;
        try {
            s.subset_id = std::stoi(f[3]);
            s.n_test = std::stoi(f[6]);
            s.accuracy = std::stod(f[7]);
        } catch (const std::exception&) {
            throw FormatError("results CSV line " + std::to_string(lineno) + ": bad number");
        }
        if (s.n_test <= 0 || s.accuracy < 0.0 || s.accuracy > 1.0) {
            throw FormatError("results CSV line " + std::to_string(lineno) + ": value out of range");
        }
        task_index(f[2]);
        s.train = f[4];
        s.test = f[5];
        // accuracies are printed rounded; the count is exact
        s.correct = static_cast<int>(std::lround(s.accuracy * s.n_test));
        s.accuracy = static_cast<double>(s.correct) / s.n_test;
        const auto key = std::tuple(f[0], f[1], f[2]);
        auto it = where.find(key);
        if (it == where.end()) {
            it = where.emplace(key, out.size()).first;
            EvalResult r;
            r.descriptor = f[0];
            r.normalizer = f[1];
            r.task = f[2];
            out.push_back(std::move(r));
        }
        out[it->second].subsets.push_back(std::move(s));
    }
    for (auto& r : out) {
        r.aggregate();
    }
    return out;
}

void write_per_class_csv(std::ostream& out, std::vector<EvalResult> results) {
    sort_results(results);
    out << "descriptor,normalizer,task,class_id,n_test,accuracy\n";
    for (const auto& r : results) {
        for (const auto& [cls, pc] : r.per_class) {
            out << r.descriptor << ',' << r.normalizer << ',' << r.task << ',' << cls << ',' << pc.second << ','
                << fixed(pc.second > 0 ? static_cast<double>(pc.first) / pc.second : 0.0, 6) << '\n';
        }
    }
}

std::string format_avg_min(double avg, double min) { return fixed(100.0 * avg, 2) + " (" + fixed(100.0 * min, 2) + ")"; }

std::string summary_table(const std::vector<EvalResult>& results) {
    std::vector<EvalResult> sorted = results;
    sort_results(sorted);
    // rows keyed by descriptor / normalizer in sorted order
    std::vector<std::pair<std::string, std::string>> rows;
    std::map<std::pair<std::string, std::string>, std::map<std::size_t, std::string>> cells;
    for (const auto& r : sorted) {
        const auto key = std::pair(r.descriptor, r.normalizer);
        if (!cells.count(key)) {
            rows.push_back(key);
        }
        cells[key][task_index(r.task)] = format_avg_min(r.avg, r.min);
    }
    const auto& tasks = task_names();
    std::vector<std::size_t> used;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        for (const auto& [k, c] : cells) {
            if (c.count(t)) {
                used.push_back(t);
                break;
            }
        }
    }
    std::size_t w0 = std::string("descriptor").size();
    std::size_t w1 = std::string("normalizer").size();
    for (const auto& [d, n] : rows) {
        w0 = std::max(w0, d.size());
        w1 = std::max(w1, n.size());
    }
    std::vector<std::size_t> widths;
    for (std::size_t t : used) {
        widths.push_back(std::max<std::size_t>(tasks[t].size(), 15));
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
    std::ostringstream out;
    out << pad("descriptor", w0) << "  " << pad("normalizer", w1);
    for (std::size_t i = 0; i < used.size(); ++i) {
        out << "  " << pad(tasks[used[i]], widths[i]);
    }
    out << '\n';
    for (const auto& key : rows) {
        out << pad(key.first, w0) << "  " << pad(key.second, w1);
        const auto& c = cells[key];
        for (std::size_t i = 0; i < used.size(); ++i) {
            const auto it = c.find(used[i]);
            out << "  " << pad(it == c.end() ? "-" : it->second, widths[i]);
        }
        out << '\n';
    }
    std::string s = out.str();
    // strip trailing blanks per line
    std::string clean;
    std::istringstream lines(s);
    std::string line;
    while (std::getline(lines, line)) {
        line.erase(line.find_last_not_of(' ') + 1);
        clean += line + '\n';
    }
    return clean;
}

std::string summary_csv(const std::vector<EvalResult>& results) {
    std::vector<EvalResult> sorted = results;
    sort_results(sorted);
    std::string out = "descriptor,normalizer,task,subsets,avg,min\n";
    for (const auto& r : sorted) {
        out += r.descriptor + ',' + r.normalizer + ',' + r.task + ',' + std::to_string(r.subsets.size()) + ',' +
               fixed(100.0 * r.avg, 2) + ',' + fixed(100.0 * r.min, 2) + '\n';
    }
    return out;
}

} // namespace texbench::bench
