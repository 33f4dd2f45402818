// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <algorithm>
#include <set>

#include "texbench/benchkit.hpp"
#include "texbench/error.hpp"

namespace texbench::bench {

namespace {

using light::ConditionKind;
using light::LightCondition;

std::vector<const LightCondition*> of_kind(const std::vector<LightCondition>& catalog, ConditionKind kind) {
    std::vector<const LightCondition*> out;
    for (const auto& c : catalog) {
        if (c.kind == kind) {
            out.push_back(&c);
        }
    }
    return out;
}

template <typename Keep>
TaskSuite pairs(std::string name, const std::vector<const LightCondition*>& train,
                const std::vector<const LightCondition*>& test, Keep keep) {
    TaskSuite s;
    s.name = std::move(name);
    for (const auto* a : train) {
        for (const auto* b : test) {
            if (keep(*a, *b)) {
                s.subsets.push_back({static_cast<int>(s.subsets.size()) + 1, a->id, b->id});
            }
        }
    }
    return s;
}

bool distinct(const LightCondition& a, const LightCondition& b) { return a.id != b.id; }

} // namespace

const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names = {
        "no-variations", "intensity",         "direction",          "daylight",        "led",
        "daylight-vs-led", "temp-or-direction", "temp-and-direction", "multi-illuminant",
    };
    return names;
}

std::size_t task_index(std::string_view name) {
    const auto& n = task_names();
    const auto it = std::find(n.begin(), n.end(), name);
    if (it == n.end()) {
        throw InvalidInput("unknown task: " + std::string(name));
    }
    return static_cast<std::size_t>(it - n.begin());
}

std::vector<TaskSuite> build_tasks(const std::vector<LightCondition>& catalog) {
    std::set<std::string> have;
    for (const auto& c : catalog) {
        have.insert(c.id);
    }
    std::string missing;
    for (const auto& c : light::condition_catalog()) {
        if (!have.count(c.id)) {
            missing += (missing.empty() ? "" : ", ") + c.id;
        }
    }
    if (!missing.empty()) {
        throw InvalidInput("build_tasks: catalog is missing " + missing);
    }

    std::vector<const LightCondition*> all;
    for (const auto& c : catalog) {
        all.push_back(&c);
    }
    const auto intensity = of_kind(catalog, ConditionKind::Intensity);
    const auto direction = of_kind(catalog, ConditionKind::Direction);
    const auto daylight = of_kind(catalog, ConditionKind::Daylight);
    const auto led = of_kind(catalog, ConditionKind::Led);
    const auto mixed = of_kind(catalog, ConditionKind::ColorAndDirection);
    const auto multi = of_kind(catalog, ConditionKind::MultiIlluminant);

    std::vector<TaskSuite> out;
    out.push_back(pairs("no-variations", all, all, [](const auto& a, const auto& b) { return a.id == b.id; }));
    out.push_back(pairs("intensity", intensity, intensity, distinct));
    out.push_back(pairs("direction", direction, direction, distinct));
    out.push_back(pairs("daylight", daylight, daylight, distinct));
    out.push_back(pairs("led", led, led, distinct));
    out.push_back(pairs("daylight-vs-led", daylight, led, [](const auto&, const auto&) { return true; }));
    out.push_back(pairs("temp-or-direction", mixed, mixed, distinct));
    out.push_back(pairs("temp-and-direction", mixed, mixed, [](const auto& a, const auto& b) {
        return !(a.illuminant == b.illuminant) && a.theta != b.theta;
    }));
    out.push_back(pairs("multi-illuminant", multi, multi, distinct));
    return out;
}

const TaskSuite& find_task(const std::vector<TaskSuite>& suites, std::string_view name) {
    for (const auto& s : suites) {
        if (s.name == name) {
            return s;
        }
    }
    throw InvalidInput("unknown task: " + std::string(name));
}

} // namespace texbench::bench
