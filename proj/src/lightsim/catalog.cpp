// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the texbench Project.

#include <cmath>

#include "texbench/error.hpp"
#include "texbench/light.hpp"

namespace texbench::light {

std::string_view kind_name(ConditionKind kind) {
    switch (kind) {
    case ConditionKind::Intensity:
        return "intensity";
    case ConditionKind::Direction:
        return "direction";
    case ConditionKind::Daylight:
        return "daylight";
    case ConditionKind::Led:
        return "led";
    case ConditionKind::ColorAndDirection:
        return "color-and-direction";
    case ConditionKind::MultiIlluminant:
        return "multi-illuminant";
    case ConditionKind::Primary:
        return "primary";
    }
    return "unknown";
}

std::string Illuminant::name() const {
    const int hundreds = static_cast<int>(std::lround(cct / 100.0));
    switch (family) {
    case Family::Neutral:
        return "N";
    case Family::Daylight:
        return "D" + std::to_string(hundreds);
    case Family::Led:
        return "L" + std::to_string(hundreds);
    case Family::Primary:
        return primary == PrimaryColor::Red ? "RED" : primary == PrimaryColor::Green ? "GREEN" : "BLUE";
    }
    return "?";
}

namespace {

Illuminant daylight(double t) {
    return {Illuminant::Family::Daylight, t, PrimaryColor::Red};
}

Illuminant led(double t) {
    return {Illuminant::Family::Led, t, PrimaryColor::Red};
}

std::vector<LightCondition> build_catalog() {
    std::vector<LightCondition> cat;
    for (int pct : {100, 75, 50, 25}) {
        LightCondition c;
        c.id = "I" + std::to_string(pct);
        c.kind = ConditionKind::Intensity;
        c.intensity = pct / 100.0;
        cat.push_back(c);
    }
    for (int theta : {24, 30, 36, 42, 48, 54, 60, 66, 90}) {
        LightCondition c;
        c.id = "DIR" + std::to_string(theta);
        c.kind = ConditionKind::Direction;
        c.theta = theta;
        cat.push_back(c);
    }
    for (int t = 4000; t <= 9500; t += 500) {
        LightCondition c;
        c.kind = ConditionKind::Daylight;
        c.cct = t;
        c.illuminant = daylight(t);
        c.id = c.illuminant.name();
        cat.push_back(c);
    }
    for (int t : {2700, 3000, 4000, 5000, 5700, 6500}) {
        LightCondition c;
        c.kind = ConditionKind::Led;
        c.led_cct = t;
        c.illuminant = led(t);
        c.id = c.illuminant.name();
        cat.push_back(c);
    }
    const Illuminant colors[] = {daylight(6500), daylight(9500), led(2700)};
    for (int theta : {24, 60, 90}) {
        for (const Illuminant& col : colors) {
            LightCondition c;
            c.kind = ConditionKind::ColorAndDirection;
            c.theta = theta;
            c.illuminant = col;
            if (col.family == Illuminant::Family::Led) {
                c.led_cct = col.cct;
            } else {
                c.cct = col.cct;
            }
            c.id = col.name() + "_" + std::to_string(theta);
            cat.push_back(c);
        }
    }
    const std::pair<Illuminant, Illuminant> pairs[] = {
        {colors[0], colors[1]}, {colors[0], colors[2]}, {colors[1], colors[2]}};
    for (const auto& [a, b] : pairs) {
        LightCondition c;
        c.kind = ConditionKind::MultiIlluminant;
        c.illuminant = a;
        c.second = b;
        c.id = a.name() + "-" + b.name();
        cat.push_back(c);
    }
    for (PrimaryColor p : {PrimaryColor::Red, PrimaryColor::Green, PrimaryColor::Blue}) {
        LightCondition c;
        c.kind = ConditionKind::Primary;
        c.primary = p;
        c.illuminant = {Illuminant::Family::Primary, 6500.0, p};
        c.id = c.illuminant.name();
        cat.push_back(c);
    }
    return cat;
}

} // namespace

const std::vector<LightCondition>& condition_catalog() {
    static const std::vector<LightCondition> catalog = build_catalog();
    return catalog;
}

const LightCondition* find_condition(std::string_view id) {
    for (const LightCondition& c : condition_catalog()) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

std::size_t catalog_index(std::string_view id) {
    const auto& cat = condition_catalog();
    for (std::size_t i = 0; i < cat.size(); ++i) {
        if (cat[i].id == id) {
            return i;
        }
    }
    throw InvalidInput("unknown condition id '" + std::string(id) + "'");
}

} // namespace texbench::light
