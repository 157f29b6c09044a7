#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvecalc/fragment.hpp"
#include "curvecalc/geomgraph.hpp"
#include "curvecalc/ordinal.hpp"
#include "curvecalc/surface.hpp"
#include "curvecalc/word.hpp"

namespace curvecalc {

using json = nlohmann::json;

/// Signatures serialize as {"g": genus, "b": boundary}.
json sig_json(SurfaceSig s);
SurfaceSig sig_from_json(const json& j);

/// Everything a report needs to be reproduced.
struct RunConfig {
    SurfaceSig sig{2, 0};
    std::string backend = "dumbbell";  // "dumbbell", "pants:<index>" or "torus"
    Budgets budgets;
    int chain_depth = 6;
    std::uint64_t seed = 1;
    std::string output;  // empty: stdout
};

json to_json(const RunConfig& c);
/// Reads a RunConfig; missing keys keep their defaults.
RunConfig run_config_from_json(const json& j);

json to_json(const Ordinal& o);
Ordinal ordinal_from_json(const json& j);

/// Words serialize as their letter tokens.
json word_json(const Calculus& calc, const Word& w);
json slope_json(const Slope& s);

json error_record(const std::string& kind, const std::string& detail);

json to_json(const GeomGraphSpec& spec);
GeomGraphSpec geom_spec_from_json(const json& j);

/// A fragment spec file: points as matrices, the slope alphabet and budgets.
struct FragmentSpec {
    std::vector<GroupElem> points;
    std::vector<Slope> alphabet;
    Budgets budgets;
};
FragmentSpec fragment_spec_from_json(const json& j);
json to_json(const FragmentSpec& f);
json budgets_json(const Budgets& b);

/// Pretty-printed with sorted keys, so identical inputs give identical bytes.
std::string dump_report(const json& j);

}  // namespace curvecalc
