#include "curvecalc/report.hpp"

#include "curvecalc/error.hpp"

namespace curvecalc {

json budgets_json(const Budgets& b) {
    return {{"L", b.max_length}, {"E", b.max_exponent}, {"twist_step", b.twist_step}};
}

json sig_json(SurfaceSig s) { return {{"g", s.genus}, {"b", s.boundary}}; }

SurfaceSig sig_from_json(const json& j) {
    if (!j.is_object() || !j.contains("g") || !j.contains("b")) throw CalcError("invalid surface", j.dump());
    return {j["g"].get<int>(), j["b"].get<int>()};
}

json to_json(const RunConfig& c) {
    return {{"surface", sig_json(c.sig)},
            {"backend", c.backend},
            {"budgets", budgets_json(c.budgets)},
            {"chain_depth", c.chain_depth},
            {"seed", c.seed}};
}

namespace {

Budgets budgets_from_json(const json& j, Budgets b) {
    b.max_length = j.value("L", b.max_length);
    b.max_exponent = j.value("E", b.max_exponent);
    b.twist_step = j.value("twist_step", b.twist_step);
    if (b.max_length < 0 || b.max_exponent < 1 || b.twist_step < 1)
        throw CalcError("invalid budget", "budgets must be positive");
    return b;
}

Mat2 matrix_from_json(const json& j) {
    if (j.is_string()) {
        // Same spelling the torus group accepts.
        TorusLattice lat;
        TorusGroup grp(lat);
        return grp.parse(j.get<std::string>()).mat;
    }
    if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
        throw CalcError("invalid matrix", j.dump());
    const Mat2 m{j[0][0].get<Int>(), j[0][1].get<Int>(), j[1][0].get<Int>(), j[1][1].get<Int>()};
    if (m.det() != 1) throw CalcError("not in SL(2,Z)", m.str());
    return m;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
    RunConfig c;
    if (j.contains("surface")) c.sig = sig_from_json(j["surface"]);
    c.backend = j.value("backend", c.backend);
    if (j.contains("budgets")) c.budgets = budgets_from_json(j["budgets"], c.budgets);
    c.chain_depth = j.value("chain_depth", c.chain_depth);
    c.seed = j.value("seed", c.seed);
    c.output = j.value("output", c.output);
    if (c.chain_depth < 0) throw CalcError("invalid budget", "chain depth must be non-negative");
    return c;
}

json to_json(const Ordinal& o) {
    json cnf = json::array();
    for (auto [e, c] : o.terms()) cnf.push_back({e, c});
    return {{"cnf", cnf}, {"str", o.str()}};
}

Ordinal ordinal_from_json(const json& j) {
    Ordinal o;
    for (const json& t : j.at("cnf")) o += Ordinal::omega_pow(t.at(0).get<int>(), t.at(1).get<std::int64_t>());
    return o;
}

json word_json(const Calculus& calc, const Word& w) {
    json out = json::array();
    for (const Letter& x : w) out.push_back(calc.format(Word{x}));
    return out;
}

json slope_json(const Slope& s) { return s.str(); }

json error_record(const std::string& kind, const std::string& detail) {
    return {{"status", "error"}, {"error", {{"kind", kind}, {"detail", detail}}}};
}

json to_json(const GeomGraphSpec& spec) {
    json orbits = json::array();
    for (const VertexOrbit& o : spec.orbits) {
        json pieces = json::array();
        int annuli = 0;
        for (const ComplementPiece& p : o.complement) {
            if (p.annular) ++annuli;
            else pieces.push_back(sig_json(p.sig));
        }
        orbits.push_back({{"description", o.description},
                          {"N", o.n_curves},
                          {"K", o.max_intersection},
                          {"complement", pieces},
                          {"annuli", annuli}});
    }
    json j{{"name", spec.name}, {"edges", spec.edges}, {"orbits", orbits}, {"conditions_hold", spec.conditions_hold}};
    if (!spec.note.empty()) j["note"] = spec.note;
    if (spec.stated_k) j["stated_k"] = *spec.stated_k;
    return j;
}

GeomGraphSpec geom_spec_from_json(const json& j) {
    GeomGraphSpec spec;
    spec.name = j.at("name").get<std::string>();
    spec.edges = j.value("edges", "");
    spec.conditions_hold = j.value("conditions_hold", true);
    spec.note = j.value("note", "");
    if (j.contains("stated_k")) spec.stated_k = j["stated_k"].get<int>();
    for (const json& o : j.at("orbits")) {
        VertexOrbit orbit;
        orbit.description = o.value("description", "");
        orbit.n_curves = o.value("N", 1);
        orbit.max_intersection = o.value("K", 0);
        for (const json& p : o.value("complement", json::array()))
            orbit.complement.push_back({sig_from_json(p), false});
        for (int i = 0; i < o.value("annuli", 0); ++i) orbit.complement.push_back({{0, 2}, true});
        spec.orbits.push_back(orbit);
    }
    return spec;
}

FragmentSpec fragment_spec_from_json(const json& j) {
    FragmentSpec f;
    for (const json& p : j.at("points")) f.points.push_back(TorusGroup::elem(matrix_from_json(p)));
    for (const json& s : j.value("alphabet", json::array({"0/1", "1/0"})))
        f.alphabet.push_back(Slope::parse(s.get<std::string>()));
    if (j.contains("budgets")) f.budgets = budgets_from_json(j["budgets"], f.budgets);
    return f;
}

json to_json(const FragmentSpec& f) {
    json pts = json::array();
    for (const GroupElem& g : f.points) pts.push_back(g.mat.str());
    json al = json::array();
    for (const Slope& s : f.alphabet) al.push_back(s.str());
    return {{"points", pts}, {"alphabet", al}, {"budgets", budgets_json(f.budgets)}};
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace curvecalc
