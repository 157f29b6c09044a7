#include "curvecalc/geomgraph.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "curvecalc/error.hpp"
#include "curvecalc/lattice.hpp"

namespace curvecalc {

namespace {

ComplementPiece piece(int g, int b) { return {{g, b}, false}; }
ComplementPiece annulus() { return {{0, 2}, true}; }

bool hyperbolic(int g, int b) { return 2 * g - 2 + b > 0; }

VertexOrbit nonseparating_curve(SurfaceSig s) {
    return {"nonseparating curve", 1, 0, {piece(s.genus - 1, s.boundary + 2), annulus()}};
}

// One orbit per topological type of separating curve.
std::vector<VertexOrbit> separating_curves(SurfaceSig s) {
    std::vector<VertexOrbit> out;
    for (int h = 0; 2 * h <= s.genus; ++h) {
        for (int b1 = 0; b1 <= s.boundary; ++b1) {
            const int h2 = s.genus - h, b2 = s.boundary - b1;
            if (h == h2 && b1 > b2) continue;
            if (!hyperbolic(h, b1 + 1) || !hyperbolic(h2, b2 + 1)) continue;
            out.push_back({"separating curve (" + std::to_string(h) + "," + std::to_string(b1 + 1) + ")|(" +
                               std::to_string(h2) + "," + std::to_string(b2 + 1) + ")",
                           1, 0, {piece(h, b1 + 1), piece(h2, b2 + 1), annulus()}});
        }
    }
    return out;
}

std::vector<VertexOrbit> bounding_pairs(SurfaceSig s) {
    std::vector<VertexOrbit> out;
    for (int h = 0; 2 * h <= s.genus - 1; ++h) {
        for (int b1 = 0; b1 <= s.boundary; ++b1) {
            const int h2 = s.genus - 1 - h, b2 = s.boundary - b1;
            if (h == h2 && b1 > b2) continue;
            if (!hyperbolic(h, b1 + 2) || !hyperbolic(h2, b2 + 2)) continue;
            out.push_back({"bounding pair", 2, 0, {piece(h, b1 + 2), piece(h2, b2 + 2), annulus(), annulus()}});
        }
    }
    return out;
}

// Arcs with both ends on one boundary circle. Cutting along a nonseparating
// arc keeps one boundary circle more than the stated value once the Euler
// characteristic is balanced, so the two variants differ there.
std::vector<VertexOrbit> arcs(SurfaceSig s, bool euler_audited) {
    std::vector<VertexOrbit> out;
    if (s.genus >= 1)
        out.push_back({"nonseparating arc", 1, 0,
                       {euler_audited ? piece(s.genus - 1, s.boundary + 1) : piece(s.genus - 1, s.boundary)}});
    for (int h = 0; 2 * h <= s.genus; ++h) {
        for (int b1 = 0; b1 <= s.boundary - 1; ++b1) {
            const int h2 = s.genus - h, b2 = s.boundary - 1 - b1;
            if (h == h2 && b1 > b2) continue;
            // Each side needs something essential, otherwise the arc is trivial.
            if (!hyperbolic(h, b1 + 1) && !(h == 0 && b1 == 1)) continue;
            if (!hyperbolic(h2, b2 + 1) && !(h2 == 0 && b2 == 1)) continue;
            out.push_back({"separating arc", 1, 0, {piece(h, b1 + 1), piece(h2, b2 + 1)}});
        }
    }
    return out;
}

void need(bool ok, const std::string& name, SurfaceSig s, const std::string& why) {
    if (!ok) throw CalcError("graph undefined", name + " on " + to_string(s) + ": " + why);
}

template <class... Parts>
std::vector<VertexOrbit> join_orbits(Parts&&... parts) {
    std::vector<VertexOrbit> out;
    (out.insert(out.end(), parts.begin(), parts.end()), ...);
    return out;
}

}  // namespace

std::vector<std::string> builtin_graph_names() {
    return {"hatcher-thurston", "pants",       "marking",    "nonseparating",    "k-separating",
            "torelli",          "schmutz-schaller", "k-multicurve", "arc",         "k-multiarc",
            "flip",             "polygonalization", "arc-and-curve", "domains",    "separating",
            "arc-euler"};
}

GeomGraphSpec builtin_graph(const std::string& name, SurfaceSig s) {
    if (!is_admissible(s)) throw CalcError("inadmissible surface", to_string(s));
    const int g = s.genus, b = s.boundary;
    GeomGraphSpec spec;
    spec.name = name;

    if (name == "hatcher-thurston") {
        need(g >= 1, name, s, "cut systems need positive genus");
        VertexOrbit cut{"cut system", g, 0, {piece(0, 2 * g + b)}};
        for (int i = 0; i < g; ++i) cut.complement.push_back(annulus());
        spec.orbits = {cut};
        spec.edges = "elementary moves";
    } else if (name == "pants") {
        VertexOrbit p{"pants decomposition", 3 * g - 3 + b, 0, {}};
        for (int i = 0; i < 2 * g - 2 + b; ++i) p.complement.push_back(piece(0, 3));
        for (int i = 0; i < 3 * g - 3 + b; ++i) p.complement.push_back(annulus());
        spec.orbits = {p};
        spec.edges = "elementary moves";
        spec.stated_k = 2;
    } else if (name == "marking") {
        // Curves and transversals fill the surface; only discs remain.
        spec.orbits = {{"marking", 2 * (3 * g - 3 + b), 2, {}}};
        spec.edges = "twist and flip moves";
    } else if (name == "nonseparating") {
        need(g >= 1, name, s, "needs positive genus");
        spec.orbits = {nonseparating_curve(s)};
        spec.edges = "disjointness";
    } else if (name == "k-separating" || name == "separating") {
        spec.orbits = separating_curves(s);
        need(!spec.orbits.empty(), name, s, "no essential separating curve");
        spec.edges = name == "separating" ? "disjointness" : "intersection at most k";
        if (name == "separating" && g >= 2 && b <= 1) spec.stated_k = 3 * g - 4;
    } else if (name == "torelli") {
        spec.orbits = join_orbits(separating_curves(s), bounding_pairs(s));
        need(!spec.orbits.empty(), name, s, "no separating curves or bounding pairs");
        spec.edges = "disjointness";
    } else if (name == "schmutz-schaller") {
        need(g >= 1, name, s, "needs positive genus");
        spec.orbits = {nonseparating_curve(s)};
        spec.edges = "intersection exactly one";
    } else if (name == "k-multicurve") {
        // Single curves dominate: adding curves only shrinks the complement.
        spec.orbits = join_orbits(g >= 1 ? std::vector<VertexOrbit>{nonseparating_curve(s)}
                                         : std::vector<VertexOrbit>{},
                                  separating_curves(s));
        spec.edges = "intersection at most k";
    } else if (name == "arc" || name == "arc-euler" || name == "k-multiarc") {
        need(b >= 1, name, s, "arcs need a boundary component");
        spec.orbits = arcs(s, name == "arc-euler");
        need(!spec.orbits.empty(), name, s, "no essential arc");
        spec.edges = name == "k-multiarc" ? "intersection at most k" : "disjointness";
        if (name != "k-multiarc" && g >= 2 && b == 1) spec.stated_k = 3 * g - 4;
    } else if (name == "flip" || name == "polygonalization") {
        need(b >= 1, name, s, "arc systems need marked points");
        const int arcs_in_triangulation = 6 * g - 6 + 3 * b;
        spec.orbits = {{name == "flip" ? "triangulation" : "polygonal decomposition", arcs_in_triangulation, 0, {}}};
        spec.edges = "elementary moves";
    } else if (name == "arc-and-curve") {
        std::vector<VertexOrbit> curves = separating_curves(s);
        if (g >= 1) curves.push_back(nonseparating_curve(s));
        spec.orbits = b >= 1 ? join_orbits(curves, arcs(s, true)) : curves;
        spec.edges = "disjointness";
    } else if (name == "domains") {
        std::vector<VertexOrbit> o = separating_curves(s);
        if (g >= 1) o.push_back(nonseparating_curve(s));
        spec.orbits = o;
        spec.edges = "disjointness";
        spec.conditions_hold = false;
        spec.note = "the curve-count and intersection conditions fail; interpretability needs a separate argument";
    } else {
        throw CalcError("unknown graph", name);
    }
    validate_spec(spec, s);
    return spec;
}

void validate_spec(const GeomGraphSpec& spec, SurfaceSig sig) {
    if (spec.orbits.empty()) throw CalcError("invalid complement signatures", spec.name + ": no vertex orbits");
    for (const VertexOrbit& o : spec.orbits) {
        if (o.n_curves < 1 || o.max_intersection < 0)
            throw CalcError("invalid complement signatures", spec.name + ": N >= 1 and K >= 0 required");
        int chi = 0;
        for (const ComplementPiece& p : o.complement) {
            if (p.sig.genus < 0 || p.sig.boundary < 0 || p.sig.genus > sig.genus)
                throw CalcError("invalid complement signatures", spec.name + ": piece " + to_string(p.sig));
            if (p.annular && p.sig != SurfaceSig{0, 2})
                throw CalcError("invalid complement signatures", spec.name + ": annular piece must be (0,2)");
            chi += euler_characteristic(p.sig);
        }
        if (chi < euler_characteristic(sig))
            throw CalcError("invalid complement signatures",
                            spec.name + ": pieces of " + o.description + " do not fit in " + to_string(sig));
    }
}

int piece_chain(const ComplementPiece& p) {
    if (p.annular) return 1;
    if (3 * p.sig.genus + p.sig.boundary - 3 >= 1) return complexity(p.sig);
    return 0;
}

int k_of_graph(const GeomGraphSpec& spec, SurfaceSig sig) {
    validate_spec(spec, sig);
    int k = 0;
    for (const VertexOrbit& o : spec.orbits) {
        int inner = 0;
        for (const ComplementPiece& p : o.complement) inner = std::max(inner, piece_chain(p));
        k = std::max(k, inner + 1);
    }
    return k;
}

Ordinal rank_bound(const GeomGraphSpec& spec, SurfaceSig sig) { return Ordinal::omega_pow(k_of_graph(spec, sig)); }

namespace {

// Longest chain of connected domains inside `bound`, plus the full domain.
int chain_below(const PantsLattice& lat, DomainId bound) {
    std::vector<DomainId> inside;
    for (DomainId d : lat.connected_domains())
        if (d != lat.full() && lat.contains(bound, d)) inside.push_back(d);
    std::map<DomainId, int> memo;
    std::function<int(DomainId)> longest = [&](DomainId top) {
        auto it = memo.find(top);
        if (it != memo.end()) return it->second;
        int best = 1;
        for (DomainId e : inside)
            if (lat.strictly_contains(top, e)) best = std::max(best, longest(e) + 1);
        return memo[top] = best;
    };
    int k = 0;
    for (DomainId d : inside) k = std::max(k, longest(d));
    return k + 1;
}

bool disconnects(const PantsGraph& g, EdgeMask removed) {
    std::vector<int> parent(g.n_vertices);
    for (int i = 0; i < g.n_vertices; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int e = 0; e < g.n_edges(); ++e)
        if (!(removed >> e & 1u)) parent[find(g.edges[e].first)] = find(g.edges[e].second);
    for (int i = 1; i < g.n_vertices; ++i)
        if (find(i) != find(0)) return true;
    return false;
}

}  // namespace

std::optional<int> backend_k(const std::string& name, SurfaceSig sig) {
    static const std::vector<std::string> realizable{"pants",     "nonseparating", "schmutz-schaller", "k-multicurve",
                                                     "separating", "k-separating", "torelli",           "hatcher-thurston",
                                                     "marking",   "domains"};
    if (std::find(realizable.begin(), realizable.end(), name) == realizable.end()) return std::nullopt;

    std::optional<int> best;
    for (const PantsGraph& graph : enumerate_pants_graphs(sig)) {
        const PantsLattice lat(graph);
        const int n = graph.n_edges();
        auto curves = [&](EdgeMask m) { return lat.id(PantsDomain{{}, m}); };
        std::vector<DomainId> vertices;

        for (EdgeMask m = 1; m < (1u << n); ++m) {
            const int count = __builtin_popcount(m);
            const bool single = count == 1;
            const bool sep = disconnects(graph, m);
            bool take = false;
            if (name == "pants") take = m == graph.all_edges();
            if (name == "marking") take = false;
            if (name == "nonseparating" || name == "schmutz-schaller") take = single && !sep;
            if (name == "separating" || name == "k-separating") take = single && sep;
            if (name == "k-multicurve" || name == "domains") take = single;
            if (name == "torelli") {
                // Separating curves, and pairs that separate with neither curve doing so alone.
                bool minimal = true;
                for (int e = 0; e < n; ++e)
                    if ((m >> e & 1u) && disconnects(graph, 1u << e)) minimal = false;
                take = (single && sep) || (count == 2 && sep && minimal);
            }
            if (name == "hatcher-thurston") take = count == sig.genus && !sep && n - count == graph.n_vertices - 1;
            if (take) vertices.push_back(curves(m));
        }
        if (name == "marking") vertices.push_back(lat.full());
        if (name == "domains")
            for (DomainId d : lat.connected_domains())
                if (d != lat.full()) vertices.push_back(d);

        for (DomainId v : vertices) {
            const int k = chain_below(lat, lat.complement(v));
            if (!best || k > *best) best = k;
        }
    }
    return best;
}

Verdict interpretability_verdict(const GeomGraphSpec& spec, SurfaceSig sig) {
    Verdict v;
    const int kx = k_of_graph(spec, sig);
    const int ks = complexity(sig);
    v.rank_gap = kx < ks;
    const int g = sig.genus, b = sig.boundary;
    std::string guard_text;
    if (spec.name == "pants") {
        v.guard = 3 * g + b - 2 > 2;
        guard_text = "3g+b-2 > 2";
    } else if (spec.name == "separating") {
        v.guard = g >= 2 && b <= 1;
        guard_text = "g >= 2 and b <= 1";
    } else if (spec.name == "arc" || spec.name == "arc-euler") {
        v.guard = g >= 2 && b == 1;
        guard_text = "g >= 2 and b = 1";
    } else {
        // Only the pants, separating curve and arc graphs come with a verdict.
        guard_text = "verdict only stated for the pants, separating curve and arc graphs";
    }
    v.not_interpretable = v.guard && v.rank_gap;
    const std::string cmp = "w^" + std::to_string(kx) + (v.rank_gap ? " < " : " >= ") + "w^" + std::to_string(ks);
    if (v.not_interpretable)
        v.statement = "C(S) not interpretable in " + spec.name + " (" + cmp + ", " + guard_text + ")";
    else
        v.statement = "no verdict (" + cmp + (v.guard ? "" : ", guard " + guard_text + " fails") + ")";
    return v;
}

}  // namespace curvecalc
