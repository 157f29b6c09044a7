#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvecalc/ordinal.hpp"
#include "curvecalc/pants.hpp"
#include "curvecalc/surface.hpp"

namespace curvecalc {

/// One component of the complement of Fill(v).
struct ComplementPiece {
    SurfaceSig sig;
    bool annular = false;
};

/// A G-orbit of vertices: N curves or arcs with pairwise intersection <= K.
struct VertexOrbit {
    std::string description;
    int n_curves = 1;
    int max_intersection = 0;
    std::vector<ComplementPiece> complement;
};

struct GeomGraphSpec {
    std::string name;
    std::string edges;  // informational
    std::vector<VertexOrbit> orbits;
    /// Whether the finiteness conditions on N, K and edge orbits hold.
    bool conditions_hold = true;
    std::string note;
    /// The value of k stated in the literature for this graph, when there is one.
    std::optional<int> stated_k;
};

/// Names of the fourteen built-in graphs plus the variants ("separating",
/// "arc-euler").
std::vector<std::string> builtin_graph_names();

/// The built-in spec at a surface. Throws CalcError("unknown graph") or
/// CalcError("graph undefined") when the graph does not exist on that surface.
GeomGraphSpec builtin_graph(const std::string& name, SurfaceSig sig);

/// Rejects specs with malformed orbits or complements that cannot embed.
void validate_spec(const GeomGraphSpec& spec, SurfaceSig sig);

/// Longest chain inside one complement piece (annulus 1, pants 0).
int piece_chain(const ComplementPiece& p);

/// max over orbits of 1 + the longest chain inside a complement piece.
int k_of_graph(const GeomGraphSpec& spec, SurfaceSig sig);

Ordinal rank_bound(const GeomGraphSpec& spec, SurfaceSig sig);

/// k from exhaustive chain search in pants lattices, for graphs whose
/// vertices can be realized by decomposition curves. Maximized over every
/// pants graph of the surface and every realized vertex.
std::optional<int> backend_k(const std::string& name, SurfaceSig sig);

struct Verdict {
    bool guard = false;          // the extra hypotheses on (g, b)
    bool rank_gap = false;       // w^k(X) < w^(3g+b-2)
    bool not_interpretable = false;
    std::string statement;
};
Verdict interpretability_verdict(const GeomGraphSpec& spec, SurfaceSig sig);

}  // namespace curvecalc
