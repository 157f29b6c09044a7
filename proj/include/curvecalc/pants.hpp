#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "curvecalc/surface.hpp"

namespace curvecalc {

using EdgeMask = std::uint32_t;
using VertexMask = std::uint32_t;

/// A pants decomposition seen as a trivalent multigraph: one vertex per pair of
/// pants, one internal edge per decomposition curve, legs for the boundary
/// circles of the surface. Edges are stored in sorted order and addressed by
/// index; bit i of an EdgeMask is edge i.
struct PantsGraph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // u <= v, loops have u == v
    std::vector<int> legs;                   // per vertex

    SurfaceSig sig() const;
    int n_edges() const { return static_cast<int>(edges.size()); }
    EdgeMask all_edges() const { return n_edges() == 32 ? ~0u : ((1u << n_edges()) - 1u); }
    bool is_loop(int e) const { return edges[e].first == edges[e].second; }

    VertexMask endpoints(EdgeMask f) const;
    /// Edges with at least one endpoint in v.
    EdgeMask incident(VertexMask v) const;
    /// Edges with both endpoints in v.
    EdgeMask inside(VertexMask v) const;
    int legs_of(VertexMask v) const;
    /// Connected components of the subgraph spanned by an edge set.
    std::vector<EdgeMask> components(EdgeMask f) const;
    bool edge_connected(EdgeMask f) const;
    /// Short human label: "theta", "dumbbell", or "g2b1#0" style.
    std::string name() const;
    std::string edge_name(int e) const;

    auto operator<=>(const PantsGraph&) const = default;
};

/// All isomorphism classes of pants decompositions of the given surface.
/// Throws CalcError("no pants decomposition exists") if 2g - 2 + b < 1.
std::vector<PantsGraph> enumerate_pants_graphs(SurfaceSig sig);

/// A raw piece of subsurface: the pants in `vertices` glued along `interior`.
struct Block {
    VertexMask vertices = 0;
    EdgeMask interior = 0;
};

/// Canonical domain over a pants graph. Each block is a connected, non-empty
/// interior edge set (its vertices are the endpoints); blocks are vertex
/// disjoint and sorted. `annuli` holds the decomposition curves kept as annular
/// components; none of them is interior or peripheral to a block.
struct PantsDomain {
    std::vector<EdgeMask> blocks;
    EdgeMask annuli = 0;

    bool empty() const { return blocks.empty() && annuli == 0; }
    auto operator<=>(const PantsDomain&) const = default;
};

/// One component of a realization; annuli are reported as (0,2) and tagged.
struct RealizedPiece {
    SurfaceSig sig;
    bool annular = false;
    auto operator<=>(const RealizedPiece&) const = default;
};

struct ChainSearchResult {
    int max_length = 0;
    int graph_index = 0;
    std::vector<PantsDomain> witness;   // D_1 ⊊ ... ⊊ D_k
    std::vector<int> per_graph_max;     // maximum for each enumerated graph
};

class PantsOps {
public:
    explicit PantsOps(PantsGraph graph) : g_(std::move(graph)) {}

    const PantsGraph& graph() const { return g_; }

    PantsDomain empty() const { return {}; }
    PantsDomain full() const;
    PantsDomain annulus(int edge) const;
    /// Builds the canonical domain of a collection of raw blocks and annuli.
    /// Pants blocks turn into their essential boundary annuli; absorbed annuli
    /// are dropped. Overlapping blocks are rejected.
    PantsDomain make(const std::vector<Block>& raw, EdgeMask annuli = 0) const;

    bool is_canonical(const PantsDomain& d) const;
    bool is_connected(const PantsDomain& d) const;

    SurfaceSig realize_block(const Block& b) const;
    std::vector<RealizedPiece> realize(const PantsDomain& d) const;
    /// k(D) for a connected domain (0 for an annulus).
    int complexity(const PantsDomain& d) const;

    /// Annuli contained in the domain: block interiors, block boundaries, annuli.
    EdgeMask curve_edges(const PantsDomain& d) const;
    VertexMask block_vertices(const PantsDomain& d) const;
    EdgeMask block_interiors(const PantsDomain& d) const;

    bool orthogonal(const PantsDomain& a, const PantsDomain& b) const;
    bool contains(const PantsDomain& big, const PantsDomain& small) const;
    PantsDomain complement(const PantsDomain& d) const;
    PantsDomain join(const PantsDomain& a, const PantsDomain& b) const;
    PantsDomain meet(const PantsDomain& a, const PantsDomain& b) const;
    PantsDomain boundary(const PantsDomain& d) const;
    bool is_transverse(const PantsDomain& a, const PantsDomain& b) const;
    bool strongly_orthogonal(const PantsDomain& a, const PantsDomain& b) const;
    std::vector<PantsDomain> decompose_connected(const PantsDomain& d) const;

    /// Every canonical domain of this graph, in a fixed order (empty first).
    std::vector<PantsDomain> all_domains() const;
    std::vector<PantsDomain> connected_domains() const;

    /// Longest chain of connected domains ending in the full domain.
    ChainSearchResult longest_chain(std::size_t budget) const;

    /// Image under a graph automorphism given as vertex and edge permutations.
    PantsDomain permute(const PantsDomain& d, const std::vector<int>& edge_perm) const;

    std::string to_string(const PantsDomain& d) const;

private:
    void check(const PantsDomain& d) const;
    PantsGraph g_;
};

/// Exhaustive chain search over every pants graph of the signature.
/// Throws CalcError("budget") if a graph has more connected domains than `budget`.
ChainSearchResult enumerate_chains(SurfaceSig sig, std::size_t budget = 1u << 20);

}  // namespace curvecalc
