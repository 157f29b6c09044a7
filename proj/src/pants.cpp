#include "curvecalc/pants.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "curvecalc/error.hpp"

namespace curvecalc {

namespace {

int popcount(std::uint32_t x) { return std::popcount(x); }

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

PantsGraph relabel(const PantsGraph& g, const std::vector<int>& perm) {
    PantsGraph out;
    out.n_vertices = g.n_vertices;
    out.legs.assign(g.n_vertices, 0);
    for (int v = 0; v < g.n_vertices; ++v) out.legs[perm[v]] = g.legs[v];
    for (auto [u, v] : g.edges) {
        int a = perm[u], b = perm[v];
        out.edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

PantsGraph canonical_form(const PantsGraph& g) {
    std::vector<int> perm(g.n_vertices);
    std::iota(perm.begin(), perm.end(), 0);
    PantsGraph best = relabel(g, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        PantsGraph cand = relabel(g, perm);
        if (std::tie(cand.edges, cand.legs) < std::tie(best.edges, best.legs)) best = std::move(cand);
    }
    return best;
}

bool graph_connected(const PantsGraph& g) {
    UnionFind uf(g.n_vertices);
    for (auto [u, v] : g.edges) uf.unite(u, v);
    for (int v = 1; v < g.n_vertices; ++v)
        if (uf.find(v) != uf.find(0)) return false;
    return true;
}

}  // namespace

SurfaceSig PantsGraph::sig() const {
    int b = std::accumulate(legs.begin(), legs.end(), 0);
    int g = n_edges() - n_vertices + 1;
    return {g, b};
}

VertexMask PantsGraph::endpoints(EdgeMask f) const {
    VertexMask out = 0;
    for (int e = 0; e < n_edges(); ++e)
        if (f >> e & 1u) out |= (1u << edges[e].first) | (1u << edges[e].second);
    return out;
}

EdgeMask PantsGraph::incident(VertexMask v) const {
    EdgeMask out = 0;
    for (int e = 0; e < n_edges(); ++e)
        if ((v >> edges[e].first & 1u) || (v >> edges[e].second & 1u)) out |= 1u << e;
    return out;
}

EdgeMask PantsGraph::inside(VertexMask v) const {
    EdgeMask out = 0;
    for (int e = 0; e < n_edges(); ++e)
        if ((v >> edges[e].first & 1u) && (v >> edges[e].second & 1u)) out |= 1u << e;
    return out;
}

int PantsGraph::legs_of(VertexMask v) const {
    int total = 0;
    for (int i = 0; i < n_vertices; ++i)
        if (v >> i & 1u) total += legs[i];
    return total;
}

std::vector<EdgeMask> PantsGraph::components(EdgeMask f) const {
    UnionFind uf(n_vertices);
    for (int e = 0; e < n_edges(); ++e)
        if (f >> e & 1u) uf.unite(edges[e].first, edges[e].second);
    std::map<int, EdgeMask> byRoot;
    for (int e = 0; e < n_edges(); ++e)
        if (f >> e & 1u) byRoot[uf.find(edges[e].first)] |= 1u << e;
    std::vector<EdgeMask> out;
    for (auto& [root, mask] : byRoot) out.push_back(mask);
    std::sort(out.begin(), out.end());
    return out;
}

bool PantsGraph::edge_connected(EdgeMask f) const { return f != 0 && components(f).size() == 1; }

std::string PantsGraph::name() const {
    if (n_vertices == 2 && edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 1}, {0, 1}})
        return "theta";
    if (n_vertices == 2 && edges == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}})
        return "dumbbell";
    std::string s = "[";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(edges[i].first) + std::to_string(edges[i].second);
    }
    s += "|";
    for (std::size_t i = 0; i < legs.size(); ++i) s += std::to_string(legs[i]);
    return s + "]";
}

std::string PantsGraph::edge_name(int e) const { return "e" + std::to_string(e); }

std::vector<PantsGraph> enumerate_pants_graphs(SurfaceSig sig) {
    const int n = 2 * sig.genus - 2 + sig.boundary;
    const int m = 3 * sig.genus - 3 + sig.boundary;
    if (sig.genus < 0 || sig.boundary < 0 || n < 1)
        throw CalcError("no pants decomposition exists", to_string(sig));
    if (n > 8 || m > 31) throw CalcError("budget", "pants graphs beyond 8 vertices");

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pairs.emplace_back(i, j);

    std::set<std::pair<std::vector<std::pair<int, int>>, std::vector<int>>> seen;
    std::vector<PantsGraph> out;
    std::vector<int> deg(n, 0);
    std::vector<std::pair<int, int>> chosen;

    std::function<void(std::size_t, int)> rec = [&](std::size_t p, int remaining) {
        if (p == pairs.size()) {
            if (remaining != 0) return;
            PantsGraph g;
            g.n_vertices = n;
            g.edges = chosen;
            for (int v = 0; v < n; ++v) g.legs.push_back(3 - deg[v]);
            if (!graph_connected(g)) return;
            PantsGraph c = canonical_form(g);
            if (seen.insert({c.edges, c.legs}).second) out.push_back(std::move(c));
            return;
        }
        auto [i, j] = pairs[p];
        rec(p + 1, remaining);
        int added = 0;
        while (added < remaining) {
            int need_i = (i == j) ? 2 : 1;
            if (deg[i] + need_i > 3 || (i != j && deg[j] + 1 > 3)) break;
            deg[i] += need_i;
            if (i != j) deg[j] += 1;
            chosen.emplace_back(i, j);
            ++added;
            rec(p + 1, remaining - added);
        }
        for (int k = 0; k < added; ++k) {
            chosen.pop_back();
            if (i == j) deg[i] -= 2;
            else { deg[i] -= 1; deg[j] -= 1; }
        }
    };
    rec(0, m);
    std::sort(out.begin(), out.end(), [](const PantsGraph& a, const PantsGraph& b) {
        return std::tie(a.edges, a.legs) < std::tie(b.edges, b.legs);
    });
    return out;
}

// ---------------------------------------------------------------------------

void PantsOps::check(const PantsDomain& d) const {
    if (!is_canonical(d)) throw CalcError("non-canonical domain", to_string(d));
}

PantsDomain PantsOps::full() const {
    if (g_.n_edges() == 0) return {};
    return PantsDomain{{g_.all_edges()}, 0};
}

PantsDomain PantsOps::annulus(int edge) const {
    if (edge < 0 || edge >= g_.n_edges()) throw CalcError("invalid edge", std::to_string(edge));
    return PantsDomain{{}, 1u << edge};
}

PantsDomain PantsOps::make(const std::vector<Block>& raw, EdgeMask annuli) const {
    PantsDomain d;
    EdgeMask ann = annuli & g_.all_edges();
    VertexMask used = 0;
    for (const Block& b : raw) {
        if (b.interior & ~g_.inside(b.vertices))
            throw CalcError("invalid block", "interior edge outside the vertex set");
        // Components of (vertices, interior): isolated vertices are pants.
        VertexMask covered = g_.endpoints(b.interior);
        for (int v = 0; v < g_.n_vertices; ++v) {
            if ((b.vertices >> v & 1u) && !(covered >> v & 1u)) {
                if (used >> v & 1u) throw CalcError("overlapping blocks");
                used |= 1u << v;
                ann |= g_.incident(1u << v);
            }
        }
        for (EdgeMask comp : g_.components(b.interior)) {
            VertexMask vs = g_.endpoints(comp);
            if (used & vs) throw CalcError("overlapping blocks");
            used |= vs;
            d.blocks.push_back(comp);
        }
    }
    std::sort(d.blocks.begin(), d.blocks.end());
    d.annuli = ann & ~g_.incident(used);
    return d;
}

bool PantsOps::is_canonical(const PantsDomain& d) const {
    VertexMask used = 0;
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        EdgeMask f = d.blocks[i];
        if (f == 0 || (f & ~g_.all_edges()) || !g_.edge_connected(f)) return false;
        VertexMask vs = g_.endpoints(f);
        if (used & vs) return false;
        used |= vs;
        if (i > 0 && !(d.blocks[i - 1] < f)) return false;
    }
    if (d.annuli & ~g_.all_edges()) return false;
    return (d.annuli & g_.incident(used)) == 0;
}

bool PantsOps::is_connected(const PantsDomain& d) const {
    return (d.blocks.size() == 1 && d.annuli == 0) ||
           (d.blocks.empty() && popcount(d.annuli) == 1);
}

SurfaceSig PantsOps::realize_block(const Block& b) const {
    const EdgeMask in = g_.inside(b.vertices);
    const EdgeMask touching = g_.incident(b.vertices);
    int nv = popcount(b.vertices);
    int genus = popcount(b.interior) - nv + 1;
    int bdry = g_.legs_of(b.vertices) + popcount(touching & ~in) + 2 * popcount(in & ~b.interior);
    return {genus, bdry};
}

std::vector<RealizedPiece> PantsOps::realize(const PantsDomain& d) const {
    check(d);
    std::vector<RealizedPiece> out;
    for (EdgeMask f : d.blocks) out.push_back({realize_block({g_.endpoints(f), f}), false});
    for (int e = 0; e < g_.n_edges(); ++e)
        if (d.annuli >> e & 1u) out.push_back({{0, 2}, true});
    return out;
}

int PantsOps::complexity(const PantsDomain& d) const {
    if (!is_connected(d)) throw CalcError("non-connected domain", to_string(d));
    if (d.blocks.empty()) return 0;
    return curvecalc::complexity(realize_block({g_.endpoints(d.blocks[0]), d.blocks[0]}));
}

VertexMask PantsOps::block_vertices(const PantsDomain& d) const {
    VertexMask v = 0;
    for (EdgeMask f : d.blocks) v |= g_.endpoints(f);
    return v;
}

EdgeMask PantsOps::block_interiors(const PantsDomain& d) const {
    EdgeMask m = 0;
    for (EdgeMask f : d.blocks) m |= f;
    return m;
}

EdgeMask PantsOps::curve_edges(const PantsDomain& d) const {
    return g_.incident(block_vertices(d)) | d.annuli;
}

bool PantsOps::orthogonal(const PantsDomain& a, const PantsDomain& b) const {
    if (block_vertices(a) & block_vertices(b)) return false;
    if (a.annuli & block_interiors(b)) return false;
    if (b.annuli & block_interiors(a)) return false;
    return true;
}

bool PantsOps::contains(const PantsDomain& big, const PantsDomain& small) const {
    const EdgeMask interiors = block_interiors(big);
    for (EdgeMask f : small.blocks)
        if (f & ~interiors) return false;
    return (small.annuli & ~curve_edges(big)) == 0;
}

PantsDomain PantsOps::complement(const PantsDomain& d) const {
    const VertexMask all_v = g_.n_vertices == 32 ? ~0u : ((1u << g_.n_vertices) - 1u);
    const VertexMask rest = all_v & ~block_vertices(d);
    const EdgeMask rest_edges = g_.inside(rest) & ~d.annuli;
    std::vector<Block> raw;
    for (EdgeMask comp : g_.components(rest_edges)) raw.push_back({g_.endpoints(comp), comp});
    return make(raw, g_.all_edges() & ~block_interiors(d));
}

PantsDomain PantsOps::join(const PantsDomain& a, const PantsDomain& b) const {
    std::vector<Block> raw;
    for (EdgeMask comp : g_.components(block_interiors(a) | block_interiors(b)))
        raw.push_back({g_.endpoints(comp), comp});
    return make(raw, a.annuli | b.annuli);
}

PantsDomain PantsOps::meet(const PantsDomain& a, const PantsDomain& b) const {
    std::vector<Block> raw;
    for (EdgeMask comp : g_.components(block_interiors(a) & block_interiors(b)))
        raw.push_back({g_.endpoints(comp), comp});
    return make(raw, curve_edges(a) & curve_edges(b));
}

PantsDomain PantsOps::boundary(const PantsDomain& d) const { return meet(d, complement(d)); }

bool PantsOps::is_transverse(const PantsDomain& a, const PantsDomain& b) const {
    return !orthogonal(a, b) && !contains(a, b) && !contains(b, a);
}

bool PantsOps::strongly_orthogonal(const PantsDomain& a, const PantsDomain& b) const {
    return orthogonal(a, b) && !contains(boundary(a), b);
}

std::vector<PantsDomain> PantsOps::decompose_connected(const PantsDomain& d) const {
    std::vector<PantsDomain> out;
    for (EdgeMask f : d.blocks) out.push_back(PantsDomain{{f}, 0});
    for (int e = 0; e < g_.n_edges(); ++e)
        if (d.annuli >> e & 1u) out.push_back(annulus(e));
    return out;
}

std::vector<PantsDomain> PantsOps::all_domains() const {
    std::vector<PantsDomain> out;
    const EdgeMask all = g_.all_edges();
    for (EdgeMask f = 0;; f = (f - all) & all) {  // all submasks, ascending
        PantsDomain base;
        base.blocks = g_.components(f);
        const EdgeMask avail = all & ~g_.incident(g_.endpoints(f));
        for (EdgeMask a = 0;; a = (a - avail) & avail) {
            base.annuli = a;
            out.push_back(base);
            if (a == avail) break;
        }
        if (f == all) break;
    }
    return out;
}

std::vector<PantsDomain> PantsOps::connected_domains() const {
    std::vector<PantsDomain> out;
    for (int e = 0; e < g_.n_edges(); ++e) out.push_back(annulus(e));
    const EdgeMask all = g_.all_edges();
    for (EdgeMask f = 1; f && f <= all; ++f)
        if ((f & ~all) == 0 && g_.edge_connected(f)) out.push_back(PantsDomain{{f}, 0});
    return out;
}

ChainSearchResult PantsOps::longest_chain(std::size_t budget) const {
    const std::vector<PantsDomain> conn = connected_domains();
    if (conn.size() > budget)
        throw CalcError("budget", "connected domains exceed the chain-search budget");
    const std::size_t n = conn.size();
    // Longest chain ending at each connected domain, by memoized recursion.
    std::vector<int> best(n, -1), prev(n, -1);
    std::function<int(std::size_t)> len = [&](std::size_t i) -> int {
        if (best[i] >= 0) return best[i];
        int b = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || conn[j] == conn[i] || !contains(conn[i], conn[j])) continue;
            int c = len(j) + 1;
            if (c > b) { b = c; prev[i] = static_cast<int>(j); }
        }
        return best[i] = b;
    };
    ChainSearchResult r;
    const PantsDomain top = full();
    auto it = std::find(conn.begin(), conn.end(), top);
    if (it == conn.end()) return r;
    int i = static_cast<int>(it - conn.begin());
    r.max_length = len(static_cast<std::size_t>(i));
    for (int k = i; k >= 0; k = prev[k]) r.witness.push_back(conn[k]);
    std::reverse(r.witness.begin(), r.witness.end());
    return r;
}

PantsDomain PantsOps::permute(const PantsDomain& d, const std::vector<int>& edge_perm) const {
    auto map_mask = [&](EdgeMask m) {
        EdgeMask out = 0;
        for (int e = 0; e < g_.n_edges(); ++e)
            if (m >> e & 1u) out |= 1u << edge_perm[e];
        return out;
    };
    PantsDomain out;
    for (EdgeMask f : d.blocks) out.blocks.push_back(map_mask(f));
    std::sort(out.blocks.begin(), out.blocks.end());
    out.annuli = map_mask(d.annuli);
    return out;
}

std::string PantsOps::to_string(const PantsDomain& d) const {
    if (d.empty()) return "0";
    std::string s;
    auto edges_of = [&](EdgeMask m) {
        std::string t;
        for (int e = 0; e < g_.n_edges(); ++e)
            if (m >> e & 1u) t += (t.empty() ? "" : ",") + g_.edge_name(e);
        return t;
    };
    for (EdgeMask f : d.blocks) s += (s.empty() ? "" : "+") + std::string("S(") + edges_of(f) + ")";
    for (int e = 0; e < g_.n_edges(); ++e)
        if (d.annuli >> e & 1u) s += (s.empty() ? "" : "+") + std::string("A(") + g_.edge_name(e) + ")";
    return s;
}

ChainSearchResult enumerate_chains(SurfaceSig sig, std::size_t budget) {
    max_chain_length(sig);  // validates the precondition
    ChainSearchResult best;
    best.max_length = -1;
    auto graphs = enumerate_pants_graphs(sig);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        ChainSearchResult r = PantsOps(graphs[i]).longest_chain(budget);
        best.per_graph_max.push_back(r.max_length);
        if (r.max_length > best.max_length) {
            best.max_length = r.max_length;
            best.graph_index = static_cast<int>(i);
            best.witness = r.witness;
        }
    }
    return best;
}

}  // namespace curvecalc
