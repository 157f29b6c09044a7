#include "curvecalc/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "curvecalc/error.hpp"

namespace curvecalc {

namespace {

bool is_graph_automorphism(const PantsGraph& g, const std::vector<int>& edge_perm) {
    if (static_cast<int>(edge_perm.size()) != g.n_edges()) return false;
    std::vector<int> sorted = edge_perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < g.n_edges(); ++i)
        if (sorted[i] != i) return false;
    std::vector<int> sigma(g.n_vertices);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < g.n_vertices && ok; ++v) ok = g.legs[v] == g.legs[sigma[v]];
        for (int e = 0; e < g.n_edges() && ok; ++e) {
            auto [u, v] = g.edges[e];
            auto [x, y] = g.edges[edge_perm[e]];
            int a = std::min(sigma[u], sigma[v]), b = std::max(sigma[u], sigma[v]);
            ok = (a == x && b == y);
        }
        if (ok) return true;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return false;
}

}  // namespace

int SymbolicGroup::add_generator(const std::string& name, DomainId support, std::vector<int> edge_perm) {
    const auto& graph = lat_.ops().graph();
    if (name.empty() || name == "1" || name.find_first_of("*^ ") != std::string::npos)
        throw CalcError("invalid generator", name);
    for (const Gen& g : gens_)
        if (g.name == name) throw CalcError("invalid generator", "duplicate name " + name);
    if (support == lat_.empty()) throw CalcError("invalid generator", "empty support");
    Gen gen{name, support, true, {}, {}};
    std::vector<int> ident(graph.n_edges());
    std::iota(ident.begin(), ident.end(), 0);
    if (!edge_perm.empty() && edge_perm != ident) {
        if (!is_graph_automorphism(graph, edge_perm))
            throw CalcError("invalid generator", name + ": action is not a graph automorphism");
        if (support != lat_.full())
            throw CalcError("invalid generator",
                            name + ": a proper support requires the identity action");
        gen.trivial = false;
    }
    std::vector<int> inv_perm(graph.n_edges());
    for (int e = 0; e < graph.n_edges(); ++e) inv_perm[gen.trivial ? e : edge_perm[e]] = e;
    for (DomainId d = 0; d < lat_.size(); ++d) {
        if (gen.trivial) {
            gen.fwd.push_back(d);
            gen.inv.push_back(d);
        } else {
            gen.fwd.push_back(lat_.id(lat_.ops().permute(lat_.domain(d), edge_perm)));
            gen.inv.push_back(lat_.id(lat_.ops().permute(lat_.domain(d), inv_perm)));
        }
    }
    gens_.push_back(std::move(gen));
    return static_cast<int>(gens_.size()) - 1;
}

GroupElem SymbolicGroup::generator(int i, int exponent) const {
    if (i < 0 || i >= generator_count()) throw CalcError("invalid generator", std::to_string(i));
    GroupElem g;
    for (int k = 0; k < std::abs(exponent); ++k) g.word.push_back(exponent > 0 ? i + 1 : -(i + 1));
    return g;
}

GroupElem SymbolicGroup::multiply(const GroupElem& a, const GroupElem& b) const {
    GroupElem out = a;
    for (int x : b.word) {
        if (!out.word.empty() && out.word.back() == -x) out.word.pop_back();
        else out.word.push_back(x);
    }
    return out;
}

GroupElem SymbolicGroup::invert(const GroupElem& g) const {
    GroupElem out;
    for (auto it = g.word.rbegin(); it != g.word.rend(); ++it) out.word.push_back(-*it);
    return out;
}

DomainId SymbolicGroup::act(const GroupElem& g, DomainId d) const {
    for (auto it = g.word.rbegin(); it != g.word.rend(); ++it) {
        const Gen& gen = gens_.at(std::abs(*it) - 1);
        d = *it > 0 ? gen.fwd[d] : gen.inv[d];
    }
    return d;
}

DomainId SymbolicGroup::support_of(const GroupElem& g) const {
    DomainId s = lat_.empty();
    for (int x : g.word) s = lat_.join(s, gens_.at(std::abs(x) - 1).support);
    return s;
}

bool SymbolicGroup::is_D_related(const GroupElem& g, DomainId d) const {
    if (g.word.empty()) return true;
    return lat_.contains(d, support_of(g));
}

std::string SymbolicGroup::label(const GroupElem& g) const {
    if (g.word.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < g.word.size()) {
        std::size_t j = i;
        while (j < g.word.size() && g.word[j] == g.word[i]) ++j;
        int run = static_cast<int>(j - i);
        int exp = g.word[i] > 0 ? run : -run;
        if (!out.empty()) out += "*";
        out += gens_.at(std::abs(g.word[i]) - 1).name;
        if (exp != 1) out += "^" + std::to_string(exp);
        i = j;
    }
    return out;
}

GroupElem SymbolicGroup::parse(const std::string& s) const {
    GroupElem g;
    if (s == "1") return g;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        std::string base = tok;
        int exp = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            base = tok.substr(0, caret);
            try {
                exp = std::stoi(tok.substr(caret + 1));
            } catch (const std::logic_error&) {
                throw CalcError("invalid group element", s);
            }
        }
        int idx = -1;
        for (int i = 0; i < generator_count(); ++i)
            if (gens_[i].name == base) idx = i;
        if (idx < 0) throw CalcError("invalid group element", s);
        g = multiply(g, generator(idx, exp));
    }
    return g;
}

void SymbolicGroup::absorb(GroupElem& g, std::vector<DomainId>& domains) const {
    if (domains.empty()) return;
    if (std::find(domains.begin(), domains.end(), lat_.full()) != domains.end()) {
        g = identity();
        return;
    }
    // Write g = p x q. Pushing q to the far right turns the domains into q(W),
    // and a trivially acting x then reaches any of them freely. Deleting such
    // letters never changes the action of the remaining suffixes.
    std::vector<DomainId> cur = domains;
    std::vector<int> kept;
    for (auto it = g.word.rbegin(); it != g.word.rend(); ++it) {
        const Gen& gen = gens_.at(std::abs(*it) - 1);
        if (gen.trivial) {
            bool inside = false;
            for (DomainId d : cur) inside = inside || lat_.contains(d, gen.support);
            if (inside) continue;
        } else {
            for (DomainId& d : cur) d = *it > 0 ? gen.fwd[d] : gen.inv[d];
        }
        kept.push_back(*it);
    }
    GroupElem out;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) out = multiply(out, GroupElem{{*it}, {}});
    g = out;
}

bool SymbolicGroup::absorbable(const GroupElem& g, const std::vector<DomainId>& domains) const {
    GroupElem h = g;
    std::vector<DomainId> d = domains;
    absorb(h, d);
    return h != g;
}

// ---------------------------------------------------------------------------

GroupElem TorusGroup::multiply(const GroupElem& a, const GroupElem& b) const { return elem(a.mat * b.mat); }

GroupElem TorusGroup::invert(const GroupElem& g) const { return elem(g.mat.inverse()); }

DomainId TorusGroup::act(const GroupElem& g, DomainId d) const {
    if (!lat_.is_annulus(d)) return d;
    return lat_.annulus(curvecalc::act(g.mat, lat_.slope(d)));
}

bool TorusGroup::is_D_related(const GroupElem& g, DomainId d) const {
    if (d == lat_.full()) return true;
    if (d == lat_.empty()) return g.mat.is_identity();
    Int n = 0;
    return twist_exponent(g.mat, lat_.slope(d), n);
}

GroupElem TorusGroup::parse(const std::string& s) const {
    if (s == "1") return elem(Mat2::identity());
    if (s.rfind("T(", 0) == 0) {
        auto close = s.find(')');
        if (close == std::string::npos) throw CalcError("invalid group element", s);
        Slope sl = Slope::parse(s.substr(2, close - 2));
        Int n = 1;
        if (close + 1 < s.size()) {
            if (s[close + 1] != '^') throw CalcError("invalid group element", s);
            try {
                n = std::stoll(s.substr(close + 2));
            } catch (const std::logic_error&) {
                throw CalcError("invalid group element", s);
            }
        }
        return elem(twist_power(sl, n));
    }
    std::string digits;
    for (char c : s)
        digits += (std::isdigit(static_cast<unsigned char>(c)) || c == '-') ? c : ' ';
    std::stringstream ss(digits);
    Mat2 m;
    if (!(ss >> m.a >> m.b >> m.c >> m.d) || m.det() != 1) throw CalcError("invalid group element", s);
    return elem(m);
}

std::pair<Slope, Int> min_height_twist(const Slope& core, const Slope& s) {
    const Int i = checked_add(checked_mul(core.p, s.q), -checked_mul(core.q, s.p));
    if (i == 0) return {s, 0};
    auto at = [&](Int k) {
        Int x = checked_add(s.p, checked_mul(checked_mul(k, i), core.p));
        Int y = checked_add(s.q, checked_mul(checked_mul(k, i), core.q));
        return Slope::make(x, y);
    };
    std::vector<Int> cands{0};
    auto add_breaks = [&](Int num, Int den) {
        if (den == 0) return;
        Int q = num / den;
        for (Int d = -1; d <= 1; ++d) cands.push_back(q + d);
    };
    add_breaks(-s.p, checked_mul(i, core.p));
    add_breaks(-s.q, checked_mul(i, core.q));
    Int best_k = 0;
    Slope best = at(0);
    for (Int k : cands) {
        Slope c = at(k);
        if (c.height() < best.height() || (c.height() == best.height() && c < best) ||
            (c == best && std::llabs(k) < std::llabs(best_k))) {
            best = c;
            best_k = k;
        }
    }
    return {best, best_k};
}

namespace {

Int l1(const Mat2& m) { return std::llabs(m.a) + std::llabs(m.b) + std::llabs(m.c) + std::llabs(m.d); }

// Representative of the coset g <T_s> with the least entry norm.
Mat2 min_coset(const Mat2& g, const Slope& s) {
    const Mat2 gn = g * twist_log(s);
    std::vector<Int> cands{0};
    const Int num[4] = {g.a, g.b, g.c, g.d};
    const Int den[4] = {gn.a, gn.b, gn.c, gn.d};
    for (int k = 0; k < 4; ++k) {
        if (den[k] == 0) continue;
        Int q = -num[k] / den[k];
        for (Int d = -1; d <= 1; ++d) cands.push_back(q + d);
    }
    Mat2 best = g;
    for (Int m : cands) {
        const Mat2 c{checked_add(g.a, checked_mul(m, gn.a)), checked_add(g.b, checked_mul(m, gn.b)),
                 checked_add(g.c, checked_mul(m, gn.c)), checked_add(g.d, checked_mul(m, gn.d))};
        if (l1(c) < l1(best) || (l1(c) == l1(best) && c < best)) best = c;
    }
    return best;
}

}  // namespace

void TorusGroup::absorb(GroupElem& g, std::vector<DomainId>& domains) const {
    if (domains.empty()) return;
    if (std::find(domains.begin(), domains.end(), lat_.full()) != domains.end()) {
        g = identity();
        return;
    }
    // From the right: twisting about letter i+1 rewrites letters 0..i and g.
    for (int i = static_cast<int>(domains.size()) - 2; i >= 0; --i) {
        const Slope core = lat_.slope(domains[i + 1]);
        auto [best, k] = min_height_twist(core, lat_.slope(domains[i]));
        if (k == 0) continue;
        const Mat2 t = twist_power(core, k);
        for (int j = 0; j <= i; ++j) domains[j] = lat_.annulus(curvecalc::act(t, lat_.slope(domains[j])));
        g.mat = g.mat * twist_power(core, -k);
    }
    g.mat = min_coset(g.mat, lat_.slope(domains[0]));
}

bool TorusGroup::absorbable(const GroupElem& g, const std::vector<DomainId>& domains) const {
    if (g.mat.is_identity()) return false;
    GroupElem h = g;
    std::vector<DomainId> d = domains;
    absorb(h, d);
    return h.mat.is_identity();
}

}  // namespace curvecalc
