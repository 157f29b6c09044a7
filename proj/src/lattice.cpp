#include "curvecalc/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "curvecalc/error.hpp"

namespace curvecalc {

PantsLattice::PantsLattice(PantsGraph g) : ops_(std::move(g)) {
    domains_ = ops_.all_domains();
    n_ = static_cast<int>(domains_.size());
    for (int i = 0; i < n_; ++i) index_[domains_[i]] = i;
    empty_ = id(ops_.empty());
    full_ = id(ops_.full());
    connected_.resize(n_);
    k_.assign(n_, -1);
    for (int i = 0; i < n_; ++i) {
        connected_[i] = ops_.is_connected(domains_[i]);
        if (connected_[i]) {
            k_[i] = ops_.complexity(domains_[i]);
            connected_list_.push_back(i);
        }
    }
    const std::size_t nn = static_cast<std::size_t>(n_) * n_;
    orth_.resize(nn);
    cont_.resize(nn);
    join_.resize(nn);
    meet_.resize(nn);
    comp_.resize(n_);
    for (int a = 0; a < n_; ++a) {
        comp_[a] = id(ops_.complement(domains_[a]));
        for (int b = 0; b < n_; ++b) {
            const std::size_t k = static_cast<std::size_t>(a) * n_ + b;
            orth_[k] = ops_.orthogonal(domains_[a], domains_[b]);
            cont_[k] = ops_.contains(domains_[a], domains_[b]);
            join_[k] = id(ops_.join(domains_[a], domains_[b]));
            meet_[k] = id(ops_.meet(domains_[a], domains_[b]));
        }
    }
}

DomainId PantsLattice::id(const PantsDomain& d) const {
    auto it = index_.find(d);
    if (it == index_.end()) throw CalcError("non-canonical domain", ops_.to_string(d));
    return it->second;
}

int PantsLattice::complexity(DomainId d) const {
    if (!connected_[d]) throw CalcError("non-connected domain", label(d));
    return k_[d];
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_edge(const std::string& tok, int n_edges) {
    std::string t = tok;
    if (!t.empty() && t[0] == 'e') t = t.substr(1);
    try {
        std::size_t used = 0;
        int e = std::stoi(t, &used);
        if (used != t.size() || e < 0 || e >= n_edges) throw CalcError("invalid edge", tok);
        return e;
    } catch (const std::logic_error&) {
        throw CalcError("invalid edge", tok);
    }
}

}  // namespace

DomainId PantsLattice::parse(const std::string& s) const {
    if (s == "0" || s == "empty") return empty_;
    if (s == "C0" || s == "full") return full_;
    std::vector<Block> raw;
    EdgeMask ann = 0;
    const auto& g = ops_.graph();
    for (const std::string& part : split(s, '+')) {
        if (part.size() < 4 || part.back() != ')' || part[1] != '(')
            throw CalcError("invalid domain", s);
        const std::string body = part.substr(2, part.size() - 3);
        EdgeMask m = 0;
        for (const std::string& tok : split(body, ',')) m |= 1u << parse_edge(tok, g.n_edges());
        if (part[0] == 'A') {
            ann |= m;
        } else if (part[0] == 'S') {
            raw.push_back({g.endpoints(m), m});
        } else {
            throw CalcError("invalid domain", s);
        }
    }
    return id(ops_.make(raw, ann));
}

// ---------------------------------------------------------------------------

TorusLattice::TorusLattice() = default;

DomainId TorusLattice::annulus(const Slope& s) const {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    DomainId id = static_cast<DomainId>(slopes_.size()) + 2;
    slopes_.push_back(s);
    index_[s] = id;
    return id;
}

bool TorusLattice::orthogonal(DomainId a, DomainId b) const {
    if (a == 0 || b == 0) return true;
    if (a == 1 || b == 1) return false;
    return a == b;
}

bool TorusLattice::contains(DomainId big, DomainId small) const {
    if (small == 0 || big == 1) return true;
    return big == small;
}

DomainId TorusLattice::join(DomainId a, DomainId b) const {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    return 1;
}

DomainId TorusLattice::meet(DomainId a, DomainId b) const {
    if (a == 1) return b;
    if (b == 1 || a == b) return a;
    return 0;
}

DomainId TorusLattice::complement(DomainId d) const {
    if (d == 0) return 1;
    if (d == 1) return 0;
    return d;
}

int TorusLattice::complexity(DomainId d) const {
    if (d == 0) throw CalcError("non-connected domain", "0");
    return d == 1 ? curvecalc::complexity(surface()) : 0;
}

std::string TorusLattice::label(DomainId d) const {
    if (d == 0) return "0";
    if (d == 1) return "C0";
    return "A(" + slope(d).str() + ")";
}

bool TorusLattice::less(DomainId a, DomainId b) const {
    if (a < 2 || b < 2) return a < b;
    return slope(a) < slope(b);
}

DomainId TorusLattice::parse(const std::string& s) const {
    if (s == "0" || s == "empty") return 0;
    if (s == "C0" || s == "full") return 1;
    if (s.size() > 3 && s[0] == 'A' && s[1] == '(' && s.back() == ')')
        return annulus(Slope::parse(s.substr(2, s.size() - 3)));
    throw CalcError("invalid domain", s);
}

std::vector<DomainId> TorusLattice::connected_domains() const {
    throw CalcError("infinite backend", "the torus lattice has infinitely many annuli");
}

}  // namespace curvecalc
