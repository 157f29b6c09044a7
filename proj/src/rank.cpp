#include "curvecalc/rank.hpp"

#include <algorithm>

#include "curvecalc/error.hpp"

namespace curvecalc {

Ordinal morley_upper_bound(SurfaceSig sig, int r) {
    if (r < 1) throw CalcError("invalid rank power", "r = " + std::to_string(r));
    if (!is_admissible(sig)) throw CalcError("inadmissible surface", to_string(sig));
    const std::int64_t binom = checked_mul(r + 1, r) / 2;
    return Ordinal::omega_pow(complexity(sig), binom);
}

Ordinal morley_rank_theory(SurfaceSig sig) {
    if (!is_admissible(sig)) throw CalcError("inadmissible surface", to_string(sig));
    return Ordinal::omega_pow(complexity(sig));
}

namespace {

// Domains we may use inside D. The torus lattice is infinite, so we offer a
// few fixed slopes under the full domain.
std::vector<DomainId> subdomains(const Lattice& lat, DomainId d) {
    std::vector<DomainId> pool;
    if (lat.finite()) {
        pool = lat.connected_domains();
    } else if (auto* t = dynamic_cast<const TorusLattice*>(&lat)) {
        for (Slope s : {Slope::make(0, 1), Slope::make(1, 0), Slope::make(1, 1)}) pool.push_back(t->annulus(s));
    }
    const DomainId bd = lat.boundary(d);
    std::vector<DomainId> out;
    for (DomainId e : pool)
        if (lat.strictly_contains(d, e) && !lat.contains(bd, e)) out.push_back(e);
    return out;
}

// Longest chain of single-letter replacements starting from one letter.
int depth(const Lattice& lat, DomainId d) {
    int best = 0;
    for (DomainId e : subdomains(lat, d)) best = std::max(best, depth(lat, e));
    return best + 1;
}

// Positions of the domain list that can be moved to the end.
std::vector<std::size_t> terminal_positions(const Calculus& calc, const std::vector<DomainId>& d) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < d.size(); ++p) {
        bool ok = true;
        for (std::size_t q = p + 1; q < d.size() && ok; ++q) ok = calc.independent(d[p], d[q]);
        if (ok) out.push_back(p);
    }
    return out;
}

}  // namespace

std::vector<Word> descending_chain_r(const Calculus& calc, const Word& w, int n) {
    const Lattice& lat = calc.lattice();
    calc.check_letters(w);
    NormalForm cur = calc.left_normal(w);
    if (cur.domains.empty()) throw CalcError("no domain letter", calc.format(w));
    if (!calc.is_reduced(w)) throw CalcError("word not reduced", calc.format(w));

    std::vector<Word> chain{calc.from_domains(cur.g, cur.domains)};
    DomainId last_dropped = cur.domains.front();
    for (int step = 0; step < n; ++step) {
        int potential = 0;
        for (DomainId d : cur.domains) potential += depth(lat, d);
        const int needed = n - step;
        const std::vector<std::size_t> term = terminal_positions(calc, cur.domains);
        bool done = false;

        if (potential < needed) {
            // Pump: swap a terminal D for an alternating word in two transverse
            // subdomains, long enough to cover the remaining steps.
            for (std::size_t p : term) {
                const std::vector<DomainId> sub = subdomains(lat, cur.domains[p]);
                for (std::size_t i = 0; i < sub.size() && !done; ++i) {
                    for (std::size_t j = 0; j < sub.size() && !done; ++j) {
                        if (!lat.is_transverse(sub[i], sub[j])) continue;
                        std::vector<DomainId> next = cur.domains;
                        next.erase(next.begin() + static_cast<std::ptrdiff_t>(p));
                        for (int k = 0; k < needed; ++k) next.push_back(k % 2 ? sub[j] : sub[i]);
                        if (!calc.is_reduced(calc.from_domains(cur.g, next))) continue;
                        cur.domains = std::move(next);
                        done = true;
                    }
                }
                if (done) break;
            }
        }
        if (!done) {
            // Replace the deepest terminal letter by its deepest admissible
            // subdomain, or drop it when nothing fits.
            std::size_t best_p = term.front();
            for (std::size_t p : term)
                if (depth(lat, cur.domains[p]) > depth(lat, cur.domains[best_p])) best_p = p;
            const DomainId d = cur.domains[best_p];
            std::vector<DomainId> next = cur.domains;
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(best_p));
            int best_depth = -1;
            std::vector<DomainId> chosen = next;
            for (DomainId e : subdomains(lat, d)) {
                std::vector<DomainId> cand = next;
                cand.push_back(e);
                if (depth(lat, e) > best_depth && calc.is_reduced(calc.from_domains(cur.g, cand))) {
                    best_depth = depth(lat, e);
                    chosen = std::move(cand);
                }
            }
            last_dropped = d;
            cur.domains = std::move(chosen);
        }
        chain.push_back(calc.from_domains(cur.g, cur.domains));
        if (cur.domains.empty() && step + 1 < n)
            throw CalcError("no such chain", "no subdomains left below " + lat.label(last_dropped) + " after " +
                                                 std::to_string(step + 1) + " of " + std::to_string(n) + " steps");
    }
    return chain;
}

bool is_r_step(const Calculus& calc, const Word& v, const Word& w) {
    const Lattice& lat = calc.lattice();
    if (!calc.is_reduced(v) || !calc.is_reduced(w)) return false;
    const NormalForm a = calc.left_normal(v);
    const NormalForm b = calc.left_normal(w);
    if (a.g != b.g) return false;

    for (std::size_t p = 0; p < b.domains.size(); ++p) {
        bool last = true;
        for (std::size_t q = p + 1; q < b.domains.size(); ++q)
            if (!calc.independent(b.domains[p], b.domains[q])) last = false;
        if (!last) continue;
        const DomainId d = b.domains[p];
        std::vector<DomainId> v0 = b.domains;
        v0.erase(v0.begin() + static_cast<std::ptrdiff_t>(p));

        // Peel v0 off the front of a: each letter must occur with only
        // commuting letters ahead of it.
        std::vector<DomainId> rest = a.domains;
        bool prefix = true;
        for (DomainId x : v0) {
            auto it = rest.begin();
            for (; it != rest.end(); ++it) {
                if (*it == x) break;
                if (!calc.independent(*it, x)) {
                    it = rest.end();
                    break;
                }
            }
            if (it == rest.end()) {
                prefix = false;
                break;
            }
            rest.erase(it);
        }
        if (!prefix) continue;
        const DomainId bd = lat.boundary(d);
        const bool inside = std::all_of(rest.begin(), rest.end(), [&](DomainId e) {
            return lat.strictly_contains(d, e) && !lat.contains(bd, e);
        });
        if (inside) return true;
    }
    return false;
}

}  // namespace curvecalc
