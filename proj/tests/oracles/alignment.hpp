#pragma once

// Exhaustive alignment search for the symmetric decomposition: every way of
// colouring the domains of u as (u1 | u' | w) and those of v as (w | v' | v1)
// that respects the order of dependent letters, filtered by the defining
// conditions. Reduction and reducedness come from the random-order reducer.

#include <array>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "curvecalc/backends.hpp"
#include "oracles/reducer.hpp"

namespace oracle {

using Parts = std::array<std::vector<DomainId>, 5>;  // u1, u', w, v', v1

class Aligner {
public:
    Aligner(const curvecalc::SymbolicSetup& s) : s_(s), red_(s) {}

    std::set<Parts> solutions(const curvecalc::Word& u, const curvecalc::Word& v) const {
        const curvecalc::Calculus& c = s_.calc;
        const curvecalc::NormalForm un = c.left_normal(u), vn = c.right_normal(v);
        curvecalc::Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        const auto target = reduce_key(uv);

        std::vector<std::array<std::vector<DomainId>, 3>> us = colourings(un.domains), vs = colourings(vn.domains);
        std::set<Parts> out;
        for (const auto& a : us)
            for (const auto& b : vs) {
                if (red_.lex_least(a[2]) != red_.lex_least(b[0])) continue;
                const std::vector<DomainId>& up = a[1];
                const std::vector<DomainId>& w = a[2];
                const std::vector<DomainId>& vp = b[1];
                if (!pairwise_independent(w, w, true) || !pairwise_independent(up, w, false) ||
                    !pairwise_independent(up, vp, false) || !pairwise_independent(w, vp, false))
                    continue;
                if (!up.empty() && !c.properly_left_absorbed(word(up), word(b[2]))) continue;
                if (!vp.empty() && !c.properly_right_absorbed(word(vp), word(a[0]))) continue;
                std::vector<DomainId> mid = a[0];
                mid.insert(mid.end(), w.begin(), w.end());
                mid.insert(mid.end(), b[2].begin(), b[2].end());
                if (!red_.irreducible_domains(mid)) continue;
                curvecalc::Word whole{curvecalc::Letter::grp(un.g)};
                for (DomainId d : mid) whole.push_back(curvecalc::Letter::dom(d));
                whole.push_back(curvecalc::Letter::grp(vn.g));
                if (reduce_key(whole) != target) continue;
                out.insert(Parts{red_.lex_least(a[0]), red_.lex_least(up), red_.lex_least(w), red_.lex_least(vp),
                                 red_.lex_least(b[2])});
            }
        return out;
    }

    Parts key(const curvecalc::SymmetricDecomposition& d) const {
        return {red_.lex_least(doms(d.u1)), red_.lex_least(doms(d.u_prime)), red_.lex_least(doms(d.w)),
                red_.lex_least(doms(d.v_prime)), red_.lex_least(doms(d.v1))};
    }

    std::pair<std::vector<int>, std::vector<DomainId>> reduce_key(const curvecalc::Word& w) const {
        std::mt19937_64 rng(7);
        return red_.left_key(red_.run(red_.expand(w), rng));
    }

private:
    static curvecalc::Word word(const std::vector<DomainId>& d) {
        curvecalc::Word w;
        for (DomainId x : d) w.push_back(curvecalc::Letter::dom(x));
        return w;
    }
    static std::vector<DomainId> doms(const curvecalc::Word& w) {
        std::vector<DomainId> out;
        for (const auto& l : w)
            if (!l.is_group) out.push_back(l.d);
        return out;
    }

    bool pairwise_independent(const std::vector<DomainId>& a, const std::vector<DomainId>& b, bool same) const {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = same ? i + 1 : 0; j < b.size(); ++j)
                if (!red_.independent(a[i], b[j])) return false;
        return true;
    }

    // Colourings 0 < 1 < 2 that never put a letter after a dependent letter
    // with a larger colour.
    std::vector<std::array<std::vector<DomainId>, 3>> colourings(const std::vector<DomainId>& d) const {
        std::vector<std::array<std::vector<DomainId>, 3>> out;
        std::vector<int> col(d.size(), 0);
        for (;;) {
            bool ok = true;
            for (std::size_t i = 0; i < d.size() && ok; ++i)
                for (std::size_t j = i + 1; j < d.size() && ok; ++j)
                    if (col[i] > col[j] && !red_.independent(d[i], d[j])) ok = false;
            if (ok) {
                std::array<std::vector<DomainId>, 3> parts;
                for (std::size_t i = 0; i < d.size(); ++i) parts[col[i]].push_back(d[i]);
                out.push_back(parts);
            }
            std::size_t k = 0;
            while (k < col.size() && col[k] == 2) col[k++] = 0;
            if (k == col.size()) break;
            ++col[k];
        }
        return out;
    }

    const curvecalc::SymbolicSetup& s_;
    Reducer red_;
};

}  // namespace oracle
