#include "curvecalc/word.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "curvecalc/error.hpp"

namespace curvecalc {

std::string move_name(Move m) {
    switch (m) {
        case Move::Rm: return "Rm";
        case Move::Cmp: return "Cmp";
        case Move::Split: return "Split";
        case Move::Swp: return "Swp";
        case Move::Jmp: return "Jmp";
        case Move::JmpInv: return "JmpInv";
        case Move::AbsG: return "AbsG";
        case Move::AbsSub: return "AbsSub";
        case Move::AbsEq: return "AbsEq";
        case Move::C: return "C";
    }
    return "?";
}

void Calculus::check_letters(const Word& w) const {
    for (const Letter& x : w) {
        if (x.is_group) continue;
        if (!lat_.is_connected(x.d)) throw CalcError("non-connected domain", lat_.label(x.d));
    }
}

namespace {

[[noreturn]] void inapplicable(Move m, const std::string& why) {
    throw CalcError("inapplicable move", move_name(m) + ": " + why);
}

}  // namespace

Word Calculus::apply_move(const Word& w, Move m, std::size_t pos, const Word& replacement) const {
    const bool pair = m != Move::Rm && m != Move::Split;
    if (pos >= w.size() || (pair && pos + 1 >= w.size())) inapplicable(m, "position out of range");
    const Letter& a = w[pos];
    const Letter* b = pair ? &w[pos + 1] : nullptr;
    Word out(w.begin(), w.begin() + pos);
    auto tail = [&](std::size_t from) { out.insert(out.end(), w.begin() + from, w.end()); };

    switch (m) {
        case Move::Rm:
            if (!a.is_group || !grp_.is_identity(a.g)) inapplicable(m, "letter is not the identity");
            tail(pos + 1);
            break;
        case Move::Cmp:
            if (!a.is_group || !b->is_group) inapplicable(m, "needs two group letters");
            out.push_back(Letter::grp(grp_.multiply(a.g, b->g)));
            tail(pos + 2);
            break;
        case Move::Split:
            if (!a.is_group || replacement.size() != 2 || !replacement[0].is_group || !replacement[1].is_group)
                inapplicable(m, "needs a group letter and two group factors");
            if (grp_.multiply(replacement[0].g, replacement[1].g) != a.g)
                inapplicable(m, "factors do not multiply to the letter");
            out.insert(out.end(), replacement.begin(), replacement.end());
            tail(pos + 1);
            break;
        case Move::Swp:
            if (a.is_group || b->is_group) inapplicable(m, "needs two domain letters");
            if (!lat_.orthogonal(a.d, b->d)) inapplicable(m, "domains are not orthogonal");
            out.push_back(*b);
            out.push_back(a);
            tail(pos + 2);
            break;
        case Move::Jmp:  // (D, g) -> (g, g^-1 D)
            if (a.is_group || !b->is_group) inapplicable(m, "needs (D, g)");
            out.push_back(*b);
            out.push_back(Letter::dom(grp_.act(grp_.invert(b->g), a.d)));
            tail(pos + 2);
            break;
        case Move::JmpInv:  // (g, D) -> (g D, g)
            if (!a.is_group || b->is_group) inapplicable(m, "needs (g, D)");
            out.push_back(Letter::dom(grp_.act(a.g, b->d)));
            out.push_back(a);
            tail(pos + 2);
            break;
        case Move::AbsG: {
            if (a.is_group == b->is_group) inapplicable(m, "needs a group letter next to a domain");
            const Letter& g = a.is_group ? a : *b;
            const Letter& d = a.is_group ? *b : a;
            if (!grp_.is_D_related(g.g, d.d)) inapplicable(m, "group letter is not contained in the domain");
            out.push_back(d);
            tail(pos + 2);
            break;
        }
        case Move::AbsSub:
            if (a.is_group || b->is_group) inapplicable(m, "needs two domain letters");
            if (lat_.strictly_contains(a.d, b->d)) out.push_back(a);
            else if (lat_.strictly_contains(b->d, a.d)) out.push_back(*b);
            else inapplicable(m, "domains are not strictly nested");
            tail(pos + 2);
            break;
        case Move::AbsEq:
            if (a.is_group || b->is_group || a.d != b->d) inapplicable(m, "needs two equal domain letters");
            out.push_back(a);
            tail(pos + 2);
            break;
        case Move::C:
            if (a.is_group || b->is_group || a.d != b->d) inapplicable(m, "needs two equal domain letters");
            for (const Letter& x : replacement) {
                bool inside = x.is_group ? grp_.is_D_related(x.g, a.d) : lat_.strictly_contains(a.d, x.d);
                if (!inside) inapplicable(m, "replacement is not a word in W(D)");
            }
            check_letters(replacement);
            out.insert(out.end(), replacement.begin(), replacement.end());
            tail(pos + 2);
            break;
    }
    return out;
}

NormalForm Calculus::left_normal(const Word& w) const {
    NormalForm nf{grp_.identity(), {}};
    for (const Letter& x : w) {
        if (!x.is_group) {
            nf.domains.push_back(x.d);
            continue;
        }
        // (D, h) -> (h, h^-1 D) for every domain collected so far.
        const GroupElem inv = grp_.invert(x.g);
        for (DomainId& d : nf.domains) d = grp_.act(inv, d);
        nf.g = grp_.multiply(nf.g, x.g);
    }
    return nf;
}

NormalForm Calculus::right_normal(const Word& w) const {
    NormalForm nf{grp_.identity(), {}};
    std::vector<DomainId> rev;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (!it->is_group) {
            rev.push_back(it->d);
            continue;
        }
        for (DomainId& d : rev) d = grp_.act(it->g, d);
        nf.g = grp_.multiply(it->g, nf.g);
    }
    nf.domains.assign(rev.rbegin(), rev.rend());
    return nf;
}

Word Calculus::from_domains(const GroupElem& g, const std::vector<DomainId>& d, bool group_first) const {
    Word w;
    const bool has_g = !grp_.is_identity(g);
    if (has_g && group_first) w.push_back(Letter::grp(g));
    for (DomainId x : d) w.push_back(Letter::dom(x));
    if (has_g && !group_first) w.push_back(Letter::grp(g));
    return w;
}

Word Calculus::left_normal_form(const Word& w) const {
    NormalForm nf = left_normal(w);
    return from_domains(nf.g, nf.domains, true);
}

Word Calculus::right_normal_form(const Word& w) const {
    NormalForm nf = right_normal(w);
    return from_domains(nf.g, nf.domains, false);
}

Word Calculus::invert(const Word& w) const {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(it->is_group ? Letter::grp(grp_.invert(it->g)) : *it);
    return out;
}

bool Calculus::adjacent_able(const std::vector<DomainId>& d, std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    // `after_i` must stay right of i, `before_j` must stay left of j; a letter
    // in both pins them apart.
    std::vector<char> after_i(j - i, 0);
    std::vector<std::size_t> chain{i};
    for (std::size_t k = i + 1; k < j; ++k) {
        for (std::size_t c : chain)
            if (dependent(d[c], d[k])) {
                after_i[k - i] = 1;
                break;
            }
        if (after_i[k - i]) chain.push_back(k);
    }
    chain.assign(1, j);
    for (std::size_t k = j - 1; k > i; --k) {
        bool before_j = false;
        for (std::size_t c : chain)
            if (dependent(d[c], d[k])) {
                before_j = true;
                break;
            }
        if (before_j) {
            if (after_i[k - i]) return false;
            chain.push_back(k);
        }
    }
    return true;
}

std::vector<DomainId> Calculus::trace_reduce(std::vector<DomainId> d, std::vector<MoveRecord>* trace) const {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 1; j < d.size() && !changed; ++j) {
            for (std::size_t i = 0; i < j && !changed; ++i) {
                if (!absorbs(d[i], d[j]) && !absorbs(d[j], d[i])) continue;
                if (!adjacent_able(d, i, j)) continue;
                Move m = d[i] == d[j] ? Move::AbsEq : Move::AbsSub;
                std::size_t victim = (d[i] == d[j] || lat_.strictly_contains(d[i], d[j])) ? j : i;
                if (trace) trace->push_back({m, i, j});
                d.erase(d.begin() + static_cast<std::ptrdiff_t>(victim));
                changed = true;
            }
        }
    }
    return d;
}

std::vector<DomainId> Calculus::linearize(const std::vector<DomainId>& d) const {
    const std::size_t n = d.size();
    std::vector<char> used(n, 0);
    std::vector<DomainId> out;
    out.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t k = 0; k < n; ++k) {
            if (used[k]) continue;
            bool ready = true;
            for (std::size_t p = 0; p < k && ready; ++p)
                if (!used[p] && dependent(d[p], d[k])) ready = false;
            if (ready && (best == n || lat_.less(d[k], d[best]))) best = k;
        }
        used[best] = 1;
        out.push_back(d[best]);
    }
    return out;
}

bool Calculus::trace_equal(const std::vector<DomainId>& a, const std::vector<DomainId>& b) const {
    return a.size() == b.size() && linearize(a) == linearize(b);
}

void Calculus::canonicalize(GroupElem& g, std::vector<DomainId>& d, std::vector<MoveRecord>* trace) const {
    d = trace_reduce(std::move(d), trace);
    GroupElem before = g;
    grp_.absorb(g, d);
    if (trace && g != before) trace->push_back({Move::AbsG, 0, 0});
    d = linearize(d);
}

ReducedClass Calculus::reduce_nf(NormalForm nf) const {
    ReducedClass rc;
    canonicalize(nf.g, nf.domains, &rc.trace);
    rc.word = from_domains(nf.g, nf.domains, true);
    return rc;
}

ReducedClass Calculus::reduce(const Word& w) const {
    check_letters(w);
    ReducedClass rc;
    std::size_t jumps = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i].is_group)
            for (std::size_t k = 0; k < i; ++k) jumps += w[k].is_group ? 0 : 1;
    NormalForm nf = left_normal(w);
    ReducedClass out = reduce_nf(nf);
    if (jumps > 0) out.trace.insert(out.trace.begin(), MoveRecord{Move::Jmp, jumps, 0});
    return out;
}

bool Calculus::is_reduced(const Word& w) const {
    check_letters(w);
    NormalForm nf = left_normal(w);
    const auto& d = nf.domains;
    for (std::size_t j = 1; j < d.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if ((absorbs(d[i], d[j]) || absorbs(d[j], d[i])) && adjacent_able(d, i, j)) return false;
    return !grp_.absorbable(nf.g, nf.domains);
}

ReducedClass Calculus::star(const ReducedClass& a, const ReducedClass& b) const {
    Word w = a.word;
    w.insert(w.end(), b.word.begin(), b.word.end());
    return reduce(w);
}

bool Calculus::permutation_equivalent(const Word& a, const Word& b) const {
    NormalForm x = left_normal(a);
    NormalForm y = left_normal(b);
    return x.g == y.g && trace_equal(x.domains, y.domains);
}

Ordinal Calculus::ordinal_of(const Word& w) const {
    check_letters(w);
    Ordinal o;
    for (const Letter& x : w)
        if (!x.is_group) o += Ordinal::omega_pow(lat_.complexity(x.d));
    return o;
}

bool Calculus::preceq(const Word& w1, const Word& w2, std::size_t budget) const {
    check_letters(w1);
    check_letters(w2);
    const NormalForm a = left_normal(w1);
    const NormalForm b = left_normal(w2);
    const auto& U = a.domains;
    const auto& V = b.domains;
    const GroupElem k = grp_.multiply(grp_.invert(b.g), a.g);
    const auto* sym = dynamic_cast<const SymbolicGroup*>(&grp_);

    // Each letter of U goes to a position of V: either it is that letter
    // (kept) or it lies strictly inside it (the letter is replaced). Dependent
    // letters must keep their relative order.
    std::vector<int> kept_count(V.size(), 0), repl_count(V.size(), 0);
    std::vector<std::size_t> pos(U.size(), 0);
    std::size_t nodes = 0;

    auto group_fits = [&]() {
        if (grp_.is_identity(k)) return true;
        auto replaced = [&](std::size_t p) { return kept_count[p] == 0; };
        if (sym) {
            // Inserted group letters must act trivially and end up in order.
            std::size_t cur = 0;
            for (int x : k.word) {
                const int gi = std::abs(x) - 1;
                if (!sym->acts_trivially(gi)) return false;
                while (cur < V.size() && !(replaced(cur) && lat_.contains(V[cur], sym->support(gi)))) ++cur;
                if (cur == V.size()) return false;
            }
            return true;
        }
        return !V.empty() && replaced(0) && grp_.is_D_related(k, V[0]);
    };

    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (++nodes > budget) throw CalcError("budget", "preceq alignment search");
        if (i == U.size()) return group_fits();
        std::size_t lo = 0;
        for (std::size_t p = 0; p < i; ++p)
            if (dependent(U[p], U[i])) lo = std::max(lo, pos[p]);
        for (std::size_t q = lo; q < V.size(); ++q) {
            if (U[i] == V[q]) {
                if (kept_count[q] > 0 || repl_count[q] > 0) continue;
                kept_count[q] = 1;
                pos[i] = q;
                if (place(i + 1)) return true;
                kept_count[q] = 0;
            } else if (lat_.strictly_contains(V[q], U[i]) && kept_count[q] == 0) {
                ++repl_count[q];
                pos[i] = q;
                if (place(i + 1)) return true;
                --repl_count[q];
            }
        }
        return false;
    };
    return place(0);
}

DomainId Calculus::LA(const Word& w) const {
    const ReducedClass rc = reduce(w);
    std::vector<DomainId> candidates;
    if (lat_.finite()) {
        candidates = lat_.connected_domains();
    } else {
        NormalForm nf = left_normal(rc.word);
        for (DomainId d : nf.domains) candidates.push_back(grp_.act(nf.g, d));
        candidates.push_back(lat_.full());
    }
    DomainId acc = lat_.empty();
    for (DomainId e : candidates) {
        ReducedClass single{{Letter::dom(e)}, {}};
        if (star(single, rc) == rc) acc = lat_.join(acc, e);
    }
    return acc;
}

DomainId Calculus::wr(const Word& w1, const Word& w2) const { return lat_.meet(LA(invert(w1)), LA(w2)); }

bool Calculus::left_absorbed(const Word& u, const Word& v) const {
    const ReducedClass rv = reduce(v);
    return star(reduce(u), rv) == rv;
}

bool Calculus::right_absorbed(const Word& u, const Word& v) const {
    const ReducedClass rv = reduce(v);
    return star(rv, reduce(u)) == rv;
}

namespace {

std::vector<DomainId> domains_of(const Word& w) {
    std::vector<DomainId> out;
    for (const Letter& x : w)
        if (!x.is_group) out.push_back(x.d);
    return out;
}

}  // namespace

// Proper absorption: every letter of `absorbed` disappears into a strictly
// larger domain, never into an equal one.
bool Calculus::absorbs_strictly(const Word& first, const Word& second, bool absorbed_is_first) const {
    std::vector<DomainId> d = domains_of(first);
    const std::size_t n_first = d.size();
    const std::vector<DomainId> rest = domains_of(second);
    d.insert(d.end(), rest.begin(), rest.end());
    std::vector<MoveRecord> trace;
    trace_reduce(d, &trace);
    std::vector<std::size_t> slot(d.size());
    for (std::size_t i = 0; i < slot.size(); ++i) slot[i] = i;
    auto in_absorbed = [&](std::size_t s) { return (s < n_first) == absorbed_is_first; };
    for (const MoveRecord& r : trace) {
        if (r.move == Move::AbsEq && (in_absorbed(slot[r.pos]) || in_absorbed(slot[r.other]))) return false;
        const std::size_t victim = r.move == Move::AbsEq || lat_.strictly_contains(d[r.pos], d[r.other]) ? r.other : r.pos;
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(victim));
        slot.erase(slot.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    return true;
}

bool Calculus::properly_left_absorbed(const Word& u, const Word& v) const {
    return left_absorbed(u, v) && absorbs_strictly(u, v, true);
}

bool Calculus::properly_right_absorbed(const Word& u, const Word& v) const {
    return right_absorbed(u, v) && absorbs_strictly(v, u, false);
}

bool Calculus::commute(const Word& u, const Word& v) const {
    for (const Letter& x : u)
        for (const Letter& y : v) {
            if (x.is_group || y.is_group) return false;
            if (!independent(x.d, y.d)) return false;
        }
    return true;
}

bool Calculus::is_commuting_word(const Word& w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].is_group) return false;
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[j].is_group || !independent(w[i].d, w[j].d)) return false;
    }
    return true;
}

bool Calculus::for_each_reduct(const Word& w, int c_depth, const std::function<std::vector<Word>(DomainId)>& menu,
                               const std::function<void(const Word&)>& visit, std::size_t max_states) const {
    check_letters(w);
    auto key_of = [&](const NormalForm& nf) { return from_domains(nf.g, linearize(nf.domains), true); };
    std::map<Word, int> best;  // least number of (C) moves used to reach the class
    std::deque<std::pair<Word, int>> queue;
    auto push = [&](const Word& word, int used, bool front) {
        Word key = key_of(left_normal(word));
        auto it = best.find(key);
        if (it != best.end() && it->second <= used) return;
        if (it == best.end()) visit(key);
        best[key] = used;
        if (front) queue.emplace_front(key, used);
        else queue.emplace_back(key, used);
    };
    push(w, 0, true);
    while (!queue.empty()) {
        if (best.size() > max_states) return false;
        auto [cur, used] = queue.front();
        queue.pop_front();
        if (best[cur] < used) continue;
        NormalForm nf = left_normal(cur);
        const auto& d = nf.domains;
        auto rebuild = [&](std::vector<DomainId> dd) { return from_domains(nf.g, dd, true); };
        if (grp_.absorbable(nf.g, d)) {
            GroupElem g = nf.g;
            std::vector<DomainId> dd = d;
            grp_.absorb(g, dd);
            push(from_domains(g, dd, true), used, true);
        }
        for (std::size_t j = 1; j < d.size(); ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                const bool eq = d[i] == d[j];
                if (!eq && !lat_.strictly_contains(d[i], d[j]) && !lat_.strictly_contains(d[j], d[i])) continue;
                if (!adjacent_able(d, i, j)) continue;
                std::vector<DomainId> dd = d;
                std::size_t victim = (eq || lat_.strictly_contains(d[i], d[j])) ? j : i;
                dd.erase(dd.begin() + static_cast<std::ptrdiff_t>(victim));
                push(rebuild(dd), used, true);
                if (!eq || used >= c_depth) continue;
                // Bring i and j together, then substitute.
                std::vector<DomainId> before, after;
                for (std::size_t k = i + 1; k < j; ++k) {
                    bool reaches_j = false;
                    std::vector<std::size_t> chain{k};
                    for (std::size_t m = k + 1; m <= j && !reaches_j; ++m) {
                        for (std::size_t c : chain)
                            if (dependent(d[c], d[m])) {
                                if (m == j) reaches_j = true;
                                chain.push_back(m);
                                break;
                            }
                    }
                    (reaches_j ? before : after).push_back(d[k]);
                }
                for (const Word& rep : menu(d[i])) {
                    Word nw = from_domains(nf.g, {}, true);
                    for (std::size_t k = 0; k < i; ++k) nw.push_back(Letter::dom(d[k]));
                    for (DomainId x : before) nw.push_back(Letter::dom(x));
                    Word rest = apply_move({Letter::dom(d[i]), Letter::dom(d[i])}, Move::C, 0, rep);
                    nw.insert(nw.end(), rest.begin(), rest.end());
                    for (DomainId x : after) nw.push_back(Letter::dom(x));
                    for (std::size_t k = j + 1; k < d.size(); ++k) nw.push_back(Letter::dom(d[k]));
                    push(nw, used + 1, false);
                }
            }
        }
    }
    return true;
}

std::string Calculus::format(const Word& w) const {
    std::string out;
    for (const Letter& x : w) {
        if (!out.empty()) out += ' ';
        out += x.is_group ? grp_.label(x.g) : lat_.label(x.d);
    }
    return out;
}

Word Calculus::parse(const std::string& s) const {
    std::istringstream in(s);
    std::string tok;
    Word w;
    while (in >> tok) {
        try {
            w.push_back(Letter::dom(lat_.parse(tok)));
            continue;
        } catch (const CalcError&) {
        }
        try {
            w.push_back(Letter::grp(grp_.parse(tok)));
        } catch (const CalcError&) {
            throw CalcError("invalid letter", tok);
        }
    }
    check_letters(w);
    return w;
}

}  // namespace curvecalc
