#include "curvecalc/fragment.hpp"

#include <algorithm>
#include <functional>

#include "curvecalc/error.hpp"

namespace curvecalc {

std::string status_name(Status s) {
    switch (s) {
        case Status::Verified: return "verified";
        case Status::Refuted: return "refuted";
        case Status::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// One factor of a product: either a known matrix or T_s^n with n unknown.
struct Factor {
    bool unknown = false;
    Slope s;
    Mat2 m;
};

Mat2 product(const std::vector<Factor>& f, std::size_t from, std::size_t to) {
    Mat2 out;
    for (std::size_t i = from; i < to; ++i) out = out * f[i].m;
    return out;
}

// λ with (T_s - I) y = λ(y) v_s.
Int twist_coeff(const Slope& s, Int y1, Int y2) { return checked_add(checked_mul(s.p, y2), -checked_mul(s.q, y1)); }

// Exact solution of T_a^n Q T_b^m = Y with n, m multiples of step.
Status solve_two(const Slope& a, const Mat2& q, const Slope& b, const Mat2& y, Int step, Int& n, Int& m) {
    const Int z1 = checked_add(checked_mul(q.a, b.p), checked_mul(q.b, b.q));
    const Int z2 = checked_add(checked_mul(q.c, b.p), checked_mul(q.d, b.q));
    const Int y1 = checked_add(checked_mul(y.a, b.p), checked_mul(y.b, b.q));
    const Int y2 = checked_add(checked_mul(y.c, b.p), checked_mul(y.d, b.q));
    const Int lam = twist_coeff(a, z1, z2);
    if (lam == 0) {
        // Q sends b to a, so Q T_b Q^-1 = T_a and the product is T_a^(n+m) Q.
        Int k = 0;
        if (!twist_exponent(y * q.inverse(), a, k) || k % step != 0) return Status::Refuted;
        n = k;
        m = 0;
        return Status::Verified;
    }
    // y - z = n lam v_a.
    const Int d1 = y1 - z1, d2 = y2 - z2;
    Int c = 0;
    if (a.p != 0) {
        if (d1 % a.p != 0) return Status::Refuted;
        c = d1 / a.p;
    } else {
        if (d2 % a.q != 0) return Status::Refuted;
        c = d2 / a.q;
    }
    if (checked_mul(c, a.p) != d1 || checked_mul(c, a.q) != d2 || c % lam != 0) return Status::Refuted;
    n = c / lam;
    Int k = 0;
    if (n % step != 0) return Status::Refuted;
    if (!twist_exponent(q.inverse() * twist_power(a, -n) * y, b, k) || k % step != 0) return Status::Refuted;
    m = k;
    return Status::Verified;
}

// Exponents come back as actual twist powers, all multiples of step.
Status solve(std::vector<Factor> f, const Mat2& x, Int max_exp, Int step, std::vector<Int>& exps) {
    std::vector<std::size_t> unk;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i].unknown) unk.push_back(i);
    exps.assign(unk.size(), 0);
    if (unk.empty()) return product(f, 0, f.size()) == x ? Status::Verified : Status::Refuted;
    if (unk.size() == 1) {
        const Mat2 y = product(f, 0, unk[0]).inverse() * x * product(f, unk[0] + 1, f.size()).inverse();
        return twist_exponent(y, f[unk[0]].s, exps[0]) && exps[0] % step == 0 ? Status::Verified : Status::Refuted;
    }
    if (unk.size() == 2) {
        const Mat2 y = product(f, 0, unk[0]).inverse() * x * product(f, unk[1] + 1, f.size()).inverse();
        return solve_two(f[unk[0]].s, product(f, unk[0] + 1, unk[1]), f[unk[1]].s, y, step, exps[0], exps[1]);
    }
    // Fix the first unknown and recurse; the outcome is exact only if found.
    Factor& first = f[unk[0]];
    first.unknown = false;
    for (Int k = 0; k <= 2 * max_exp; ++k) {
        const Int n = step * ((k % 2 == 0) ? -(k / 2) : (k + 1) / 2);
        std::vector<Int> rest;
        try {
            first.m = twist_power(first.s, n);
            if (solve(f, x, max_exp, step, rest) == Status::Verified) {
                exps[0] = n;
                std::copy(rest.begin(), rest.end(), exps.begin() + 1);
                return Status::Verified;
            }
        } catch (const CalcError&) {
            // overflow: this branch stays undecided
        }
    }
    return Status::Unknown;
}

bool is_full(const TorusSetup& t, const Letter& x) { return !x.is_group && x.d == t.lattice.full(); }

}  // namespace

RwResult holds_R_w(const TorusSetup& t, const GroupElem& x, const GroupElem& y, const Word& w, Int max_exponent,
                   Int twist_step) {
    if (twist_step < 1) throw CalcError("invalid budget", "twist step must be positive");
    t.calc.check_letters(w);
    const Mat2 target = x.mat.inverse() * y.mat;
    RwResult out;

    std::vector<Factor> f;
    std::size_t full_at = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Letter& l = w[i];
        Factor fac;
        if (l.is_group) {
            fac.m = l.g.mat;
        } else if (is_full(t, l)) {
            // The full domain relates everything; it absorbs the rest of the product.
            if (full_at == w.size()) full_at = i;
        } else {
            fac.unknown = true;
            fac.s = t.lattice.slope(l.d);
        }
        f.push_back(fac);
    }

    std::vector<Mat2> step(w.size());
    if (full_at < w.size()) {
        for (std::size_t i = 0; i < w.size(); ++i) step[i] = f[i].m;  // unknown twists set to 0
        step[full_at] = product(f, 0, full_at).inverse() * target * product(f, full_at + 1, f.size()).inverse();
        out.status = Status::Verified;
    } else {
        std::vector<Int> exps;
        out.status = Status::Unknown;
        try {
            out.status = solve(f, target, max_exponent, twist_step, exps);
        } catch (const CalcError& e) {
            if (e.kind() != "overflow") throw;
        }
        if (out.status != Status::Verified) return out;
        std::size_t k = 0;
        for (std::size_t i = 0; i < w.size(); ++i) step[i] = f[i].unknown ? twist_power(f[i].s, exps[k++]) : f[i].m;
    }

    out.path.push_back(x);
    for (const Mat2& m : step) out.path.push_back(TorusGroup::elem(out.path.back().mat * m));
    if (out.path.back().mat != y.mat) throw CalcError("internal", "relation witness does not replay");
    return out;
}

std::vector<Word> candidate_words(const TorusSetup& t, const std::vector<Slope>& alphabet, int max_length) {
    std::vector<Letter> letters;
    for (const Slope& s : alphabet) letters.push_back(Letter::dom(t.lattice.annulus(s)));
    letters.push_back(Letter::dom(t.lattice.full()));

    std::vector<Word> out{Word{}};
    std::vector<ReducedClass> seen{t.calc.reduce(Word{})};
    std::vector<Word> layer{Word{}};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<Word> next;
        for (const Word& base : layer) {
            for (const Letter& l : letters) {
                Word w = base;
                w.push_back(l);
                if (!t.calc.is_reduced(w)) continue;
                next.push_back(w);
                ReducedClass c = t.calc.reduce(w);
                if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
                seen.push_back(std::move(c));
                out.push_back(w);
            }
        }
        layer = std::move(next);
    }
    return out;
}

StrictCheck strict_step(const TorusSetup& t, const GroupElem& x, const GroupElem& y, DomainId d,
                        const std::vector<Slope>& alphabet, const Budgets& b) {
    StrictCheck out;
    if (x.mat == y.mat) {
        out.status = Status::Refuted;
        out.witness_path = {x};
        return out;
    }
    // Below an annulus only the empty word is left.
    if (d != t.lattice.full()) {
        out.status = Status::Verified;
        return out;
    }
    bool unknown = false;
    for (const Word& u : candidate_words(t, alphabet, b.max_length)) {
        if (u.empty() || std::any_of(u.begin(), u.end(), [&](const Letter& l) { return is_full(t, l); })) continue;
        RwResult r = holds_R_w(t, x, y, u, b.max_exponent, b.twist_step);
        if (r.status == Status::Verified) {
            out.status = Status::Refuted;
            out.witness = u;
            out.witness_path = r.path;
            return out;
        }
        unknown = unknown || r.status == Status::Unknown;
    }
    out.status = unknown ? Status::Unknown : Status::Verified;
    return out;
}

RefineResult refine_to_strict(const TorusSetup& t, const WPath& path, const std::vector<Slope>& alphabet,
                              const Budgets& b) {
    if (path.points.size() != path.word.size() + 1) throw CalcError("invalid path", "point count must be |w| + 1");
    for (std::size_t i = 0; i < path.word.size(); ++i) {
        if (holds_R_w(t, path.points[i], path.points[i + 1], Word{path.word[i]}, b.max_exponent, b.twist_step).status !=
            Status::Verified)
            throw CalcError("invalid path", "step " + std::to_string(i) + " does not hold");
    }

    RefineResult out;
    out.path = path;
    bool changed = true;
    while (changed) {
        changed = false;
        out.unknown_steps.clear();
        for (std::size_t i = 0; i < out.path.word.size(); ++i) {
            const Letter& l = out.path.word[i];
            if (l.is_group) continue;
            StrictCheck c = strict_step(t, out.path.points[i], out.path.points[i + 1], l.d, alphabet, b);
            if (c.status == Status::Unknown) out.unknown_steps.push_back(i);
            if (c.status != Status::Refuted) continue;
            // Splice in the shorter relation; an empty witness collapses the repetition.
            WPath& p = out.path;
            p.word.erase(p.word.begin() + static_cast<std::ptrdiff_t>(i));
            p.word.insert(p.word.begin() + static_cast<std::ptrdiff_t>(i), c.witness.begin(), c.witness.end());
            p.points.erase(p.points.begin() + static_cast<std::ptrdiff_t>(i + 1));
            p.points.insert(p.points.begin() + static_cast<std::ptrdiff_t>(i + 1), c.witness_path.begin() + 1,
                            c.witness_path.end());
            ++out.replacements;
            changed = true;
            break;
        }
    }
    return out;
}

DeltaResult delta_search(const TorusSetup& t, const GroupElem& a, const GroupElem& b,
                         const std::vector<Slope>& alphabet, const Budgets& bud) {
    DeltaResult out;
    std::vector<Word> verified;
    for (const Word& w : candidate_words(t, alphabet, bud.max_length)) {
        RwResult r = holds_R_w(t, a, b, w, bud.max_exponent, bud.twist_step);
        if (r.status == Status::Verified) verified.push_back(w);
        if (r.status == Status::Unknown) ++out.unknown;
    }
    out.verified = verified.size();
    for (const Word& w : verified) {
        bool minimal = true;
        for (const Word& v : verified)
            if (t.calc.preceq(v, w) && !t.calc.preceq(w, v)) minimal = false;
        if (!minimal) continue;
        const bool dup = std::any_of(out.minimal.begin(), out.minimal.end(),
                                     [&](const Word& m) { return t.calc.equivalent(m, w); });
        if (!dup) out.minimal.push_back(w);
    }
    out.found = !out.minimal.empty();
    out.unique = out.minimal.size() == 1;
    if (out.unique) out.least = t.calc.reduce(out.minimal.front()).word;
    return out;
}

GateReport check_gate_property(const TorusSetup& t, const std::vector<GroupElem>& A, const GroupElem& a0,
                               DomainId d, const GroupElem& b, const std::vector<Slope>& alphabet,
                               const Budgets& bud) {
    GateReport rep;
    if (holds_R_w(t, a0, b, Word{Letter::dom(d)}, bud.max_exponent, bud.twist_step).status != Status::Verified) {
        rep.precondition_note = "R_D(a0, b) does not hold";
        return rep;
    }
    for (const GroupElem& a : A) {
        StrictCheck c = strict_step(t, a, b, d, alphabet, bud);
        if (c.status == Status::Refuted) {
            rep.precondition_note = "b is related to " + a.mat.str() + " by the shorter word [" +
                                    t.calc.format(c.witness) + "]";
            return rep;
        }
    }
    rep.precondition = true;
    const ReducedClass dd = t.calc.reduce(Word{Letter::dom(d)});
    for (const GroupElem& a : A) {
        GateRow row;
        row.a = a;
        DeltaResult from_b = delta_search(t, b, a, alphabet, bud);
        DeltaResult from_a0 = delta_search(t, a0, a, alphabet, bud);
        if (!from_b.unique || !from_a0.unique) {
            ++rep.unknowns;
            rep.rows.push_back(row);
            continue;
        }
        row.delta_ba = from_b.least;
        row.expected = t.calc.star(dd, t.calc.reduce(from_a0.least)).word;
        row.status = t.calc.equivalent(row.delta_ba, row.expected) ? Status::Verified : Status::Refuted;
        (row.status == Status::Verified ? rep.matches : rep.mismatches)++;
        rep.rows.push_back(row);
    }
    return rep;
}

GroupElem basepoint(const TorusSetup& t, const std::vector<GroupElem>& A, const GroupElem& b,
                    const std::vector<Slope>& alphabet, const Budgets& bud) {
    if (A.empty()) throw CalcError("empty set", "basepoint of an empty set");
    const GroupElem* best = nullptr;
    Ordinal best_or;
    for (const GroupElem& a : A) {
        DeltaResult r = delta_search(t, a, b, alphabet, bud);
        if (!r.found) continue;
        const Ordinal o = t.calc.ordinal_of(r.minimal.front());
        if (!best || o < best_or) {
            best = &a;
            best_or = o;
        }
    }
    if (!best) throw CalcError("budget", "no verified relation from the set to the point");
    return *best;
}

ConvexReport check_weakly_convex(const TorusSetup& t, const std::vector<GroupElem>& A,
                                 const std::vector<Slope>& alphabet, const Budgets& bud) {
    ConvexReport rep;
    for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = 0; j < A.size(); ++j) {
            if (i == j) continue;
            ConvexRow row;
            row.i = i;
            row.j = j;
            DeltaResult d = delta_search(t, A[i], A[j], alphabet, bud);
            if (!d.unique) {
                ++rep.skipped;
                rep.rows.push_back(row);
                continue;
            }
            row.delta = d.least;
            // Depth-first search for a strict path of type δ through A.
            std::vector<GroupElem> pts{A[i]};
            std::function<bool(std::size_t)> walk = [&](std::size_t k) {
                if (k == row.delta.size()) return pts.back().mat == A[j].mat;
                const Letter& l = row.delta[k];
                for (const GroupElem& p : A) {
                    if (holds_R_w(t, pts.back(), p, Word{l}, bud.max_exponent, bud.twist_step).status != Status::Verified) continue;
                    if (!l.is_group && strict_step(t, pts.back(), p, l.d, alphabet, bud).status != Status::Verified)
                        continue;
                    pts.push_back(p);
                    if (walk(k + 1)) return true;
                    pts.pop_back();
                }
                return false;
            };
            if (walk(0)) {
                row.status = Status::Verified;
                row.witness = WPath{row.delta, pts};
                ++rep.verified;
            } else {
                row.status = Status::Unknown;
                ++rep.missing;
            }
            rep.rows.push_back(row);
        }
    }
    rep.weakly_convex = rep.missing == 0 && rep.verified > 0;
    return rep;
}

}  // namespace curvecalc
