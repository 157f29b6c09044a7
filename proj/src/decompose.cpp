#include "curvecalc/decompose.hpp"

#include "curvecalc/error.hpp"

namespace curvecalc {

namespace {

enum class Fate { Stay, Common, Absorbed };

Word concat(std::initializer_list<const Word*> parts) {
    Word out;
    for (const Word* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

std::vector<DomainId> domain_list(const Word& w) {
    std::vector<DomainId> out;
    for (const Letter& x : w)
        if (!x.is_group) out.push_back(x.d);
    return out;
}

}  // namespace

SymmetricDecomposition symmetric_decomposition(const Calculus& calc, const Word& u, const Word& v) {
    const Lattice& lat = calc.lattice();
    const NormalForm un = calc.left_normal(u);
    const NormalForm vn = calc.right_normal(v);
    const std::size_t nu = un.domains.size();

    std::vector<DomainId> d = un.domains;
    d.insert(d.end(), vn.domains.begin(), vn.domains.end());
    std::vector<MoveRecord> trace;
    calc.trace_reduce(d, &trace);

    // Replay the deletions with each letter tagged by its original slot.
    std::vector<std::size_t> slot(d.size());
    for (std::size_t i = 0; i < slot.size(); ++i) slot[i] = i;
    std::vector<Fate> fate(d.size(), Fate::Stay);
    auto from_u = [&](std::size_t s) { return s < nu; };
    for (const MoveRecord& r : trace) {
        const std::size_t si = slot[r.pos], sj = slot[r.other];
        if (from_u(si) == from_u(sj))
            throw CalcError("decomposition check failed", "an input word was not reduced");
        std::size_t victim;
        if (r.move == Move::AbsEq) {
            victim = r.other;
            fate[si] = Fate::Common;
            fate[sj] = Fate::Common;
        } else {
            victim = lat.strictly_contains(d[r.pos], d[r.other]) ? r.other : r.pos;
            fate[slot[victim]] = Fate::Absorbed;
        }
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(victim));
        slot.erase(slot.begin() + static_cast<std::ptrdiff_t>(victim));
    }

    SymmetricDecomposition dec;
    dec.g = un.g;
    dec.h = vn.g;
    for (std::size_t s = 0; s < nu; ++s) {
        const Letter x = Letter::dom(un.domains[s]);
        (fate[s] == Fate::Stay ? dec.u1 : fate[s] == Fate::Common ? dec.w : dec.u_prime).push_back(x);
    }
    for (std::size_t s = nu; s < fate.size(); ++s) {
        const Letter x = Letter::dom(vn.domains[s - nu]);
        if (fate[s] == Fate::Stay) dec.v1.push_back(x);
        else if (fate[s] == Fate::Absorbed) dec.v_prime.push_back(x);
    }

    std::vector<std::string> bad = check_symmetric(calc, u, v, dec);
    if (!bad.empty()) throw CalcError("decomposition check failed", bad.front());
    return dec;
}

std::vector<std::string> check_symmetric(const Calculus& calc, const Word& u, const Word& v,
                                         const SymmetricDecomposition& dec) {
    std::vector<std::string> bad;
    const NormalForm un = calc.left_normal(u);
    const NormalForm vn = calc.right_normal(v);
    auto no_groups = [](const Word& w) {
        for (const Letter& x : w)
            if (x.is_group) return false;
        return true;
    };
    if (!no_groups(dec.u1) || !no_groups(dec.u_prime) || !no_groups(dec.w) || !no_groups(dec.v_prime) ||
        !no_groups(dec.v1))
        bad.push_back("group letters inside the middle words");
    if (un.g != dec.g || !calc.trace_equal(un.domains, domain_list(concat({&dec.u1, &dec.u_prime, &dec.w}))))
        bad.push_back("u is not g u1 u' w");
    if (vn.g != dec.h || !calc.trace_equal(vn.domains, domain_list(concat({&dec.w, &dec.v_prime, &dec.v1}))))
        bad.push_back("v is not w v' v1 h");
    if (!calc.is_commuting_word(dec.w)) bad.push_back("w is not a commuting word");
    if (!dec.u_prime.empty() && !calc.properly_left_absorbed(dec.u_prime, dec.v1))
        bad.push_back("u' is not properly left-absorbed by v1");
    if (!dec.v_prime.empty() && !calc.properly_right_absorbed(dec.v_prime, dec.u1))
        bad.push_back("v' is not properly right-absorbed by u1");
    if (!calc.commute(dec.u_prime, dec.w) || !calc.commute(dec.u_prime, dec.v_prime) ||
        !calc.commute(dec.w, dec.v_prime))
        bad.push_back("u', w, v' do not pairwise commute");
    const Word mid = concat({&dec.u1, &dec.w, &dec.v1});
    if (!calc.is_reduced(mid)) bad.push_back("u1 w v1 is not reduced");
    Word whole{Letter::grp(dec.g)};
    whole.insert(whole.end(), mid.begin(), mid.end());
    whole.push_back(Letter::grp(dec.h));
    if (calc.reduce(whole) != calc.star(calc.reduce(u), calc.reduce(v)))
        bad.push_back("g u1 w v1 h does not recompose to the product");
    return bad;
}

TriangleDecomposition triangle_decomposition(const Calculus& calc, const Word& u, const Word& v, bool cancel) {
    const SymmetricDecomposition sd = symmetric_decomposition(calc, u, v);
    TriangleDecomposition t;
    t.cancel = cancel;
    t.u1 = calc.from_domains(sd.g, {}, true);
    t.u1.insert(t.u1.end(), sd.u1.begin(), sd.u1.end());
    t.v1 = sd.v1;
    const Word h = calc.from_domains(sd.h, {}, true);
    t.v1.insert(t.v1.end(), h.begin(), h.end());
    t.alpha = calc.invert(sd.u_prime);
    t.s = sd.w;
    t.beta = sd.v_prime;
    if (!cancel) t.x = sd.w;
    if (cancel && !calc.is_reduced(concat({&t.u1, &t.v1}))) {
        // Once s is gone, parts of u1 and v1 can meet. What u1 loses to v1
        // joins α, what v1 loses to u1 (or shares with it) joins β.
        const SymmetricDecomposition seam = symmetric_decomposition(calc, t.u1, t.v1);
        t.u1 = calc.from_domains(seam.g, {}, true);
        t.u1.insert(t.u1.end(), seam.u1.begin(), seam.u1.end());
        t.u1.insert(t.u1.end(), seam.w.begin(), seam.w.end());
        const Word lost = calc.invert(seam.u_prime);
        t.alpha.insert(t.alpha.end(), lost.begin(), lost.end());
        t.beta.insert(t.beta.end(), seam.w.begin(), seam.w.end());
        t.beta.insert(t.beta.end(), seam.v_prime.begin(), seam.v_prime.end());
        t.v1 = seam.v1;
        const Word tail = calc.from_domains(seam.h, {}, true);
        t.v1.insert(t.v1.end(), tail.begin(), tail.end());
    }
    std::vector<std::string> bad = check_triangle(calc, u, v, t);
    if (!bad.empty()) throw CalcError("decomposition check failed", bad.front());
    return t;
}

std::vector<std::string> check_triangle(const Calculus& calc, const Word& u, const Word& v,
                                        const TriangleDecomposition& t) {
    std::vector<std::string> bad;
    const Word alpha_inv = calc.invert(t.alpha);
    const Word s_inv = calc.invert(t.s);
    if (!calc.permutation_equivalent(u, concat({&t.u1, &alpha_inv, &s_inv}))) bad.push_back("u is not u1 α⁻¹ s⁻¹");
    if (!calc.permutation_equivalent(v, concat({&t.s, &t.beta, &t.v1}))) bad.push_back("v is not s β v1");
    if (!calc.commute(t.alpha, t.beta) || !calc.commute(t.alpha, t.x) || !calc.commute(t.beta, t.x))
        bad.push_back("α, β, x do not pairwise commute");
    if (t.cancel) {
        if (!t.x.empty() && !calc.properly_right_absorbed(t.x, t.s)) bad.push_back("x is not properly right-absorbed by s");
    } else if (!t.x.empty() && !calc.right_absorbed(t.x, t.s)) {
        bad.push_back("x is not right-absorbed by s");
    }
    if (!t.alpha.empty() && !calc.properly_left_absorbed(t.alpha, t.v1))
        bad.push_back("α is not properly left-absorbed by v1");
    if (!t.beta.empty() && !calc.right_absorbed(t.beta, t.u1)) bad.push_back("β is not right-absorbed by u1");
    const Word w = concat({&t.u1, &t.x, &t.v1});
    // g and h sit in u1 and v1 and may be absorbed across the seam, as in the
    // symmetric decomposition, so reducedness is asked of the domains only.
    Word mid_domains;
    for (DomainId d : domain_list(w)) mid_domains.push_back(Letter::dom(d));
    if (!calc.is_reduced(mid_domains)) bad.push_back("u1 x v1 is not reduced");
    if (!t.cancel && calc.reduce(w) != calc.star(calc.reduce(u), calc.reduce(v)))
        bad.push_back("u1 x v1 does not recompose to the product");
    if (t.cancel) {
        // The cancelled product must still be a reduct of u v.
        const Word uv = concat({&u, &v});
        const ReducedClass target = calc.reduce(w);
        bool found = false;
        const std::size_t n = domain_list(t.s).size();
        calc.for_each_reduct(
            uv, static_cast<int>(n), [](DomainId) { return std::vector<Word>{Word{}}; },
            [&](const Word& r) { found = found || (calc.is_reduced(r) && calc.reduce(r) == target); });
        if (!found) bad.push_back("u1 v1 is not a reduct of u v");
    }
    return bad;
}

}  // namespace curvecalc
