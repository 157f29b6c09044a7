#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "curvecalc/backends.hpp"
#include "curvecalc/error.hpp"
#include "curvecalc/ordinal.hpp"
#include "curvecalc/rank.hpp"
#include "oracles/small_ordinals.hpp"

using namespace curvecalc;

namespace {

Ordinal from_triple(const oracle::Triple& t) {
    return Ordinal::omega_pow(2, t[0]) + Ordinal::omega_pow(1, t[1]) + Ordinal::natural(t[2]);
}

// Refined step v below w, read off the definition: some letter D of w can be
// moved to the end, and v is the rest of w followed by letters strictly inside
// D and not inside its boundary.
bool refined_step(const Calculus& c, const Word& v, const Word& w) {
    const Lattice& lat = c.lattice();
    if (!c.is_reduced(v) || !c.is_reduced(w)) return false;
    const NormalForm wv = c.left_normal(w), vv = c.left_normal(v);
    if (wv.g != vv.g) return false;
    const auto& wd = wv.domains;
    for (std::size_t k = 0; k < wd.size(); ++k) {
        bool terminal = true;
        for (std::size_t m = k + 1; m < wd.size(); ++m) terminal = terminal && c.independent(wd[k], wd[m]);
        if (!terminal) continue;
        const DomainId d = wd[k];
        std::vector<DomainId> v0 = wd;
        v0.erase(v0.begin() + static_cast<std::ptrdiff_t>(k));
        // Whatever v has beyond v0 is v1.
        std::vector<DomainId> rest = vv.domains, v1;
        bool ok = true;
        for (DomainId x : v0) {
            auto it = std::find(rest.begin(), rest.end(), x);
            if (it == rest.end()) ok = false;
            else rest.erase(it);
        }
        if (!ok) continue;
        v1 = rest;
        for (DomainId x : v1)
            ok = ok && lat.strictly_contains(d, x) && !lat.contains(lat.boundary(d), x);
        std::vector<DomainId> joined = v0;
        joined.insert(joined.end(), v1.begin(), v1.end());
        if (ok && c.trace_equal(joined, vv.domains)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("natural sum examples") {
    CHECK((Ordinal::omega_pow(2) + Ordinal::omega_pow(1)).str() == "w^2 + w");
    const Ordinal a = Ordinal::omega_pow(1) + Ordinal::natural(1);
    const Ordinal b = Ordinal::omega_pow(2) + Ordinal::omega_pow(1);
    CHECK(natural_sum(a, b).str() == "w^2 + w*2 + 1");
    CHECK(natural_sum(a, Ordinal{}) == a);
    CHECK(Ordinal{}.str() == "0");
    CHECK(Ordinal::omega_pow(4, 3).str() == "w^4*3");
}

TEST_CASE("ordinals below w^3 agree with coefficient triples") {
    std::vector<oracle::Triple> all;
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; y <= 2; ++y)
            for (int z = 0; z <= 3; ++z) all.push_back({x, y, z});
    for (const auto& p : all)
        for (const auto& q : all) {
            const Ordinal a = from_triple(p), b = from_triple(q);
            const int cmp = oracle::compare(p, q);
            CHECK((a < b) == (cmp < 0));
            CHECK((a == b) == (cmp == 0));
            CHECK(natural_sum(a, b) == from_triple(oracle::natural_sum(p, q)));
            CHECK(natural_sum(a, b) == natural_sum(b, a));
            if (!b.is_zero()) CHECK(a < natural_sum(a, b));
        }
}

TEST_CASE("ordinal of a word") {
    auto s = make_dumbbell_setup();
    const Calculus& c = s->calc;
    const PantsLattice& lat = s->lattice;
    CHECK(c.ordinal_of({Letter::grp(s->group.generator(0))}).is_zero());
    CHECK(c.ordinal_of({}).is_zero());
    // An annulus and a one-holed torus in the (1,2) surface.
    auto setup = make_pants_setup({1, 2}, 0);
    const Lattice& l12 = setup->lattice;
    const Word w{Letter::dom(l12.parse("A(e0)")), Letter::dom(l12.parse("S(e0)")), Letter::dom(l12.parse("S(e0,e1)"))};
    CHECK(setup->calc.ordinal_of(w).str() == "w^3 + w^2 + 1");
    CHECK(setup->calc.ordinal_of({w[2], w[0], w[1]}) == setup->calc.ordinal_of(w));
    CHECK(c.ordinal_of({Letter::dom(lat.full())}) == Ordinal::omega_pow(4));
    CHECK_THROWS_AS(c.ordinal_of({Letter::dom(lat.empty())}), CalcError);
}

TEST_CASE("rank formulas") {
    CHECK(morley_upper_bound({2, 0}, 1) == Ordinal::omega_pow(4));
    CHECK(morley_upper_bound({2, 0}, 2) == Ordinal::omega_pow(4, 3));
    CHECK(morley_upper_bound({1, 2}, 1) == Ordinal::omega_pow(3));
    CHECK(morley_rank_theory({2, 0}) == Ordinal::omega_pow(4));
    CHECK(morley_rank_theory({1, 2}) == Ordinal::omega_pow(3));
    CHECK(morley_rank_theory({0, 5}) == Ordinal::omega_pow(3));
    CHECK_THROWS_AS(morley_upper_bound({2, 0}, 0), CalcError);
    for (int g = 0; g <= 3; ++g)
        for (int b = 0; b <= 5; ++b) {
            if (3 * g - 3 + b < 1) continue;
            CHECK(morley_rank_theory({g, b}) == Ordinal::omega_pow(max_chain_length({g, b})));
            CHECK(morley_upper_bound({g, b}, 3) == Ordinal::omega_pow(max_chain_length({g, b}), 6));
        }
}

TEST_CASE("refined descending chains") {
    auto s = make_dumbbell_setup();
    const Calculus& c = s->calc;
    const PantsLattice& lat = s->lattice;

    // Pants subdomains never cross, so the handle only has A(e0) below it.
    const Word handle{Letter::dom(lat.parse("S(e0)"))};
    CHECK(descending_chain_r(c, handle, 2).size() == 3);
    CHECK_THROWS_AS(descending_chain_r(c, handle, 3), CalcError);

    // On the torus the one-holed torus pumps into alternating annular words.
    TorusSetup t;
    const auto chain = descending_chain_r(t.calc, {Letter::dom(t.lattice.full())}, 3);
    REQUIRE(chain.size() == 4);
    for (std::size_t i = 1; i < chain.size(); ++i) {
        CHECK(refined_step(t.calc, chain[i], chain[i - 1]));
        CHECK(is_r_step(t.calc, chain[i], chain[i - 1]));
    }

    const auto ann = descending_chain_r(c, {Letter::dom(lat.annulus(0))}, 1);
    REQUIRE(ann.size() == 2);
    CHECK(ann[1].empty());

    try {
        descending_chain_r(c, {Letter::grp(s->group.generator(0))}, 1);
        FAIL("expected rejection");
    } catch (const CalcError& e) {
        CHECK(e.kind() == "no domain letter");
    }
    try {
        descending_chain_r(c, {Letter::dom(lat.annulus(0))}, 2);
        FAIL("expected rejection");
    } catch (const CalcError& e) {
        CHECK(e.kind() == "no such chain");
    }
}

TEST_CASE("every generated chain step passes the definition check") {
    auto s = make_dumbbell_setup();
    const Calculus& c = s->calc;
    std::mt19937_64 rng(4);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const Word w = random_reduced_word(*s, rng, 4);
        std::vector<Word> chain;
        try {
            chain = descending_chain_r(c, w, 4);
        } catch (const CalcError&) {
            continue;
        }
        for (std::size_t k = 1; k < chain.size(); ++k) {
            INFO(c.format(chain[k - 1]) << " > " << c.format(chain[k]));
            CHECK(refined_step(c, chain[k], chain[k - 1]));
            ++checked;
        }
    }
    CHECK(checked > 100);

    TorusSetup t;
    const auto torus_chain = descending_chain_r(t.calc, {Letter::dom(t.lattice.full())}, 6);
    for (std::size_t k = 1; k < torus_chain.size(); ++k) CHECK(refined_step(t.calc, torus_chain[k], torus_chain[k - 1]));
}
