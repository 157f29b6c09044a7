#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvecalc/error.hpp"
#include "curvecalc/farey.hpp"
#include "oracles/farey_bfs.hpp"

using namespace curvecalc;

namespace {

Slope sl(Int p, Int q) { return Slope::make(p, q); }

Mat2 random_sl2(std::mt19937_64& rng, int len = 6) {
    std::uniform_int_distribution<int> e(-3, 3);
    Mat2 m;
    for (int i = 0; i < len; ++i) m = m * twist_power(i % 2 ? sl(1, 0) : sl(0, 1), e(rng));
    return m;
}

Slope random_slope(std::mt19937_64& rng, Int box) {
    std::uniform_int_distribution<Int> p(-box, box), q(0, box);
    for (;;) {
        const Int a = p(rng), b = q(rng);
        if (std::gcd(a, b) == 1) return sl(a, b);
    }
}

}  // namespace

TEST_CASE("intersection numbers") {
    CHECK(intersection(sl(0, 1), sl(1, 0)) == 1);
    CHECK(intersection(sl(1, 2), sl(3, 5)) == 1);
    CHECK(intersection(sl(3, 7), sl(3, 7)) == 0);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        const Slope a = random_slope(rng, 30), b = random_slope(rng, 30);
        const Mat2 g = random_sl2(rng);
        CHECK(intersection(a, b) == intersection(b, a));
        CHECK(intersection(act(g, a), act(g, b)) == intersection(a, b));
    }
}

TEST_CASE("farey distance examples") {
    CHECK(farey_distance(sl(0, 1), sl(1, 0)) == 1);
    CHECK(farey_distance(sl(0, 1), sl(0, 1)) == 0);
    // 0 - 1/2 - 2/5: 1/2 and 2/5 are neighbours but 0 and 2/5 are not.
    CHECK(farey_distance(sl(0, 1), sl(2, 5)) == 2);
    CHECK(continued_fraction_bound(sl(0, 1), sl(2, 5)) >= 2);
    CHECK(farey_distance(sl(1, 0), sl(7, 3)) == 2);
}

TEST_CASE("farey distance agrees with breadth-first search in a box") {
    const oracle::FareyBox box(9);
    std::vector<Slope> small;
    for (const auto& [p, q] : box.nodes())
        if (std::llabs(p) <= 5 && q <= 5) small.push_back(sl(p, q));
    for (const Slope& a : small)
        for (const Slope& b : small) {
            const int d = farey_distance(a, b);
            CHECK(d == box.distance({a.p, a.q}, {b.p, b.q}));
            CHECK(d <= continued_fraction_bound(a, b));
        }
}

TEST_CASE("farey neighbours are exactly the slopes meeting once") {
    std::vector<Slope> s{sl(1, 0)};
    for (Int q = 1; q <= 50; ++q)
        for (Int p = 0; p <= q; ++p)
            if (std::gcd(p, q) == 1) s.push_back(sl(p, q));
    long long edges = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const bool one = intersection(s[i], s[j]) == 1;
            if (one) ++edges;
            // The full distance is only needed when the pair is not an edge.
            if (!one && farey_distance(s[i], s[j]) == 1) FAIL(s[i].str() << " " << s[j].str());
            if (one && farey_distance(s[i], s[j]) != 1) FAIL(s[i].str() << " " << s[j].str());
        }
    CHECK(edges > 0);
}

TEST_CASE("farey distance is a metric and invariant") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 2000; ++i) {
        const Slope a = random_slope(rng, 200), b = random_slope(rng, 200), c = random_slope(rng, 200);
        const int ab = farey_distance(a, b), bc = farey_distance(b, c), ac = farey_distance(a, c);
        CHECK(ac <= ab + bc);
        CHECK(ab == farey_distance(b, a));
        const Mat2 g = random_sl2(rng);
        CHECK(farey_distance(act(g, a), act(g, b)) == ab);
    }
}

TEST_CASE("annular distance") {
    CHECK(annular_distance(sl(1, 0), sl(0, 1), sl(5, 1)) == 5);
    CHECK(annular_distance(sl(1, 0), sl(2, 3), sl(2, 3)) == 0);
    try {
        annular_distance(sl(1, 0), sl(1, 0), sl(0, 1));
        FAIL("expected rejection");
    } catch (const CalcError& e) {
        CHECK(e.kind() == "empty projection");
    }
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const Slope core = random_slope(rng, 20), b = random_slope(rng, 20), c = random_slope(rng, 20);
        if (b == core || c == core) continue;
        const Mat2 g = random_sl2(rng);
        CHECK(annular_distance(act(g, core), act(g, b), act(g, c)) == annular_distance(core, b, c));
        // Twisting along the core moves everything by the exponent.
        const Int n = std::uniform_int_distribution<Int>(-20, 20)(rng);
        const Slope bt = act(twist_power(core, n), b);
        CHECK(annular_distance(core, b, bt) == std::abs(n));
    }
}

TEST_CASE("behrstock scan") {
    const BehrstockResult r1 = behrstock_scan(1);
    CHECK(r1.c_emp <= 4);
    const BehrstockResult r3 = behrstock_scan(3);
    CHECK(r3.c_emp >= r1.c_emp);
    CHECK(r3.c_emp ==
          std::min(annular_distance(r3.core1, r3.core2, r3.alpha), annular_distance(r3.core2, r3.core1, r3.alpha)));
    CHECK_THROWS_AS(behrstock_scan(0), CalcError);
}

TEST_CASE("displacement bound") {
    TorusSetup t;
    const DomainId ainf = t.lattice.annulus(sl(1, 0));
    CHECK(displacement_K(t, {Letter::dom(ainf)}, sl(1, 0)) == 0);
    CHECK(displacement_K(t, {Letter::dom(ainf)}, sl(0, 1)) == 2);
    CHECK(displacement_K(t, {}, sl(0, 1)) == 0);
    try {
        displacement_K(t, {Letter::dom(t.lattice.full())}, sl(0, 1));
        FAIL("expected rejection");
    } catch (const CalcError& e) {
        CHECK(e.kind() == "no uniform bound exists");
    }

    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        Word w;
        const int len = std::uniform_int_distribution<int>(1, 4)(rng);
        for (int k = 0; k < len; ++k) w.push_back(Letter::dom(t.lattice.annulus(random_slope(rng, 4))));
        const Slope alpha = random_slope(rng, 6);
        const int k = displacement_K(t, w, alpha);
        for (int s = 0; s < 100; ++s) {
            const GroupElem g = sample_related(t, w, rng, 50);
            CHECK(farey_distance(alpha, act(g.mat, alpha)) <= k);
        }
    }
}

TEST_CASE("genericity witnesses") {
    TorusSetup t;
    const Slope inf = sl(1, 0);
    const WitnessResult none = generic_witness(t, inf, {}, 200);
    CHECK(none.exponent == 1);
    CHECK(none.g.mat == twist(inf));

    const WitnessResult r = generic_witness(t, inf, {{Letter::dom(t.lattice.annulus(sl(0, 1)))}}, 200);
    CHECK(r.exponent == 1);
    CHECK(r.refuted == 1);

    try {
        generic_witness(t, inf, {{Letter::dom(t.lattice.annulus(inf))}}, 200);
        FAIL("expected rejection");
    } catch (const CalcError& e) {
        CHECK(e.kind() == "forbidden word not in W(D)");
    }
    CHECK_THROWS_AS(generic_witness(t, inf, {{Letter::dom(t.lattice.full())}}, 200), CalcError);
}
