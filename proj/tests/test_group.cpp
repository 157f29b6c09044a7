#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvecalc/backends.hpp"
#include "curvecalc/error.hpp"
#include "curvecalc/group.hpp"

using namespace curvecalc;

namespace {

Mat2 random_sl2(std::mt19937_64& rng, int steps) {
    const Mat2 gens[4] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {1, 0, 1, 1}, {1, 0, -1, 1}};
    Mat2 m;
    for (int i = 0; i < steps; ++i) m = m * gens[std::uniform_int_distribution<int>(0, 3)(rng)];
    return m;
}

}  // namespace

TEST_CASE("twist matrices") {
    CHECK(twist(Slope::make(1, 0)) == Mat2{1, 1, 0, 1});
    CHECK(twist(Slope::make(0, 1)) == Mat2{1, 0, -1, 1});
    const Slope s = Slope::make(2, 3);
    CHECK(twist(s) == Mat2{1 - 6, 4, -9, 1 + 6});
    CHECK(twist_power(s, 4) == power(twist(s), 4));
    CHECK(twist_power(s, -3) == power(twist(s).inverse(), 3));
    Int n = 0;
    CHECK(twist_exponent(twist_power(s, -7), s, n));
    CHECK(n == -7);
}

TEST_CASE("torus group arithmetic and action") {
    TorusLattice lat;
    TorusGroup grp(lat);
    const GroupElem t = TorusGroup::elem({1, 1, 0, 1});
    CHECK(grp.is_identity(grp.multiply(t, grp.invert(t))));
    CHECK(grp.multiply(t, TorusGroup::elem({1, 0, 1, 1})).mat == Mat2{2, 1, 1, 1});
    CHECK(grp.act(grp.identity(), lat.annulus(Slope::make(3, 5))) == lat.annulus(Slope::make(3, 5)));
    CHECK(grp.act(t, lat.annulus(Slope::make(0, 1))) == lat.annulus(Slope::make(1, 1)));
    CHECK(grp.label(TorusGroup::elem({2, 1, 1, 1})) == "[[2,1],[1,1]]");
    CHECK(grp.parse("[[2,1],[1,1]]").mat == Mat2{2, 1, 1, 1});
    CHECK(grp.parse("T(1/0)^5").mat == Mat2{1, 5, 0, 1});
}

TEST_CASE("torus D-relatedness is exact twist membership") {
    TorusLattice lat;
    TorusGroup grp(lat);
    const DomainId inf = lat.annulus(Slope::make(1, 0));
    CHECK(grp.is_D_related(TorusGroup::elem({1, 5, 0, 1}), inf));
    CHECK_FALSE(grp.is_D_related(TorusGroup::elem({2, 1, 1, 1}), inf));
    // -I fixes every slope but reverses orientation.
    CHECK_FALSE(grp.is_D_related(TorusGroup::elem({-1, 0, 0, -1}), inf));
    CHECK(grp.is_D_related(TorusGroup::elem({2, 1, 1, 1}), lat.full()));
    CHECK(grp.is_D_related(grp.identity(), inf));
    CHECK(grp.is_orthogonal_g(TorusGroup::elem(twist_power(Slope::make(2, 7), 3)), lat.annulus(Slope::make(2, 7))));
    CHECK_FALSE(grp.is_orthogonal_g(TorusGroup::elem({1, 1, 0, 1}), lat.annulus(Slope::make(0, 1))));
}

TEST_CASE("torus action is functorial and relatedness multiplicative") {
    TorusLattice lat;
    TorusGroup grp(lat);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const GroupElem g = TorusGroup::elem(random_sl2(rng, 6)), h = TorusGroup::elem(random_sl2(rng, 6));
        const DomainId d = lat.annulus(act(random_sl2(rng, 5), Slope::make(1, 0)));
        CHECK(grp.act(grp.multiply(g, h), d) == grp.act(g, grp.act(h, d)));
        const Slope s = lat.slope(d);
        const GroupElem a = TorusGroup::elem(twist_power(s, i % 7 - 3));
        const GroupElem b = TorusGroup::elem(twist_power(s, i % 5 - 2));
        CHECK(grp.is_D_related(grp.multiply(a, b), d));
    }
}

TEST_CASE("symbolic group") {
    auto s = make_dumbbell_setup();
    const SymbolicGroup& grp = s->group;
    const PantsLattice& lat = s->lattice;
    const GroupElem ta = grp.generator(0), u = grp.generator(1), sw = grp.generator(2);
    CHECK(grp.is_identity(grp.multiply(ta, grp.invert(ta))));
    const GroupElem ab = grp.multiply(ta, u);
    const GroupElem binv_c = grp.multiply(grp.invert(u), sw);
    CHECK(grp.multiply(ab, binv_c) == grp.multiply(ta, sw));
    CHECK(grp.label(grp.multiply(ta, ta)) == "ta^2");
    CHECK(grp.parse("ta^2*s") == grp.multiply(grp.generator(0, 2), sw));

    const DomainId h0 = lat.block(1u), h2 = lat.block(4u);
    CHECK(grp.act(sw, h0) == h2);
    CHECK(grp.act(grp.identity(), h0) == h0);
    CHECK(grp.is_orthogonal_g(u, h2));
    CHECK(grp.is_D_related(ta, h0));
    CHECK(grp.is_D_related(ta, lat.annulus(0)));
    CHECK_FALSE(grp.is_D_related(u, lat.annulus(0)));
    CHECK(grp.is_D_related(grp.multiply(ta, u), h0));
    CHECK_FALSE(grp.is_D_related(sw, h0));
    CHECK(grp.is_D_related(grp.identity(), lat.annulus(2)));
}

TEST_CASE("symbolic action is functorial") {
    auto s = make_dumbbell_setup();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        GroupElem g, h;
        for (int k = 0; k < 4; ++k) {
            g = s->group.multiply(g, s->group.generator(static_cast<int>(rng() % 3), rng() % 2 ? 1 : -1));
            h = s->group.multiply(h, s->group.generator(static_cast<int>(rng() % 3), rng() % 2 ? 1 : -1));
        }
        for (DomainId d = 0; d < s->lattice.size(); ++d)
            CHECK(s->group.act(s->group.multiply(g, h), d) == s->group.act(g, s->group.act(h, d)));
    }
}

TEST_CASE("generators must be consistent with the lattice") {
    PantsLattice lat(dumbbell_graph());
    SymbolicGroup grp(lat);
    grp.add_generator("x", lat.annulus(0));
    CHECK_THROWS_AS(grp.add_generator("x", lat.annulus(2)), CalcError);
    CHECK_THROWS_AS(grp.add_generator("y", lat.empty()), CalcError);
    // A proper support may not move domains.
    CHECK_THROWS_AS(grp.add_generator("z", lat.block(1u), {2, 1, 0}), CalcError);
    // Not a graph automorphism: it sends a loop to the bridge.
    CHECK_THROWS_AS(grp.add_generator("w", lat.full(), {1, 0, 2}), CalcError);
    CHECK_THROWS_AS(grp.parse("q"), CalcError);
}
