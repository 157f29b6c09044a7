#pragma once

#include <random>
#include <vector>

#include "curvecalc/backends.hpp"
#include "curvecalc/fragment.hpp"
#include "curvecalc/slope.hpp"

namespace curvecalc {

/// |p_a q_b - q_a p_b|.
Int intersection(const Slope& a, const Slope& b);

/// Distance in the Farey graph. Searches the ladder of Farey triangles crossed
/// on the way from a to b, which contains a geodesic.
int farey_distance(const Slope& a, const Slope& b);

/// Length of the convergent path, an upper bound for the distance.
int continued_fraction_bound(const Slope& a, const Slope& b);

/// Twisting of b relative to c around the annulus with the given core:
/// move core to 1/0 and compare the floors of the images. Throws
/// CalcError("empty projection") if b or c is the core.
Int annular_distance(const Slope& core, const Slope& b, const Slope& c);

/// Slopes p/q with |p| <= bound and 0 <= q <= bound, including 1/0.
std::vector<Slope> slopes_up_to(int bound);

struct BehrstockResult {
    int bound = 0;
    Int c_emp = 0;
    Slope alpha, core1, core2;  // a triple attaining c_emp
};
/// max over (alpha, core1, core2) of the smaller of the two mutual projections.
BehrstockResult behrstock_scan(int bound);

/// The bound K(w, alpha): empty word 0, an annulus A_g adds 2 d(alpha, g),
/// a group letter h adds d(alpha, h alpha). Throws CalcError("no uniform bound
/// exists") on the full domain.
int displacement_K(const TorusSetup& t, const Word& w, const Slope& alpha);

/// A random g with R_w(1, g) by construction: annular letters become twist
/// powers with exponents in [-max_exp, max_exp], group letters stay as they are.
GroupElem sample_related(const TorusSetup& t, const Word& w, std::mt19937_64& rng, Int max_exp);

struct WitnessResult {
    GroupElem g;
    Int exponent = 0;
    int refuted = 0;  // forbidden words excluded exactly
    int unknown = 0;  // forbidden words not found within the exponent budget
};
/// A power T_core^n, n >= 1, related to 1 by A_core but by none of the
/// forbidden words. Throws CalcError("forbidden word not in W(D)") for a word
/// that uses the annulus itself, CalcError("not proper") for the full domain,
/// and CalcError("budget") if no n <= max_exponent works.
WitnessResult generic_witness(const TorusSetup& t, const Slope& core, const std::vector<Word>& forbidden,
                              Int max_exponent);

}  // namespace curvecalc
