#pragma once

#include <vector>

#include "curvecalc/ordinal.hpp"
#include "curvecalc/surface.hpp"
#include "curvecalc/word.hpp"

namespace curvecalc {

/// C(r+1, 2) * w^(3g+b-2). Throws CalcError("invalid rank power") if r < 1.
Ordinal morley_upper_bound(SurfaceSig sig, int r);

/// w^(3g+b-2) for the full domain family.
Ordinal morley_rank_theory(SurfaceSig sig);

/// w_0 = w, w_1, ..., w_n with w_{i+1} one refined step below w_i. Each step
/// replaces a terminal domain letter D by connected domains strictly inside
/// D and off its boundary. Throws CalcError("no domain letter") when w has no
/// domain letter and CalcError("no such chain") when the backend runs out of
/// subdomains before n steps.
std::vector<Word> descending_chain_r(const Calculus& calc, const Word& w, int n);

/// Checks one refined step v below w directly: w = v0 D up to permutation,
/// v = v0 v1 up to permutation, v1 made of domains strictly inside D and not
/// inside its boundary, and v reduced.
bool is_r_step(const Calculus& calc, const Word& v, const Word& w);

}  // namespace curvecalc
