#pragma once

#include <compare>
#include <string>

namespace curvecalc {

/// Orientable surface of finite type. `boundary` lumps boundary circles and
/// punctures together.
struct SurfaceSig {
    int genus = 0;
    int boundary = 0;

    auto operator<=>(const SurfaceSig&) const = default;
};

int euler_characteristic(SurfaceSig sig);

/// 3g + b - 2, reported for every signature including annuli and pants.
int complexity(SurfaceSig sig);

bool is_sporadic(SurfaceSig sig);

/// Admissible for the main calculus: negative Euler characteristic.
bool is_admissible(SurfaceSig sig);

/// Length of a maximal chain of connected domains ending at the full domain.
/// Throws CalcError("sub-minimal complexity") when 3g - 3 + b < 1.
int max_chain_length(SurfaceSig sig);

std::string to_string(SurfaceSig sig);

}  // namespace curvecalc
