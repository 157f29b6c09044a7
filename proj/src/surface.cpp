#include "curvecalc/surface.hpp"

#include "curvecalc/error.hpp"

namespace curvecalc {

int euler_characteristic(SurfaceSig sig) { return 2 - 2 * sig.genus - sig.boundary; }

int complexity(SurfaceSig sig) { return 3 * sig.genus + sig.boundary - 2; }

bool is_sporadic(SurfaceSig sig) {
    return (sig.genus == 0 && sig.boundary <= 4) || (sig.genus == 1 && sig.boundary <= 1);
}

bool is_admissible(SurfaceSig sig) { return euler_characteristic(sig) < 0; }

int max_chain_length(SurfaceSig sig) {
    if (sig.genus < 0 || sig.boundary < 0)
        throw CalcError("invalid signature", to_string(sig));
    if (3 * sig.genus - 3 + sig.boundary < 1)
        throw CalcError("sub-minimal complexity", to_string(sig));
    return 3 * sig.genus - 2 + sig.boundary;
}

std::string to_string(SurfaceSig sig) {
    return "(" + std::to_string(sig.genus) + "," + std::to_string(sig.boundary) + ")";
}

}  // namespace curvecalc
