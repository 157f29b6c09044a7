#pragma once

#include <memory>
#include <random>
#include <string>

#include "curvecalc/group.hpp"
#include "curvecalc/lattice.hpp"
#include "curvecalc/word.hpp"

namespace curvecalc {

/// A pants lattice with a symbolic group and its calculus, kept together so
/// the references between them stay valid.
struct SymbolicSetup {
    explicit SymbolicSetup(PantsGraph g) : lattice(std::move(g)), group(lattice), calc(group) {}
    SymbolicSetup(const SymbolicSetup&) = delete;
    SymbolicSetup& operator=(const SymbolicSetup&) = delete;

    PantsLattice lattice;
    SymbolicGroup group;
    Calculus calc;
};

struct TorusSetup {
    TorusSetup() : group(lattice), calc(group) {}
    TorusSetup(const TorusSetup&) = delete;
    TorusSetup& operator=(const TorusSetup&) = delete;

    TorusLattice lattice;
    TorusGroup group;
    Calculus calc;
};

/// The genus-2 dumbbell: loops a = e0 and b = e2 joined by the bridge c = e1.
PantsGraph dumbbell_graph();

/// Dumbbell with three generators: `ta` twisting along a, `u` supported on the
/// handle around a, and `s` exchanging the two handles.
std::unique_ptr<SymbolicSetup> make_dumbbell_setup();

/// Pants graph number `index` of `sig` with no generators.
std::unique_ptr<SymbolicSetup> make_pants_setup(SurfaceSig sig, int index);

/// Uniform length in [0, max_len]; each letter is a generator power with
/// probability `group_prob`, otherwise a uniform connected domain.
Word random_word(const SymbolicSetup& s, std::mt19937_64& rng, int max_len, double group_prob = 0.25);

/// Random reduced word: a random word, reduced.
Word random_reduced_word(const SymbolicSetup& s, std::mt19937_64& rng, int max_len);

}  // namespace curvecalc
