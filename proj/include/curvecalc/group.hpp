#pragma once

#include <compare>
#include <string>
#include <vector>

#include "curvecalc/lattice.hpp"
#include "curvecalc/slope.hpp"

namespace curvecalc {

/// A group element of one of the two backends. Symbolic elements are freely
/// reduced words in signed generator indices (+(i+1) for g_i, -(i+1) for its
/// inverse); torus elements are SL(2,Z) matrices.
struct GroupElem {
    std::vector<int> word;
    Mat2 mat;
    auto operator<=>(const GroupElem&) const = default;
};

class GroupBackend {
public:
    virtual ~GroupBackend() = default;

    virtual std::string name() const = 0;
    virtual const Lattice& lattice() const = 0;
    virtual GroupElem identity() const { return {}; }
    virtual bool is_identity(const GroupElem& g) const = 0;
    virtual GroupElem multiply(const GroupElem& a, const GroupElem& b) const = 0;
    virtual GroupElem invert(const GroupElem& g) const = 0;
    /// Image of a domain; functorial: act(gh, d) == act(g, act(h, d)).
    virtual DomainId act(const GroupElem& g, DomainId d) const = 0;
    /// Decides the letter inclusion g ⊆ D, i.e. R_D(1, g).
    virtual bool is_D_related(const GroupElem& g, DomainId d) const = 0;
    virtual std::string label(const GroupElem& g) const = 0;
    virtual GroupElem parse(const std::string& s) const = 0;

    /// Normal form of a left group term against a reduced domain word: removes
    /// or rewrites whatever the domains can absorb. May rewrite `domains`.
    virtual void absorb(GroupElem& g, std::vector<DomainId>& domains) const = 0;
    /// Whether (Abs_G) counts against reducedness of g followed by `domains`.
    virtual bool absorbable(const GroupElem& g, const std::vector<DomainId>& domains) const = 0;

    bool is_orthogonal_g(const GroupElem& g, DomainId d) const { return act(g, d) == d; }
};

/// Free group on declared generators over a pants lattice. A generator with a
/// proper support must act trivially on the lattice (twist-like); only a
/// generator supported on the whole surface may permute domains, and then only
/// through a graph automorphism.
class SymbolicGroup : public GroupBackend {
public:
    explicit SymbolicGroup(const PantsLattice& lattice) : lat_(lattice) {}

    /// `edge_perm` empty means the identity action.
    int add_generator(const std::string& name, DomainId support, std::vector<int> edge_perm = {});
    int generator_count() const { return static_cast<int>(gens_.size()); }
    GroupElem generator(int i, int exponent = 1) const;
    DomainId support(int i) const { return gens_.at(i).support; }
    const std::string& generator_name(int i) const { return gens_.at(i).name; }
    bool acts_trivially(int i) const { return gens_.at(i).trivial; }

    std::string name() const override { return "symbolic"; }
    const Lattice& lattice() const override { return lat_; }
    bool is_identity(const GroupElem& g) const override { return g.word.empty(); }
    GroupElem multiply(const GroupElem& a, const GroupElem& b) const override;
    GroupElem invert(const GroupElem& g) const override;
    DomainId act(const GroupElem& g, DomainId d) const override;
    bool is_D_related(const GroupElem& g, DomainId d) const override;
    std::string label(const GroupElem& g) const override;
    GroupElem parse(const std::string& s) const override;
    void absorb(GroupElem& g, std::vector<DomainId>& domains) const override;
    /// True when some letter of g can be absorbed.
    bool absorbable(const GroupElem& g, const std::vector<DomainId>& domains) const override;

    /// Join of the supports of the letters of g (empty domain for the identity).
    DomainId support_of(const GroupElem& g) const;

private:
    struct Gen {
        std::string name;
        DomainId support;
        bool trivial;
        std::vector<DomainId> fwd, inv;  // action tables over domain ids
    };
    const PantsLattice& lat_;
    std::vector<Gen> gens_;
};

/// SL(2,Z) acting on the torus lattice through slopes.
class TorusGroup : public GroupBackend {
public:
    explicit TorusGroup(const TorusLattice& lattice) : lat_(lattice) {}

    std::string name() const override { return "torus"; }
    const Lattice& lattice() const override { return lat_; }
    const TorusLattice& torus() const { return lat_; }
    bool is_identity(const GroupElem& g) const override { return g.mat.is_identity(); }
    GroupElem multiply(const GroupElem& a, const GroupElem& b) const override;
    GroupElem invert(const GroupElem& g) const override;
    DomainId act(const GroupElem& g, DomainId d) const override;
    bool is_D_related(const GroupElem& g, DomainId d) const override;
    std::string label(const GroupElem& g) const override { return g.mat.str(); }
    GroupElem parse(const std::string& s) const override;
    void absorb(GroupElem& g, std::vector<DomainId>& domains) const override;
    /// Only a complete vanishing of g counts: every g can be shifted along the
    /// twist group of the first annulus, which is a change of representative.
    bool absorbable(const GroupElem& g, const std::vector<DomainId>& domains) const override;

    static GroupElem elem(const Mat2& m) { return GroupElem{{}, m}; }

private:
    const TorusLattice& lat_;
};

/// The slope among T_core^k(s), k in Z, of least height (ties: least slope),
/// together with the exponent achieving it.
std::pair<Slope, Int> min_height_twist(const Slope& core, const Slope& s);

}  // namespace curvecalc
