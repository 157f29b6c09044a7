#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "curvecalc/pants.hpp"
#include "curvecalc/slope.hpp"

namespace curvecalc {

using DomainId = int;

/// The domain lattice as seen by the word calculus: domains are interned ids
/// and every lattice predicate goes through the backend.
class Lattice {
public:
    virtual ~Lattice() = default;

    virtual std::string backend_name() const = 0;
    virtual DomainId empty() const = 0;
    virtual DomainId full() const = 0;
    virtual bool is_connected(DomainId d) const = 0;
    virtual bool orthogonal(DomainId a, DomainId b) const = 0;
    /// small ⊆ big as curve sets.
    virtual bool contains(DomainId big, DomainId small) const = 0;
    virtual DomainId join(DomainId a, DomainId b) const = 0;
    virtual DomainId meet(DomainId a, DomainId b) const = 0;
    virtual DomainId complement(DomainId d) const = 0;
    /// k(D) of a connected domain; the full domain gets k of the surface.
    virtual int complexity(DomainId d) const = 0;
    virtual std::string label(DomainId d) const = 0;
    /// Fixed total order used for canonical linearizations.
    virtual bool less(DomainId a, DomainId b) const = 0;
    /// Parses a label produced by label(); throws CalcError on failure.
    virtual DomainId parse(const std::string& s) const = 0;
    virtual bool finite() const = 0;
    /// All connected domains (finite backends only).
    virtual std::vector<DomainId> connected_domains() const = 0;
    virtual SurfaceSig surface() const = 0;

    bool strictly_contains(DomainId big, DomainId small) const {
        return big != small && contains(big, small);
    }
    DomainId boundary(DomainId d) const { return meet(d, complement(d)); }
    bool is_transverse(DomainId a, DomainId b) const {
        return !orthogonal(a, b) && !contains(a, b) && !contains(b, a);
    }
    bool strongly_orthogonal(DomainId a, DomainId b) const {
        return orthogonal(a, b) && !contains(boundary(a), b);
    }
    bool is_annular(DomainId d) const { return is_connected(d) && complexity(d) == 0 && d != full(); }
};

/// Finite lattice of all canonical domains of one pants graph, with every
/// operation tabulated on construction.
class PantsLattice : public Lattice {
public:
    explicit PantsLattice(PantsGraph g);

    std::string backend_name() const override { return "pants:" + ops_.graph().name(); }
    DomainId empty() const override { return empty_; }
    DomainId full() const override { return full_; }
    bool is_connected(DomainId d) const override { return connected_[d]; }
    bool orthogonal(DomainId a, DomainId b) const override { return orth_[a * n_ + b]; }
    bool contains(DomainId big, DomainId small) const override { return cont_[big * n_ + small]; }
    DomainId join(DomainId a, DomainId b) const override { return join_[a * n_ + b]; }
    DomainId meet(DomainId a, DomainId b) const override { return meet_[a * n_ + b]; }
    DomainId complement(DomainId d) const override { return comp_[d]; }
    int complexity(DomainId d) const override;
    std::string label(DomainId d) const override { return ops_.to_string(domains_[d]); }
    bool less(DomainId a, DomainId b) const override { return a < b; }
    DomainId parse(const std::string& s) const override;
    bool finite() const override { return true; }
    std::vector<DomainId> connected_domains() const override { return connected_list_; }
    SurfaceSig surface() const override { return ops_.graph().sig(); }

    const PantsOps& ops() const { return ops_; }
    const PantsDomain& domain(DomainId d) const { return domains_[d]; }
    DomainId id(const PantsDomain& d) const;
    int size() const { return n_; }
    DomainId annulus(int edge) const { return id(ops_.annulus(edge)); }
    DomainId block(EdgeMask interior) const { return id(PantsDomain{{interior}, 0}); }

private:
    PantsOps ops_;
    std::vector<PantsDomain> domains_;
    std::map<PantsDomain, DomainId> index_;
    int n_ = 0;
    DomainId empty_ = 0, full_ = 0;
    std::vector<char> connected_, orth_, cont_;
    std::vector<DomainId> join_, meet_, comp_, connected_list_;
    std::vector<int> k_;
};

/// Domains of the once-punctured torus model: the empty domain, the full
/// domain, and one annulus per slope (interned on demand).
class TorusLattice : public Lattice {
public:
    TorusLattice();

    std::string backend_name() const override { return "torus"; }
    DomainId empty() const override { return 0; }
    DomainId full() const override { return 1; }
    bool is_connected(DomainId d) const override { return d != 0; }
    bool orthogonal(DomainId a, DomainId b) const override;
    bool contains(DomainId big, DomainId small) const override;
    DomainId join(DomainId a, DomainId b) const override;
    DomainId meet(DomainId a, DomainId b) const override;
    DomainId complement(DomainId d) const override;
    int complexity(DomainId d) const override;
    std::string label(DomainId d) const override;
    bool less(DomainId a, DomainId b) const override;
    DomainId parse(const std::string& s) const override;
    bool finite() const override { return false; }
    std::vector<DomainId> connected_domains() const override;
    SurfaceSig surface() const override { return {1, 1}; }

    DomainId annulus(const Slope& s) const;
    bool is_annulus(DomainId d) const { return d >= 2; }
    const Slope& slope(DomainId d) const { return slopes_.at(d - 2); }

private:
    mutable std::vector<Slope> slopes_;
    mutable std::map<Slope, DomainId> index_;
};

}  // namespace curvecalc
