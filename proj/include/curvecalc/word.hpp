#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "curvecalc/group.hpp"
#include "curvecalc/lattice.hpp"
#include "curvecalc/ordinal.hpp"

namespace curvecalc {

/// A letter of the alphabet: a connected domain or a group element.
struct Letter {
    bool is_group = false;
    DomainId d = 0;
    GroupElem g;

    static Letter dom(DomainId id) { return Letter{false, id, {}}; }
    static Letter grp(GroupElem e) { return Letter{true, 0, std::move(e)}; }
    bool is_domain() const { return !is_group; }
    auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

enum class Move { Rm, Cmp, Split, Swp, Jmp, JmpInv, AbsG, AbsSub, AbsEq, C };

std::string move_name(Move m);

/// One step of a canonicalization, for the audit trail.
struct MoveRecord {
    Move move;
    std::size_t pos;
    std::size_t other = 0;
};

/// Canonical representative of a reduced class: at most one leading group
/// letter, then the lexicographically least arrangement of the domains.
struct ReducedClass {
    Word word;
    std::vector<MoveRecord> trace;

    bool operator==(const ReducedClass& o) const { return word == o.word; }
};

/// g · d_1 ... d_n (left form) or d_1 ... d_n · g (right form).
struct NormalForm {
    GroupElem g;
    std::vector<DomainId> domains;
};

class Calculus {
public:
    explicit Calculus(const GroupBackend& group) : grp_(group), lat_(group.lattice()) {}

    const GroupBackend& group() const { return grp_; }
    const Lattice& lattice() const { return lat_; }

    /// Letters commute iff they are distinct orthogonal domains.
    bool independent(DomainId a, DomainId b) const { return a != b && lat_.orthogonal(a, b); }
    bool absorbs(DomainId big, DomainId small) const { return big == small || lat_.strictly_contains(big, small); }

    /// Throws CalcError for empty or disconnected domain letters.
    void check_letters(const Word& w) const;

    /// Applies one elementary move at `pos` (the left letter of the pair).
    /// Split needs `replacement` = two group letters multiplying to w[pos];
    /// C needs a replacement word in W(D).
    Word apply_move(const Word& w, Move m, std::size_t pos, const Word& replacement = {}) const;

    NormalForm left_normal(const Word& w) const;
    NormalForm right_normal(const Word& w) const;
    Word left_normal_form(const Word& w) const;
    Word right_normal_form(const Word& w) const;
    Word invert(const Word& w) const;

    /// Positions i < j of a domain list can be brought next to each other by
    /// transpositions alone.
    bool adjacent_able(const std::vector<DomainId>& d, std::size_t i, std::size_t j) const;
    /// Deletes absorbed letters until none can be absorbed (no (C) moves).
    std::vector<DomainId> trace_reduce(std::vector<DomainId> d, std::vector<MoveRecord>* trace = nullptr) const;
    /// Lexicographically least word in the same trace.
    std::vector<DomainId> linearize(const std::vector<DomainId>& d) const;
    bool trace_equal(const std::vector<DomainId>& a, const std::vector<DomainId>& b) const;

    ReducedClass reduce(const Word& w) const;
    bool is_reduced(const Word& w) const;
    ReducedClass star(const ReducedClass& a, const ReducedClass& b) const;
    bool equivalent(const Word& a, const Word& b) const { return reduce(a) == reduce(b); }

    /// Same class up to permutation moves only (no absorption).
    bool permutation_equivalent(const Word& a, const Word& b) const;

    Ordinal ordinal_of(const Word& w) const;

    /// w1 ≼ w2. Throws CalcError("budget") when the alignment search gives up.
    bool preceq(const Word& w1, const Word& w2, std::size_t budget = 1u << 20) const;

    DomainId LA(const Word& w) const;
    DomainId wr(const Word& w1, const Word& w2) const;

    bool left_absorbed(const Word& u, const Word& v) const;
    bool properly_left_absorbed(const Word& u, const Word& v) const;
    bool right_absorbed(const Word& u, const Word& v) const;
    bool properly_right_absorbed(const Word& u, const Word& v) const;
    bool commute(const Word& u, const Word& v) const;
    bool is_commuting_word(const Word& w) const;

    /// Every word reachable from w by absorption moves and at most
    /// `c_depth` (C) moves, each (C) replacing an adjacent-able (D,D) by one of
    /// menu(D). Words are reported once per permutation class. Returns false
    /// if `max_states` was hit.
    bool for_each_reduct(const Word& w, int c_depth, const std::function<std::vector<Word>(DomainId)>& menu,
                         const std::function<void(const Word&)>& visit, std::size_t max_states = 20000) const;

    Word from_domains(const GroupElem& g, const std::vector<DomainId>& d, bool group_first = true) const;
    std::string format(const Word& w) const;
    /// Space-separated letters; each token is a domain label or a group label.
    Word parse(const std::string& s) const;

private:
    bool dependent(DomainId a, DomainId b) const { return !independent(a, b); }
    void canonicalize(GroupElem& g, std::vector<DomainId>& d, std::vector<MoveRecord>* trace) const;
    ReducedClass reduce_nf(NormalForm nf) const;
    bool absorbs_strictly(const Word& first, const Word& second, bool absorbed_is_first) const;

    const GroupBackend& grp_;
    const Lattice& lat_;
};

}  // namespace curvecalc
