#pragma once

#include <string>
#include <vector>

#include "curvecalc/backends.hpp"
#include "curvecalc/word.hpp"

namespace curvecalc {

/// Outcome of a bounded search. Verified and Refuted are exact; Unknown means
/// the search ran out of budget.
enum class Status { Verified, Refuted, Unknown };
std::string status_name(Status s);

struct Budgets {
    int max_length = 3;      // L
    Int max_exponent = 200;  // E
    /// Annular letters stand for powers of T^step. Step 2 is the level-2
    /// congruence model, where the two coordinate twists generate a free group.
    Int twist_step = 1;
};

/// R_w(x, y) in the torus model. On Verified, `path` holds x = a_0, ..., a_k = y
/// with a_i = a_{i-1} * (factor of letter i), replayed through plain matrix
/// products. Searches with at most two twist unknowns are exact.
struct RwResult {
    Status status = Status::Unknown;
    std::vector<GroupElem> path;
};
RwResult holds_R_w(const TorusSetup& t, const GroupElem& x, const GroupElem& y, const Word& w, Int max_exponent,
                   Int twist_step = 1);

/// A w-path: points a_0..a_k and the letters between them.
struct WPath {
    Word word;
    std::vector<GroupElem> points;
};

/// Whether the step x -> y of letter D is strict to budget: no word of
/// domains strictly inside D (over the alphabet slopes, length <= L) relates
/// x and y. Refuted carries the offending word.
struct StrictCheck {
    Status status = Status::Unknown;
    Word witness;
    std::vector<GroupElem> witness_path;
};
StrictCheck strict_step(const TorusSetup& t, const GroupElem& x, const GroupElem& y, DomainId d,
                        const std::vector<Slope>& alphabet, const Budgets& b);

/// Replaces non-strict steps until every step is strict to budget. Steps whose
/// strictness stays unknown are listed in `unknown_steps` of the result.
struct RefineResult {
    WPath path;
    std::vector<std::size_t> unknown_steps;
    int replacements = 0;
};
RefineResult refine_to_strict(const TorusSetup& t, const WPath& path, const std::vector<Slope>& alphabet,
                              const Budgets& b);

/// Reduced words over the alphabet annuli and C0 of length <= L.
std::vector<Word> candidate_words(const TorusSetup& t, const std::vector<Slope>& alphabet, int max_length);

/// The ≼-least verified reduced word between a and b. `minimal` lists every
/// ≼-minimal verified class; `unique` is false when there is more than one.
struct DeltaResult {
    bool found = false;
    bool unique = false;
    Word least;
    std::vector<Word> minimal;
    std::size_t verified = 0;
    std::size_t unknown = 0;
};
DeltaResult delta_search(const TorusSetup& t, const GroupElem& a, const GroupElem& b,
                         const std::vector<Slope>& alphabet, const Budgets& bud);

struct GateRow {
    GroupElem a;
    Status status = Status::Unknown;
    Word delta_ba, expected;
};
struct GateReport {
    bool precondition = false;
    std::string precondition_note;
    int matches = 0, mismatches = 0, unknowns = 0;
    std::vector<GateRow> rows;
};
/// δ(b, a) == [D] ∗ δ(a0, a) for every a in A, given b one step D away from A.
GateReport check_gate_property(const TorusSetup& t, const std::vector<GroupElem>& A, const GroupElem& a0,
                               DomainId d, const GroupElem& b, const std::vector<Slope>& alphabet,
                               const Budgets& bud);

/// A point of A minimizing Or(δ(a, b)) over the verified classes.
GroupElem basepoint(const TorusSetup& t, const std::vector<GroupElem>& A, const GroupElem& b,
                    const std::vector<Slope>& alphabet, const Budgets& bud);

struct ConvexRow {
    std::size_t i = 0, j = 0;
    Status status = Status::Unknown;
    Word delta;
    WPath witness;
};
struct ConvexReport {
    bool weakly_convex = false;
    int verified = 0, missing = 0, skipped = 0;
    std::vector<ConvexRow> rows;
};
/// For each ordered pair of distinct points of A with a verified δ, looks for a
/// strict δ-path that stays inside A. Pairs without a verified δ are skipped.
ConvexReport check_weakly_convex(const TorusSetup& t, const std::vector<GroupElem>& A,
                                 const std::vector<Slope>& alphabet, const Budgets& bud);

}  // namespace curvecalc
