#pragma once

#include "wittforge/forms.hpp"

#include <map>
#include <optional>
#include <set>

namespace wittforge {

/// nullopt = infinite.
using Bound = std::optional<u64>;

/// { floor(2^n / dim) } up to min(bound, horizon), plus the bound itself.
std::set<u64> admissible_sublevels(u64 dim, Bound sublevel_bound, u64 horizon);

/// { ceil(2^n / dim) } up to min(bound, horizon), plus the bound itself.
std::set<u64> admissible_levels(u64 dim, Bound level_bound, u64 horizon);

/// Integers in (2^n - 2^n*i1/dim, 2^n) for all n with 2^n ≤ sublevel bound,
/// clipped to the horizon. Sound for any lower bound i1_lo ≥ 1 on the first
/// Witt index.
std::set<u64> inadmissible_sublevels(u64 dim, u64 i1_lo, Bound sublevel_bound, u64 horizon);

/// { floor(2^n - 2^n*i1/dim) : 2^n ≤ bound }; requires the exact first Witt
/// index of a form with maximal splitting.
std::set<u64> maxsplit_sublevels(u64 dim, u64 i1_exact, Bound sublevel_bound, u64 horizon);

/// Level-side exclusions for forms representing 1: integers in
/// (2^n + 1 - (2^n*i1 + 1)/dim, 2^n), per n with 2^n ≤ sublevel bound and
/// dim ≤ 2^(n-1)*i1.
std::set<u64> inadmissible_levels(u64 dim, u64 i1_lo, Bound sublevel_bound, u64 horizon);

/// { ceil(2^r / n) } up to the horizon: the level values common to every
/// n-dimensional form of infinite level.
std::set<u64> mset_values(u64 dim, u64 horizon);

struct ValueSetReport {
    std::map<u64, std::vector<std::string>> admissible;
    std::map<u64, std::vector<std::string>> excluded;
    std::set<u64> undecided;
    u64 horizon = 0;
    bool lower_is_zero = true;  // sublevel reports cover [0,h], level reports [1,h]
    std::string equality = "unknown";
};

/// Full per-integer classification for the sublevel value set of a form of
/// the given dimension. iterates_max_split certifies that (m+1)×q has
/// maximal splitting for every m (true e.g. when q is similar to a Pfister
/// form), turning undecided integers into exclusions.
ValueSetReport sublevel_value_report(u64 dim, std::optional<u64> i1_lo, std::optional<u64> i1_hi,
                                     Bound bound, u64 horizon, bool iterates_max_split);

/// Level-side analogue; represents_one additionally enables the level-side
/// exclusion intervals.
ValueSetReport level_value_report(u64 dim, std::optional<u64> i1_lo, std::optional<u64> i1_hi,
                                  Bound bound, u64 horizon, bool iterates_max_split,
                                  bool represents_one, Bound sublevel_bound = std::nullopt);

struct NeighborBrackets {
    u64 sublevel_lo = 0, sublevel_hi = 0;
    u64 level_lo = 0, level_hi = 0;
};

/// Sublevel and level brackets for a neighbor of dimension dim_tau of a
/// Pfister form of dimension dim_q whose common level/sublevel is s.
NeighborBrackets pfister_neighbor_brackets(u64 dim_q, u64 dim_tau, u64 s);

struct QuadExtBracket {
    u64 lo = 1, hi = 1;                 // inclusive integer bracket
    std::optional<u64> pfister_exact;   // exact value when q is Pfister
};

/// Bracket for the level of a round form over a quadratic extension, given
/// the finite q-length ell of the negated discriminant.
QuadExtBracket quadratic_ext_bracket(u64 ell);

/// Arithmetic cores of the signature-window value sets.
ValueSetReport signature_sublevel_sets(u64 dim, Bound sublevel, u64 i1_lo, u64 horizon);
ValueSetReport signature_level_sets(Bound level, u64 horizon);

/// Wrapper assembling the inputs from a concrete form; requires an ordering
/// with signature -dim (level case) or |signature| = dim-2 (sublevel case).
ValueSetReport signature_full_sets(const Form& q, u64 horizon = 0);

}  // namespace wittforge
