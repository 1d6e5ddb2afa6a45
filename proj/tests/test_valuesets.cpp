#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wittforge/levels.hpp"
#include "wittforge/pfister.hpp"
#include "wittforge/valuesets.hpp"

using namespace wittforge;

namespace {
std::set<u64> range_set(u64 lo, u64 hi) {
    std::set<u64> s;
    for (u64 v = lo; v <= hi; ++v) s.insert(v);
    return s;
}
}  // namespace

TEST_CASE("admissible sublevels") {
    CHECK(admissible_sublevels(3, std::nullopt, 25) == std::set<u64>{0, 1, 2, 5, 10, 21});
    CHECK(admissible_sublevels(4, Bound{3}, 16) == std::set<u64>{0, 1, 2, 3});
    CHECK(admissible_sublevels(8, Bound{8}, 64) == std::set<u64>{0, 1, 2, 4, 8});
    CHECK_THROWS_AS(admissible_sublevels(1, Bound{3}, 8), std::invalid_argument);
    CHECK_THROWS_AS(admissible_sublevels(3, std::nullopt, 0), std::invalid_argument);
}

TEST_CASE("admissible levels") {
    CHECK(admissible_levels(3, std::nullopt, 100) == std::set<u64>{1, 2, 3, 6, 11, 22, 43, 86});
    CHECK(admissible_levels(1, Bound{16}, 64) == std::set<u64>{1, 2, 4, 8, 16});
    CHECK(admissible_levels(5, std::nullopt, 14) == std::set<u64>{1, 2, 4, 7, 13});
}

TEST_CASE("inadmissible sublevels reproduce the dim-6 exclusions") {
    std::set<u64> want{3, 6, 7};
    for (u64 v = 11; v <= 15; ++v) want.insert(v);
    for (u64 v = 22; v <= 31; ++v) want.insert(v);
    CHECK(inadmissible_sublevels(6, 2, Bound{32}, 32) == want);
    CHECK(inadmissible_sublevels(6, 2, Bound{4}, 32) == std::set<u64>{3});
    // an exactly-divisible octave contributes an empty interval
    CHECK(inadmissible_sublevels(4, 1, Bound{2}, 8).empty());
}

TEST_CASE("maximal splitting floors") {
    CHECK(maxsplit_sublevels(6, 2, Bound{4}, 16) == std::set<u64>{0, 1, 2});
    CHECK(maxsplit_sublevels(3, 1, Bound{8}, 16) == std::set<u64>{0, 1, 2, 5});
    CHECK(maxsplit_sublevels(8, 4, Bound{8}, 16) == std::set<u64>{0, 1, 2, 4});
}

TEST_CASE("mset values") {
    std::set<u64> pows;
    for (u64 v = 1; v <= 64; v <<= 1) pows.insert(v);
    CHECK(mset_values(1, 64) == pows);
    CHECK(mset_values(2, 64) == pows);
    CHECK(mset_values(3, 11) == std::set<u64>{1, 2, 3, 6, 11});
}

TEST_CASE("admissible and inadmissible sublevel sets never intersect") {
    for (u64 dim = 2; dim <= 64; ++dim) {
        u64 cap = splitting_cap(dim);
        for (u64 i1 = 1; i1 <= cap; ++i1) {
            auto adm = admissible_sublevels(dim, Bound{1024}, 1024);
            auto bad = inadmissible_sublevels(dim, i1, Bound{1024}, 1024);
            for (u64 v : adm) CHECK(!bad.count(v));
            auto ms = maxsplit_sublevels(dim, i1, Bound{1024}, 1024);
            for (u64 v : ms) CHECK(!bad.count(v));
        }
    }
}

TEST_CASE("level exclusions never hit admissible levels") {
    for (u64 dim = 2; dim <= 32; ++dim) {
        u64 cap = splitting_cap(dim);
        for (u64 i1 = 1; i1 <= cap; ++i1) {
            auto adm = admissible_levels(dim, Bound{512}, 512);
            auto bad = inadmissible_levels(dim, i1, Bound{512}, 512);
            for (u64 v : adm) CHECK(!bad.count(v));
        }
    }
}

TEST_CASE("pfister level sets tile exactly") {
    // For a Pfister form of any 2-power dimension with level s, the
    // admissible levels are exactly {1, ..., 2^i, ..., s}.
    for (u64 dim : {1, 2, 4, 8, 16}) {
        for (u64 s : {1, 2, 4, 8}) {
            std::optional<u64> i1 =
                dim >= 2 ? std::optional<u64>(dim / 2) : std::nullopt;
            auto rep = level_value_report(dim, i1, i1, Bound{s}, 2 * s + 4, true, true);
            std::set<u64> adm;
            for (const auto& [v, tags] : rep.admissible) adm.insert(v);
            std::set<u64> want;
            for (u64 v = 1; v <= s; v <<= 1) want.insert(v);
            want.insert(s);
            CHECK(adm == want);
            CHECK(rep.undecided.empty());
        }
    }
}

TEST_CASE("dim 3 closed forms up to a large horizon") {
    u64 horizon = u64{1} << 20;
    auto got = admissible_levels(3, std::nullopt, horizon);
    std::set<u64> want{1};
    for (u64 k = 1; ((u64{1} << (2 * k)) + 2) / 3 <= horizon; ++k)
        want.insert(((u64{1} << (2 * k)) + 2) / 3);
    for (u64 k = 0; ((u64{1} << (2 * k + 1)) + 1) / 3 <= horizon; ++k)
        want.insert(((u64{1} << (2 * k + 1)) + 1) / 3);
    CHECK(got == want);
}

TEST_CASE("value reports cover the whole window") {
    auto rep = sublevel_value_report(6, 2, std::nullopt, Bound{32}, 40, false);
    for (u64 v = 0; v <= 40; ++v) {
        int where = (rep.admissible.count(v) ? 1 : 0) + (rep.excluded.count(v) ? 1 : 0) +
                    (rep.undecided.count(v) ? 1 : 0);
        CHECK(where == 1);
    }
    CHECK(rep.excluded.count(33));  // above the base value
    CHECK(rep.admissible.count(32));
    CHECK(rep.excluded.count(3));
    CHECK(rep.undecided.count(4));  // not a floor, not excluded, not certified
}

TEST_CASE("neighbor brackets") {
    NeighborBrackets b = pfister_neighbor_brackets(8, 5, 2);
    CHECK(b.sublevel_lo == 2);
    CHECK(b.sublevel_hi == 3);  // floor(16/5)
    NeighborBrackets c = pfister_neighbor_brackets(8, 8, 2);
    CHECK(c.sublevel_lo == 2);
    CHECK(c.sublevel_hi == 2);  // tau similar to q collapses the bracket
    NeighborBrackets d = pfister_neighbor_brackets(4, 3, 1);
    CHECK(d.level_lo == 1);
    CHECK(d.level_hi == 2);
    CHECK_THROWS_AS(pfister_neighbor_brackets(8, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(pfister_neighbor_brackets(6, 4, 1), std::invalid_argument);
}

TEST_CASE("quadratic extension brackets") {
    QuadExtBracket b3 = quadratic_ext_bracket(3);
    CHECK(b3.lo == 1);
    CHECK(b3.hi == 3);
    CHECK(b3.pfister_exact == 2);
    QuadExtBracket b1 = quadratic_ext_bracket(1);
    CHECK(b1.lo == 1);
    CHECK(b1.hi == 1);
    CHECK(b1.pfister_exact == 1);
    QuadExtBracket b8 = quadratic_ext_bracket(8);
    CHECK(b8.lo == 4);
    CHECK(b8.hi == 15);
    CHECK(b8.pfister_exact == 4);
    CHECK_THROWS_AS(quadratic_ext_bracket(0), std::invalid_argument);
}

TEST_CASE("signature window sets") {
    auto rep = signature_sublevel_sets(3, Bound{4}, 1, 4);
    std::set<u64> adm, exc;
    for (const auto& [v, t] : rep.admissible) adm.insert(v);
    for (const auto& [v, t] : rep.excluded) exc.insert(v);
    CHECK(adm == std::set<u64>{0, 1, 2, 4});
    CHECK(exc == std::set<u64>{3});
    CHECK(rep.equality == "exact");

    auto lv = signature_level_sets(Bound{5}, 8);
    std::set<u64> ladm;
    for (const auto& [v, t] : lv.admissible) ladm.insert(v);
    CHECK(ladm == range_set(1, 5));
    CHECK(lv.equality == "exact");
}

TEST_CASE("signature sets from concrete forms") {
    FieldDesc Q = FieldDesc::rationals();
    Form negs = Form::of_ints(Q, {-1, -1});
    auto rep = signature_full_sets(negs, 10);
    std::set<u64> adm;
    for (const auto& [v, t] : rep.admissible) adm.insert(v);
    LevelResult s = level(negs);
    REQUIRE(s.is_finite());
    CHECK(adm == range_set(1, s.value));

    // |sgn| = dim - 2 route over laurent(Q)
    FieldDesc L = Q.laurent();
    Coeff t = canonicalize(L, SquarefreeRat::one(), 1);
    Form q = Form::make(L, {Coeff::one(), canonical_int(L, -7), t});
    auto sub_rep = signature_full_sets(q, 8);
    CHECK(sub_rep.lower_is_zero);
    CHECK(!sub_rep.admissible.empty());

    CHECK_THROWS_AS(signature_full_sets(Form::of_ints(Q, {1, 1, 1}), 8), std::invalid_argument);
    CHECK_THROWS_AS(signature_full_sets(Form::of_ints(FieldDesc::padics(3), {1}), 8),
                    std::invalid_argument);
}
