#pragma once

#include "wittforge/isotropy.hpp"

#include <optional>

namespace wittforge {

struct OrderingObstruction {
    Ordering ordering;
    int signature = 0;
};

/// Outcome of a level-style search. Finite answers carry the two engine
/// verdicts that pin them (isotropy at the answer, anisotropy one step
/// below); infinite answers carry an ordering certificate when one exists.
struct LevelResult {
    enum class Kind { finite, infinite, exceeded };

    Kind kind = Kind::finite;
    u64 value = 0;  // the finite value, or the cap when exceeded
    std::optional<OrderingObstruction> obstruction;
    std::string note;

    static LevelResult finite(u64 n) { return {Kind::finite, n, std::nullopt, {}}; }
    static LevelResult infinite(std::optional<OrderingObstruction> ob, std::string note = {}) {
        return {Kind::infinite, 0, std::move(ob), std::move(note)};
    }
    static LevelResult exceeded(u64 cap) { return {Kind::exceeded, cap, std::nullopt, {}}; }

    bool is_finite() const { return kind == Kind::finite; }
    bool is_infinite() const { return kind == Kind::infinite; }
    std::string str() const;

    friend bool operator==(const LevelResult& a, const LevelResult& b) {
        return a.kind == b.kind && (a.kind != Kind::finite || a.value == b.value) &&
               (a.kind != Kind::exceeded || a.value == b.value);
    }
};

/// Least n with (n+1)×q isotropic; 0 for isotropic q.
LevelResult sublevel(const Form& q);

/// Least n ≥ 1 with <1> ⊥ n×q isotropic; 1 for isotropic q.
LevelResult level(const Form& q);

/// Least n with n×q ⊥ <-a> isotropic.
LevelResult q_length(const Form& q, const Coeff& a);

/// Least n with phi ⊂ n×q.
LevelResult q_length_form(const Form& q, const Form& phi);

/// Exact Pythagoras q-number on finite-square-class fields: the maximum of
/// the finite q-lengths over all classes (0 when none is finite).
u64 pythagoras_q_exact(const Form& q);

struct RelationCheck {
    std::string name;
    std::string detail;
    bool pass = false;
    bool sampled = false;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const;
};

/// Evaluates the identities relating sublevel, level, q-length and the
/// Pythagoras q-number on both sides, reporting the computed values.
RelationReport relation_suite(const Form& q);

}  // namespace wittforge
