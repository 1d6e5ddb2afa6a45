#pragma once

#include "wittforge/arith.hpp"

#include <cstdint>
#include <optional>

namespace wittforge {

enum class FieldRoot { rationals, reals, padics, finite_field };

/// Tower cap from WITTFORGE_MAX_LAURENT_DEPTH, default 4.
int max_laurent_depth();

/// A supported ground field: one of Q, R, Q_p, F_p (p odd), wrapped in
/// `depth` layers of Laurent series. Layer 1 is the outermost uniformiser.
struct FieldDesc {
    FieldRoot root = FieldRoot::rationals;
    i64 p = 0;
    int depth = 0;

    static FieldDesc rationals() { return {FieldRoot::rationals, 0, 0}; }
    static FieldDesc reals() { return {FieldRoot::reals, 0, 0}; }
    static FieldDesc padics(i64 p);
    static FieldDesc finite_field(i64 p);

    FieldDesc laurent() const;
    FieldDesc base() const;
    bool is_laurent() const { return depth > 0; }
    bool formally_real() const {
        return root == FieldRoot::rationals || root == FieldRoot::reals;
    }

    std::string str() const;

    friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
    friend auto operator<=>(const FieldDesc&, const FieldDesc&) = default;
};

/// Canonical square class representative: a rational class times a
/// squarefree monomial in the layer uniformisers (bit k of tmask is the
/// exponent of t_{k+1}).
struct Coeff {
    SquarefreeRat base = SquarefreeRat::one();
    std::uint32_t tmask = 0;

    static Coeff one() { return {}; }
    static Coeff minus_one() { return {SquarefreeRat::minus_one(), 0}; }

    Coeff mul(const Coeff& o) const { return {base.mul(o.base), tmask ^ o.tmask}; }
    Coeff negated() const { return {base.negated(), tmask}; }
    bool is_one() const { return base.is_one() && tmask == 0; }

    std::string str() const;

    friend bool operator==(const Coeff&, const Coeff&) = default;
    friend auto operator<=>(const Coeff&, const Coeff&) = default;
};

/// Reduce a raw class to the canonical representative for F.
/// Throws std::domain_error when the value is zero in F (finite fields)
/// and std::invalid_argument for uniformisers beyond the tower depth.
Coeff canonicalize(const FieldDesc& F, const SquarefreeRat& base, std::uint32_t tmask = 0);
Coeff canonical_int(const FieldDesc& F, i64 num, i64 den = 1, std::uint32_t tmask = 0);

/// An ordering of a formally real tower: the base ordering of Q or R is
/// unique, each Laurent layer contributes the sign of its uniformiser.
struct Ordering {
    std::vector<std::int8_t> tsigns;

    std::string str() const;

    friend bool operator==(const Ordering&, const Ordering&) = default;
    friend auto operator<=>(const Ordering&, const Ordering&) = default;
};

std::vector<Ordering> orderings(const FieldDesc& F);

/// Sign of a canonical class at an ordering. Requires a formally real root.
int sign_at(const Coeff& a, const Ordering& P);

struct SquareClassSet {
    bool finite = true;
    std::vector<Coeff> reps;
};

/// Exact class list for finite-square-class fields; for Q-rooted towers a
/// deterministic sample is returned with finite=false.
SquareClassSet square_classes(const FieldDesc& F);
std::vector<Coeff> sample_square_classes(const FieldDesc& F, std::size_t count);

struct UBound {
    bool unbounded = false;
    u64 value = 0;

    static UBound inf() { return {true, 0}; }
    static UBound of(u64 v) { return {false, v}; }
};

UBound u_bound(const FieldDesc& F);

/// Least (prime) quadratic non-residue mod an odd prime.
i64 least_nonresidue(i64 p);

}  // namespace wittforge
