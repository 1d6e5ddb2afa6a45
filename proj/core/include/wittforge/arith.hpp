#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wittforge {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// A place of the rationals: the real place or a finite prime (2 allowed).
struct Place {
    bool real = false;
    i64 p = 0;

    static Place real_place() { return Place{true, 0}; }
    static Place prime(i64 p);

    friend bool operator==(const Place&, const Place&) = default;
    friend auto operator<=>(const Place&, const Place&) = default;

    std::string str() const;
};

bool is_prime(u64 n);

/// Prime factorisation with multiplicity, smallest factor first.
/// Exact for all inputs below 2^96; larger inputs are rejected so the
/// result is never silently probabilistic.
std::vector<u64> factorize(u128 n);

/// A nonzero square class of Q, canonicalised as a sign times a product of
/// distinct primes in increasing order.
class SquarefreeRat {
  public:
    SquarefreeRat() = default;
    SquarefreeRat(int sign, std::vector<i64> primes);

    static SquarefreeRat one() { return SquarefreeRat(); }
    static SquarefreeRat minus_one() { return SquarefreeRat(-1, {}); }

    int sign() const { return sign_; }
    const std::vector<i64>& primes() const { return primes_; }

    bool is_one() const { return sign_ == 1 && primes_.empty(); }
    bool is_minus_one() const { return sign_ == -1 && primes_.empty(); }
    bool has_prime(i64 p) const;

    SquarefreeRat mul(const SquarefreeRat& o) const;
    SquarefreeRat negated() const;
    SquarefreeRat without_prime(i64 p) const;

    /// Value reduced mod m, folded into [0, m).
    i64 mod(i64 m) const;
    /// Exact value; throws std::overflow_error if it does not fit in i128.
    i128 value() const;

    std::string str() const;

    friend bool operator==(const SquarefreeRat&, const SquarefreeRat&) = default;
    friend auto operator<=>(const SquarefreeRat&, const SquarefreeRat&) = default;

  private:
    int sign_ = 1;
    std::vector<i64> primes_;
};

/// Square class of num/den. Rejects zero.
SquarefreeRat squarefree_part(i64 num, i64 den = 1);

/// Legendre symbol (a/p) for an odd prime p. 0 iff p | a.
int legendre(i64 a, i64 p);
int legendre(const SquarefreeRat& a, i64 p);

/// Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
/// solution over the completion at v.
int hilbert_symbol(const SquarefreeRat& a, const SquarefreeRat& b, const Place& v);

/// Whether the class a is a square in the completion at v.
bool is_local_square(const SquarefreeRat& a, const Place& v);

/// Real place, 2, and every prime dividing a coefficient's squarefree part.
std::vector<Place> relevant_places(std::span<const SquarefreeRat> coeffs);

std::string i128_str(i128 v);

}  // namespace wittforge
