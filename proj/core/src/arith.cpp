#include "wittforge/arith.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wittforge {

namespace {

u64 mulmod64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Shift-and-add product mod m for 128-bit operands.
u128 mulmod128(u128 a, u128 b, u128 m) {
    a %= m;
    u128 r = 0;
    while (b) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a <<= 1;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

u128 powmod128(u128 a, u128 e, u128 m) {
    u128 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod128(r, a, m);
        a = mulmod128(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin128(u128 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
        u128 x = powmod128(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod128(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 pollard_rho(u128 n) {
    if ((n & 1) == 0) return 2;
    for (u128 c = 1;; ++c) {
        u128 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod128(x, x, n) + c) % n;
            y = (mulmod128(y, y, n) + c) % n;
            y = (mulmod128(y, y, n) + c) % n;
            u128 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = gcd128(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(u128 n, std::vector<u64>& out) {
    if (n <= 1) return;
    if (miller_rabin128(n)) {
        if (n > UINT64_MAX) throw std::overflow_error("prime factor exceeds 64 bits");
        out.push_back(static_cast<u64>(n));
        return;
    }
    u128 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Place Place::prime(i64 p) {
    if (p < 2 || !is_prime(static_cast<u64>(p)))
        throw std::invalid_argument("place must be the real place or a prime");
    return Place{false, p};
}

std::string Place::str() const {
    return real ? "real" : std::to_string(p);
}

bool is_prime(u64 n) {
    return miller_rabin128(n);
}

std::vector<u64> factorize(u128 n) {
    if (n == 0) throw std::invalid_argument("factorize: zero input");
    if (n >> 96) throw std::overflow_error("factorize: inputs must stay below 2^96");
    std::vector<u64> out;
    while ((n & 1) == 0) {
        out.push_back(2);
        n >>= 1;
    }
    for (u64 d = 3; d <= 1u << 20 && static_cast<u128>(d) * d <= n; d += 2) {
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    return out;
}

SquarefreeRat::SquarefreeRat(int sign, std::vector<i64> primes)
    : sign_(sign), primes_(std::move(primes)) {
    if (sign_ != 1 && sign_ != -1) throw std::invalid_argument("sign must be +1 or -1");
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (primes_[i] < 2 || !is_prime(static_cast<u64>(primes_[i])))
            throw std::invalid_argument("non-prime entry in squarefree class");
        if (i > 0 && primes_[i - 1] >= primes_[i])
            throw std::invalid_argument("primes must be strictly increasing");
    }
}

bool SquarefreeRat::has_prime(i64 p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

SquarefreeRat SquarefreeRat::mul(const SquarefreeRat& o) const {
    std::vector<i64> sym;
    std::set_symmetric_difference(primes_.begin(), primes_.end(), o.primes_.begin(),
                                  o.primes_.end(), std::back_inserter(sym));
    return SquarefreeRat(sign_ * o.sign_, std::move(sym));
}

SquarefreeRat SquarefreeRat::negated() const {
    return SquarefreeRat(-sign_, primes_);
}

SquarefreeRat SquarefreeRat::without_prime(i64 p) const {
    std::vector<i64> rest;
    for (i64 q : primes_)
        if (q != p) rest.push_back(q);
    return SquarefreeRat(sign_, std::move(rest));
}

i64 SquarefreeRat::mod(i64 m) const {
    if (m < 2) throw std::invalid_argument("modulus must be at least 2");
    i64 r = 1;
    for (i64 p : primes_) r = static_cast<i64>(mulmod64(static_cast<u64>(r), static_cast<u64>(p % m), static_cast<u64>(m)));
    if (sign_ < 0) r = m - r;
    return r % m;
}

i128 SquarefreeRat::value() const {
    i128 v = sign_;
    for (i64 p : primes_) {
        i128 next = v * p;
        if (next / p != v) throw std::overflow_error("square class value exceeds 128 bits");
        v = next;
    }
    return v;
}

std::string SquarefreeRat::str() const {
    u128 mag = 1;
    bool overflow = false;
    for (i64 p : primes_) {
        if (mag > (static_cast<u128>(-1) / static_cast<u128>(p))) {
            overflow = true;
            break;
        }
        mag *= static_cast<u128>(p);
    }
    if (!overflow && !(mag >> 126)) return i128_str(sign_ < 0 ? -static_cast<i128>(mag) : static_cast<i128>(mag));
    std::string s = sign_ < 0 ? "-" : "";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (i) s += "*";
        s += std::to_string(primes_[i]);
    }
    return s;
}

SquarefreeRat squarefree_part(i64 num, i64 den) {
    if (num == 0 || den == 0) throw std::domain_error("squarefree_part: zero input");
    if (num == INT64_MIN || den == INT64_MIN)
        throw std::overflow_error("squarefree_part: magnitude too large");
    int sign = (num < 0) == (den < 0) ? 1 : -1;
    auto fn = factorize(static_cast<u128>(num < 0 ? -num : num));
    auto fd = factorize(static_cast<u128>(den < 0 ? -den : den));
    // Odd-parity primes of num*den survive; square parts cancel.
    std::vector<i64> all;
    for (u64 p : fn) all.push_back(static_cast<i64>(p));
    for (u64 p : fd) all.push_back(static_cast<i64>(p));
    std::sort(all.begin(), all.end());
    std::vector<i64> odd;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i]) ++j;
        if ((j - i) % 2) odd.push_back(all[i]);
        i = j;
    }
    return SquarefreeRat(sign, std::move(odd));
}

int legendre(i64 a, i64 p) {
    if (p < 3 || p % 2 == 0 || !is_prime(static_cast<u64>(p)))
        throw std::invalid_argument("legendre: p must be an odd prime");
    i64 r = ((a % p) + p) % p;
    if (r == 0) return 0;
    u64 e = powmod64(static_cast<u64>(r), static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
    return e == 1 ? 1 : -1;
}

int legendre(const SquarefreeRat& a, i64 p) {
    return legendre(a.mod(p), p);
}

namespace {

// a = p^alpha * u with u a p-adic unit; returns alpha in {0,1} and u.
std::pair<int, SquarefreeRat> split_at(const SquarefreeRat& a, i64 p) {
    if (a.has_prime(p)) return {1, a.without_prime(p)};
    return {0, a};
}

int eps2(i64 u_mod8) {  // (u-1)/2 mod 2
    return (u_mod8 == 3 || u_mod8 == 7) ? 1 : 0;
}

int omega2(i64 u_mod8) {  // (u^2-1)/8 mod 2
    return (u_mod8 == 3 || u_mod8 == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const SquarefreeRat& a, const SquarefreeRat& b, const Place& v) {
    if (v.real) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
    if (v.p == 2) {
        auto [alpha, u] = split_at(a, 2);
        auto [beta, w] = split_at(b, 2);
        i64 um = u.mod(8), wm = w.mod(8);
        int e = eps2(um) * eps2(wm) + alpha * omega2(wm) + beta * omega2(um);
        return (e % 2) ? -1 : 1;
    }
    auto [alpha, u] = split_at(a, v.p);
    auto [beta, w] = split_at(b, v.p);
    int r = 1;
    if (alpha && beta) r *= legendre(-1, v.p);
    if (beta) r *= legendre(u, v.p);
    if (alpha) r *= legendre(w, v.p);
    return r;
}

bool is_local_square(const SquarefreeRat& a, const Place& v) {
    if (v.real) return a.sign() > 0;
    if (a.has_prime(v.p)) return false;
    if (v.p == 2) return a.mod(8) == 1;
    return legendre(a, v.p) == 1;
}

std::vector<Place> relevant_places(std::span<const SquarefreeRat> coeffs) {
    std::set<i64> ps{2};
    for (const auto& c : coeffs)
        for (i64 p : c.primes()) ps.insert(p);
    std::vector<Place> out{Place::real_place()};
    for (i64 p : ps) out.push_back(Place::prime(p));
    return out;
}

std::string i128_str(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 m = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
    std::string s;
    while (m) {
        s += static_cast<char>('0' + static_cast<int>(m % 10));
        m /= 10;
    }
    if (neg) s += '-';
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace wittforge
