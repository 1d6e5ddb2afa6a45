#pragma once

// Test-only oracles. Everything here decides by enumeration or explicit
// witnesses, independently of the decision procedures under test.

#include "wittforge/forms.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <vector>

namespace wittforge::testing {

struct Rng {
    u64 s;
    explicit Rng(u64 seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    u64 next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    u64 below(u64 n) { return next() % n; }
};

/// Exhaustive isotropy over F_p by enumerating all vectors mod p.
inline bool fp_isotropic_bruteforce(const Form& q) {
    i64 p = q.field().p;
    std::size_t d = q.dim();
    std::vector<i64> a;
    for (const Coeff& c : q.coeffs()) a.push_back(c.base.mod(p));
    std::vector<i64> x(d, 0);
    while (true) {
        std::size_t j = 0;
        while (j < d && ++x[j] == p) x[j++] = 0;
        if (j == d) return false;
        i64 s = 0;
        for (std::size_t i = 0; i < d; ++i) s = (s + a[i] * x[i] % p * x[i]) % p;
        if (s % p == 0) return true;
    }
}

namespace detail {

inline i64 powi(i64 b, int e) {
    i64 r = 1;
    while (e--) r *= b;
    return r;
}

inline int val_mod(i64 v, i64 p, int cap) {
    if (v == 0) return cap;
    int n = 0;
    while (v % p == 0 && n < cap) {
        v /= p;
        ++n;
    }
    return n;
}

}  // namespace detail

/// Exact isotropy of a diagonal form over Q_p whose coefficients have
/// p-valuation at most 1, by a Hensel-depth bounded search: a primitive
/// zero mod p^k (k = 3, or 5 when p = 2) with some coordinate satisfying
/// val(a_i x_i) <= 1 lifts, and any true zero reduces to one.
inline bool qp_isotropic_hensel(const std::vector<SquarefreeRat>& coeffs, i64 p) {
    int k = p == 2 ? 5 : 3;
    i64 M = detail::powi(p, k);
    std::size_t d = coeffs.size();
    std::vector<i64> a;
    for (const auto& c : coeffs) a.push_back(c.mod(M));
    std::vector<i64> x(d, 0);
    while (true) {
        std::size_t j = 0;
        while (j < d && ++x[j] == M) x[j++] = 0;
        if (j == d) return false;
        bool primitive = false, deriv_ok = false;
        i128 s = 0;
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] % p) primitive = true;
            s += static_cast<i128>(a[i]) * x[i] % M * x[i];
            if (detail::val_mod(a[i] * (x[i] % M) % M, p, k) <= 1) deriv_ok = true;
        }
        if (!primitive || !deriv_ok) continue;
        if (static_cast<i64>(s % M) == 0) return true;
    }
}

/// Hensel-search oracle for the Hilbert symbol: z^2 = a x^2 + b y^2.
inline bool hilbert_solvable_oracle(const SquarefreeRat& a, const SquarefreeRat& b,
                                    const Place& v) {
    if (v.real) return a.sign() > 0 || b.sign() > 0;
    return qp_isotropic_hensel({a, b, SquarefreeRat::minus_one()}, v.p);
}

/// Bounded-height integer witness for isotropy over Q; empty if none found.
inline std::vector<i64> rational_witness_search(const Form& q, i64 height) {
    std::size_t d = q.dim();
    std::vector<i64> a;
    for (const Coeff& c : q.coeffs()) a.push_back(static_cast<i64>(c.base.value()));
    std::vector<i64> x(d, 0);
    auto check = [&](const std::vector<i64>& xs) {
        i128 s = 0;
        bool nonzero = false;
        for (std::size_t i = 0; i < d; ++i) {
            s += static_cast<i128>(a[i]) * xs[i] * xs[i];
            if (xs[i]) nonzero = true;
        }
        return nonzero && s == 0;
    };
    // Enumerate the free coordinates over boxes of growing radius and solve
    // for the last one.
    for (i64 r = 0; r <= height; ++r) {
        std::vector<i64> xs(d, 0);
        std::size_t free_coords = d - 1;
        std::vector<i64> idx(free_coords, -r);
        bool done = false;
        while (!done) {
            bool on_shell = r == 0;
            for (std::size_t i = 0; i < free_coords; ++i)
                if (idx[i] == r || idx[i] == -r) on_shell = true;
            if (on_shell) {
                i128 s = 0;
                for (std::size_t i = 0; i < free_coords; ++i)
                    s += static_cast<i128>(a[i]) * idx[i] * idx[i];
                i128 rhs = -s;
                // a[d-1] * x^2 = rhs
                if (rhs % a[d - 1] == 0) {
                    i128 sq = rhs / a[d - 1];
                    if (sq >= 0) {
                        i64 root = static_cast<i64>(std::sqrt(static_cast<double>(sq)));
                        for (i64 c = root > 1 ? root - 1 : 0; c <= root + 1; ++c) {
                            if (static_cast<i128>(c) * c == sq && c <= height) {
                                for (std::size_t i = 0; i < free_coords; ++i) xs[i] = idx[i];
                                xs[d - 1] = c;
                                if (check(xs)) return xs;
                            }
                        }
                    }
                }
            }
            std::size_t j = 0;
            while (j < free_coords && ++idx[j] > r) idx[j++] = -r;
            done = j == free_coords;
        }
    }
    return {};
}

/// Exact local anisotropy check by enumeration: Springer residues over F_p
/// for odd p, a Hensel-depth bounded search mod 32 for p = 2, signs at the
/// real place.
inline bool locally_anisotropic_bruteforce(const Form& q, const Place& v) {
    if (q.dim() == 0) return true;
    if (v.real) {
        int pos = 0, neg = 0;
        for (const Coeff& c : q.coeffs()) (c.base.sign() > 0 ? pos : neg)++;
        return pos == 0 || neg == 0;
    }
    if (v.p == 2) {
        std::vector<SquarefreeRat> cs;
        for (const Coeff& c : q.coeffs()) cs.push_back(c.base);
        return !qp_isotropic_hensel(cs, 2);
    }
    // odd p: both Springer residue forms must be anisotropic mod p
    i64 p = v.p;
    for (int layer : {0, 1}) {
        std::vector<i64> units;
        for (const Coeff& c : q.coeffs()) {
            bool ram = c.base.has_prime(p);
            if ((ram ? 1 : 0) != layer) continue;
            units.push_back((ram ? c.base.without_prime(p) : c.base).mod(p));
        }
        std::size_t d = units.size();
        if (d == 0) continue;
        std::vector<i64> x(d, 0);
        while (true) {
            std::size_t j = 0;
            while (j < d && ++x[j] == p) x[j++] = 0;
            if (j == d) break;
            i64 s = 0;
            for (std::size_t i = 0; i < d; ++i) s = (s + units[i] * x[i] % p * x[i]) % p;
            if (s == 0) return false;
        }
    }
    return true;
}

/// All forms of the given dimension with coefficients drawn from the square
/// class representatives of a finite-class field.
inline std::vector<Form> all_forms(const FieldDesc& F, std::size_t dim) {
    auto classes = square_classes(F);
    std::vector<Form> out;
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        std::vector<Coeff> cs;
        for (std::size_t i : idx) cs.push_back(classes.reps[i]);
        out.push_back(Form::make(F, cs));
        std::size_t j = 0;
        while (j < dim && ++idx[j] == classes.reps.size()) idx[j++] = 0;
        if (j == dim) break;
    }
    return out;
}

inline Form random_form(Rng& rng, const FieldDesc& F, std::size_t dim) {
    auto classes = sample_square_classes(F, 16);
    std::vector<Coeff> cs;
    for (std::size_t i = 0; i < dim; ++i) cs.push_back(classes[rng.below(classes.size())]);
    return Form::make(F, cs);
}

}  // namespace wittforge::testing
