#include "wittforge/isotropy.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace wittforge {

namespace {

// Classification data of a form over a completion: dimension, determinant
// class and Hasse invariant (product over i<j of Hilbert symbols).
struct LocalData {
    std::size_t dim;
    SquarefreeRat d;
    int eps;
};

LocalData local_data(const Form& q, const Place& v) {
    return {q.dim(), det(q).base, hasse_at(q, v)};
}

bool padic_isotropic(const LocalData& L, const Place& v) {
    if (L.dim >= 5) return true;
    if (L.dim <= 1) return false;
    if (L.dim == 2) return is_local_square(L.d.negated(), v);
    if (L.dim == 3)
        return hilbert_symbol(SquarefreeRat::minus_one(), L.d.negated(), v) == L.eps;
    if (!is_local_square(L.d, v)) return true;
    return L.eps == hilbert_symbol(SquarefreeRat::minus_one(), SquarefreeRat::minus_one(), v);
}

// Invariants after splitting off one hyperbolic plane.
LocalData split_hyperbolic(LocalData L, const Place& v) {
    L.dim -= 2;
    L.d = L.d.negated();
    L.eps *= hilbert_symbol(SquarefreeRat::minus_one(), L.d, v);
    return L;
}

u64 padic_witt_index(LocalData L, const Place& v) {
    u64 i = 0;
    while (L.dim >= 2 && padic_isotropic(L, v)) {
        L = split_hyperbolic(L, v);
        ++i;
    }
    return i;
}

int real_signature(const Form& q) {
    int s = 0;
    for (const Coeff& c : q.coeffs()) s += c.base.sign();
    return s;
}

u64 real_witt_index(const Form& q) {
    int s = real_signature(q);
    return (q.dim() - static_cast<std::size_t>(s < 0 ? -s : s)) / 2;
}

bool rational_definite(const Form& q) {
    int s = real_signature(q);
    return static_cast<std::size_t>(s < 0 ? -s : s) == q.dim();
}

}  // namespace

bool is_isotropic(const Form& q) {
    const FieldDesc& F = q.field();
    if (q.dim() == 0) return false;
    if (F.is_laurent()) {
        auto [r0, r1] = laurent_residues(q);
        return is_isotropic(r0) || is_isotropic(r1);
    }
    switch (F.root) {
        case FieldRoot::reals: {
            if (q.dim() < 2) return false;
            return !rational_definite(q);
        }
        case FieldRoot::finite_field: {
            if (q.dim() >= 3) return true;
            if (q.dim() <= 1) return false;
            return legendre(det(q).base.negated(), F.p) == 1;
        }
        case FieldRoot::padics: {
            Place v = Place::prime(F.p);
            return padic_isotropic(local_data(q, v), v);
        }
        case FieldRoot::rationals: {
            std::size_t n = q.dim();
            if (n <= 1) return false;
            if (n == 2) return det(q).base.is_minus_one();
            if (n >= 5) return !rational_definite(q);
            for (const Place& v : relevant_places(q)) {
                if (v.real) {
                    if (rational_definite(q)) return false;
                } else if (!padic_isotropic(local_data(q, v), v)) {
                    return false;
                }
            }
            return true;
        }
    }
    throw std::logic_error("unreachable");
}

u64 witt_index(const Form& q) {
    const FieldDesc& F = q.field();
    if (q.dim() < 2) return 0;
    if (F.is_laurent()) {
        auto [r0, r1] = laurent_residues(q);
        return witt_index(r0) + witt_index(r1);
    }
    switch (F.root) {
        case FieldRoot::reals:
            return real_witt_index(q);
        case FieldRoot::finite_field: {
            std::size_t n = q.dim();
            if (n % 2) return (n - 1) / 2;
            SquarefreeRat target =
                (n / 2) % 2 ? SquarefreeRat::minus_one() : SquarefreeRat::one();
            bool hyp = det(q).base == canonicalize(F, target).base;
            return hyp ? n / 2 : n / 2 - 1;
        }
        case FieldRoot::padics: {
            Place v = Place::prime(F.p);
            return padic_witt_index(local_data(q, v), v);
        }
        case FieldRoot::rationals: {
            u64 best = q.dim() / 2;
            for (const Place& v : relevant_places(q)) {
                u64 loc = v.real ? real_witt_index(q) : padic_witt_index(local_data(q, v), v);
                best = std::min(best, loc);
            }
            return best;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// ---- kernel synthesis ------------------------------------------------------

// Invariants of the anisotropic kernel after removing i hyperbolic planes.
SquarefreeRat kernel_det(const SquarefreeRat& d, u64 i) {
    return (i % 2) ? d.negated() : d;
}

int kernel_eps(int eps, const SquarefreeRat& dk, u64 i, const Place& v) {
    SquarefreeRat m1 = SquarefreeRat::minus_one();
    if ((i * (i - 1) / 2) % 2) eps *= hilbert_symbol(m1, m1, v);
    if (i % 2) eps *= hilbert_symbol(m1, dk, v);
    return eps;
}

int tuple_eps(const std::vector<SquarefreeRat>& cs, const Place& v) {
    int h = 1;
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) h *= hilbert_symbol(cs[i], cs[j], v);
    return h;
}

Form padic_kernel(const FieldDesc& F, std::size_t k, const SquarefreeRat& dk, int epsk) {
    Place v = Place::prime(F.p);
    if (k == 0) return Form(F);
    if (padic_isotropic({k, dk, epsk}, v))
        throw std::logic_error("kernel invariants are not anisotropic");
    if (k == 1) return Form::make(F, {Coeff{dk, 0}});
    std::vector<SquarefreeRat> reps;
    for (const Coeff& c : square_classes(F).reps) reps.push_back(c.base);
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        std::vector<SquarefreeRat> cand;
        for (std::size_t i : idx) cand.push_back(reps[i]);
        SquarefreeRat dd = SquarefreeRat::one();
        for (const auto& c : cand) dd = dd.mul(c);
        if (is_local_square(dd.mul(dk), v) && tuple_eps(cand, v) == epsk) {
            std::vector<Coeff> cs;
            for (const auto& c : cand) cs.push_back(Coeff{c, 0});
            return Form::make(F, std::move(cs));
        }
        std::size_t j = 0;
        while (j < k && ++idx[j] == reps.size()) idx[j++] = 0;
        if (j == k) break;
    }
    throw std::logic_error("no p-adic form matches the kernel invariants");
}

// Rational realisation: build a form with prescribed dimension, determinant
// class, Hasse invariants (finite places; +1 where unspecified) and signature.
using EpsMap = std::map<Place, int>;

int want_eps(const EpsMap& eps, const Place& v) {
    auto it = eps.find(v);
    return it == eps.end() ? 1 : it->second;
}

std::vector<SquarefreeRat> realize_candidates(const SquarefreeRat& d, const EpsMap& eps,
                                              std::size_t max_support) {
    std::set<i64> pool_set(d.primes().begin(), d.primes().end());
    for (const auto& [v, e] : eps)
        if (!v.real) pool_set.insert(v.p);
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53})
        pool_set.insert(p);
    std::vector<i64> pool(pool_set.begin(), pool_set.end());

    std::vector<SquarefreeRat> cands;
    std::vector<std::vector<i64>> subsets{{}};
    for (std::size_t size = 1; size <= max_support && size <= pool.size(); ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::vector<i64> sub;
            for (std::size_t i : pick) sub.push_back(pool[i]);
            subsets.push_back(std::move(sub));
            std::size_t j = size;
            while (j > 0 && pick[j - 1] == pool.size() - size + (j - 1)) --j;
            if (j == 0) break;
            ++pick[j - 1];
            for (std::size_t i = j; i < size; ++i) pick[i] = pick[i - 1] + 1;
        }
    }
    for (const auto& sub : subsets) {
        cands.push_back(SquarefreeRat(1, sub));
        cands.push_back(SquarefreeRat(-1, sub));
    }
    std::sort(cands.begin(), cands.end(), [](const SquarefreeRat& a, const SquarefreeRat& b) {
        i128 va = a.value(), vb = b.value();
        u128 ma = va < 0 ? static_cast<u128>(-va) : static_cast<u128>(va);
        u128 mb = vb < 0 ? static_cast<u128>(-vb) : static_cast<u128>(vb);
        if (ma != mb) return ma < mb;
        return va > vb;
    });
    return cands;
}

std::set<Place> check_places(const SquarefreeRat& d, const EpsMap& eps,
                             const SquarefreeRat& extra) {
    std::set<Place> ps{Place::prime(2)};
    for (i64 p : d.primes()) ps.insert(Place::prime(p));
    for (i64 p : extra.primes()) ps.insert(Place::prime(p));
    for (const auto& [v, e] : eps)
        if (!v.real) ps.insert(v);
    return ps;
}

std::optional<Form> realize_rational(const FieldDesc& F, std::size_t k, const SquarefreeRat& d,
                                     const EpsMap& eps, int sgn);

std::optional<Form> realize_binary(const FieldDesc& F, const SquarefreeRat& d, const EpsMap& eps,
                                   int sgn) {
    if (sgn != 0 && d.sign() < 0) return std::nullopt;
    if (sgn == 0 && d.sign() > 0) return std::nullopt;
    if (d.is_minus_one()) {
        for (const auto& [v, e] : eps)
            if (e != 1) return std::nullopt;
        return hyperbolic(F, 1);
    }
    SquarefreeRat md = d.negated();
    for (const Place& v : check_places(d, eps, SquarefreeRat::one()))
        if (is_local_square(md, v) && want_eps(eps, v) != 1) return std::nullopt;
    for (const SquarefreeRat& a : realize_candidates(d, eps, 3)) {
        if (sgn == 2 && a.sign() < 0) continue;
        if (sgn == -2 && a.sign() > 0) continue;
        bool ok = true;
        for (const Place& v : check_places(d, eps, a)) {
            if (hilbert_symbol(a, md, v) != want_eps(eps, v)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        return Form::make(F, {Coeff{a, 0}, Coeff{a.mul(d), 0}});
    }
    return std::nullopt;
}

std::optional<Form> realize_rational(const FieldDesc& F, std::size_t k, const SquarefreeRat& d,
                                     const EpsMap& eps, int sgn) {
    int abs_sgn = sgn < 0 ? -sgn : sgn;
    if (static_cast<std::size_t>(abs_sgn) > k || (k - abs_sgn) % 2) return std::nullopt;
    if (d.sign() != ((((k - sgn) / 2) % 2) ? -1 : 1)) return std::nullopt;
    if (k == 0) {
        if (!d.is_one()) return std::nullopt;
        return Form(F);
    }
    if (k == 1) {
        for (const auto& [v, e] : eps)
            if (e != 1) return std::nullopt;
        return Form::make(F, {Coeff{d, 0}});
    }
    if (k == 2) return realize_binary(F, d, eps, sgn);

    if (static_cast<std::size_t>(abs_sgn) == k && k > 3) {
        // Definite: peel sign-matching squares down to the ternary case.
        SquarefreeRat s = sgn > 0 ? SquarefreeRat::one() : SquarefreeRat::minus_one();
        SquarefreeRat dd = d;
        EpsMap ee = eps;
        for (std::size_t i = 0; i + 3 < k; ++i) {
            dd = s.mul(dd);
            if (s.is_minus_one()) {
                EpsMap next;
                for (const Place& v : check_places(dd, ee, SquarefreeRat::one()))
                    next[v] = want_eps(ee, v) * hilbert_symbol(s, dd, v);
                ee = std::move(next);
            }
        }
        auto core = realize_rational(F, 3, dd, ee, sgn > 0 ? 3 : -3);
        if (!core) return std::nullopt;
        std::vector<Coeff> cs(k - 3, Coeff{s, 0});
        cs.insert(cs.end(), core->coeffs().begin(), core->coeffs().end());
        return Form::make(F, std::move(cs));
    }

    for (const SquarefreeRat& c : realize_candidates(d, eps, 2)) {
        if (c.sign() > 0 && sgn == -static_cast<int>(k)) continue;
        if (c.sign() < 0 && sgn == static_cast<int>(k)) continue;
        SquarefreeRat dd = c.mul(d);
        EpsMap ee;
        for (const Place& v : check_places(dd, eps, c))
            ee[v] = want_eps(eps, v) * hilbert_symbol(c, dd, v);
        auto rest = realize_rational(F, k - 1, dd, ee, sgn - c.sign());
        if (!rest) continue;
        std::vector<Coeff> cs{Coeff{c, 0}};
        cs.insert(cs.end(), rest->coeffs().begin(), rest->coeffs().end());
        return Form::make(F, std::move(cs));
    }
    return std::nullopt;
}

Form rational_kernel(const Form& q, u64 i) {
    const FieldDesc& F = q.field();
    std::size_t k = q.dim() - 2 * i;
    if (k == 0) return Form(F);
    SquarefreeRat dk = kernel_det(det(q).base, i);
    EpsMap eps;
    for (const Place& v : relevant_places(q))
        if (!v.real) eps[v] = kernel_eps(hasse_at(q, v), dk, i, v);
    int sgn = real_signature(q);
    auto K = realize_rational(F, k, dk, eps, sgn);
    if (!K) throw std::logic_error("kernel realisation failed");
    // Pin the constructed form to the requested invariants.
    if (det(*K).base != dk || real_signature(*K) != sgn || is_isotropic(*K))
        throw std::logic_error("kernel realisation produced wrong invariants");
    for (const Place& v : relevant_places(*K))
        if (!v.real && hasse_at(*K, v) != want_eps(eps, v))
            throw std::logic_error("kernel realisation produced wrong hasse data");
    for (const auto& [v, e] : eps)
        if (hasse_at(*K, v) != e) throw std::logic_error("kernel realisation missed a place");
    return *K;
}

Form shift_tmask(const Form& q, const FieldDesc& target, bool add_t) {
    std::vector<Coeff> cs;
    for (const Coeff& c : q.coeffs())
        cs.push_back(Coeff{c.base, (c.tmask << 1) | (add_t ? 1u : 0u)});
    return Form::make(target, std::move(cs));
}

}  // namespace

WittDecomposition witt_decomposition(const Form& q) {
    const FieldDesc& F = q.field();
    u64 i = witt_index(q);
    if (F.is_laurent()) {
        auto [r0, r1] = laurent_residues(q);
        auto w0 = witt_decomposition(r0);
        auto w1 = witt_decomposition(r1);
        Form kernel = orthogonal_sum(shift_tmask(w0.kernel, F, false),
                                     shift_tmask(w1.kernel, F, true));
        return {w0.witt_index + w1.witt_index, kernel};
    }
    switch (F.root) {
        case FieldRoot::reals: {
            int s = real_signature(q);
            std::vector<Coeff> cs(static_cast<std::size_t>(s < 0 ? -s : s),
                                  s < 0 ? Coeff::minus_one() : Coeff::one());
            return {i, Form::make(F, std::move(cs))};
        }
        case FieldRoot::finite_field: {
            std::size_t k = q.dim() - 2 * i;
            SquarefreeRat dk = kernel_det(det(q).base, i);
            if (k == 0) return {i, Form(F)};
            if (k == 1) return {i, Form::make(F, {Coeff{dk, 0}})};
            return {i, Form::make(F, {Coeff::one(), Coeff{dk, 0}})};
        }
        case FieldRoot::padics: {
            Place v = Place::prime(F.p);
            std::size_t k = q.dim() - 2 * i;
            SquarefreeRat dk = kernel_det(det(q).base, i);
            int epsk = kernel_eps(hasse_at(q, v), dk, i, v);
            return {i, padic_kernel(F, k, dk, epsk)};
        }
        case FieldRoot::rationals:
            return {i, rational_kernel(q, i)};
    }
    throw std::logic_error("unreachable");
}

bool represents(const Form& q, const Coeff& a) {
    Coeff ca = canonicalize(q.field(), a.base, a.tmask);
    if (q.dim() == 0) return false;
    if (is_isotropic(q)) return true;
    return is_isotropic(orthogonal_sum(q, Form::make(q.field(), {ca.negated()})));
}

bool is_isometric(const Form& p, const Form& q) {
    if (p.field() != q.field()) throw std::invalid_argument("forms live over different fields");
    if (p.dim() != q.dim()) return false;
    if (p.dim() == 0) return true;
    return witt_index(orthogonal_sum(p, negated(q))) == p.dim();
}

bool is_subform(const Form& p, const Form& q) {
    if (p.field() != q.field()) throw std::invalid_argument("forms live over different fields");
    if (p.dim() == 0) return true;
    if (p.dim() > q.dim()) return false;
    return witt_index(orthogonal_sum(q, negated(p))) >= p.dim();
}

bool is_universal(const Form& q) {
    auto classes = square_classes(q.field());
    if (!classes.finite)
        throw std::invalid_argument("universality is exact on finite-class fields only");
    if (q.dim() == 0) return false;
    for (const Coeff& a : classes.reps)
        if (!represents(q, a)) return false;
    return true;
}

}  // namespace wittforge
