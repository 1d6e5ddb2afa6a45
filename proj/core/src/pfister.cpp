#include "wittforge/pfister.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace wittforge {

Form pfister(const FieldDesc& F, std::span<const Coeff> slots) {
    Form out = Form::make(F, {Coeff::one()});
    for (const Coeff& a : slots) {
        Coeff ca = canonicalize(F, a.base, a.tmask);
        out = tensor(out, Form::make(F, {Coeff::one(), ca}));
    }
    return out;
}

Form pfister_ints(const FieldDesc& F, const std::vector<i64>& slots) {
    std::vector<Coeff> cs;
    for (i64 s : slots) cs.push_back(canonical_int(F, s));
    return pfister(F, cs);
}

namespace {

bool is_power_of_two(u64 n) {
    return n != 0 && (n & (n - 1)) == 0;
}

u64 floor_log2(u64 n) {
    u64 k = 0;
    while (n >>= 1) ++k;
    return k;
}

// Scale q so that its first coefficient becomes 1. For a form similar to a
// Pfister form this yields the Pfister representative itself (round forms
// absorb represented scalars).
Form normalized_by_first(const Form& q) {
    return scale(q.coeff(0), q);
}

bool pfister_similar_rationals(const Form& q) {
    std::size_t n = q.dim();
    if (!det(q).base.is_one()) return false;
    int s = signature_at(q, Ordering{});
    std::size_t abs_s = static_cast<std::size_t>(s < 0 ? -s : s);
    if (abs_s != 0 && abs_s != n) return false;
    Form r = normalized_by_first(q);
    for (const Place& v : relevant_places(r))
        if (!v.real && hasse_at(r, v) != 1) return false;
    return true;
}

bool pfister_similar_laurent(const Form& q) {
    auto [r0, r1] = laurent_residues(q);
    if (r1.dim() == 0) return is_pfister_similar(r0);
    if (r0.dim() == 0) return is_pfister_similar(r1);
    if (r0.dim() != r1.dim()) return false;
    if (!is_pfister_similar(r0)) return false;
    Coeff c = r1.coeff(0).mul(r0.coeff(0));
    return is_isometric(scale(c, r0), r1);
}

}  // namespace

bool is_pfister_similar(const Form& q) {
    std::size_t n = q.dim();
    if (!is_power_of_two(n)) return false;
    if (n <= 2) return true;
    if (n == 4) return det(q).base.is_one() && det(q).tmask == 0;
    const FieldDesc& F = q.field();
    if (F.is_laurent()) return pfister_similar_laurent(q);
    switch (F.root) {
        case FieldRoot::reals: {
            int s = signature_at(q, Ordering{});
            std::size_t abs_s = static_cast<std::size_t>(s < 0 ? -s : s);
            return abs_s == 0 || abs_s == n;
        }
        case FieldRoot::finite_field:
        case FieldRoot::padics:
            return witt_index(q) == n / 2;
        case FieldRoot::rationals:
            return pfister_similar_rationals(q);
    }
    throw std::logic_error("unreachable");
}

bool is_neighbor_of(const Form& tau, const Form& pi) {
    if (tau.field() != pi.field()) throw std::invalid_argument("forms live over different fields");
    if (!is_power_of_two(pi.dim()) || !is_pfister_similar(pi))
        throw std::invalid_argument("neighbor test needs a form similar to a Pfister form");
    if (2 * tau.dim() <= pi.dim() || tau.dim() > pi.dim()) return false;
    Form pi0 = normalized_by_first(pi);
    return is_subform(tau, scale(tau.coeff(0), pi0));
}

u64 splitting_cap(u64 dim) {
    if (dim < 2) throw std::invalid_argument("splitting cap needs dim >= 2");
    u64 n = floor_log2(dim - 1);
    return dim - (u64{1} << n);
}

std::vector<u64> possible_first_witt_indices(u64 dim) {
    if (dim < 2) return {};
    std::vector<u64> out;
    u64 cap = splitting_cap(dim);
    for (u64 i = 1; i <= cap; ++i) {
        u64 p2 = 1;
        while (p2 < i) p2 <<= 1;
        if ((dim % p2) == (i % p2)) out.push_back(i);
    }
    return out;
}

namespace {

void clamp_interval(I1Interval& iv, u64 lo, u64 hi, const std::string& rule) {
    u64 nlo = std::max(iv.lo, lo);
    u64 nhi = std::min(iv.hi, hi);
    if (nlo > nhi)
        throw std::logic_error("contradictory first-Witt-index rules: " + rule);
    if (nlo != iv.lo || nhi != iv.hi || iv.provenance.empty()) {
        iv.lo = nlo;
        iv.hi = nhi;
    }
    iv.provenance.push_back(rule);
}

// Candidate Pfister forms of the right dimension built from slot multisets
// of the normalized coefficients; used when no neighbor hint is given.
bool detect_neighbor(const Form& q) {
    std::size_t n = q.dim();
    u64 w = floor_log2(n - 1) + 1;  // dim of the enclosing Pfister form: 2^w
    if (is_power_of_two(n)) w = floor_log2(n);
    if (n - 1 < w) return false;
    Form r = normalized_by_first(q);
    std::vector<Coeff> slots(r.coeffs().begin() + 1, r.coeffs().end());
    std::sort(slots.begin(), slots.end());

    std::set<std::vector<Coeff>> seen;
    std::vector<std::size_t> pick(w);
    for (std::size_t i = 0; i < w; ++i) pick[i] = i;
    while (true) {
        std::vector<Coeff> sub;
        for (std::size_t i : pick) sub.push_back(slots[i]);
        if (seen.insert(sub).second && seen.size() <= 4096) {
            Form cand = pfister(q.field(), sub);
            if (is_neighbor_of(q, cand)) return true;
        }
        std::size_t j = w;
        while (j > 0 && pick[j - 1] == slots.size() - w + (j - 1)) --j;
        if (j == 0) break;
        ++pick[j - 1];
        for (std::size_t i = j; i < w; ++i) pick[i] = pick[i - 1] + 1;
    }
    return false;
}

}  // namespace

I1Interval i1_interval(const Form& q, const I1Hints& hints) {
    if (q.dim() < 2) throw std::invalid_argument("first Witt index needs dim >= 2");
    if (is_isotropic(q)) throw std::invalid_argument("first Witt index needs an anisotropic form");

    u64 cap = splitting_cap(q.dim());
    I1Interval iv{1, cap, {}};
    clamp_interval(iv, 1, cap, "cap");

    bool pfister_like = is_pfister_similar(q);
    if (is_power_of_two(q.dim()) && pfister_like)
        clamp_interval(iv, q.dim() / 2, q.dim() / 2, "pfister_similar");
    if (q.dim() == 4 && !pfister_like) clamp_interval(iv, 1, 1, "dim4_nonpfister");

    bool neighbor = false;
    if (hints.neighbor_of) {
        neighbor = is_neighbor_of(q, *hints.neighbor_of);
    } else if (!pfister_like && q.dim() <= 24) {
        neighbor = detect_neighbor(q);
    }
    if (neighbor) clamp_interval(iv, cap, cap, "neighbor");

    if (q.field().formally_real()) {
        for (const Ordering& P : orderings(q.field())) {
            int s = signature_at(q, P);
            std::size_t abs_s = static_cast<std::size_t>(s < 0 ? -s : s);
            if (abs_s < q.dim())
                clamp_interval(iv, 1, (q.dim() - abs_s) / 2, "signature" + P.str());
        }
    }

    if (hints.product) {
        const Form& pi = hints.product->pfister_factor;
        const Form& r = hints.product->other_factor;
        if (!is_pfister_similar(pi))
            throw std::invalid_argument("tensor hint: factor is not similar to a Pfister form");
        if (r.dim() < 2) throw std::invalid_argument("tensor hint: other factor needs dim >= 2");
        if (!is_isometric(tensor(pi, r), q))
            throw std::invalid_argument("tensor hint does not factor q");
        I1Hints sub = hints.product->other_hints ? *hints.product->other_hints : I1Hints{};
        I1Interval ir = i1_interval(r, sub);
        clamp_interval(iv, pi.dim() * ir.lo, cap, "tensor_lower");
        if (ir.is_point() && ir.lo == splitting_cap(r.dim()))
            clamp_interval(iv, pi.dim() * ir.lo, pi.dim() * ir.lo, "tensor_exact");
    }

    if (q.dim() <= 16) {
        auto adm = possible_first_witt_indices(q.dim());
        u64 lo = iv.lo, hi = iv.hi;
        auto it_lo = std::lower_bound(adm.begin(), adm.end(), lo);
        if (it_lo == adm.end()) throw std::logic_error("residue filter emptied the interval");
        auto it_hi = std::upper_bound(adm.begin(), adm.end(), hi);
        if (it_hi == adm.begin()) throw std::logic_error("residue filter emptied the interval");
        clamp_interval(iv, *it_lo, *(it_hi - 1), "i1_residue_filter");
    }
    return iv;
}

TriState has_maximal_splitting(const Form& q, const I1Hints& hints) {
    if (q.dim() < 2) throw std::invalid_argument("maximal splitting needs dim >= 2");
    if (is_isotropic(q)) throw std::invalid_argument("maximal splitting needs an anisotropic form");
    u64 cap = splitting_cap(q.dim());
    I1Interval iv = i1_interval(q, hints);
    if (iv.is_point() && iv.lo == cap) return TriState::yes;
    if (iv.hi < cap) return TriState::no;
    return TriState::unknown;
}

}  // namespace wittforge
