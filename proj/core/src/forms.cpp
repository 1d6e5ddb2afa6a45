#include "wittforge/forms.hpp"

#include <algorithm>
#include <stdexcept>

namespace wittforge {

Form Form::make(const FieldDesc& F, std::vector<Coeff> raw) {
    Form q(F);
    q.coeffs_.reserve(raw.size());
    for (const Coeff& c : raw) q.coeffs_.push_back(canonicalize(F, c.base, c.tmask));
    return q;
}

Form Form::of_ints(const FieldDesc& F, std::initializer_list<i64> cs) {
    return of_ints(F, std::vector<i64>(cs));
}

Form Form::of_ints(const FieldDesc& F, const std::vector<i64>& cs) {
    Form q(F);
    for (i64 c : cs) q.coeffs_.push_back(canonical_int(F, c));
    return q;
}

std::string Form::str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ",";
        s += coeffs_[i].str();
    }
    return s + ">";
}

namespace {

void require_same_field(const Form& p, const Form& q) {
    if (p.field() != q.field()) throw std::invalid_argument("forms live over different fields");
}

}  // namespace

Form orthogonal_sum(const Form& p, const Form& q) {
    require_same_field(p, q);
    std::vector<Coeff> cs = p.coeffs();
    cs.insert(cs.end(), q.coeffs().begin(), q.coeffs().end());
    return Form::make(p.field(), std::move(cs));
}

Form tensor(const Form& p, const Form& q) {
    require_same_field(p, q);
    std::vector<Coeff> cs;
    cs.reserve(p.dim() * q.dim());
    for (const Coeff& a : p.coeffs())
        for (const Coeff& b : q.coeffs()) cs.push_back(a.mul(b));
    return Form::make(p.field(), std::move(cs));
}

Form repeat(u64 n, const Form& q) {
    std::vector<Coeff> cs;
    cs.reserve(n * q.dim());
    for (u64 i = 0; i < n; ++i)
        cs.insert(cs.end(), q.coeffs().begin(), q.coeffs().end());
    return Form::make(q.field(), std::move(cs));
}

Form scale(const Coeff& a, const Form& q) {
    Coeff ca = canonicalize(q.field(), a.base, a.tmask);
    std::vector<Coeff> cs;
    cs.reserve(q.dim());
    for (const Coeff& b : q.coeffs()) cs.push_back(ca.mul(b));
    return Form::make(q.field(), std::move(cs));
}

Form negated(const Form& q) {
    return scale(Coeff::minus_one(), q);
}

Form hyperbolic(const FieldDesc& F, u64 planes) {
    std::vector<Coeff> cs;
    for (u64 i = 0; i < planes; ++i) {
        cs.push_back(Coeff::one());
        cs.push_back(Coeff::minus_one());
    }
    return Form::make(F, std::move(cs));
}

Form subform_by_indices(const Form& q, std::span<const std::size_t> idx) {
    std::vector<Coeff> cs;
    for (std::size_t i : idx) cs.push_back(q.coeff(i));
    return Form::make(q.field(), std::move(cs));
}

std::pair<Form, Form> laurent_residues(const Form& q) {
    const FieldDesc B = q.field().base();
    std::vector<Coeff> r0, r1;
    for (const Coeff& c : q.coeffs()) {
        Coeff shifted{c.base, c.tmask >> 1};
        ((c.tmask & 1u) ? r1 : r0).push_back(shifted);
    }
    return {Form::make(B, std::move(r0)), Form::make(B, std::move(r1))};
}

Coeff det(const Form& q) {
    Coeff d = Coeff::one();
    for (const Coeff& c : q.coeffs()) d = d.mul(c);
    return canonicalize(q.field(), d.base, d.tmask);
}

Coeff disc(const Form& q) {
    std::size_t d = q.dim();
    Coeff base = det(q);
    if ((d * (d - 1) / 2) % 2) base = base.negated();
    return canonicalize(q.field(), base.base, base.tmask);
}

int signature_at(const Form& q, const Ordering& P) {
    if (!q.field().formally_real())
        throw std::invalid_argument("signature needs a formally real field");
    int s = 0;
    for (const Coeff& c : q.coeffs()) s += sign_at(c, P);
    return s;
}

std::vector<Place> relevant_places(const Form& q) {
    const FieldDesc& F = q.field();
    if (F.depth != 0) return {};
    switch (F.root) {
        case FieldRoot::rationals: {
            std::vector<SquarefreeRat> bases;
            for (const Coeff& c : q.coeffs()) bases.push_back(c.base);
            return wittforge::relevant_places(std::span<const SquarefreeRat>(bases));
        }
        case FieldRoot::reals:
            return {Place::real_place()};
        case FieldRoot::padics:
            return {Place::prime(F.p)};
        case FieldRoot::finite_field:
            return {};
    }
    return {};
}

int hasse_at(const Form& q, const Place& v) {
    const FieldDesc& F = q.field();
    if (F.depth != 0 || F.root == FieldRoot::finite_field)
        throw std::invalid_argument("hasse invariant needs Q, Qp or R");
    int h = 1;
    const auto& cs = q.coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            h *= hilbert_symbol(cs[i].base, cs[j].base, v);
    return h;
}

FormInvariants invariants(const Form& q) {
    FormInvariants inv;
    inv.dim = q.dim();
    inv.det = det(q);
    inv.disc = disc(q);
    const FieldDesc& F = q.field();
    if (F.depth == 0 && F.root != FieldRoot::finite_field)
        for (const Place& v : relevant_places(q)) inv.hasse[v] = hasse_at(q, v);
    if (F.formally_real())
        for (const Ordering& P : orderings(F)) inv.signatures[P] = signature_at(q, P);
    return inv;
}

bool same_coeff_multiset(const Form& p, const Form& q) {
    if (p.field() != q.field() || p.dim() != q.dim()) return false;
    auto a = p.coeffs(), b = q.coeffs();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace wittforge
