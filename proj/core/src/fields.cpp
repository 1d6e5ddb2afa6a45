#include "wittforge/fields.hpp"

#include <cstdlib>
#include <stdexcept>

namespace wittforge {

int max_laurent_depth() {
    if (const char* env = std::getenv("WITTFORGE_MAX_LAURENT_DEPTH")) {
        int d = std::atoi(env);
        if (d >= 0 && d <= 30) return d;
        throw std::invalid_argument("WITTFORGE_MAX_LAURENT_DEPTH out of range");
    }
    return 4;
}

FieldDesc FieldDesc::padics(i64 p) {
    if (p < 2 || !is_prime(static_cast<u64>(p)))
        throw std::invalid_argument("Qp needs a prime p");
    return {FieldRoot::padics, p, 0};
}

FieldDesc FieldDesc::finite_field(i64 p) {
    if (p < 3 || p % 2 == 0 || !is_prime(static_cast<u64>(p)))
        throw std::invalid_argument("Fp needs an odd prime p");
    return {FieldRoot::finite_field, p, 0};
}

FieldDesc FieldDesc::laurent() const {
    if (depth + 1 > max_laurent_depth())
        throw std::invalid_argument("Laurent tower exceeds the configured depth cap");
    return {root, p, depth + 1};
}

FieldDesc FieldDesc::base() const {
    if (depth == 0) throw std::invalid_argument("base() of a non-Laurent field");
    return {root, p, depth - 1};
}

std::string FieldDesc::str() const {
    std::string s;
    switch (root) {
        case FieldRoot::rationals: s = "Q"; break;
        case FieldRoot::reals: s = "R"; break;
        case FieldRoot::padics: s = "Qp(" + std::to_string(p) + ")"; break;
        case FieldRoot::finite_field: s = "Fp(" + std::to_string(p) + ")"; break;
    }
    for (int i = 0; i < depth; ++i) s = "laurent(" + s + ")";
    return s;
}

std::string Coeff::str() const {
    std::string s;
    bool base_trivial = base.primes().empty();
    if (!base_trivial || tmask == 0) {
        s = base.str();
    } else if (base.sign() < 0) {
        s = "-";
    }
    for (int k = 0; k < 32; ++k) {
        if (!(tmask & (1u << k))) continue;
        if (!s.empty() && s != "-") s += "*";
        s += (k == 0) ? "t" : ("t" + std::to_string(k + 1));
    }
    return s;
}

i64 least_nonresidue(i64 p) {
    for (i64 q = 2;; q = (q == 2 ? 3 : q + 2)) {
        if (!is_prime(static_cast<u64>(q))) continue;
        if (q >= p) throw std::logic_error("no non-residue below p");
        if (legendre(q, p) == -1) return q;
    }
}

namespace {

SquarefreeRat canonical_padic_unit(const SquarefreeRat& u, i64 p) {
    if (p == 2) {
        switch (u.mod(8)) {
            case 1: return SquarefreeRat::one();
            case 3: return squarefree_part(-5);
            case 5: return squarefree_part(5);
            default: return SquarefreeRat::minus_one();
        }
    }
    if (legendre(u, p) == 1) return SquarefreeRat::one();
    return squarefree_part(least_nonresidue(p));
}

SquarefreeRat canonical_root_class(const FieldDesc& root_field, const SquarefreeRat& base) {
    switch (root_field.root) {
        case FieldRoot::rationals:
            return base;
        case FieldRoot::reals:
            return base.sign() > 0 ? SquarefreeRat::one() : SquarefreeRat::minus_one();
        case FieldRoot::padics: {
            i64 p = root_field.p;
            bool ramified = base.has_prime(p);
            SquarefreeRat unit = canonical_padic_unit(ramified ? base.without_prime(p) : base, p);
            return ramified ? unit.mul(squarefree_part(p)) : unit;
        }
        case FieldRoot::finite_field: {
            i64 p = root_field.p;
            if (base.has_prime(p))
                throw std::domain_error("coefficient is zero or has a pole in F_p");
            if (legendre(base, p) == 1) return SquarefreeRat::one();
            return squarefree_part(least_nonresidue(p));
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Coeff canonicalize(const FieldDesc& F, const SquarefreeRat& base, std::uint32_t tmask) {
    if (F.depth < 32 && (tmask >> F.depth) != 0)
        throw std::invalid_argument("uniformiser beyond the tower depth");
    FieldDesc root_field{F.root, F.p, 0};
    return Coeff{canonical_root_class(root_field, base), tmask};
}

Coeff canonical_int(const FieldDesc& F, i64 num, i64 den, std::uint32_t tmask) {
    return canonicalize(F, squarefree_part(num, den), tmask);
}

std::string Ordering::str() const {
    if (tsigns.empty()) return "(unique)";
    std::string s = "(";
    for (std::size_t i = 0; i < tsigns.size(); ++i) {
        if (i) s += ",";
        s += (i == 0 ? "t" : "t" + std::to_string(i + 1));
        s += tsigns[i] > 0 ? "+" : "-";
    }
    return s + ")";
}

std::vector<Ordering> orderings(const FieldDesc& F) {
    if (!F.formally_real()) return {};
    std::vector<Ordering> out;
    std::size_t n = std::size_t{1} << F.depth;
    for (std::size_t m = 0; m < n; ++m) {
        Ordering P;
        for (int k = 0; k < F.depth; ++k)
            P.tsigns.push_back((m >> k) & 1 ? -1 : 1);
        out.push_back(std::move(P));
    }
    return out;
}

int sign_at(const Coeff& a, const Ordering& P) {
    int s = a.base.sign();
    for (std::size_t k = 0; k < P.tsigns.size(); ++k)
        if (a.tmask & (1u << k)) s *= P.tsigns[k];
    return s;
}

SquareClassSet square_classes(const FieldDesc& F) {
    if (F.root == FieldRoot::rationals)
        return {false, sample_square_classes(F, 24)};
    std::vector<Coeff> reps;
    FieldDesc root_field{F.root, F.p, 0};
    switch (F.root) {
        case FieldRoot::reals:
            reps = {Coeff::one(), Coeff::minus_one()};
            break;
        case FieldRoot::finite_field:
            reps = {Coeff::one(), canonical_int(root_field, least_nonresidue(F.p))};
            break;
        case FieldRoot::padics: {
            std::vector<i64> units;
            if (F.p == 2)
                units = {1, -1, 5, -5};
            else
                units = {1, least_nonresidue(F.p)};
            for (i64 u : units) {
                reps.push_back(canonical_int(root_field, u));
                reps.push_back(canonical_int(root_field, u * F.p));
            }
            break;
        }
        default:
            throw std::logic_error("unreachable");
    }
    std::vector<Coeff> out;
    std::size_t masks = std::size_t{1} << F.depth;
    for (std::size_t m = 0; m < masks; ++m)
        for (const Coeff& r : reps)
            out.push_back(Coeff{r.base, static_cast<std::uint32_t>(m)});
    return {true, std::move(out)};
}

std::vector<Coeff> sample_square_classes(const FieldDesc& F, std::size_t count) {
    if (F.root != FieldRoot::rationals) {
        auto cs = square_classes(F);
        if (cs.reps.size() > count) cs.reps.resize(count);
        return cs.reps;
    }
    std::vector<Coeff> out;
    std::size_t masks = std::size_t{1} << F.depth;
    for (i64 v = 1; out.size() < count; ++v) {
        SquarefreeRat c = squarefree_part(v);
        if (c.value() != v) continue;  // enumerate squarefree v only
        for (int sign : {1, -1}) {
            SquarefreeRat s = sign > 0 ? c : c.negated();
            for (std::size_t m = 0; m < masks && out.size() < count; ++m)
                out.push_back(Coeff{s, static_cast<std::uint32_t>(m)});
            if (out.size() >= count) break;
        }
    }
    return out;
}

UBound u_bound(const FieldDesc& F) {
    if (F.formally_real()) return UBound::inf();
    u64 base = F.root == FieldRoot::finite_field ? 2 : 4;
    return UBound::of(base << F.depth);
}

}  // namespace wittforge
