#include "wittforge/valuesets.hpp"

#include "wittforge/levels.hpp"
#include "wittforge/pfister.hpp"

#include <stdexcept>

namespace wittforge {

namespace {

u64 bound_or(Bound b, u64 fallback) {
    return b ? *b : fallback;
}

void require_dim(u64 dim, u64 least) {
    if (dim < least)
        throw std::invalid_argument("dimension must be at least " + std::to_string(least));
}

void require_horizon(Bound b, u64 horizon) {
    if (!b && horizon == 0)
        throw std::invalid_argument("an infinite bound needs an explicit horizon");
}

}  // namespace

std::set<u64> admissible_sublevels(u64 dim, Bound sublevel_bound, u64 horizon) {
    require_dim(dim, 2);
    require_horizon(sublevel_bound, horizon);
    u64 top = std::min<u64>(bound_or(sublevel_bound, horizon), horizon);
    std::set<u64> out;
    for (u128 p2 = 1; p2 / dim <= top; p2 <<= 1) {
        u64 m = static_cast<u64>(p2 / dim);
        if (m <= top) out.insert(m);
    }
    if (sublevel_bound && *sublevel_bound <= horizon) out.insert(*sublevel_bound);
    return out;
}

std::set<u64> admissible_levels(u64 dim, Bound level_bound, u64 horizon) {
    require_dim(dim, 1);
    require_horizon(level_bound, horizon);
    u64 top = std::min<u64>(bound_or(level_bound, horizon), horizon);
    std::set<u64> out;
    for (u128 p2 = 1; (p2 + dim - 1) / dim <= top; p2 <<= 1) {
        u64 m = static_cast<u64>((p2 + dim - 1) / dim);
        if (m >= 1 && m <= top) out.insert(m);
    }
    if (level_bound && *level_bound >= 1 && *level_bound <= horizon) out.insert(*level_bound);
    return out;
}

std::set<u64> inadmissible_sublevels(u64 dim, u64 i1_lo, Bound sublevel_bound, u64 horizon) {
    require_dim(dim, 2);
    if (i1_lo < 1) throw std::invalid_argument("the first Witt index is at least 1");
    u64 i1 = std::min(i1_lo, dim);
    std::set<u64> out;
    for (int n = 0; n < 62; ++n) {
        u128 p2 = u128{1} << n;
        if (sublevel_bound && p2 > *sublevel_bound) break;
        // open interval (2^n - 2^n*i1/dim, 2^n)
        u64 lo = static_cast<u64>((p2 * (dim - i1)) / dim) + 1;
        u64 hi = std::min<u64>(horizon, p2 > 0 ? static_cast<u64>(p2 - 1) : 0);
        for (u64 m = lo; m <= hi; ++m) out.insert(m);
        if (p2 > horizon && lo > horizon) break;
    }
    return out;
}

std::set<u64> maxsplit_sublevels(u64 dim, u64 i1_exact, Bound sublevel_bound, u64 horizon) {
    require_dim(dim, 2);
    if (i1_exact < 1 || i1_exact > dim)
        throw std::invalid_argument("first Witt index out of range");
    std::set<u64> out;
    for (int n = 0; n < 62; ++n) {
        u128 p2 = u128{1} << n;
        if (sublevel_bound && p2 > *sublevel_bound) break;
        u64 m = static_cast<u64>((p2 * (dim - i1_exact)) / dim);
        if (m <= horizon) out.insert(m);
        if (m > horizon) break;
    }
    return out;
}

std::set<u64> inadmissible_levels(u64 dim, u64 i1_lo, Bound sublevel_bound, u64 horizon) {
    require_dim(dim, 1);
    if (i1_lo < 1) throw std::invalid_argument("the first Witt index is at least 1");
    std::set<u64> out;
    for (int n = 1; n < 62; ++n) {
        u128 p2 = u128{1} << n;
        if (sublevel_bound && p2 > *sublevel_bound) break;
        u64 first = 0;
        if (dim <= static_cast<u64>((p2 / 2) * std::min<u128>(i1_lo, dim))) {
            // open interval (2^n + 1 - (2^n*i1 + 1)/dim, 2^n); the first
            // integer strictly above the left end via exact division.
            u128 num = p2 * i1_lo + 1;
            u128 drop = num / dim;
            bool exact = (num % dim) == 0;
            first = static_cast<u64>(p2 + 1 - drop + (exact ? 1 : 0));
            u64 hi = std::min<u64>(horizon, static_cast<u64>(p2 - 1));
            for (u64 m = first; m <= hi; ++m) out.insert(m);
        }
        if (p2 > horizon && (first == 0 || first > horizon)) break;
    }
    return out;
}

std::set<u64> mset_values(u64 dim, u64 horizon) {
    require_dim(dim, 1);
    std::set<u64> out;
    for (u128 p2 = 1; (p2 + dim - 1) / dim <= horizon; p2 <<= 1) {
        u64 m = static_cast<u64>((p2 + dim - 1) / dim);
        if (m >= 1) out.insert(m);
    }
    return out;
}

namespace {

void tag(std::map<u64, std::vector<std::string>>& m, u64 v, const std::string& t) {
    m[v].push_back(t);
}

void fill_undecided(ValueSetReport& rep) {
    u64 start = rep.lower_is_zero ? 0 : 1;
    for (u64 v = start; v <= rep.horizon; ++v)
        if (!rep.admissible.count(v) && !rep.excluded.count(v)) rep.undecided.insert(v);
}

}  // namespace

ValueSetReport sublevel_value_report(u64 dim, std::optional<u64> i1_lo, std::optional<u64> i1_hi,
                                     Bound bound, u64 horizon, bool iterates_max_split) {
    ValueSetReport rep;
    rep.horizon = horizon;
    rep.lower_is_zero = true;
    for (u64 v : admissible_sublevels(dim, bound, horizon)) tag(rep.admissible, v, "floor2n");
    if (bound && *bound <= horizon) tag(rep.admissible, *bound, "self");
    if (i1_lo && i1_hi && *i1_lo == *i1_hi)
        for (u64 v : maxsplit_sublevels(dim, *i1_lo, bound, horizon))
            tag(rep.admissible, v, "maxsplit_floor");
    if (i1_lo)
        for (u64 v : inadmissible_sublevels(dim, *i1_lo, bound, horizon))
            if (!rep.admissible.count(v)) tag(rep.excluded, v, "i1_interval");
    if (bound)
        for (u64 v = *bound + 1; v <= horizon; ++v) tag(rep.excluded, v, "above_self");
    if (iterates_max_split) {
        auto floors = admissible_sublevels(dim, std::nullopt, horizon);
        for (u64 v = 0; v <= horizon; ++v) {
            if (bound && v >= *bound) continue;
            if (!floors.count(v) && !rep.admissible.count(v) && !rep.excluded.count(v))
                tag(rep.excluded, v, "iterate_maxsplit");
        }
    }
    for (auto it = rep.excluded.begin(); it != rep.excluded.end();)
        it = rep.admissible.count(it->first) ? rep.excluded.erase(it) : std::next(it);
    fill_undecided(rep);
    return rep;
}

ValueSetReport level_value_report(u64 dim, std::optional<u64> i1_lo, std::optional<u64> i1_hi,
                                  Bound bound, u64 horizon, bool iterates_max_split,
                                  bool represents_one, Bound sublevel_bound) {
    ValueSetReport rep;
    rep.horizon = horizon;
    rep.lower_is_zero = false;
    (void)i1_hi;
    for (u64 v : admissible_levels(dim, bound, horizon)) tag(rep.admissible, v, "ceil2n");
    if (bound && *bound <= horizon) tag(rep.admissible, *bound, "self");
    if (i1_lo && represents_one) {
        Bound sb = sublevel_bound ? sublevel_bound : bound;
        for (u64 v : inadmissible_levels(dim, *i1_lo, sb, horizon))
            if (!rep.admissible.count(v)) tag(rep.excluded, v, "i1_interval");
    }
    if (bound)
        for (u64 v = *bound + 1; v <= horizon; ++v) tag(rep.excluded, v, "above_self");
    if (iterates_max_split) {
        auto ceils = admissible_levels(dim, std::nullopt, horizon);
        for (u64 v = 1; v <= horizon; ++v) {
            if (bound && v >= *bound) continue;
            if (!ceils.count(v) && !rep.admissible.count(v) && !rep.excluded.count(v))
                tag(rep.excluded, v, "iterate_maxsplit");
        }
    }
    for (auto it = rep.excluded.begin(); it != rep.excluded.end();)
        it = rep.admissible.count(it->first) ? rep.excluded.erase(it) : std::next(it);
    fill_undecided(rep);
    return rep;
}

NeighborBrackets pfister_neighbor_brackets(u64 dim_q, u64 dim_tau, u64 s) {
    if (dim_q == 0 || (dim_q & (dim_q - 1)) != 0)
        throw std::invalid_argument("the ambient Pfister dimension must be a power of two");
    if (2 * dim_tau <= dim_q || dim_tau > dim_q)
        throw std::invalid_argument("not a neighbor dimension");
    if (s < 1) throw std::invalid_argument("level must be at least 1");
    NeighborBrackets b;
    b.sublevel_lo = s;
    b.sublevel_hi = (s * dim_q) / dim_tau;
    b.level_lo = s;
    b.level_hi = (s * dim_q + 1 + dim_tau - 1) / dim_tau;
    return b;
}

QuadExtBracket quadratic_ext_bracket(u64 ell) {
    if (ell < 1) throw std::invalid_argument("the q-length must be finite and positive");
    u64 r = 0;
    while ((u64{2} << r) <= ell) ++r;  // r = floor(log2 ell)
    QuadExtBracket b;
    b.lo = r >= 1 ? (u64{1} << (r - 1)) : 1;
    b.hi = (u64{2} << r) - 1;
    if (ell == 1) {
        b.pfister_exact = 1;
    } else {
        u64 k = 0;
        while ((u64{2} << k) <= ell - 1) ++k;  // k = floor(log2 (ell-1))
        b.pfister_exact = u64{1} << k;
    }
    return b;
}

ValueSetReport signature_sublevel_sets(u64 dim, Bound sublevel, u64 i1_lo, u64 horizon) {
    require_dim(dim, 2);
    ValueSetReport rep;
    rep.horizon = horizon;
    rep.lower_is_zero = true;
    u64 m = sublevel ? std::min(dim - 1, *sublevel - 1) : dim - 1;
    for (u64 v = 0; v <= m && v <= horizon; ++v) tag(rep.admissible, v, "signature_window");
    if (sublevel && *sublevel <= horizon) tag(rep.admissible, *sublevel, "self");
    for (u64 v : inadmissible_sublevels(dim, i1_lo, sublevel, horizon))
        if (!rep.admissible.count(v)) tag(rep.excluded, v, "i1_interval");
    if (sublevel)
        for (u64 v = *sublevel + 1; v <= horizon; ++v) tag(rep.excluded, v, "above_self");
    fill_undecided(rep);
    rep.equality = (sublevel && *sublevel <= dim) ? "exact" : "unknown";
    if (rep.undecided.empty()) rep.equality = "exact";
    return rep;
}

ValueSetReport signature_level_sets(Bound level, u64 horizon) {
    ValueSetReport rep;
    rep.horizon = horizon;
    rep.lower_is_zero = false;
    u64 top = level ? std::min(*level, horizon) : horizon;
    for (u64 v = 1; v <= top; ++v) tag(rep.admissible, v, "negative_definite_window");
    if (level)
        for (u64 v = *level + 1; v <= horizon; ++v) tag(rep.excluded, v, "above_self");
    fill_undecided(rep);
    rep.equality = "exact";
    return rep;
}

ValueSetReport signature_full_sets(const Form& q, u64 horizon) {
    if (!q.field().formally_real())
        throw std::invalid_argument("signature value sets need a formally real field");
    if (q.dim() == 0 || is_isotropic(q))
        throw std::invalid_argument("signature value sets need an anisotropic form");

    bool has_neg_definite = false, has_near_definite = false;
    for (const Ordering& P : orderings(q.field())) {
        int s = signature_at(q, P);
        std::size_t abs_s = static_cast<std::size_t>(s < 0 ? -s : s);
        if (s < 0 && abs_s == q.dim()) has_neg_definite = true;
        if (q.dim() >= 2 && abs_s == q.dim() - 2) has_near_definite = true;
    }
    if (has_neg_definite) {
        LevelResult s = level(q);
        Bound b = s.is_finite() ? Bound{s.value} : std::nullopt;
        u64 h = horizon ? horizon : (b ? std::max<u64>(2 * *b, 16) : 16);
        return signature_level_sets(b, h);
    }
    if (has_near_definite) {
        LevelResult sb = sublevel(q);
        Bound b = sb.is_finite() ? Bound{sb.value} : std::nullopt;
        u64 i1_lo = i1_interval(q).lo;
        u64 h = horizon ? horizon : (b ? std::max<u64>(2 * *b, 16) : 16);
        return signature_sublevel_sets(q.dim(), b, i1_lo, h);
    }
    throw std::invalid_argument("signature hypothesis not met at any ordering");
}

}  // namespace wittforge
