#pragma once

#include "wittforge/isotropy.hpp"

#include <memory>
#include <optional>

namespace wittforge {

/// <1,a_1> ⊗ … ⊗ <1,a_n>; the empty product is <1>.
Form pfister(const FieldDesc& F, std::span<const Coeff> slots);
Form pfister_ints(const FieldDesc& F, const std::vector<i64>& slots);

/// Whether q is a scalar multiple of a Pfister form.
bool is_pfister_similar(const Form& q);

/// tau ⊂ a·pi for some scalar a, with dim tau > (dim pi)/2.
/// pi must be similar to a Pfister form of 2-power dimension.
bool is_neighbor_of(const Form& tau, const Form& pi);

/// m where dim = 2^n + m with 0 < m ≤ 2^n. Requires dim ≥ 2.
u64 splitting_cap(u64 dim);

/// Possible first Witt indexes in dimension dim: i with 1 ≤ i ≤ cap and
/// i ≡ dim mod 2^ceil(log2 i).
std::vector<u64> possible_first_witt_indices(u64 dim);

struct I1Interval {
    u64 lo = 1;
    u64 hi = 1;
    std::vector<std::string> provenance;

    bool is_point() const { return lo == hi; }
};

/// Structural facts a caller can certify about q.
struct I1Hints {
    std::optional<Form> neighbor_of;
    struct Product {
        Form pfister_factor;
        Form other_factor;
        std::shared_ptr<I1Hints> other_hints;
    };
    std::optional<Product> product;
};

/// Certified interval for the first Witt index of an anisotropic form of
/// dimension at least 2. Throws on isotropic input.
I1Interval i1_interval(const Form& q, const I1Hints& hints = {});

enum class TriState { yes, no, unknown };

TriState has_maximal_splitting(const Form& q, const I1Hints& hints = {});

}  // namespace wittforge
