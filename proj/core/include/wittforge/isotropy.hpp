#pragma once

#include "wittforge/forms.hpp"

namespace wittforge {

/// True iff q represents zero nontrivially over its field.
bool is_isotropic(const Form& q);

u64 witt_index(const Form& q);

struct WittDecomposition {
    u64 witt_index = 0;
    Form kernel;
};

/// q ≅ kernel ⊥ witt_index × <1,-1> with the kernel anisotropic.
WittDecomposition witt_decomposition(const Form& q);

/// a ∈ D(q). Isotropic forms are universal; dim 0 represents nothing.
bool represents(const Form& q, const Coeff& a);

bool is_isometric(const Form& p, const Form& q);

/// p ⊂ q, i.e. q ≅ p ⊥ r for some form r.
bool is_subform(const Form& p, const Form& q);

/// Every square class is represented. Exact on finite-class fields only.
bool is_universal(const Form& q);

}  // namespace wittforge
