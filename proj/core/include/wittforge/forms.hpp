#pragma once

#include "wittforge/fields.hpp"

#include <initializer_list>
#include <map>
#include <span>
#include <utility>

namespace wittforge {

/// A diagonal quadratic form over a field of the supported tower.
/// Coefficients are kept in square-class canonical shape; a zero
/// coefficient is rejected at construction. dim 0 is the empty form.
class Form {
  public:
    explicit Form(FieldDesc F) : field_(std::move(F)) {}
    static Form make(const FieldDesc& F, std::vector<Coeff> raw);
    static Form of_ints(const FieldDesc& F, std::initializer_list<i64> cs);
    static Form of_ints(const FieldDesc& F, const std::vector<i64>& cs);

    const FieldDesc& field() const { return field_; }
    std::size_t dim() const { return coeffs_.size(); }
    const std::vector<Coeff>& coeffs() const { return coeffs_; }
    const Coeff& coeff(std::size_t i) const { return coeffs_.at(i); }

    std::string str() const;

    friend bool operator==(const Form&, const Form&) = default;

  private:
    FieldDesc field_;
    std::vector<Coeff> coeffs_;
};

Form orthogonal_sum(const Form& p, const Form& q);
Form tensor(const Form& p, const Form& q);
Form repeat(u64 n, const Form& q);
Form scale(const Coeff& a, const Form& q);
Form negated(const Form& q);
Form hyperbolic(const FieldDesc& F, u64 planes);
Form subform_by_indices(const Form& q, std::span<const std::size_t> idx);

/// Springer residues: q = first ⊥ t·second with both over field().base().
std::pair<Form, Form> laurent_residues(const Form& q);

Coeff det(const Form& q);
Coeff disc(const Form& q);
int signature_at(const Form& q, const Ordering& P);

/// For depth-0 fields with local data: Q gives its full relevant list,
/// Qp and R their single place. Empty otherwise.
std::vector<Place> relevant_places(const Form& q);

/// Product over i<j of hilbert(a_i, a_j, v); depth-0 Q/Qp/R only.
int hasse_at(const Form& q, const Place& v);

struct FormInvariants {
    std::size_t dim = 0;
    Coeff det;
    Coeff disc;
    std::map<Place, int> hasse;
    std::map<Ordering, int> signatures;
};

FormInvariants invariants(const Form& q);

bool same_coeff_multiset(const Form& p, const Form& q);

}  // namespace wittforge
