#pragma once

#include "wittforge/forms.hpp"

#include <memory>
#include <stdexcept>
#include <string_view>

namespace wittforge {

/// Syntax error with a byte offset into the source text.
struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(pos) + ": " + what), pos(pos) {}
};

/// A coefficient literal before field elaboration.
struct RawCoeff {
    i64 num = 1;
    i64 den = 1;
    std::uint32_t tmask = 0;
    std::size_t pos = 0;
};

/// Form expression grammar, lowest to highest precedence:
///   sum    := tens { '(+)' tens }
///   tens   := rep  { '(*)' rep }
///   rep    := INT 'x' rep | scaled
///   scaled := COEFF '*' scaled | atom
///   atom   := '<' coeffs '>' | 'pfister' '(' coeffs ')' | '(' sum ')'
/// COEFF is a signed integer, fraction, or product of such with uniformiser
/// symbols t, t2, t3, t4.
struct FormExpr {
    enum class Kind { literal, pfister, sum, tensor, scale, repeat };

    Kind kind;
    std::vector<RawCoeff> coeffs;            // literal, pfister
    u64 count = 0;                           // repeat
    RawCoeff scalar;                         // scale
    std::shared_ptr<FormExpr> lhs, rhs;      // sum/tensor; lhs is the child of scale/repeat
};

using ExprPtr = std::shared_ptr<FormExpr>;

ExprPtr parse_form_expr(std::string_view src);
std::string print_expr(const FormExpr& e);
bool expr_equal(const FormExpr& a, const FormExpr& b);

/// Elaborate the syntax tree to a form over F. Zero coefficients and
/// uniformisers beyond the tower are rejected with positions.
Form elaborate(const FormExpr& e, const FieldDesc& F);
Form parse_form(std::string_view src, const FieldDesc& F);

/// Field syntax: Q | R | Qp(7) | Fp(5) | laurent(...)
FieldDesc parse_field(std::string_view src);

}  // namespace wittforge
