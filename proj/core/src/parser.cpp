#include "wittforge/parser.hpp"

#include "wittforge/pfister.hpp"

#include <cctype>
#include <functional>

namespace wittforge {

namespace {

struct Cursor {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool lookahead(std::string_view token) {
        skip_ws();
        return src.substr(pos, token.size()) == token;
    }
    bool accept(std::string_view token) {
        if (!lookahead(token)) return false;
        pos += token.size();
        return true;
    }
    void expect(std::string_view token, const std::string& what) {
        if (!accept(token)) throw ParseError(pos, "expected " + what);
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(pos, what); }
};

i64 parse_int(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    bool neg = c.accept("-");
    c.skip_ws();
    if (c.pos >= c.src.size() || !std::isdigit(static_cast<unsigned char>(c.src[c.pos])))
        throw ParseError(c.pos, "expected an integer");
    i64 v = 0;
    while (c.pos < c.src.size() && std::isdigit(static_cast<unsigned char>(c.src[c.pos]))) {
        int d = c.src[c.pos] - '0';
        if (v > (INT64_MAX - d) / 10) throw ParseError(start, "integer literal too large");
        v = v * 10 + d;
        ++c.pos;
    }
    return neg ? -v : v;
}

bool at_uniformiser(Cursor& c) {
    if (c.peek() != 't') return false;
    std::size_t next = c.pos + 1;
    if (next < c.src.size()) {
        char ch = c.src[next];
        if (std::isalpha(static_cast<unsigned char>(ch))) return false;  // identifiers
    }
    return true;
}

std::uint32_t parse_uniformiser(Cursor& c) {
    c.expect("t", "a uniformiser");
    int idx = 1;
    if (c.pos < c.src.size() && std::isdigit(static_cast<unsigned char>(c.src[c.pos]))) {
        idx = c.src[c.pos] - '0';
        ++c.pos;
        if (idx < 1 || idx > 9) throw ParseError(c.pos - 1, "uniformiser index out of range");
    }
    return 1u << (idx - 1);
}

// COEFF := ['-'] factor { '*' factor }, factor := INT ['/' INT] | t[N]
RawCoeff parse_coeff(Cursor& c, bool allow_products) {
    c.skip_ws();
    RawCoeff out;
    out.pos = c.pos;
    bool neg = c.accept("-");
    bool first = true;
    while (true) {
        c.skip_ws();
        if (at_uniformiser(c)) {
            out.tmask ^= parse_uniformiser(c);
        } else if (c.pos < c.src.size() &&
                   std::isdigit(static_cast<unsigned char>(c.src[c.pos]))) {
            i64 n = parse_int(c);
            if (c.accept("/")) {
                i64 d = parse_int(c);
                if (d == 0) throw ParseError(out.pos, "zero denominator");
                i64 ad = d < 0 ? -d : d, aden = out.den < 0 ? -out.den : out.den;
                if (aden > INT64_MAX / ad) throw ParseError(out.pos, "coefficient too large");
                out.den *= d;
            }
            i64 an = n < 0 ? -n : n, anum = out.num < 0 ? -out.num : out.num;
            if (an != 0 && anum > INT64_MAX / an)
                throw ParseError(out.pos, "coefficient too large");
            out.num *= n;
        } else if (first) {
            c.fail("expected a coefficient");
        } else {
            c.fail("expected a factor after '*'");
        }
        first = false;
        if (!allow_products) break;
        std::size_t save = c.pos;
        if (!c.accept("*")) break;
        // A '*' followed by a form expression belongs to the scale operator.
        char nxt = c.peek();
        bool factor_follows = std::isdigit(static_cast<unsigned char>(nxt)) || at_uniformiser(c);
        if (!factor_follows) {
            c.pos = save;
            break;
        }
    }
    if (neg) out.num = -out.num;
    return out;
}

std::vector<RawCoeff> parse_coeff_list(Cursor& c, char terminator) {
    std::vector<RawCoeff> cs;
    c.skip_ws();
    if (c.peek() == terminator) return cs;
    while (true) {
        cs.push_back(parse_coeff(c, true));
        if (!c.accept(",")) break;
    }
    return cs;
}

ExprPtr parse_sum(Cursor& c);

ExprPtr parse_atom(Cursor& c) {
    c.skip_ws();
    if (c.accept("<")) {
        auto e = std::make_shared<FormExpr>();
        e->kind = FormExpr::Kind::literal;
        e->coeffs = parse_coeff_list(c, '>');
        c.expect(">", "'>' closing the form literal");
        return e;
    }
    if (c.accept("pfister")) {
        c.expect("(", "'(' after pfister");
        auto e = std::make_shared<FormExpr>();
        e->kind = FormExpr::Kind::pfister;
        e->coeffs = parse_coeff_list(c, ')');
        c.expect(")", "')' closing pfister");
        return e;
    }
    if (c.accept("(")) {
        ExprPtr e = parse_sum(c);
        c.expect(")", "')'");
        return e;
    }
    c.fail("expected a form literal, pfister(...), or a parenthesised expression");
}

bool starts_scaled_coeff(Cursor& c) {
    std::size_t save = c.pos;
    bool ok = false;
    try {
        parse_coeff(c, true);
        c.skip_ws();
        ok = c.lookahead("*") && !c.lookahead("(*)");
    } catch (const ParseError&) {
        ok = false;
    }
    c.pos = save;
    return ok;
}

ExprPtr parse_scaled(Cursor& c) {
    c.skip_ws();
    char ch = c.peek();
    bool maybe_coeff =
        ch == '-' || std::isdigit(static_cast<unsigned char>(ch)) || at_uniformiser(c);
    if (maybe_coeff && starts_scaled_coeff(c)) {
        auto e = std::make_shared<FormExpr>();
        e->kind = FormExpr::Kind::scale;
        e->scalar = parse_coeff(c, true);
        c.expect("*", "'*'");
        e->lhs = parse_scaled(c);
        return e;
    }
    return parse_atom(c);
}

ExprPtr parse_repeat(Cursor& c) {
    c.skip_ws();
    if (c.pos < c.src.size() && std::isdigit(static_cast<unsigned char>(c.src[c.pos]))) {
        std::size_t save = c.pos;
        i64 n = parse_int(c);
        c.skip_ws();
        if (c.lookahead("x") &&
            (c.pos + 1 >= c.src.size() ||
             !std::isalnum(static_cast<unsigned char>(c.src[c.pos + 1])))) {
            c.expect("x", "'x'");
            if (n < 1) throw ParseError(save, "repetition count must be positive");
            auto e = std::make_shared<FormExpr>();
            e->kind = FormExpr::Kind::repeat;
            e->count = static_cast<u64>(n);
            e->lhs = parse_repeat(c);
            return e;
        }
        c.pos = save;
    }
    return parse_scaled(c);
}

ExprPtr parse_tensor(Cursor& c) {
    ExprPtr e = parse_repeat(c);
    while (c.accept("(*)")) {
        auto node = std::make_shared<FormExpr>();
        node->kind = FormExpr::Kind::tensor;
        node->lhs = e;
        node->rhs = parse_repeat(c);
        e = node;
    }
    return e;
}

ExprPtr parse_sum(Cursor& c) {
    ExprPtr e = parse_tensor(c);
    while (c.accept("(+)")) {
        auto node = std::make_shared<FormExpr>();
        node->kind = FormExpr::Kind::sum;
        node->lhs = e;
        node->rhs = parse_tensor(c);
        e = node;
    }
    return e;
}

std::string coeff_str(const RawCoeff& rc) {
    bool neg = (rc.num < 0) != (rc.den < 0);
    i64 num = rc.num < 0 ? -rc.num : rc.num;
    i64 den = rc.den < 0 ? -rc.den : rc.den;
    std::vector<std::string> factors;
    if (!(num == 1 && den == 1) || rc.tmask == 0) {
        std::string f = std::to_string(num);
        if (den != 1) f += "/" + std::to_string(den);
        factors.push_back(f);
    }
    for (int k = 0; k < 32; ++k)
        if (rc.tmask & (1u << k))
            factors.push_back(k == 0 ? "t" : "t" + std::to_string(k + 1));
    std::string s = neg ? "-" : "";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "*";
        s += factors[i];
    }
    return s;
}

int precedence(FormExpr::Kind k) {
    switch (k) {
        case FormExpr::Kind::sum: return 0;
        case FormExpr::Kind::tensor: return 1;
        case FormExpr::Kind::repeat: return 2;
        case FormExpr::Kind::scale: return 3;
        default: return 4;
    }
}

std::string print_prec(const FormExpr& e, int parent) {
    std::string s;
    switch (e.kind) {
        case FormExpr::Kind::literal: {
            s = "<";
            for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
                if (i) s += ",";
                s += coeff_str(e.coeffs[i]);
            }
            s += ">";
            break;
        }
        case FormExpr::Kind::pfister: {
            s = "pfister(";
            for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
                if (i) s += ",";
                s += coeff_str(e.coeffs[i]);
            }
            s += ")";
            break;
        }
        case FormExpr::Kind::sum:
            s = print_prec(*e.lhs, 0) + " (+) " + print_prec(*e.rhs, 1);
            break;
        case FormExpr::Kind::tensor:
            s = print_prec(*e.lhs, 1) + " (*) " + print_prec(*e.rhs, 2);
            break;
        case FormExpr::Kind::repeat:
            s = std::to_string(e.count) + " x " + print_prec(*e.lhs, 2);
            break;
        case FormExpr::Kind::scale:
            s = coeff_str(e.scalar) + " * " + print_prec(*e.lhs, 3);
            break;
    }
    if (precedence(e.kind) < parent) s = "(" + s + ")";
    return s;
}

}  // namespace

ExprPtr parse_form_expr(std::string_view src) {
    Cursor c{src, 0};
    ExprPtr e = parse_sum(c);
    if (!c.eof()) throw ParseError(c.pos, "trailing input");
    return e;
}

std::string print_expr(const FormExpr& e) {
    return print_prec(e, 0);
}

bool expr_equal(const FormExpr& a, const FormExpr& b) {
    if (a.kind != b.kind) return false;
    auto coeff_eq = [](const RawCoeff& x, const RawCoeff& y) {
        return x.num == y.num && x.den == y.den && x.tmask == y.tmask;
    };
    switch (a.kind) {
        case FormExpr::Kind::literal:
        case FormExpr::Kind::pfister:
            if (a.coeffs.size() != b.coeffs.size()) return false;
            for (std::size_t i = 0; i < a.coeffs.size(); ++i)
                if (!coeff_eq(a.coeffs[i], b.coeffs[i])) return false;
            return true;
        case FormExpr::Kind::sum:
        case FormExpr::Kind::tensor:
            return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
        case FormExpr::Kind::repeat:
            return a.count == b.count && expr_equal(*a.lhs, *b.lhs);
        case FormExpr::Kind::scale:
            return coeff_eq(a.scalar, b.scalar) && expr_equal(*a.lhs, *b.lhs);
    }
    return false;
}

namespace {

Coeff elaborate_coeff(const RawCoeff& rc, const FieldDesc& F) {
    if (rc.num == 0) throw ParseError(rc.pos, "zero coefficient");
    try {
        return canonicalize(F, squarefree_part(rc.num, rc.den), rc.tmask);
    } catch (const std::invalid_argument& e) {
        throw ParseError(rc.pos, e.what());
    } catch (const std::domain_error& e) {
        throw ParseError(rc.pos, e.what());
    }
}

}  // namespace

Form elaborate(const FormExpr& e, const FieldDesc& F) {
    switch (e.kind) {
        case FormExpr::Kind::literal: {
            std::vector<Coeff> cs;
            for (const RawCoeff& rc : e.coeffs) cs.push_back(elaborate_coeff(rc, F));
            return Form::make(F, std::move(cs));
        }
        case FormExpr::Kind::pfister: {
            std::vector<Coeff> cs;
            for (const RawCoeff& rc : e.coeffs) cs.push_back(elaborate_coeff(rc, F));
            return pfister(F, cs);
        }
        case FormExpr::Kind::sum:
            return orthogonal_sum(elaborate(*e.lhs, F), elaborate(*e.rhs, F));
        case FormExpr::Kind::tensor:
            return tensor(elaborate(*e.lhs, F), elaborate(*e.rhs, F));
        case FormExpr::Kind::repeat:
            return repeat(e.count, elaborate(*e.lhs, F));
        case FormExpr::Kind::scale:
            return scale(elaborate_coeff(e.scalar, F), elaborate(*e.lhs, F));
    }
    throw std::logic_error("unreachable");
}

Form parse_form(std::string_view src, const FieldDesc& F) {
    return elaborate(*parse_form_expr(src), F);
}

FieldDesc parse_field(std::string_view src) {
    Cursor c{src, 0};
    std::function<FieldDesc()> rec = [&]() -> FieldDesc {
        c.skip_ws();
        if (c.accept("laurent")) {
            c.expect("(", "'(' after laurent");
            FieldDesc base = rec();
            c.expect(")", "')'");
            return base.laurent();
        }
        if (c.accept("Qp")) {
            c.expect("(", "'(' after Qp");
            i64 p = parse_int(c);
            c.expect(")", "')'");
            return FieldDesc::padics(p);
        }
        if (c.accept("Fp")) {
            c.expect("(", "'(' after Fp");
            i64 p = parse_int(c);
            c.expect(")", "')'");
            return FieldDesc::finite_field(p);
        }
        if (c.accept("Q")) return FieldDesc::rationals();
        if (c.accept("R")) return FieldDesc::reals();
        c.fail("expected a field: Q, R, Qp(p), Fp(p), laurent(...)");
    };
    FieldDesc F = rec();
    if (!c.eof()) throw ParseError(c.pos, "trailing input after field");
    return F;
}

}  // namespace wittforge
