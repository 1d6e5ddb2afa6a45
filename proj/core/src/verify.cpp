#include "wittforge/verify.hpp"

#include "wittforge/levels.hpp"
#include "wittforge/pfister.hpp"
#include "wittforge/valuesets.hpp"

#include <sstream>

namespace wittforge {

namespace {

std::string set_str(const std::set<u64>& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (u64 v : s) {
        if (!first) os << ",";
        os << v;
        first = false;
    }
    os << "}";
    return os.str();
}

void check(std::vector<VerifyCheck>& out, const std::string& name, const std::string& detail,
           const std::string& expected, const std::string& got) {
    out.push_back({name, detail, expected, got, expected == got});
}

void check_bool(std::vector<VerifyCheck>& out, const std::string& name, const std::string& detail,
                bool expected, bool got) {
    check(out, name, detail, expected ? "true" : "false", got ? "true" : "false");
}

void worked_example_over_q(std::vector<VerifyCheck>& out) {
    FieldDesc Q = FieldDesc::rationals();
    Form q = Form::of_ints(Q, {1, 1, 1, 7});
    Form pi = Form::of_ints(Q, {1, 1, 1, 1});
    Form sixteen_ones = repeat(16, Form::of_ints(Q, {1}));

    check(out, "q_det_nonsquare", "det <1,1,1,7> is a nonsquare", "7", det(q).str());
    check_bool(out, "q_not_pfister_similar", "<1,1,1,7> is not similar to a 2-fold Pfister form",
               true, !is_pfister_similar(q));
    check_bool(out, "pi_represents_seven", "<1,1,1,1> represents 7", true,
               represents(pi, canonical_int(Q, 7)));
    check_bool(out, "seven_scaling_isometry", "7<1,1,1,1> = <1,1,1,1>", true,
               is_isometric(scale(canonical_int(Q, 7), pi), pi));
    check_bool(out, "pi_tensor_q_is_16_ones", "pi (*) q is isometric to 16 x <1>", true,
               is_isometric(tensor(pi, q), sixteen_ones));
    check(out, "sixteen_ones_anisotropic", "witt index of pi (*) q", "0",
          std::to_string(witt_index(tensor(pi, q))));

    I1Interval iq = i1_interval(q);
    check(out, "i1_of_q", "first Witt index interval of q",
          "[1,1]", "[" + std::to_string(iq.lo) + "," + std::to_string(iq.hi) + "]");
    I1Interval ip = i1_interval(tensor(pi, q));
    check(out, "i1_of_product", "first Witt index interval of pi (*) q",
          "[8,8]", "[" + std::to_string(ip.lo) + "," + std::to_string(ip.hi) + "]");
    check_bool(out, "i1_product_exceeds_bound", "8 > (dim pi) * i1(q) = 4", true,
               ip.lo > pi.dim() * iq.hi);
    check_bool(out, "twelve_ones_neighbor_of_16",
               "pi (*) <1,1,1> is a neighbor of 16 x <1>", true,
               is_neighbor_of(tensor(pi, Form::of_ints(Q, {1, 1, 1})), sixteen_ones));
}

void excluded_sets(std::vector<VerifyCheck>& out) {
    std::set<u64> want;
    for (u64 v : {3u, 6u, 7u}) want.insert(v);
    for (u64 v = 11; v <= 15; ++v) want.insert(v);
    for (u64 v = 22; v <= 31; ++v) want.insert(v);
    check(out, "excluded_set_dim6", "sublevel exclusions for dim 6, i1 >= 2, bound 32",
          set_str(want), set_str(inadmissible_sublevels(6, 2, Bound{32}, 32)));
    check(out, "excluded_set_dim6_bound4", "same with bound 4", "{3}",
          set_str(inadmissible_sublevels(6, 2, Bound{4}, 8)));
}

void level_sequences(std::vector<VerifyCheck>& out) {
    // dim 3 admissible levels: {1} and the two interleaved closed forms.
    u64 horizon = u64{1} << 20;
    std::set<u64> closed{1};
    for (u64 k = 1;; ++k) {
        u64 v = ((u64{1} << (2 * k)) + 2) / 3;
        if (v > horizon) break;
        closed.insert(v);
    }
    for (u64 k = 0;; ++k) {
        u64 v = ((u64{1} << (2 * k + 1)) + 1) / 3;
        if (v > horizon) break;
        closed.insert(v);
    }
    auto got = admissible_levels(3, std::nullopt, horizon);
    check_bool(out, "dim3_level_sequences",
               "levels of dim-3 forms match the interleaved closed forms", true, got == closed);

    std::set<u64> pows;
    for (u64 v = 1; v <= 1024; v <<= 1) pows.insert(v);
    check(out, "mset_dim1_2powers", "common level values in dim 1", set_str(pows),
          set_str(mset_values(1, 1024)));
    check(out, "mset_dim2_2powers", "common level values in dim 2", set_str(pows),
          set_str(mset_values(2, 1024)));
}

void local_pure_subform(std::vector<VerifyCheck>& out) {
    // Over Qp (p odd) the anisotropic 4-dimensional form <1,1,-3,-3> has
    // level 1 while its pure subform has level 2, meeting the bracket.
    FieldDesc F = FieldDesc::padics(3);
    Form q = Form::of_ints(F, {1, 1, -3, -3});
    Form tau = Form::of_ints(F, {1, -3, -3});
    check_bool(out, "qp_quaternion_anisotropic", "norm form is anisotropic over Qp(3)", true,
               !is_isotropic(q));
    check(out, "qp_norm_form_level", "level of the norm form", "1", level(q).str());
    check(out, "qp_pure_subform_level", "level of the pure subform", "2", level(tau).str());
    NeighborBrackets b = pfister_neighbor_brackets(4, 3, 1);
    check(out, "qp_pure_subform_bracket", "level bracket attains its upper end", "[1,2]",
          "[" + std::to_string(b.level_lo) + "," + std::to_string(b.level_hi) + "]");
}

void quadratic_extension_table(std::vector<VerifyCheck>& out) {
    std::string want = "1 1 2 2 4 4 4 4 8 8 8 8 8 8 8 8";
    std::string got;
    for (u64 ell = 1; ell <= 16; ++ell) {
        if (ell > 1) got += " ";
        got += std::to_string(*quadratic_ext_bracket(ell).pfister_exact);
    }
    check(out, "pfister_ext_exact_values", "exact levels over function fields, lengths 1..16",
          want, got);
}

void signature_window_sets(std::vector<VerifyCheck>& out) {
    auto rep = signature_sublevel_sets(3, Bound{4}, 1, 4);
    std::set<u64> adm, exc;
    for (const auto& [v, tags] : rep.admissible) adm.insert(v);
    for (const auto& [v, tags] : rep.excluded) exc.insert(v);
    check(out, "subvalues_sets_dim3", "dim 3, sublevel 4: admissible sublevels", "{0,1,2,4}",
          set_str(adm));
    check(out, "subvalues_sets_dim3_excluded", "dim 3, sublevel 4: excluded sublevels", "{3}",
          set_str(exc));

    check(out, "maxsplit_floors_dim3", "maximal-splitting sublevel values, dim 3", "{0,1,2,5}",
          set_str(maxsplit_sublevels(3, 1, Bound{8}, 8)));
}

void round_form_sets(std::vector<VerifyCheck>& out) {
    // q = <1,1,1> over a real closed field: 3 is an attainable level, 4 is
    // not, 5 is an attainable sublevel.
    auto lev = level_value_report(3, 1, 1, std::nullopt, 8, true, true);
    bool three_adm = lev.admissible.count(3) > 0;
    bool four_exc = lev.excluded.count(4) > 0;
    auto sub = sublevel_value_report(3, 1, 1, std::nullopt, 8, true);
    bool five_adm = sub.admissible.count(5) > 0;
    bool four_sub_exc = sub.excluded.count(4) > 0;
    check_bool(out, "round_form_level3_attained", "3 is an attainable level for <1,1,1>", true,
               three_adm);
    check_bool(out, "round_form_level4_excluded", "4 is not an attainable level for <1,1,1>",
               true, four_exc);
    check_bool(out, "round_form_sublevel5_attained", "5 is an attainable sublevel for <1,1,1>",
               true, five_adm);
    check_bool(out, "round_form_sublevel4_excluded", "4 is not an attainable sublevel", true,
               four_sub_exc);
}

void level_examples(std::vector<VerifyCheck>& out) {
    check(out, "sublevel_unit_qp7", "sublevel of <1> over Qp(7)", "2",
          sublevel(Form::of_ints(FieldDesc::padics(7), {1})).str());
    check(out, "level_unit_f5", "level of <1> over Fp(5)", "1",
          level(Form::of_ints(FieldDesc::finite_field(5), {1})).str());
    check(out, "level_unit_f7", "level of <1> over Fp(7)", "2",
          level(Form::of_ints(FieldDesc::finite_field(7), {1})).str());
    FieldDesc Q = FieldDesc::rationals();
    check(out, "length_of_seven", "q-length of 7 for q = <1> over Q", "4",
          q_length(Form::of_ints(Q, {1}), canonical_int(Q, 7)).str());
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite() {
    std::vector<VerifyCheck> out;
    worked_example_over_q(out);
    excluded_sets(out);
    level_sequences(out);
    local_pure_subform(out);
    quadratic_extension_table(out);
    signature_window_sets(out);
    round_form_sets(out);
    level_examples(out);
    return out;
}

}  // namespace wittforge
