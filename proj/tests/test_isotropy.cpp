#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wittforge/isotropy.hpp"

using namespace wittforge;

namespace {
const FieldDesc Q = FieldDesc::rationals();
}

TEST_CASE("isotropy over Q") {
    CHECK(!is_isotropic(Form::of_ints(Q, {1, 1, 1, 7})));
    CHECK(is_isotropic(Form::of_ints(Q, {1, 1, 1, 1, -7})));  // 4+1+1+1-7 = 0
    CHECK(!is_isotropic(Form::of_ints(Q, {1})));
    CHECK(!is_isotropic(Form(Q)));
    CHECK(is_isotropic(Form::of_ints(Q, {2, -2})));
    CHECK(!is_isotropic(Form::of_ints(Q, {1, -7})));
    CHECK(!is_isotropic(Form::of_ints(Q, {1, 1, -7})));       // 7 is not a sum of two squares
    CHECK(is_isotropic(Form::of_ints(Q, {1, 1, -2})));
    CHECK(!is_isotropic(Form::of_ints(Q, {1, 1, 1, -7})));    // 7 is not a sum of three squares
    CHECK(is_isotropic(Form::of_ints(Q, {1, 1, 1, -2})));
}

TEST_CASE("isotropy over laurent towers") {
    FieldDesc L = FieldDesc::reals().laurent();
    Coeff t = canonicalize(L, SquarefreeRat::one(), 1);
    CHECK(!is_isotropic(Form::make(L, {Coeff::one(), t.negated()})));
    CHECK(is_isotropic(Form::make(L, {Coeff::one(), Coeff::minus_one(), t})));
    FieldDesc L3 = FieldDesc::finite_field(3).laurent();
    Coeff t3 = canonicalize(L3, SquarefreeRat::one(), 1);
    CHECK(!is_isotropic(Form::make(L3, {Coeff::one(), t3})));           // residues <1>, <1>
    CHECK(is_isotropic(Form::make(L3, {Coeff::one(), Coeff::minus_one(), t3})));
}

TEST_CASE("engine matches exhaustive search over small finite fields") {
    for (i64 p : {3, 5, 7, 11, 13}) {
        FieldDesc F = FieldDesc::finite_field(p);
        std::size_t max_dim = p <= 7 ? 5 : 4;
        for (std::size_t dim = 1; dim <= max_dim; ++dim)
            for (const Form& q : testing::all_forms(F, dim))
                CHECK(is_isotropic(q) == testing::fp_isotropic_bruteforce(q));
    }
}

TEST_CASE("engine matches the Hensel oracle over Qp") {
    for (i64 p : {2, 3, 5}) {
        FieldDesc F = FieldDesc::padics(p);
        std::size_t max_dim = p == 5 ? 2 : 3;
        for (std::size_t dim = 1; dim <= max_dim; ++dim)
            for (const Form& q : testing::all_forms(F, dim)) {
                std::vector<SquarefreeRat> cs;
                for (const Coeff& c : q.coeffs()) cs.push_back(c.base);
                CHECK(is_isotropic(q) == testing::qp_isotropic_hensel(cs, p));
            }
    }
}

TEST_CASE("witt decomposition basics") {
    auto w = witt_decomposition(Form::of_ints(Q, {1, -1, 2}));
    CHECK(w.witt_index == 1);
    CHECK(w.kernel.str() == "<2>");

    Form sixteen = repeat(16, Form::of_ints(Q, {1}));
    CHECK(witt_index(sixteen) == 0);

    // <1,1,-1,-7> splits one plane with kernel <1,-7>; its determinant class
    // 7 rules out hyperbolicity.
    auto w2 = witt_decomposition(Form::of_ints(Q, {1, 1, -1, -7}));
    CHECK(w2.witt_index == 1);
    CHECK(is_isometric(w2.kernel, Form::of_ints(Q, {1, -7})));

    auto w3 = witt_decomposition(Form::of_ints(Q, {1, 7, -1, -7}));
    CHECK(w3.witt_index == 2);
    CHECK(w3.kernel.dim() == 0);
}

TEST_CASE("witt decomposition round-trips over every backend") {
    testing::Rng rng(71);
    std::vector<FieldDesc> fields{Q,
                                  FieldDesc::reals(),
                                  FieldDesc::padics(2),
                                  FieldDesc::padics(5),
                                  FieldDesc::finite_field(7),
                                  FieldDesc::finite_field(3).laurent(),
                                  FieldDesc::rationals().laurent(),
                                  FieldDesc::padics(3).laurent().laurent()};
    for (const FieldDesc& F : fields) {
        for (int iter = 0; iter < 30; ++iter) {
            Form q = testing::random_form(rng, F, 1 + rng.below(6));
            auto w = witt_decomposition(q);
            CHECK(!is_isotropic(w.kernel));
            CHECK(2 * w.witt_index + w.kernel.dim() == q.dim());
            Form rebuilt = orthogonal_sum(w.kernel, hyperbolic(F, w.witt_index));
            CHECK(is_isometric(rebuilt, q));
        }
    }
}

TEST_CASE("representation") {
    FieldDesc f5 = FieldDesc::finite_field(5);
    Form q5 = Form::of_ints(f5, {1, 2});
    for (const Coeff& a : square_classes(f5).reps) {
        CHECK(represents(q5, a));
        // cross-check by enumeration: some vector evaluates to the class
        bool found = false;
        for (i64 x = 0; x < 5 && !found; ++x)
            for (i64 y = 0; y < 5 && !found; ++y) {
                i64 v = (x * x + 2 * y * y) % 5;
                if (v != 0 && legendre(v * a.base.mod(5), 5) == 1) found = true;
            }
        CHECK(found);
    }
    CHECK(represents(Form::of_ints(Q, {1, 1, 1, 1}), canonical_int(Q, 7)));
    CHECK(!represents(Form::of_ints(FieldDesc::reals(), {1, 1}), canonical_int(FieldDesc::reals(), -1)));
    CHECK(!represents(Form(Q), canonical_int(Q, 1)));
}

TEST_CASE("isometry") {
    Form pi = Form::of_ints(Q, {1, 1, 1, 1});
    CHECK(is_isometric(scale(canonical_int(Q, 7), pi), pi));
    CHECK(is_isometric(Form::of_ints(Q, {1, -1}), Form::of_ints(Q, {2, -2})));
    CHECK(!is_isometric(Form::of_ints(Q, {1, 1}), Form::of_ints(Q, {1, 2})));
    CHECK(is_isometric(Form(Q), Form(Q)));
    CHECK(!is_isometric(Form::of_ints(Q, {1}), Form::of_ints(Q, {1, 1})));
    CHECK(is_isometric(Form::of_ints(Q, {2, 3, 6}), Form::of_ints(Q, {1, 1, 1})));
}

TEST_CASE("subforms") {
    Form q = Form::of_ints(Q, {1, 1, 1, 7});
    CHECK(is_subform(Form::of_ints(Q, {1, 1, 1}), q));
    CHECK(is_subform(Form(Q), q));
    CHECK(!is_subform(Form::of_ints(Q, {-1}), Form::of_ints(Q, {1, 1})));
    Form twelve = tensor(Form::of_ints(Q, {1, 1, 1, 1}), Form::of_ints(Q, {1, 1, 1}));
    CHECK(is_subform(twelve, repeat(16, Form::of_ints(Q, {1}))));
}

TEST_CASE("isometry agrees with the invariant classification") {
    testing::Rng rng(4711);
    // Over Q: forms are classified by dimension, determinant class, Hasse
    // data at every place and the signature.
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t dim = 1 + rng.below(6);
        Form p = testing::random_form(rng, Q, dim);
        Form q = rng.below(3) ? testing::random_form(rng, Q, dim)
                              : scale(sample_square_classes(Q, 8)[rng.below(8)], p);
        bool via_witt = is_isometric(p, q);
        bool via_inv = det(p) == det(q) &&
                       signature_at(p, Ordering{}) == signature_at(q, Ordering{});
        if (via_inv) {
            auto places = relevant_places(orthogonal_sum(p, q));
            for (const Place& v : places)
                if (!v.real && hasse_at(p, v) != hasse_at(q, v)) via_inv = false;
        }
        CHECK(via_witt == via_inv);
    }
    // Over Qp: dimension, local square class of the determinant, Hasse symbol.
    for (i64 pr : {2, 3, 7}) {
        FieldDesc F = FieldDesc::padics(pr);
        Place v = Place::prime(pr);
        for (int iter = 0; iter < 150; ++iter) {
            std::size_t dim = 1 + rng.below(5);
            Form p = testing::random_form(rng, F, dim);
            Form q = testing::random_form(rng, F, dim);
            bool via_inv = is_local_square(det(p).base.mul(det(q).base), v) &&
                           hasse_at(p, v) == hasse_at(q, v);
            CHECK(is_isometric(p, q) == via_inv);
        }
    }
    // Over F_p: dimension and determinant class.
    for (i64 pr : {3, 13}) {
        FieldDesc F = FieldDesc::finite_field(pr);
        for (int iter = 0; iter < 100; ++iter) {
            std::size_t dim = 1 + rng.below(5);
            Form p = testing::random_form(rng, F, dim);
            Form q = testing::random_form(rng, F, dim);
            CHECK(is_isometric(p, q) == (det(p) == det(q)));
        }
    }
}

TEST_CASE("short forms stay isotropic inside isotropic ones") {
    // tau ⊂ phi with dim tau ≥ dim phi - witt_index(phi) + 1 forces isotropy
    testing::Rng rng(301);
    std::vector<FieldDesc> fields{Q, FieldDesc::padics(2), FieldDesc::finite_field(5),
                                  FieldDesc::finite_field(3).laurent(), FieldDesc::reals()};
    int tested = 0;
    for (const FieldDesc& F : fields) {
        for (int iter = 0; iter < 60; ++iter) {
            Form q = testing::random_form(rng, F, 2 + rng.below(5));
            u64 iw = witt_index(q);
            if (iw == 0) continue;
            std::size_t want = q.dim() - iw + 1 + rng.below(iw);
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < q.dim(); ++i) idx.push_back(i);
            for (std::size_t i = idx.size(); i > 1; --i)
                std::swap(idx[i - 1], idx[rng.below(i)]);
            idx.resize(want);
            CHECK(is_isotropic(subform_by_indices(q, idx)));
            ++tested;
        }
    }
    CHECK(tested > 50);
}

TEST_CASE("witt index equals the largest embedded hyperbolic subspace") {
    testing::Rng rng(606);
    std::vector<FieldDesc> fields{Q, FieldDesc::padics(2), FieldDesc::finite_field(5),
                                  FieldDesc::rationals().laurent()};
    for (const FieldDesc& F : fields) {
        for (int iter = 0; iter < 25; ++iter) {
            Form q = testing::random_form(rng, F, 1 + rng.below(6));
            u64 best = 0;
            for (u64 k = 1; 2 * k <= q.dim(); ++k)
                if (is_subform(hyperbolic(F, k), q)) best = k;
            CHECK(witt_index(q) == best);
        }
    }
}

TEST_CASE("witt index of pfister multiples is divisible by the pfister dimension") {
    testing::Rng rng(77);
    std::vector<FieldDesc> fields{FieldDesc::padics(3), FieldDesc::finite_field(5),
                                  FieldDesc::finite_field(7).laurent()};
    int hits = 0;
    for (const FieldDesc& F : fields) {
        auto classes = square_classes(F).reps;
        for (int iter = 0; iter < 60; ++iter) {
            Form pi = Form::make(F, {Coeff::one()});
            for (u64 k = rng.below(2) + 1, i = 0; i < k; ++i) {
                const Coeff& slot = classes[rng.below(classes.size())];
                pi = tensor(pi, Form::make(F, {Coeff::one(), slot}));
            }
            if (is_isotropic(pi)) continue;
            Form q = testing::random_form(rng, F, 1 + rng.below(3));
            Form prod = tensor(pi, q);
            if (!is_isotropic(prod)) continue;
            CHECK(witt_index(prod) % pi.dim() == 0);
            ++hits;
        }
    }
    CHECK(hits > 20);
}
