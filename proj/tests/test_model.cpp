#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qf2/model.hpp"

using namespace qf2;

namespace {

void roundtrip(const RationalModel& M, const Elem& x) {
    RatFunc f = M.to_model(x);
    CHECK(M.from_model(f) == x);
}

void check_hom(const RationalModel& M, const Elem& x, const Elem& y) {
    const Gf2k& F = M.tower->gf();
    CHECK(M.to_model(e_add(*M.tower, x, y)) == rf::add(F, M.to_model(x), M.to_model(y)));
    CHECK(M.to_model(e_mul(*M.tower, x, y)) == rf::mul(F, M.to_model(x), M.to_model(y)));
}

} // namespace

TEST_CASE("model of the ground field is the identity") {
    auto F = Tower::rational(1);
    auto M = RationalModel::build(F);
    REQUIRE(M.has_value());
    Elem t = e_var(*F);
    CHECK(M->to_model(t) == rf::var());
    roundtrip(*M, e_add(*F, e_inv(*F, t), e_sq(*F, t)));
}

TEST_CASE("model of F(sqrt t)") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    auto K = F->adjoin_sqrt(t);
    auto M = RationalModel::build(K);
    REQUIRE(M.has_value());
    // t maps to s^2, sqrt(t) maps to s
    CHECK(M->t_image == rf::sq(F->gf(), rf::var()));
    CHECK(M->gen_image[0] == rf::var());
    CHECK(M->var_preimage == e_gen(*K, 0));
    Elem z = e_add(*K, e_gen(*K, 0), embed(*F, *K, e_inv(*F, t)));
    roundtrip(*M, z);
    check_hom(*M, z, e_add(*K, z, e_one(*K)));
}

TEST_CASE("model of F(sqrt(t^3 + t^2)) uses the squarefree part") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    Elem b = e_add(*F, e_mul(*F, e_sq(*F, t), t), e_sq(*F, t)); // t^3+t^2 = t^2(t+1)
    auto K = F->adjoin_sqrt(b);
    auto M = RationalModel::build(K);
    REQUIRE(M.has_value());
    // squarefree part t+1 has degree 1: model exists
    roundtrip(*M, e_gen(*K, 0));
    Elem z = e_add(*K, e_mul(*K, e_gen(*K, 0), embed(*F, *K, t)), e_one(*K));
    roundtrip(*M, z);
    check_hom(*M, z, e_gen(*K, 0));
    // generator image squares to the image of b
    const Gf2k& gf = F->gf();
    CHECK(rf::sq(gf, M->gen_image[0]) == M->to_model(embed(*F, *K, b)));
}

TEST_CASE("model unavailable for positive genus") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    // b = t^3 + t + 1 is irreducible of degree 3: hyperelliptic, no rational model
    Elem b = e_add(*F, e_mul(*F, e_sq(*F, t), t), e_add(*F, t, e_one(*F)));
    auto K = F->adjoin_sqrt(b);
    CHECK_FALSE(RationalModel::build(K).has_value());
}

TEST_CASE("model of an artin-schreier extension") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    auto L = F->adjoin_artin_schreier(t); // wp-canonical of t is t itself
    auto M = RationalModel::build(L);
    REQUIRE(M.has_value());
    const Gf2k& gf = F->gf();
    // wp(gen image) must equal the image of t
    RatFunc gi = M->gen_image[0];
    CHECK(rf::add(gf, rf::sq(gf, gi), gi) == M->t_image);
    roundtrip(*M, e_gen(*L, 0));
    Elem z = e_add(*L, e_mul(*L, e_gen(*L, 0), embed(*F, *L, t)), embed(*F, *L, e_inv(*F, t)));
    roundtrip(*M, z);
    check_hom(*M, z, e_gen(*L, 0));
}

TEST_CASE("model of an artin-schreier extension needing wp reduction") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    // a = t + t^4 + t^2: canonical t, witness t^2
    Elem a = e_add(*F, t, e_add(*F, e_sq(*F, e_sq(*F, t)), e_sq(*F, t)));
    auto L = F->adjoin_artin_schreier(a);
    auto M = RationalModel::build(L);
    REQUIRE(M.has_value());
    const Gf2k& gf = F->gf();
    RatFunc gi = M->gen_image[0];
    CHECK(rf::add(gf, rf::sq(gf, gi), gi) == M->to_model(embed(*F, *L, a)));
    roundtrip(*M, e_gen(*L, 0));
}

TEST_CASE("model unavailable for 1/t artin-schreier (pole canonical)") {
    auto F = Tower::rational(1);
    Elem it = e_inv(*F, e_var(*F));
    auto L = F->adjoin_artin_schreier(it);
    CHECK_FALSE(RationalModel::build(L).has_value());
}

TEST_CASE("model of a depth-2 mixed tower") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    auto K = F->adjoin_sqrt(t);
    Elem rt = e_gen(*K, 0);
    auto M1 = RationalModel::build(K);
    REQUIRE(M1.has_value());
    // adjoin as-root of sqrt(t): image is s, canonical s: rational again
    auto KM = K->adjoin_artin_schreier(rt);
    auto M = RationalModel::build(KM);
    REQUIRE(M.has_value());
    Elem z = e_add(*KM, e_gen(*KM, 1), e_mul(*KM, embed(*K, *KM, rt), embed(*F, *KM, t)));
    roundtrip(*M, z);
    check_hom(*M, z, e_gen(*KM, 1));
    roundtrip(*M, e_gen(*KM, 0));

    // depth-2 purely inseparable: F(t^(1/4))
    auto K2 = K->adjoin_sqrt(rt);
    auto M2 = RationalModel::build(K2);
    REQUIRE(M2.has_value());
    CHECK(M2->var_preimage == e_gen(*K2, 1));
    roundtrip(*M2, e_add(*K2, e_gen(*K2, 1), embed(*F, *K2, e_inv(*F, t))));
}

TEST_CASE("no model without a variable") {
    CHECK_FALSE(RationalModel::build(Tower::finite(2)).has_value());
}
