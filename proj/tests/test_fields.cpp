#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qf2/tower.hpp"

using namespace qf2;

TEST_CASE("gf2k basics") {
    Gf2k F2(1);
    CHECK(F2.add(1, 1) == 0);
    CHECK(F2.mul(1, 1) == 1);
    CHECK(F2.trace(1) == 1);

    Gf2k F4(2);
    CHECK(F4.modulus() == 0b111);
    gf_t w = F4.gen();
    CHECK(F4.mul(w, w) == (w ^ 1)); // w^2 = w + 1
    CHECK(F4.sqrt(w) == (w ^ 1));
    CHECK(F4.mul(F4.sqrt(w), F4.sqrt(w)) == w);
    CHECK(F4.trace(w) == 1);
    CHECK(F4.trace(1) == 0);
    CHECK(F4.inv(w) == (w ^ 1));

    Gf2k F8(3);
    for (gf_t a = 1; a < F8.order(); ++a) {
        CHECK(F8.mul(a, F8.inv(a)) == 1);
        CHECK(F8.mul(F8.sqrt(a), F8.sqrt(a)) == a);
    }
    int ones = 0;
    for (gf_t a = 0; a < F8.order(); ++a) ones += F8.trace(a);
    CHECK(ones == 4); // trace is balanced
}

TEST_CASE("polynomial arithmetic and factorization") {
    Gf2k F(1);
    Poly t = pf::monomial(1, 1);
    Poly f = pf::add(pf::monomial(1, 4), pf::monomial(1, 2)); // t^4 + t^2
    auto fac = pf::factor(F, f);
    CHECK(fac.unit == 1);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].first == t);
    CHECK(fac.factors[0].second == 2);
    CHECK(fac.factors[1].first == pf::add(t, pf::one()));
    CHECK(fac.factors[1].second == 2);

    Poly irr = pf::add(pf::add(pf::monomial(1, 2), t), pf::one()); // t^2+t+1
    CHECK(pf::irreducible(F, irr));
    auto fi = pf::factor(F, irr);
    REQUIRE(fi.factors.size() == 1);
    CHECK(fi.factors[0].second == 1);

    Gf2k F4(2);
    auto fs = pf::factor(F4, irr); // splits over GF(4)
    REQUIRE(fs.factors.size() == 2);
    CHECK(pf::deg(fs.factors[0].first) == 1);
    CHECK(pf::deg(fs.factors[1].first) == 1);
    Poly prod = pf::mul(F4, fs.factors[0].first, fs.factors[1].first);
    CHECK(prod == irr);

    Poly g = pf::mul(F, pf::mul(F, t, t), pf::add(t, pf::one())); // t^2(t+1)
    auto sp = pf::sqfree_split(F, g);
    CHECK(sp.sqfree == pf::add(t, pf::one()));
    CHECK(sp.cofactor == t);
}

TEST_CASE("rational functions") {
    Gf2k F(1);
    RatFunc t = rf::var();
    RatFunc one = rf::one();
    RatFunc a = rf::inv(F, rf::add(F, t, one)); // 1/(t+1)
    CHECK(rf::is_zero(rf::add(F, a, a)));
    CHECK(rf::mul(F, a, rf::add(F, t, one)) == one);
    CHECK(rf::is_square(F, rf::sq(F, a)));
    CHECK(rf::sqrt(F, rf::sq(F, a)) == a);
    CHECK_FALSE(rf::is_square(F, t));
    // subst t -> t^2 + 1 into t + 1 gives t^2
    RatFunc s = rf::subst(F, rf::add(F, t, one), rf::add(F, rf::sq(F, t), one));
    CHECK(s == rf::sq(F, t));
}

TEST_CASE("rational function field tower, level 0") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    CHECK(e_mul(*F, t, e_inv(*F, t)) == e_one(*F));
    CHECK(e_is_square(*F, e_sq(*F, t)));
    CHECK_FALSE(e_is_square(*F, t));
    CHECK(*e_sqrt(*F, e_sq(*F, t)) == t);
}

TEST_CASE("wp_reduce over GF(2)(t)") {
    auto F = Tower::rational(1);
    const Gf2k& gf = F->gf();
    Elem t = e_var(*F);

    auto check_identity = [&](const Elem& x) {
        auto [c, w] = wp_reduce(*F, x);
        Elem back = e_add(*F, c, e_add(*F, e_sq(*F, w), w));
        CHECK(back == x);
        return c;
    };

    CHECK(check_identity(e_zero(*F)) == e_zero(*F));
    CHECK(check_identity(e_one(*F)) == e_one(*F)); // trace(1) = 1 in GF(2)

    // t^2 + t is wp(t)
    Elem x1 = e_add(*F, e_sq(*F, t), t);
    CHECK(check_identity(x1) == e_zero(*F));

    // 1/t^2 reduces to 1/t
    Elem it = e_inv(*F, t);
    Elem x2 = e_sq(*F, it);
    CHECK(check_identity(x2) == it);

    // (t+1)/t^3 = 1/t^2 + 1/t^3 reduces to 1/t^3 + 1/t
    Elem x3 = e_div(*F, e_add(*F, t, e_one(*F)), e_mul(*F, e_sq(*F, t), t));
    Elem expect = e_add(*F, e_inv(*F, e_mul(*F, e_sq(*F, t), t)), it);
    CHECK(check_identity(x3) == expect);

    // x3 + x3^2 = wp(x3): must reduce to zero through nested pole orders
    Elem x4 = e_add(*F, x3, e_sq(*F, x3));
    CHECK(check_identity(x4) == e_zero(*F));

    // canonical forms are idempotent
    auto [c5, w5] = wp_reduce(*F, x3);
    auto [c6, w6] = wp_reduce(*F, c5);
    CHECK(c6 == c5);
    CHECK(e_is_zero(w6));
    (void)gf;
}

TEST_CASE("wp_reduce over GF(4)") {
    auto F = Tower::finite(2);
    const Gf2k& gf = F->gf();
    Elem w = e_const(*F, gf.gen()); // trace 1
    auto [c, wit] = wp_reduce(*F, w);
    CHECK(c == e_const(*F, gf.trace_one_elem()));
    Elem one = e_one(*F); // trace 0 in GF(4)
    auto [c1, wit1] = wp_reduce(*F, one);
    CHECK(e_is_zero(c1));
    CHECK(e_add(*F, e_sq(*F, wit1), wit1) == one);
}

TEST_CASE("inseparable quadratic extension") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    auto K = F->adjoin_sqrt(t);
    Elem rt = e_gen(*K, 0);
    CHECK(e_sq(*K, rt) == embed(*F, *K, t));
    CHECK(e_mul(*K, rt, e_inv(*K, rt)) == e_one(*K));

    // K = F(sqrt t) has K^2 = F: every element of F becomes a square
    Elem a = embed(*F, *K, e_add(*F, t, e_one(*F)));
    auto r = e_sqrt(*K, a);
    REQUIRE(r.has_value());
    CHECK(e_sq(*K, *r) == a);
    CHECK_FALSE(e_is_square(*K, e_add(*K, rt, e_one(*K)))); // sqrt(t)+1 not in K^2

    // adjoining a square is rejected
    CHECK_THROWS_AS((void)K->adjoin_sqrt(embed(*F, *K, t)), std::invalid_argument);

    // descend round trip
    auto down = descend(*K, *F, a);
    REQUIRE(down.has_value());
    CHECK(*down == e_add(*F, t, e_one(*F)));
    CHECK_FALSE(descend(*K, *F, rt).has_value());

    CHECK(e_str(*K, rt) == "sqrt#1");
}

TEST_CASE("depth-2 inseparable tower") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    auto K = F->adjoin_sqrt(t);
    auto K2 = K->adjoin_sqrt(e_gen(*K, 0)); // F(t^(1/4))
    Elem q = e_gen(*K2, 1);                 // t^(1/4)
    Elem tt = embed(*F, *K2, t);
    CHECK(e_sq(*K2, e_sq(*K2, q)) == tt);
    auto r = e_sqrt(*K2, tt);
    REQUIRE(r.has_value());
    CHECK(e_sq(*K2, *r) == tt);
    CHECK(*r == e_sq(*K2, q)); // squaring is injective, so the root is q^2
    Elem mixed = e_add(*K2, q, e_mul(*K2, tt, e_gen(*K2, 0)));
    CHECK(e_mul(*K2, mixed, e_inv(*K2, mixed)) == e_one(*K2));
    CHECK(K2->extends(*K));
    CHECK(K2->extends(*F));
    CHECK_FALSE(K->extends(*K2));
}

TEST_CASE("artin-schreier extension") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    Elem it = e_inv(*F, t);
    auto L = F->adjoin_artin_schreier(it); // x^2 + x = 1/t
    Elem al = e_gen(*L, 0);
    CHECK(e_add(*L, e_sq(*L, al), al) == embed(*F, *L, it));
    CHECK(e_mul(*L, al, e_inv(*L, al)) == e_one(*L));

    // 1/t enters the wp image upstairs
    auto w = wp_witness(*L, embed(*F, *L, it));
    REQUIRE(w.has_value());
    CHECK(e_add(*L, e_sq(*L, *w), *w) == embed(*F, *L, it));
    CHECK_FALSE(wp_witness(*F, it).has_value());

    // elements already in wp(F) keep their witnesses
    auto w2 = wp_witness(*F, e_add(*F, e_sq(*F, t), t));
    REQUIRE(w2.has_value());

    // adjoining a wp value is rejected
    CHECK_THROWS_AS((void)F->adjoin_artin_schreier(e_add(*F, e_sq(*F, t), t)),
                    std::invalid_argument);
    CHECK(e_str(*L, al) == "as#1");
}

TEST_CASE("mixed tower: sqrt then artin-schreier") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    auto K = F->adjoin_sqrt(t);
    Elem it = embed(*F, *K, e_inv(*F, t));
    // 1/t = wp(w) has no solution over K either: reduce x + wp-part recursively
    auto wk = wp_witness(*K, it);
    CHECK_FALSE(wk.has_value());
    auto M = K->adjoin_artin_schreier(it);
    Elem be = e_gen(*M, 1);
    CHECK(e_add(*M, e_sq(*M, be), be) == embed(*K, *M, it));
    Elem z = e_add(*M, be, e_mul(*M, embed(*F, *M, t), e_gen(*M, 0)));
    CHECK(e_mul(*M, z, e_inv(*M, z)) == e_one(*M));
    // squares: sqrt(t) has a square root iff it lies in M^2 = K(be)^2;
    // K^2 = F so M^2 = F(be^2, ...) contains F but not sqrt(t)
    CHECK(e_is_square(*M, embed(*F, *M, t)));
}

TEST_CASE("finite field tower with artin-schreier step") {
    auto F = Tower::finite(2);
    const Gf2k& gf = F->gf();
    Elem w = e_const(*F, gf.gen()); // trace 1, not in wp image
    auto L = F->adjoin_artin_schreier(w);
    CHECK(L->is_finite_field());
    Elem al = e_gen(*L, 0);
    CHECK(e_add(*L, e_sq(*L, al), al) == embed(*F, *L, w));
    // upstairs every element is a square (finite field)
    auto r = e_sqrt(*L, al);
    REQUIRE(r.has_value());
    CHECK(e_sq(*L, *r) == al);
    Elem z = e_add(*L, al, e_one(*L));
    CHECK(e_mul(*L, z, e_inv(*L, z)) == e_one(*L));
}
