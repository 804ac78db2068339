#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qf2/local.hpp"

#include <random>

using namespace qf2;

namespace {
RatFunc rft(const Gf2k& F, Poly n, Poly d) { return rf::make(F, std::move(n), std::move(d)); }
} // namespace

TEST_CASE("enumerate_places") {
    Gf2k F(1);
    Poly t = pf::monomial(1, 1);
    Poly t1 = pf::add(t, pf::one());

    auto ps = enumerate_places(F, {rf::var()});
    REQUIRE(ps.size() == 2);
    CHECK(ps[0] == place_finite(t));
    CHECK(ps[1].infinite);

    auto ps2 = enumerate_places(F, {rf::from_poly(t1), rf::inv(F, rf::var())});
    REQUIRE(ps2.size() == 3);
    CHECK(ps2[0] == place_finite(t));
    CHECK(ps2[1] == place_finite(t1));
    CHECK(ps2[2].infinite);

    Poly irr = pf::add(pf::add(pf::monomial(1, 2), t), pf::one());
    auto ps3 = enumerate_places(F, {rf::from_poly(irr)});
    REQUIRE(ps3.size() == 2);
    CHECK(ps3[0] == place_finite(irr));
    CHECK(ps3[1].infinite);
}

TEST_CASE("complete_at basics") {
    Gf2k F(1);
    Poly t = pf::monomial(1, 1);
    Poly t1 = pf::add(t, pf::one());
    Place at_t = place_finite(t);

    // 1/(1+t) = 1 + t + t^2 + ...
    auto s1 = complete_at(F, rft(F, pf::one(), t1), at_t, 3);
    CHECK(s1.lead == 0);
    REQUIRE(s1.coef.size() == 3);
    CHECK(s1.coef[0] == pf::one());
    CHECK(s1.coef[1] == pf::one());
    CHECK(s1.coef[2] == pf::one());

    // t at infinity is u^{-1}
    auto s2 = complete_at(F, rf::var(), place_infinity(), 3);
    CHECK(s2.lead == -1);
    CHECK(s2.coef[0] == pf::one());
    CHECK(pf::is_zero(s2.coef[1]));
    CHECK(pf::is_zero(s2.coef[2]));

    // 1/(t(1+t)) = t^{-1} + 1 + t + ...
    auto s3 = complete_at(F, rft(F, pf::one(), pf::mul(F, t, t1)), at_t, 3);
    CHECK(s3.lead == -1);
    REQUIRE(s3.coef.size() == 3);
    CHECK(s3.coef[0] == pf::one());
    CHECK(s3.coef[1] == pf::one());
    CHECK(s3.coef[2] == pf::one());

    // truncations agree
    auto s4 = complete_at(F, rft(F, pf::one(), pf::mul(F, t, t1)), at_t, 7);
    for (int i = 0; i < 3; ++i) CHECK(s4.coef[i] == s3.coef[i]);
}

TEST_CASE("complete_at degree-2 place") {
    Gf2k F(1);
    Poly t = pf::monomial(1, 1);
    Poly irr = pf::add(pf::add(pf::monomial(1, 2), t), pf::one()); // t^2+t+1
    Place v = place_finite(irr);

    // 1/p is exactly u^{-1}
    auto s = complete_at(F, rft(F, pf::one(), irr), v, 4);
    CHECK(s.lead == -1);
    CHECK(s.coef[0] == pf::one());
    for (int i = 1; i < 4; ++i) CHECK(pf::is_zero(s.coef[i]));

    // t = theta + u + u^2 + u^4 + ... (delta^2 + delta = u)
    auto st = complete_at(F, rf::var(), v, 5);
    CHECK(st.lead == 0);
    CHECK(st.coef[0] == t); // class of t in GF(4) = GF(2)[t]/(t^2+t+1)
    CHECK(st.coef[1] == pf::one());
    CHECK(st.coef[2] == pf::one());
    CHECK(pf::is_zero(st.coef[3]));
    CHECK(st.coef[4] == pf::one());
}

TEST_CASE("residues") {
    Gf2k F(1);
    Poly t = pf::monomial(1, 1);
    Poly t1 = pf::add(t, pf::one());
    Place at_t = place_finite(t);

    // (1/t) dt has residue 1 at t
    CHECK(residue(F, rft(F, pf::one(), t), rf::var(), at_t) == pf::one());
    // (1/t^2) dt has residue 0 at t
    CHECK(pf::is_zero(residue(F, rft(F, pf::one(), pf::mul(F, t, t)), rf::var(), at_t)));
    // (1/(t(1+t))) dt has residue 1 at t
    CHECK(residue(F, rft(F, pf::one(), pf::mul(F, t, t1)), rf::var(), at_t) == pf::one());
    // regular f, unit g: residue 0
    CHECK(pf::is_zero(residue(F, rf::var(), rf::from_poly(t1), at_t)));
}

TEST_CASE("residue theorem for f dg/g") {
    // sum over all places of trace(res_v((f/g) dg)) = 0
    for (int klevel : {1, 2}) {
        Gf2k F(klevel);
        std::mt19937_64 rng(0xC0FFEEu + klevel);
        auto rand_poly = [&](int maxdeg) {
            Poly p;
            int d = static_cast<int>(rng() % (maxdeg + 1));
            p.resize(d + 1);
            for (auto& c : p) c = static_cast<gf_t>(rng() % F.order());
            pf::trim(p);
            return p;
        };
        for (int trial = 0; trial < 12; ++trial) {
            Poly fn = rand_poly(6), fd = rand_poly(6), g = rand_poly(6);
            if (pf::is_zero(fn) || pf::is_zero(fd) || pf::deg(g) < 1) continue;
            RatFunc f = rf::make(F, fn, fd);
            RatFunc gr = rf::from_poly(g);
            RatFunc fg = rf::div(F, f, gr);
            int total = 0;
            for (const Place& v : enumerate_places(F, {f, gr})) {
                total ^= residue_field_trace(F, v, residue(F, fg, gr, v));
            }
            CHECK(total == 0);
        }
    }
}
