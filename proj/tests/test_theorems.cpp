#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qf2/theorems.hpp"

using namespace qf2;

TEST_CASE("length bounds") {
    CHECK(mixed_multiquadratic_bound(1, 0) == 1);
    CHECK(mixed_multiquadratic_bound(1, 1) == 2);
    CHECK(mixed_multiquadratic_bound(1, 2) == 3);
    CHECK(mixed_multiquadratic_bound(2, 0) == 2);
    CHECK(mixed_multiquadratic_bound(2, 1) == 4);
    CHECK(mixed_multiquadratic_bound(2, 2) == 7);
    CHECK(mixed_multiquadratic_bound(3, 1) == 8);
    CHECK(mixed_multiquadratic_bound(3, 2) == 15);
    CHECK_THROWS_AS((void)mixed_multiquadratic_bound(4, 0), std::invalid_argument);
}

TEST_CASE("norm rewrite: frozen general case") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    Elem one = e_one(*F);

    // x = y = 1, a = t, b = t: z = 1 + t and c = t^2 / (1 + t)
    NormRewrite nr = pfister_rewrite_norm(F, one, one, t, t);
    Elem z = e_add(*F, one, t);
    CHECK(nr.source.blocks == pfister(F, {z}, t).blocks);
    CHECK(nr.c == e_div(*F, e_sq(*F, t), z));
    CHECK(nr.target.blocks == pfister(F, {t}, nr.c).blocks);
    CHECK(verify_witness(nr.witness));
    CHECK(nr.witness.source.blocks == nr.source.blocks);
    CHECK(nr.witness.target.blocks == nr.target.blocks);
    CHECK(equivalent(nr.source, nr.target) == TriBool::Yes);

    // the symbol shadow [a, z) = [c, b)
    CHECK(class_equal(make_class(F, {make_symbol(F, t, z)}),
                      make_class(F, {make_symbol(F, nr.c, t)})) == TriBool::Yes);
}

TEST_CASE("norm rewrite: degenerate coordinates") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    Elem one = e_one(*F);
    Elem zero = e_zero(*F);

    // x = 0: c = a and a single rescaling suffices
    NormRewrite n0 = pfister_rewrite_norm(F, zero, one, t, t);
    CHECK(n0.c == t);
    CHECK(n0.target.blocks == pfister(F, {t}, t).blocks);
    CHECK(verify_witness(n0.witness));

    // y = 0: z is a square, c = 0 and both sides are hyperbolic
    NormRewrite n1 = pfister_rewrite_norm(F, t, zero, e_add(*F, one, t), t);
    CHECK(e_is_zero(n1.c));
    CHECK(n1.target.blocks == pfister(F, {t}, zero).blocks);
    CHECK(verify_witness(n1.witness));
    CHECK(is_hyperbolic(n1.source).kind == HypResult::Kind::Yes);
    CHECK(is_hyperbolic(n1.target).kind == HypResult::Kind::Yes);

    CHECK_THROWS_AS((void)pfister_rewrite_norm(F, one, one, t, zero), std::invalid_argument);
    CHECK_THROWS_AS((void)pfister_rewrite_norm(F, zero, zero, t, t), std::invalid_argument);
}

TEST_CASE("e2 commutes with transfer and Frobenius on a frozen form") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    auto K = F->adjoin_sqrt(t);
    Elem r = e_gen(*K, 0);

    QuadraticForm phi = pfister(K, {e_add(*K, e_one(*K), r)}, embed(*F, *K, t));
    TrialReport rep = verify_e2_frob_square(K, phi);
    CHECK(rep.verdict == Verdict::Verified);
    CHECK(rep.statement == "e2-frobenius-square");
    CHECK(rep.certificates.size() == 2);
}

TEST_CASE("descent of a planted class along F(sqrt t)") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    Elem one = e_one(*F);
    auto K = F->adjoin_sqrt(t);

    // beta^2 = t^2 + t + 1 is a norm of the Artin-Schreier extension for 1,
    // so [1, beta) has trivial Frobenius image; beta = (1 + t) + sqrt t
    Elem z = e_add(*F, e_add(*F, e_sq(*F, t), t), one);
    auto beta = e_sqrt(*K, embed(*F, *K, z));
    REQUIRE(beta);
    CHECK((*beta).ext[0] == e_add(*F, one, t));
    CHECK((*beta).ext[1] == one);

    BrauerClass A = make_class(K, {make_symbol(K, e_one(*K), *beta)});
    REQUIRE(A.symbols.size() == 1);
    SymbolLengthCertificate cert = descend_brauer_class(A, F);
    CHECK(cert.verified);
    CHECK(cert.symbols.symbols.size() <= 1);
    CHECK(class_equal(A, restrict_class(cert.symbols, K)) == TriBool::Yes);

    // wrong extension kind
    auto Ka = F->adjoin_artin_schreier(t);
    BrauerClass Aa = make_class(Ka, {make_symbol(Ka, e_one(*Ka), embed(*F, *Ka, t))});
    CHECK_THROWS_AS((void)descend_brauer_class(Aa, F), tower_mismatch);

    // nontrivial Frobenius image: [1, sqrt t) maps to the nonsplit [1, t)
    BrauerClass bad = make_class(K, {make_symbol(K, e_one(*K), e_gen(*K, 0))});
    CHECK_THROWS_AS((void)descend_brauer_class(bad, F), std::invalid_argument);
}

TEST_CASE("lift with residual symbol on a disguised class") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    Elem one = e_one(*F);
    auto K = F->adjoin_sqrt(t);

    // [1 + t^2, t (1+t)^2) canonicalizes to [1 + t, t)
    Elem a_disg = e_add(*F, one, e_sq(*F, t));
    Elem b_disg = e_mul(*F, t, e_sq(*F, e_add(*F, one, t)));
    BrauerClass A = make_class(F, {make_symbol(F, a_disg, b_disg)});
    SymbolLengthCertificate cert = lift_symbols_insep_quad(A, K);
    CHECK(cert.verified);
    REQUIRE(cert.symbols.symbols.size() == 1);
    CHECK(cert.symbols.symbols.back().a == e_add(*F, one, t));
    CHECK(cert.symbols.symbols.back().b == t);

    // the trivial class needs no residual symbol
    SymbolLengthCertificate triv = lift_symbols_insep_quad(trivial_class(F), K);
    CHECK(triv.verified);
    CHECK(triv.symbols.symbols.empty());
}

TEST_CASE("multiquadratic symbol length on frozen instances") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    Elem one = e_one(*F);

    // m = 1, n = 0: one Artin-Schreier slot
    MultiquadraticData d1;
    d1.as_slots = {t};
    BrauerClass A1 = make_class(F, {make_symbol(F, t, e_add(*F, one, t))});
    SymbolLengthCertificate c1 = symbol_length_mixed_multiquadratic(A1, d1);
    CHECK(c1.verified);
    CHECK(static_cast<long>(c1.symbols.symbols.size()) <= mixed_multiquadratic_bound(1, 0));

    // m = 1, n = 1: a square slot is peeled off first
    MultiquadraticData d2;
    d2.as_slots = {t};
    d2.sqrt_slots = {e_add(*F, one, t)};
    Elem z = e_add(*F, e_add(*F, e_sq(*F, t), t), one); // t^2 + t + 1
    BrauerClass A2 = make_class(
        F, {make_symbol(F, t, z), make_symbol(F, e_inv(*F, t), e_add(*F, one, t))});
    SymbolLengthCertificate c2 = symbol_length_mixed_multiquadratic(A2, d2);
    CHECK(c2.verified);
    CHECK(static_cast<long>(c2.symbols.symbols.size()) <= mixed_multiquadratic_bound(1, 1));
    CHECK(class_equal(A2, c2.symbols) == TriBool::Yes);

    CHECK_THROWS_AS((void)symbol_length_mixed_multiquadratic(
                        A1, MultiquadraticData{{t, t, t, t}, {}}),
                    std::invalid_argument);
}

TEST_CASE("degree-8 pipeline on a frozen planted instance") {
    auto F = Tower::rational(1);
    Elem t = e_var(*F);
    Elem one = e_one(*F);
    auto K = F->adjoin_sqrt(t);
    Elem r = e_gen(*K, 0);

    Degree8Instance inst;
    inst.F = F;
    inst.K = K;
    inst.kind = Degree8Instance::Kind::MixedBiquadratic;
    inst.a = t;
    inst.c = e_inv(*F, t);
    // x = 1 + sqrt t + t * t (norm of 1 + sqrt t * theta for a = t)
    inst.x = e_add(*K, e_add(*K, e_one(*K), r), embed(*F, *K, e_sq(*F, t)));
    // y = sqrt t (norm of 1 + sqrt t * theta for c = 1/t)
    inst.y = r;
    QuadraticForm psi0 = pfister(F, {e_add(*F, one, t)}, t);
    inst.A = make_class(F, {make_symbol(F, inst.a, t), make_symbol(F, inst.c, t),
                            make_symbol(F, t, e_add(*F, one, t))});
    inst.excellence_oracle = [psi0]() -> std::optional<QuadraticForm> { return psi0; };

    TrialReport rep = decompose_degree8_pipeline(inst);
    CHECK(rep.verdict == Verdict::Verified);
    CHECK(rep.certificates.size() >= 3);

    // the trivial class decomposes with the empty certificate
    Degree8Instance triv = inst;
    triv.A = trivial_class(F);
    CHECK(decompose_degree8_pipeline(triv).verdict == Verdict::Verified);

    // a missing oracle is reported, not guessed around
    Degree8Instance no_oracle = inst;
    no_oracle.excellence_oracle = nullptr;
    TrialReport r2 = decompose_degree8_pipeline(no_oracle);
    CHECK(r2.verdict == Verdict::Inconclusive);
}

TEST_CASE("suites: all verified on small runs") {
    for (const char* id : {"norm-rewrite", "e2-frobenius-square", "insep-descent-planted",
                           "split-lift-planted", "multiquadratic-length-planted",
                           "degree8-decomposition-planted"}) {
        auto reps = run_suite(id, 8, 20260824);
        REQUIRE(reps.size() == 8);
        for (const auto& rep : reps) {
            CAPTURE(id);
            CAPTURE(rep.instance);
            CAPTURE(rep.reason);
            CHECK(rep.verdict == Verdict::Verified);
            CHECK(rep.millis >= 0.0);
        }
    }
    CHECK_THROWS_AS((void)run_suite("no-such-statement", 1, 0), std::invalid_argument);
}

TEST_CASE("suites: deterministic for a fixed seed") {
    auto a = run_suite("insep-descent-planted", 6, 12345);
    auto b = run_suite("insep-descent-planted", 6, 12345);
    auto c = run_suite("insep-descent-planted", 6, 54321);
    REQUIRE(a.size() == b.size());
    bool same = true, diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        same = same && a[i].instance == b[i].instance &&
               verdict_str(a[i].verdict) == verdict_str(b[i].verdict) &&
               a[i].certificates == b[i].certificates;
        diff = diff || a[i].instance != c[i].instance;
    }
    CHECK(same);
    CHECK(diff); // different seed, different instances
}

TEST_CASE("verdict strings") {
    CHECK(verdict_str(Verdict::Verified) == "verified");
    CHECK(verdict_str(Verdict::Refuted) == "refuted");
    CHECK(verdict_str(Verdict::Inconclusive) == "inconclusive");
}
