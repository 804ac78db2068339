#ifndef QF2_THEOREMS_HPP
#define QF2_THEOREMS_HPP

#include "qf2/brauer.hpp"
#include "qf2/transfer.hpp"

#include <functional>

namespace qf2 {

enum class Verdict { Verified, Refuted, Inconclusive };

struct TrialReport {
    std::string statement;
    std::string instance;
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;                    // refutation data or the undecided sub-query
    std::vector<std::string> certificates; // witnesses, symbol lists, invariant vectors
    double millis = 0.0;
};

std::string verdict_str(Verdict v);

/// Upper-bound certificate for the symbol length of a Brauer class.
struct SymbolLengthCertificate {
    BrauerClass symbols;  // the certifying presentation
    bool verified = false; // class_equal re-check passed
    bool inconclusive = false;
    std::string note;
};

/// The norm rewriting c with <<x^2+by^2, a]] isometric to <<b, c]], together
/// with the replayed relation chain composed into one matrix.
struct NormRewrite {
    Elem c;
    QuadraticForm source, target;
    IsometryWitness witness;
};

/// pre: b != 0 and x^2 + b y^2 != 0. c = a when x = 0, else
/// c = a (1 + x^2 (x^2+by^2)^{-1}).
NormRewrite pfister_rewrite_norm(TowerPtr T, const Elem& x, const Elem& y, const Elem& a,
                                 const Elem& b);

/// Commutativity of e2 with the quadratic transfer and the Frobenius map:
/// class_equal(e2(s_* phi), Frob(e2(phi))) for trivial-Arf phi over K = F(sqrt b).
TrialReport verify_e2_frob_square(TowerPtr K, const QuadraticForm& phi);

/// Symbol-length descent along an inseparable quadratic extension: for A over
/// K = F(sqrt b) with m symbols and trivial Frobenius image, produces at most
/// 2m-1 symbols over F whose restriction is A.
SymbolLengthCertificate descend_brauer_class(const BrauerClass& A, TowerPtr F);

/// For A over F with K = F(sqrt b): A is equivalent to (descended symbols) +
/// one residual symbol [a*, b); at most 2m symbols, the last with slot b.
SymbolLengthCertificate lift_symbols_insep_quad(const BrauerClass& A, TowerPtr K);

/// Splitting data for a mixed multiquadratic extension
/// F(wp^{-1} alpha_1, ..., wp^{-1} alpha_m, sqrt b_1, ..., sqrt b_n).
struct MultiquadraticData {
    std::vector<Elem> as_slots;   // alpha_1..alpha_m over F, m <= 3
    std::vector<Elem> sqrt_slots; // b_1..b_n over F
};

/// Length bound for n >= 0 and m in {1,2,3}: n+1, 2^n+n+1, 3*2^n+n+1.
long mixed_multiquadratic_bound(int m, int n);

SymbolLengthCertificate symbol_length_mixed_multiquadratic(const BrauerClass& A,
                                                           const MultiquadraticData& data);

struct Degree8Instance {
    TowerPtr F;
    TowerPtr K; // F(sqrt b)
    Elem a, c;  // over F
    Elem x, y;  // over K, units
    enum class Kind { MixedBiquadratic, PurelyInseparable } kind;
    BrauerClass A; // the degree-8 class over F under test
    /// Excellence oracle: a form psi over F of dimension <= 4 whose extension
    /// to M matches the anisotropic part of the descended form; planted
    /// instances supply it table-driven.
    std::function<std::optional<QuadraticForm>()> excellence_oracle;
};

TrialReport decompose_degree8_pipeline(const Degree8Instance& inst);

/// Statement suites; deterministic for a fixed seed. Known ids:
/// "norm-rewrite", "e2-frobenius-square", "insep-descent-planted",
/// "split-lift-planted", "multiquadratic-length-planted",
/// "degree8-decomposition-planted".
std::vector<TrialReport> run_suite(const std::string& statement, int trials, std::uint64_t seed);

} // namespace qf2

#endif
