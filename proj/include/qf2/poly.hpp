#ifndef QF2_POLY_HPP
#define QF2_POLY_HPP

#include "qf2/gf.hpp"

#include <utility>
#include <vector>

namespace qf2 {

/// Polynomial over GF(2^k); c[i] is the coefficient of t^i. Always trimmed.
using Poly = std::vector<gf_t>;

namespace pf {

int deg(const Poly& p); // deg(0) == -1
void trim(Poly& p);
Poly zero();
Poly one();
Poly constant(gf_t c);
Poly monomial(gf_t c, int e);
bool is_zero(const Poly& p);
gf_t lead(const Poly& p);

Poly add(const Poly& a, const Poly& b);
Poly mul(const Gf2k& F, const Poly& a, const Poly& b);
Poly scal(const Gf2k& F, gf_t c, const Poly& a);
std::pair<Poly, Poly> divmod(const Gf2k& F, const Poly& a, const Poly& b);
Poly mod(const Gf2k& F, const Poly& a, const Poly& b);
Poly gcd(const Gf2k& F, Poly a, Poly b); // monic
Poly monic(const Gf2k& F, const Poly& a);
gf_t eval(const Gf2k& F, const Poly& a, gf_t x);
Poly derivative(const Poly& a);
Poly pow_mod(const Gf2k& F, Poly base, std::uint64_t e, const Poly& m);
Poly mul_mod(const Gf2k& F, const Poly& a, const Poly& b, const Poly& m);

/// Exact square root of a perfect-square polynomial (char 2: only even
/// exponents, coefficientwise Frobenius inverse). Throws if not a square.
Poly sqrt(const Gf2k& F, const Poly& a);
bool is_square(const Gf2k& F, const Poly& a);

/// Substitute t -> t^2 composed with coefficient sqrt: inverse used internally.
bool irreducible(const Gf2k& F, const Poly& p);

/// Full factorization into monic irreducibles with multiplicities,
/// sorted canonically (degree, then coefficient order). The constant
/// lead factor is returned separately.
struct Factorization {
    gf_t unit;
    std::vector<std::pair<Poly, int>> factors;
};
Factorization factor(const Gf2k& F, const Poly& a, std::uint64_t seed = 0x9e3779b97f4a7c15ull);

/// Squarefree part (product of odd-multiplicity primes) and cofactor E with
/// a = unit * sqfree * E^2.
struct SqfreeSplit {
    gf_t unit;
    Poly sqfree;
    Poly cofactor;
};
SqfreeSplit sqfree_split(const Gf2k& F, const Poly& a);

std::string to_string(const Gf2k& F, const Poly& p, const std::string& var = "t");

} // namespace pf

/// Rational function over GF(2^k) in one variable, gcd-reduced with monic
/// denominator; the canonical form is unique.
struct RatFunc {
    Poly num;
    Poly den; // monic, coprime to num; {1} for polynomials

    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

namespace rf {

RatFunc make(const Gf2k& F, Poly num, Poly den);
RatFunc zero();
RatFunc one();
RatFunc constant(gf_t c);
RatFunc from_poly(Poly p);
RatFunc var(); // t
bool is_zero(const RatFunc& a);
RatFunc add(const Gf2k& F, const RatFunc& a, const RatFunc& b);
RatFunc mul(const Gf2k& F, const RatFunc& a, const RatFunc& b);
RatFunc inv(const Gf2k& F, const RatFunc& a);
RatFunc div(const Gf2k& F, const RatFunc& a, const RatFunc& b);
RatFunc sq(const Gf2k& F, const RatFunc& a);
/// Substitute the variable by another rational function.
RatFunc subst(const Gf2k& F, const RatFunc& a, const RatFunc& x);
bool is_square(const Gf2k& F, const RatFunc& a);
RatFunc sqrt(const Gf2k& F, const RatFunc& a);
std::string to_string(const Gf2k& F, const RatFunc& a, const std::string& var = "t");

} // namespace rf

} // namespace qf2

#endif
