#ifndef QF2_LOCAL_HPP
#define QF2_LOCAL_HPP

#include "qf2/poly.hpp"

#include <vector>

namespace qf2 {

/// Place of GF(2^k)(t): a monic irreducible polynomial, or the infinite place.
struct Place {
    bool infinite = false;
    Poly p; // monic irreducible; empty for the infinite place

    int deg() const { return infinite ? 1 : pf::deg(p); }
    bool operator==(const Place& o) const = default;
};

Place place_infinity();
Place place_finite(Poly p);
bool place_less(const Place& a, const Place& b);
std::string place_str(const Gf2k& F, const Place& v);

/// All places where some element has a zero or pole, plus infinity. Sorted.
std::vector<Place> enumerate_places(const Gf2k& F, const std::vector<RatFunc>& elems);

/// Truncated Laurent expansion at a place. Coefficients live in the residue
/// field GF(2^k)[t]/p (constants at the infinite place), stored reduced mod p.
/// Exponents lead, lead+1, ..., lead+coef.size()-1 are exact; for the zero
/// function coef is empty.
struct LaurentSeries {
    int lead = 0;
    std::vector<Poly> coef;
    int precision = 0; // requested coefficient count

    bool is_zero() const { return coef.empty(); }
    std::string str(const Gf2k& F) const;
};

LaurentSeries complete_at(const Gf2k& F, const RatFunc& x, const Place& v, int precision);

/// Residue of the differential f*dg at v, as a residue-field element.
/// Precision is grown automatically until the u^{-1} coefficient is certain.
Poly residue(const Gf2k& F, const RatFunc& f, const RatFunc& g, const Place& v);

/// Absolute trace of a residue-field element down to GF(2).
int residue_field_trace(const Gf2k& F, const Place& v, const Poly& a);

} // namespace qf2

#endif
