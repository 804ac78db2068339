#ifndef QF2_BRAUER_HPP
#define QF2_BRAUER_HPP

#include "qf2/forms.hpp"
#include "qf2/local.hpp"

namespace qf2 {

/// Quaternion symbol [a,b): generators i,j with i^2 + i = a, j^2 = b, ji = (i+1)j.
struct QuaternionSymbol {
    TowerPtr T;
    Elem a;
    Elem b; // nonzero
};

/// Canonicalizes: a wp-reduced where the tower supports it, b reduced modulo
/// squares (monic squarefree representative over the rational ground field).
QuaternionSymbol make_symbol(TowerPtr T, Elem a, Elem b);

/// Element of the 2-torsion Brauer group as a formal sum of symbols.
struct BrauerClass {
    TowerPtr T;
    std::vector<QuaternionSymbol> symbols;

    bool trivial_presentation() const { return symbols.empty(); }
};

BrauerClass make_class(TowerPtr T, std::vector<QuaternionSymbol> symbols);
BrauerClass trivial_class(TowerPtr T);
BrauerClass class_add(const BrauerClass& a, const BrauerClass& b);

/// Biadditivity, squaring, 2-torsion and purging relations to a fixpoint.
BrauerClass symbol_simplify(const BrauerClass& c);

enum class SplitResult { Split, Nonsplit, Unknown };
SplitResult split_test(const QuaternionSymbol& q);

/// Schmid invariant Tr(res_v(a db / b)) in GF(2); tower must be GF(2^k)(t).
int local_invariant(const QuaternionSymbol& q, const Place& v);

/// Support places of a class over GF(2^k)(t) (zeros/poles of every a and b,
/// plus infinity) and the invariant at each.
std::vector<std::pair<Place, int>> invariant_vector(const BrauerClass& c);

TriBool class_equal(const BrauerClass& a, const BrauerClass& b);
TriBool class_trivial(const BrauerClass& c);

/// Frob_{K/F}: [x,y)_K -> [x^2,y^2)_F along an inseparable step K = F(sqrt b).
BrauerClass frobenius_map(const BrauerClass& c, TowerPtr F);

BrauerClass restrict_class(const BrauerClass& c, TowerPtr K);

/// Clifford invariant of an even-dimensional form with trivial Arf;
/// e2(lambda<<u,v]]) = [v,u).
BrauerClass e2(const QuadraticForm& f);

struct E2Report {
    TriBool forms_equivalent;
    TriBool classes_equal;
    BrauerClass left, right;
};
E2Report e2_well_defined_check(const QuadraticForm& f, const QuadraticForm& g);

/// Bounded norm-equation oracle: find z = x + y*theta with x^2 + xy + a y^2 = b
/// (so [a,b) splits), searching polynomial candidates up to `budget` degree.
/// Ground towers only; nullopt means not-found (inconclusive).
std::optional<std::pair<Elem, Elem>> norm_equation_search(TowerPtr T, const Elem& a, const Elem& b,
                                                          int budget);

std::string symbol_str(const QuaternionSymbol& q);
std::string class_str(const BrauerClass& c);

} // namespace qf2

#endif
