#ifndef QF2_FORMS_HPP
#define QF2_FORMS_HPP

#include "qf2/tower.hpp"

#include <functional>
#include <string>

namespace qf2 {

enum class TriBool { Yes, No, Unknown };

/// Nonsingular quadratic form as an orthogonal sum of binary blocks
/// [a,b] = aX^2 + XY + bY^2.
struct QuadraticForm {
    TowerPtr T;
    std::vector<std::pair<Elem, Elem>> blocks;

    int dim() const { return 2 * static_cast<int>(blocks.size()); }
};

QuadraticForm make_form(TowerPtr T, std::vector<std::pair<Elem, Elem>> blocks);
QuadraticForm hyperbolic_plane(TowerPtr T);

/// Non-degenerate diagonal symmetric bilinear form <a_1,...,a_n>.
struct BilinearForm {
    TowerPtr T;
    std::vector<Elem> diag; // all nonzero
};

BilinearForm make_bilinear(TowerPtr T, std::vector<Elem> diag);

struct ArfClass {
    TowerPtr T;
    Elem rep;
};

using Vec = std::vector<Elem>; // coordinates, length = dim

Elem eval_form(const QuadraticForm& f, const Vec& v);
Elem polar(const QuadraticForm& f, const Vec& v, const Vec& w);
bool vec_is_zero(const Vec& v);

/// Change of basis certifying target(Mv) = source(v); columns of M are the
/// images of the source basis vectors in target coordinates.
struct IsometryWitness {
    QuadraticForm source;
    QuadraticForm target;
    std::vector<Vec> cols;
};

bool verify_witness(const IsometryWitness& w);
IsometryWitness identity_witness(const QuadraticForm& f);
/// (phi -> psi) then (psi -> chi) gives (phi -> chi).
IsometryWitness compose_witness(const IsometryWitness& first, const IsometryWitness& second);

QuadraticForm orth_sum(const QuadraticForm& a, const QuadraticForm& b);
QuadraticForm scale_form(const Elem& lambda, const QuadraticForm& f);
QuadraticForm tensor(const BilinearForm& b, const QuadraticForm& f);
/// <<u_1,...,u_{n-1}; v]] = <1,u_1> x ... x <1,u_{n-1}> x [1,v]
QuadraticForm pfister(TowerPtr T, const std::vector<Elem>& slots, const Elem& v);

ArfClass arf(const QuadraticForm& f);
bool arf_trivial(const ArfClass& a);
bool arf_equal(const ArfClass& a, const ArfClass& b);

enum class BlockRule { R1, R2, R3, R4 };

/// R1: [a,b] ~ [a l^2, b/l^2] (param l != 0), at block `pos`.
/// R2: [1,x] ~ [1, x + w^2 + w]  (param w), at block `pos` with a = 1.
/// R3: [u,p] | [v,q] ~ [u,p+q] | [u+v,q], merging blocks pos and pos+1.
/// R4: [a,b] ~ [b,a], at block `pos`.
std::pair<QuadraticForm, IsometryWitness> block_relation(const QuadraticForm& f, BlockRule rule,
                                                         int pos,
                                                         const Elem* param = nullptr);

/// [u,x] ~ [u, x + u c^2 + c] for any c: the scaled variant of R2.
std::pair<QuadraticForm, IsometryWitness> block_shift(const QuadraticForm& f, int pos,
                                                      const Elem& c);

struct IsotropyResult {
    enum class Kind { Isotropic, Anisotropic, Unknown } kind;
    Vec witness;             // isotropic: a nonzero vector with Q = 0
    std::string certificate; // anisotropic: the obstruction; unknown: the reason
};

IsotropyResult is_isotropic(const QuadraticForm& f, int budget = -1);

struct HypResult {
    enum class Kind { Yes, No, Unknown } kind;
    std::vector<Vec> chain; // isotropic vectors split off along the way
    std::string reason;     // obstruction or the decision rule applied
};

HypResult is_hyperbolic(const QuadraticForm& f);

struct WittDecomposition {
    QuadraticForm anisotropic;
    int hyperbolic_count = 0;
    bool complete = true; // false if some isotropy query returned unknown
};

WittDecomposition witt_reduce(const QuadraticForm& f);

TriBool equivalent(const QuadraticForm& a, const QuadraticForm& b);

QuadraticForm restrict_form(const QuadraticForm& f, TowerPtr K);

/// Split a hyperbolic plane off at the isotropic vector v: returns the form on
/// the orthogonal complement together with the plane basis (v, q).
struct SplitOff {
    QuadraticForm rest;
    Vec v, q;
    std::vector<Vec> rest_basis; // complement basis in original coordinates
};
SplitOff split_hyperbolic(const QuadraticForm& f, const Vec& v);

/// Symplectic block decomposition of the span of `basis` (the polar form must
/// be nondegenerate on it). Returns block values and the paired basis.
std::pair<QuadraticForm, std::vector<Vec>> symplectic_blocks(const QuadraticForm& f,
                                                             std::vector<Vec> basis);

std::string form_str(const QuadraticForm& f);

} // namespace qf2

#endif
