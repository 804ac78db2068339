#ifndef QF2_TRANSFER_HPP
#define QF2_TRANSFER_HPP

#include "qf2/forms.hpp"

namespace qf2 {

/// The tower K with its top step removed, rebuilt from the step list.
TowerPtr base_tower(TowerPtr K);

/// The normalized F-linear functional on K = F(delta) with s(1) = 0 and
/// s(delta) = 1.
struct TransferFunctional {
    TowerPtr K;
    TowerPtr F;
};

TransferFunctional make_transfer(TowerPtr K);

/// s(z) for z in K, as an element of F.
Elem transfer_apply(const TransferFunctional& s, const Elem& z);
/// The F-component pair of z = z0 + z1*delta.
std::pair<Elem, Elem> transfer_components(const TransferFunctional& s, const Elem& z);

/// Transfer of a diagonal bilinear form. Entries z = x + y*delta with y != 0
/// contribute the diagonal pair <y, N(z)/y>; over an inseparable step an entry
/// with y = 0 contributes a metabolic plane, which has no diagonal basis in
/// characteristic 2 and is tracked by count.
struct TransferredBilinear {
    BilinearForm diag;
    int metabolic_planes = 0;
};

TransferredBilinear transfer_bilinear(const TransferFunctional& s, const BilinearForm& b);

/// s_*(phi): quadratic transfer via the Gram construction on the basis
/// {e_i, delta e_i}; dim doubles.
QuadraticForm transfer_quadratic(const TransferFunctional& s, const QuadraticForm& phi);

struct ReciprocityReport {
    TriBool ok;
    QuadraticForm lhs; // s_*(b tensor phi_K)
    QuadraticForm rhs; // s_*(b) tensor phi
};

/// Frobenius reciprocity s_*(b tensor phi_K) ~= s_*(b) tensor phi for a
/// bilinear b over K and quadratic phi over F.
ReciprocityReport frobenius_reciprocity_check(const TransferFunctional& s, const BilinearForm& b,
                                              const QuadraticForm& phi);

/// Given psi over F whose Arf representative d becomes trivial over K,
/// replace the last block [a,b] with a != 0 by [a, b + d/a]: the result has
/// identically zero Arf representative over F and is K-isometric to psi.
QuadraticForm arf_trivialize_descent(const QuadraticForm& psi, TowerPtr K);

struct DescentResult {
    bool found = false;
    QuadraticForm psi;              // over F, with psi_K ~= phi when found
    bool transfer_hyperbolic;       // the precondition flag (informational)
    long candidates_tried = 0;
};

/// Bounded search for psi over F with psi_K equivalent to phi. Candidates are
/// drawn from phi's coefficient components and polynomials up to the degree
/// budget, ordered by total degree then lexicographically; not-found is not a
/// disproof. budget < 0 selects (max coefficient degree in phi) + 2.
DescentResult descend_form_search(const QuadraticForm& phi, int budget = -1);

} // namespace qf2

#endif
