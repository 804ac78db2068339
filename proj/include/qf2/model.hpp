#ifndef QF2_MODEL_HPP
#define QF2_MODEL_HPP

#include "qf2/tower.hpp"

namespace qf2 {

/// Explicit isomorphism of a supported extension tower K onto a rational
/// function field GF(2^k)(s). Exists whenever every inseparable step has a
/// squarefree part of degree 1 in the running model and every Artin-Schreier
/// step has a degree-1 wp-canonical there (the genus-zero cases). Decisions
/// made downstairs transport back upstairs through var_preimage.
struct RationalModel {
    TowerPtr tower;  // source field K
    TowerPtr ground; // GF(2^k)(s), depth 0

    RatFunc t_image;               // image of the original variable t
    std::vector<RatFunc> gen_image; // image of each adjoined generator
    Elem var_preimage;             // element of K mapping to s

    /// Forward image of an element of K.
    RatFunc to_model(const Elem& x) const;
    /// Inverse: evaluate a model function at var_preimage.
    Elem from_model(const RatFunc& f) const;

    /// nullopt when the tower has no variable or leaves genus zero.
    static std::optional<RationalModel> build(TowerPtr T);
};

} // namespace qf2

#endif
