#ifndef QF2_TOWER_HPP
#define QF2_TOWER_HPP

#include "qf2/poly.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace qf2 {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

/// Element of a field tower. At level 0 the payload is a rational function
/// (a constant one if the tower has no variable); at level L > 0 the element
/// is ext[0] + ext[1]*delta_L over the field below. Canonical throughout, so
/// structural equality decides field equality.
struct Elem {
    RatFunc base = rf::zero();
    std::vector<Elem> ext; // empty, or {lo, hi}

    int level() const { return ext.empty() ? 0 : ext[0].level() + 1; }
    bool operator==(const Elem& o) const = default;
};

struct ExtStep {
    enum class Kind { Inseparable, ArtinSchreier };
    Kind kind;
    Elem gen; // element of the field below the step

    bool operator==(const ExtStep& o) const = default;
};

/// A concrete field of characteristic 2: GF(2^k), optionally with a
/// transcendental t adjoined, optionally extended by a short stack of
/// quadratic extensions (sqrt(b) or Artin-Schreier). Depth is capped at 3.
class Tower {
public:
    static TowerPtr finite(int k);
    static TowerPtr rational(int k); // GF(2^k)(t)

    /// Adjoin sqrt(b); b must be a nonzero non-square at the top.
    TowerPtr adjoin_sqrt(const Elem& b) const;
    /// Adjoin a root of x^2+x = a; a must not lie in the Artin-Schreier image.
    TowerPtr adjoin_artin_schreier(const Elem& a) const;

    const Gf2k& gf() const { return gf_; }
    bool has_var() const { return has_var_; }
    const std::vector<ExtStep>& steps() const { return steps_; }
    int depth() const { return static_cast<int>(steps_.size()); }
    bool is_finite_field() const;

    bool same_field(const Tower& o) const;
    /// True if o is this tower extended by further steps (or equal).
    bool extends(const Tower& o) const; // *this extends o

private:
    Gf2k gf_;
    bool has_var_;
    std::vector<ExtStep> steps_;
    Tower(Gf2k gf, bool has_var) : gf_(std::move(gf)), has_var_(has_var) {}
    friend class TowerBuilder;
};

struct tower_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct unsupported_tower : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---- element constructors ----
Elem e_zero(const Tower& T);
Elem e_one(const Tower& T);
Elem e_const(const Tower& T, gf_t c);
Elem e_base(const Tower& T, RatFunc r);   // lift a ground-field value
Elem e_var(const Tower& T);               // t
Elem e_gen(const Tower& T, int step);     // generator of steps()[step], at top level
Elem e_int(const Tower& T, long n);       // n mod 2

// ---- arithmetic (all arguments must live at the top level of T) ----
bool e_is_zero(const Elem& x);
Elem e_add(const Tower& T, const Elem& x, const Elem& y);
Elem e_mul(const Tower& T, const Elem& x, const Elem& y);
Elem e_sq(const Tower& T, const Elem& x);
Elem e_inv(const Tower& T, const Elem& x);
Elem e_div(const Tower& T, const Elem& x, const Elem& y);

/// Lift an element of a subtower F into the extension tower K.
Elem embed(const Tower& from, const Tower& to, const Elem& x);
/// Inverse of embed for elements that happen to lie in the subfield.
std::optional<Elem> descend(const Tower& from, const Tower& to, const Elem& x);

/// Exact square test; on success the returned root squares to x.
std::optional<Elem> e_sqrt(const Tower& T, const Elem& x);
bool e_is_square(const Tower& T, const Elem& x);

/// Witness for membership in the Artin-Schreier image: w with w^2 + w = x.
std::optional<Elem> wp_witness(const Tower& T, const Elem& x);

/// Canonical representative of x modulo wp(F) together with a witness:
/// x = canonical + witness^2 + witness. Ground towers only.
std::pair<Elem, Elem> wp_reduce(const Tower& T, const Elem& x);

std::string e_str(const Tower& T, const Elem& x);

} // namespace qf2

#endif
