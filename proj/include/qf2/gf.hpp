#ifndef QF2_GF_HPP
#define QF2_GF_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qf2 {

/// Element of GF(2^k), stored as a bit-packed polynomial over GF(2).
using gf_t = std::uint32_t;

/// Arithmetic context for GF(2^k), k <= 16. The modulus is the
/// lexicographically smallest irreducible polynomial of degree k over GF(2).
class Gf2k {
public:
    explicit Gf2k(int k);
    Gf2k(int k, gf_t modulus);

    int degree() const { return k_; }
    gf_t modulus() const { return mod_; }
    std::uint32_t order() const { return 1u << k_; }

    gf_t add(gf_t a, gf_t b) const { return a ^ b; }
    gf_t mul(gf_t a, gf_t b) const;
    gf_t sq(gf_t a) const { return mul(a, a); }
    gf_t inv(gf_t a) const;
    gf_t pow(gf_t a, std::uint64_t e) const;
    /// Frobenius inverse; every element of a finite field of char 2 is a square.
    gf_t sqrt(gf_t a) const;
    /// Absolute trace to GF(2).
    int trace(gf_t a) const;
    /// Solve w^2 + w = a; exists iff trace(a) == 0.
    std::optional<gf_t> wp_solve(gf_t a) const;
    /// Fixed trace-one representative (smallest in bit order).
    gf_t trace_one_elem() const { return trace_one_; }
    /// Multiplicative generator candidate (smallest with full order not required;
    /// this is the class of x when k > 1, else 1).
    gf_t gen() const { return k_ > 1 ? 2u : 1u; }

    bool operator==(const Gf2k& o) const { return k_ == o.k_ && mod_ == o.mod_; }

    std::string to_string(gf_t a) const;

private:
    int k_;
    gf_t mod_;
    gf_t trace_one_;
    void init();
};

/// Smallest irreducible degree-k polynomial over GF(2), bit-packed.
gf_t gf2_irreducible(int k);

} // namespace qf2

#endif
