#include "qf2/gf.hpp"

namespace qf2 {

namespace {

// Multiplication of bit-packed GF(2)[x] polynomials.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

int bitdeg(std::uint64_t a) {
    int d = -1;
    while (a) { ++d; a >>= 1; }
    return d;
}

std::uint64_t bitmod(std::uint64_t a, std::uint64_t m) {
    int dm = bitdeg(m);
    int da = bitdeg(a);
    while (da >= dm) {
        a ^= m << (da - dm);
        da = bitdeg(a);
    }
    return a;
}

bool bit_irreducible(gf_t f, int k) {
    // x^(2^i) mod f must return to x exactly at i = k and gcd checks pass;
    // for k <= 16 plain trial division by lower-degree irreducibles is fine.
    if (k == 1) return true;
    for (gf_t d = 2; bitdeg(d) <= k / 2; ++d) {
        if (bitmod(f, d) == 0) return false;
    }
    return true;
}

} // namespace

gf_t gf2_irreducible(int k) {
    if (k < 1 || k > 16) throw std::invalid_argument("gf2_irreducible: k out of range");
    if (k == 1) return 0b10; // x
    for (gf_t f = (1u << k) + 1; f < (2u << k); f += 2) {
        if (bit_irreducible(f, k)) return f;
    }
    throw std::logic_error("gf2_irreducible: none found");
}

Gf2k::Gf2k(int k) : k_(k), mod_(gf2_irreducible(k)) { init(); }

Gf2k::Gf2k(int k, gf_t modulus) : k_(k), mod_(modulus) {
    if (bitdeg(modulus) != k) throw std::invalid_argument("Gf2k: modulus degree mismatch");
    init();
}

void Gf2k::init() {
    trace_one_ = 0;
    for (gf_t a = 1; a < order(); ++a) {
        if (trace(a) == 1) { trace_one_ = a; break; }
    }
    if (k_ >= 1 && trace_one_ == 0) throw std::logic_error("Gf2k: no trace-one element");
}

gf_t Gf2k::mul(gf_t a, gf_t b) const {
    if (k_ == 1) return a & b & 1;
    return static_cast<gf_t>(bitmod(clmul(a, b), mod_));
}

gf_t Gf2k::pow(gf_t a, std::uint64_t e) const {
    gf_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

gf_t Gf2k::inv(gf_t a) const {
    if (a == 0) throw std::domain_error("Gf2k::inv: zero");
    return pow(a, order() - 2);
}

gf_t Gf2k::sqrt(gf_t a) const {
    return pow(a, 1ull << (k_ - 1));
}

int Gf2k::trace(gf_t a) const {
    gf_t s = 0, x = a;
    for (int i = 0; i < k_; ++i) {
        s ^= x;
        x = mul(x, x);
    }
    if (s != 0 && s != 1) throw std::logic_error("Gf2k::trace: not in GF(2)");
    return static_cast<int>(s);
}

std::optional<gf_t> Gf2k::wp_solve(gf_t a) const {
    if (trace(a) != 0) return std::nullopt;
    for (gf_t w = 0; w < order(); ++w) {
        if ((mul(w, w) ^ w) == a) return w;
    }
    return std::nullopt;
}

std::string Gf2k::to_string(gf_t a) const {
    if (k_ == 1) return a ? "1" : "0";
    if (a == 0) return "0";
    if (a == 1) return "1";
    std::string s;
    bool first = true;
    for (int i = k_ - 1; i >= 0; --i) {
        if (a & (1u << i)) {
            if (!first) s += "+";
            first = false;
            if (i == 0) s += "1";
            else if (i == 1) s += "g";
            else s += "g^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace qf2
