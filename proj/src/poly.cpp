#include "qf2/poly.hpp"

#include <algorithm>
#include <random>

namespace qf2 {
namespace pf {

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly zero() { return {}; }
Poly one() { return {1}; }
Poly constant(gf_t c) { return c ? Poly{c} : Poly{}; }

Poly monomial(gf_t c, int e) {
    if (c == 0) return {};
    Poly p(e + 1, 0);
    p[e] = c;
    return p;
}

bool is_zero(const Poly& p) { return p.empty(); }

gf_t lead(const Poly& p) { return p.empty() ? 0 : p.back(); }

Poly add(const Poly& a, const Poly& b) {
    Poly r = a;
    if (b.size() > r.size()) r.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] ^= b[i];
    trim(r);
    return r;
}

Poly mul(const Gf2k& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j]) r[i + j] ^= F.mul(a[i], b[j]);
        }
    }
    trim(r);
    return r;
}

Poly scal(const Gf2k& F, gf_t c, const Poly& a) {
    if (c == 0) return {};
    Poly r = a;
    for (auto& x : r) x = F.mul(c, x);
    return r;
}

std::pair<Poly, Poly> divmod(const Gf2k& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("poly divmod: division by zero");
    Poly r = a;
    int db = deg(b);
    gf_t li = F.inv(lead(b));
    if (deg(r) < db) return {Poly{}, r};
    Poly q(deg(r) - db + 1, 0);
    while (deg(r) >= db) {
        int sh = deg(r) - db;
        gf_t c = F.mul(lead(r), li);
        q[sh] = c;
        for (int i = 0; i <= db; ++i) r[i + sh] ^= F.mul(c, b[i]);
        trim(r);
        if (r.empty()) break;
    }
    trim(q);
    return {q, r};
}

Poly mod(const Gf2k& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

Poly monic(const Gf2k& F, const Poly& a) {
    if (a.empty()) return a;
    return scal(F, F.inv(lead(a)), a);
}

Poly gcd(const Gf2k& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : monic(F, a);
}

gf_t eval(const Gf2k& F, const Poly& a, gf_t x) {
    gf_t r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = F.mul(r, x) ^ *it;
    return r;
}

Poly derivative(const Poly& a) {
    Poly r;
    for (std::size_t i = 1; i < a.size(); i += 2) {
        // char 2: only odd-exponent terms survive, coefficient unchanged
        if (r.size() < i) r.resize(i, 0);
        r[i - 1] = a[i];
    }
    trim(r);
    return r;
}

Poly mul_mod(const Gf2k& F, const Poly& a, const Poly& b, const Poly& m) {
    return mod(F, mul(F, a, b), m);
}

Poly pow_mod(const Gf2k& F, Poly base, std::uint64_t e, const Poly& m) {
    Poly r = one();
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mul_mod(F, r, base, m);
        base = mul_mod(F, base, base, m);
        e >>= 1;
    }
    return r;
}

bool is_square(const Gf2k& F, const Poly& a) {
    (void)F;
    for (std::size_t i = 1; i < a.size(); i += 2) {
        if (a[i] != 0) return false;
    }
    return true;
}

Poly sqrt(const Gf2k& F, const Poly& a) {
    if (!is_square(F, a)) throw std::domain_error("poly sqrt: not a square");
    Poly r((a.size() + 1) / 2, 0);
    for (std::size_t i = 0; i < a.size(); i += 2) r[i / 2] = F.sqrt(a[i]);
    trim(r);
    return r;
}

bool irreducible(const Gf2k& F, const Poly& p) {
    int n = deg(p);
    if (n <= 0) return false;
    if (n == 1) return true;
    std::uint64_t q = F.order();
    // x^(q^n) == x mod p and x^(q^(n/r)) != x for prime divisors r of n
    Poly x = monomial(1, 1);
    Poly xp = x;
    std::vector<int> prime_divs;
    int m = n;
    for (int d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            prime_divs.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_divs.push_back(m);
    for (int r : prime_divs) {
        Poly h = x;
        for (int i = 0; i < n / r; ++i) h = pow_mod(F, h, q, p);
        if (!gcd(F, add(h, x), p).empty() && deg(gcd(F, add(h, x), p)) > 0) return false;
    }
    Poly h = x;
    for (int i = 0; i < n; ++i) h = pow_mod(F, h, q, p);
    return add(h, x).empty() || mod(F, add(h, x), p).empty();
}

namespace {

// Equal-degree factorization of a squarefree product of degree-d irreducibles.
void edf(const Gf2k& F, const Poly& g, int d, std::vector<Poly>& out, std::mt19937_64& rng) {
    if (deg(g) == d) {
        out.push_back(monic(F, g));
        return;
    }
    int kd = F.degree() * d;
    while (true) {
        Poly r(deg(g), 0);
        for (auto& c : r) c = static_cast<gf_t>(rng() % F.order());
        trim(r);
        if (r.empty()) continue;
        // GF(2)-trace map of r modulo g
        Poly tracev = zero(), x = mod(F, r, g);
        for (int i = 0; i < kd; ++i) {
            tracev = add(tracev, x);
            x = mul_mod(F, x, x, g);
        }
        Poly h = gcd(F, tracev, g);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            edf(F, h, d, out, rng);
            edf(F, divmod(F, g, h).first, d, out, rng);
            return;
        }
    }
}

void factor_squarefree(const Gf2k& F, Poly s, std::vector<Poly>& out, std::mt19937_64& rng) {
    // distinct-degree splitting
    std::uint64_t q = F.order();
    Poly x = monomial(1, 1);
    Poly h = mod(F, x, s);
    int d = 0;
    while (deg(s) > 0) {
        ++d;
        if (2 * d > deg(s)) {
            out.push_back(monic(F, s));
            return;
        }
        h = pow_mod(F, h, q, s);
        Poly g = gcd(F, add(h, x), s);
        if (deg(g) > 0) {
            edf(F, g, d, out, rng);
            s = divmod(F, s, g).first;
            h = mod(F, h, s);
        }
    }
}

} // namespace

Factorization factor(const Gf2k& F, const Poly& a, std::uint64_t seed) {
    if (is_zero(a)) throw std::domain_error("factor: zero polynomial");
    Factorization result;
    result.unit = lead(a);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Poly, int>> acc;

    // peel squarefree layers: f = s * (f/s) with s the odd-multiplicity part
    struct Item { Poly p; int mult; };
    std::vector<Item> work{{monic(F, a), 1}};
    while (!work.empty()) {
        Item it = work.back();
        work.pop_back();
        Poly f = it.p;
        if (deg(f) == 0) continue;
        Poly fd = derivative(f);
        if (is_zero(fd)) {
            work.push_back({sqrt(F, f), it.mult * 2});
            continue;
        }
        Poly g = gcd(F, f, fd);
        Poly s = divmod(F, f, g).first; // squarefree
        std::vector<Poly> primes;
        factor_squarefree(F, monic(F, s), primes, rng);
        Poly rest = f;
        for (const Poly& p : primes) {
            int e = 0;
            while (true) {
                auto [q2, r2] = divmod(F, rest, p);
                if (!r2.empty()) break;
                rest = q2;
                ++e;
            }
            acc.emplace_back(p, e * it.mult);
        }
        if (deg(rest) > 0) work.push_back({rest, it.mult});
    }
    // merge duplicates and sort canonically
    std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) {
        if (deg(x.first) != deg(y.first)) return deg(x.first) < deg(y.first);
        return std::lexicographical_compare(x.first.rbegin(), x.first.rend(),
                                            y.first.rbegin(), y.first.rend());
    });
    for (auto& pr : acc) {
        if (!result.factors.empty() && result.factors.back().first == pr.first)
            result.factors.back().second += pr.second;
        else
            result.factors.push_back(pr);
    }
    return result;
}

SqfreeSplit sqfree_split(const Gf2k& F, const Poly& a) {
    Factorization fac = factor(F, a);
    SqfreeSplit out{fac.unit, one(), one()};
    for (const auto& [p, e] : fac.factors) {
        if (e % 2) out.sqfree = mul(F, out.sqfree, p);
        for (int i = 0; i < e / 2; ++i) out.cofactor = mul(F, out.cofactor, p);
    }
    return out;
}

std::string to_string(const Gf2k& F, const Poly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::string s;
    for (int i = deg(p); i >= 0; --i) {
        if (p[i] == 0) continue;
        if (!s.empty()) s += "+";
        std::string c = F.to_string(p[i]);
        bool unit_coeff = (p[i] == 1);
        if (i == 0) {
            s += unit_coeff ? "1" : c;
        } else {
            if (!unit_coeff) s += (c.find('+') != std::string::npos ? "(" + c + ")" : c) + "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace pf

namespace rf {

RatFunc make(const Gf2k& F, Poly num, Poly den) {
    if (pf::is_zero(den)) throw std::domain_error("RatFunc: zero denominator");
    if (pf::is_zero(num)) return {Poly{}, pf::one()};
    Poly g = pf::gcd(F, num, den);
    if (pf::deg(g) > 0) {
        num = pf::divmod(F, num, g).first;
        den = pf::divmod(F, den, g).first;
    }
    gf_t li = F.inv(pf::lead(den));
    num = pf::scal(F, li, num);
    den = pf::scal(F, li, den);
    return {num, den};
}

RatFunc zero() { return {Poly{}, pf::one()}; }
RatFunc one() { return {pf::one(), pf::one()}; }
RatFunc constant(gf_t c) { return {pf::constant(c), pf::one()}; }
RatFunc from_poly(Poly p) { return {std::move(p), pf::one()}; }
RatFunc var() { return {pf::monomial(1, 1), pf::one()}; }
bool is_zero(const RatFunc& a) { return pf::is_zero(a.num); }

RatFunc add(const Gf2k& F, const RatFunc& a, const RatFunc& b) {
    Poly n = pf::add(pf::mul(F, a.num, b.den), pf::mul(F, b.num, a.den));
    Poly d = pf::mul(F, a.den, b.den);
    return make(F, n, d);
}

RatFunc mul(const Gf2k& F, const RatFunc& a, const RatFunc& b) {
    return make(F, pf::mul(F, a.num, b.num), pf::mul(F, a.den, b.den));
}

RatFunc inv(const Gf2k& F, const RatFunc& a) {
    if (is_zero(a)) throw std::domain_error("RatFunc inv: zero");
    return make(F, a.den, a.num);
}

RatFunc div(const Gf2k& F, const RatFunc& a, const RatFunc& b) {
    return mul(F, a, inv(F, b));
}

RatFunc sq(const Gf2k& F, const RatFunc& a) { return mul(F, a, a); }

RatFunc subst(const Gf2k& F, const RatFunc& a, const RatFunc& x) {
    RatFunc n = zero(), d = zero();
    for (auto it = a.num.rbegin(); it != a.num.rend(); ++it)
        n = add(F, mul(F, n, x), constant(*it));
    for (auto it = a.den.rbegin(); it != a.den.rend(); ++it)
        d = add(F, mul(F, d, x), constant(*it));
    if (is_zero(d)) throw std::domain_error("RatFunc subst: denominator vanishes");
    return div(F, n, d);
}

bool is_square(const Gf2k& F, const RatFunc& a) {
    return pf::is_square(F, a.num) && pf::is_square(F, a.den);
}

RatFunc sqrt(const Gf2k& F, const RatFunc& a) {
    return make(F, pf::sqrt(F, a.num), pf::sqrt(F, a.den));
}

std::string to_string(const Gf2k& F, const RatFunc& a, const std::string& var) {
    std::string n = pf::to_string(F, a.num, var);
    if (pf::deg(a.den) == 0) return n;
    std::string d = pf::to_string(F, a.den, var);
    auto wrap = [](const std::string& s) {
        return s.find('+') != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(n) + "/" + wrap(d);
}

} // namespace rf
} // namespace qf2
