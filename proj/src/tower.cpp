#include "qf2/tower.hpp"

#include <cassert>

namespace qf2 {

namespace {

Elem mk_pair(Elem lo, Elem hi) {
    Elem e;
    e.ext = {std::move(lo), std::move(hi)};
    return e;
}

Elem zero_level(int level) {
    if (level == 0) return Elem{};
    return mk_pair(zero_level(level - 1), zero_level(level - 1));
}

const ExtStep& step_at(const Tower& T, int level) { return T.steps()[level - 1]; }

Elem add_l(const Tower& T, int level, const Elem& x, const Elem& y);
Elem mul_l(const Tower& T, int level, const Elem& x, const Elem& y);
Elem inv_l(const Tower& T, int level, const Elem& x);

Elem add_l(const Tower& T, int level, const Elem& x, const Elem& y) {
    if (level == 0) return Elem{rf::add(T.gf(), x.base, y.base), {}};
    return mk_pair(add_l(T, level - 1, x.ext[0], y.ext[0]),
                   add_l(T, level - 1, x.ext[1], y.ext[1]));
}

Elem mul_l(const Tower& T, int level, const Elem& x, const Elem& y) {
    if (level == 0) return Elem{rf::mul(T.gf(), x.base, y.base), {}};
    const ExtStep& st = step_at(T, level);
    const Elem& x0 = x.ext[0]; const Elem& x1 = x.ext[1];
    const Elem& y0 = y.ext[0]; const Elem& y1 = y.ext[1];
    Elem p00 = mul_l(T, level - 1, x0, y0);
    Elem p11 = mul_l(T, level - 1, x1, y1);
    Elem cross = add_l(T, level - 1, mul_l(T, level - 1, x0, y1),
                       mul_l(T, level - 1, x1, y0));
    Elem p11g = mul_l(T, level - 1, p11, st.gen);
    if (st.kind == ExtStep::Kind::Inseparable) {
        return mk_pair(add_l(T, level - 1, p00, p11g), cross);
    }
    // delta^2 = a + delta
    return mk_pair(add_l(T, level - 1, p00, p11g), add_l(T, level - 1, cross, p11));
}

bool is_zero_l(const Elem& x) {
    if (x.ext.empty()) return rf::is_zero(x.base);
    return is_zero_l(x.ext[0]) && is_zero_l(x.ext[1]);
}

Elem inv_l(const Tower& T, int level, const Elem& x) {
    if (is_zero_l(x)) throw std::domain_error("division by zero");
    if (level == 0) return Elem{rf::inv(T.gf(), x.base), {}};
    const ExtStep& st = step_at(T, level);
    const Elem& x0 = x.ext[0]; const Elem& x1 = x.ext[1];
    if (st.kind == ExtStep::Kind::Inseparable) {
        // (x0 + x1*d)^2 = x0^2 + x1^2*b lies below; z^-1 = z / z^2
        Elem n = add_l(T, level - 1, mul_l(T, level - 1, x0, x0),
                       mul_l(T, level - 1, mul_l(T, level - 1, x1, x1), st.gen));
        Elem ni = inv_l(T, level - 1, n);
        return mk_pair(mul_l(T, level - 1, x0, ni), mul_l(T, level - 1, x1, ni));
    }
    // conjugate: x0 + x1 + x1*d; norm = x0^2 + x0*x1 + a*x1^2
    Elem conj = mk_pair(add_l(T, level - 1, x0, x1), x1);
    Elem prod = mul_l(T, level, x, conj);
    assert(is_zero_l(prod.ext[1]));
    Elem ni = inv_l(T, level - 1, prod.ext[0]);
    Elem nlift = mk_pair(ni, zero_level(level - 1));
    return mul_l(T, level, conj, nlift);
}

// x = A + B*t with A, B in GF(q)(t^2); returns spread representatives of A, B.
std::pair<RatFunc, RatFunc> rf_even_odd(const Gf2k& F, const RatFunc& x) {
    Poly P = pf::mul(F, x.num, x.den);
    Poly d2 = pf::mul(F, x.den, x.den);
    Poly even, odd;
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (i % 2 == 0) {
            if (even.size() <= i) even.resize(i + 1, 0);
            even[i] = P[i];
        } else {
            if (odd.size() <= i - 1) odd.resize(i, 0);
            odd[i - 1] = P[i];
        }
    }
    pf::trim(even);
    pf::trim(odd);
    return {rf::make(F, even, d2), rf::make(F, odd, d2)};
}

// e = U + V*c with U, V squares of the level-`level` field; c a non-square there.
std::pair<Elem, Elem> decompose2(const Tower& T, int level, const Elem& e, const Elem& c) {
    if (level == 0) {
        if (!T.has_var())
            throw unsupported_tower("decompose2: perfect ground field has no non-squares");
        auto [eA, eB] = rf_even_odd(T.gf(), e.base);
        auto [cA, cB] = rf_even_odd(T.gf(), c.base);
        if (rf::is_zero(cB)) throw std::logic_error("decompose2: c is a square");
        RatFunc V = rf::div(T.gf(), eB, cB);
        RatFunc U = rf::add(T.gf(), eA, rf::mul(T.gf(), V, cA));
        return {Elem{U, {}}, Elem{V, {}}};
    }
    const ExtStep& st = step_at(T, level);
    if (st.kind == ExtStep::Kind::ArtinSchreier)
        throw unsupported_tower("decompose2: sqrt below an Artin-Schreier step");
    // field below is exactly the square subfield; solve linearly over it
    const Elem& g1 = c.ext[1];
    if (is_zero_l(g1)) throw std::logic_error("decompose2: c is a square");
    Elem V = mul_l(T, level - 1, e.ext[1], inv_l(T, level - 1, g1));
    Elem U = add_l(T, level - 1, e.ext[0], mul_l(T, level - 1, V, c.ext[0]));
    return {mk_pair(std::move(U), zero_level(level - 1)),
            mk_pair(std::move(V), zero_level(level - 1))};
}

std::optional<Elem> sqrt_l(const Tower& T, int level, const Elem& x) {
    if (level == 0) {
        if (!T.has_var()) {
            gf_t c = x.base.num.empty() ? 0 : x.base.num[0];
            gf_t d = x.base.den[0];
            return Elem{rf::constant(T.gf().mul(T.gf().sqrt(c), T.gf().inv(T.gf().sqrt(d)))), {}};
        }
        if (!rf::is_square(T.gf(), x.base)) return std::nullopt;
        return Elem{rf::sqrt(T.gf(), x.base), {}};
    }
    const ExtStep& st = step_at(T, level);
    if (st.kind == ExtStep::Kind::Inseparable) {
        if (!is_zero_l(x.ext[1])) return std::nullopt;
        auto [U, V] = decompose2(T, level - 1, x.ext[0], st.gen);
        auto r0 = sqrt_l(T, level - 1, U);
        auto r1 = sqrt_l(T, level - 1, V);
        if (!r0 || !r1) throw std::logic_error("sqrt: decompose2 returned a non-square");
        return mk_pair(*r0, *r1);
    }
    auto r1 = sqrt_l(T, level - 1, x.ext[1]);
    if (!r1) return std::nullopt;
    Elem arg = add_l(T, level - 1, x.ext[0], mul_l(T, level - 1, x.ext[1], st.gen));
    auto r0 = sqrt_l(T, level - 1, arg);
    if (!r0) return std::nullopt;
    return mk_pair(*r0, *r1);
}

// ---- ground wp-reduction over GF(q)(t) ----
struct WpAcc {
    RatFunc x;
    RatFunc witness;
};

void wp_subtract(const Gf2k& F, WpAcc& acc, const RatFunc& w) {
    // x <- x + w^2 + w; witness <- witness + w
    acc.x = rf::add(F, acc.x, rf::add(F, rf::sq(F, w), w));
    acc.witness = rf::add(F, acc.witness, w);
}

// Strips all pole terms from acc.x: even-order top terms are removed by
// subtracting wp(c^(Q/2)/p^m); odd-order top terms (already canonical) are
// moved into the returned accumulator. On return acc.x is a polynomial.
RatFunc wp_reduce_poles(const Gf2k& F, WpAcc& acc) {
    RatFunc kept = rf::zero();
    for (;;) {
        if (pf::deg(acc.x.den) == 0) return kept;
        pf::Factorization fac = pf::factor(F, acc.x.den);
        const auto& [p, e] = fac.factors.front();
        // leading p-adic coefficient: (x * p^e) mod p = num * (den/p^e)^-1 mod p
        Poly pe = pf::one();
        for (int i = 0; i < e; ++i) pe = pf::mul(F, pe, p);
        Poly d0 = pf::divmod(F, acc.x.den, pe).first;
        std::uint64_t Q = 1;
        for (int i = 0; i < pf::deg(p); ++i) Q *= F.order();
        Poly d0i = pf::pow_mod(F, d0, Q - 2, p);
        Poly c = pf::mul_mod(F, pf::mod(F, acc.x.num, p), d0i, p);
        if (e % 2 == 0) {
            Poly croot = pf::pow_mod(F, c, Q / 2, p);
            Poly pm = pf::one();
            for (int i = 0; i < e / 2; ++i) pm = pf::mul(F, pm, p);
            wp_subtract(F, acc, rf::make(F, croot, pm));
        } else {
            RatFunc term = rf::make(F, c, pe);
            kept = rf::add(F, kept, term);
            acc.x = rf::add(F, acc.x, term); // char 2: addition is subtraction
        }
    }
}

void wp_reduce_polypart(const Gf2k& F, WpAcc& acc) {
    for (;;) {
        auto [q, r] = pf::divmod(F, acc.x.num, acc.x.den);
        int d = pf::deg(q);
        int target = -1;
        for (int i = d; i >= 2; --i) {
            if (i % 2 == 0 && i <= d && static_cast<std::size_t>(i) < q.size() && q[i] != 0) {
                target = i;
                break;
            }
        }
        if (target < 0) return;
        RatFunc w = rf::from_poly(pf::monomial(F.sqrt(q[target]), target / 2));
        wp_subtract(F, acc, w);
    }
}

void wp_reduce_constant(const Gf2k& F, WpAcc& acc) {
    auto [q, r] = pf::divmod(F, acc.x.num, acc.x.den);
    gf_t c0 = q.empty() ? 0 : q[0];
    if (c0 == 0) return;
    gf_t shift = c0;
    if (F.trace(c0) == 1) shift = F.add(c0, F.trace_one_elem());
    if (shift == 0) return;
    auto w = F.wp_solve(shift);
    if (!w) throw std::logic_error("wp_reduce: trace-zero constant not in wp image");
    wp_subtract(F, acc, rf::constant(*w));
}

std::optional<Elem> wp_witness_l(const Tower& T, int level, const Elem& x);

std::pair<RatFunc, RatFunc> wp_reduce_rf(const Gf2k& F, bool has_var, const RatFunc& x) {
    WpAcc acc{x, rf::zero()};
    RatFunc kept = rf::zero();
    if (has_var) {
        kept = wp_reduce_poles(F, acc);
        wp_reduce_polypart(F, acc);
    }
    wp_reduce_constant(F, acc);
    return {rf::add(F, kept, acc.x), acc.witness};
}

std::optional<Elem> wp_witness_l(const Tower& T, int level, const Elem& x) {
    if (level == 0) {
        auto [canon, w] = wp_reduce_rf(T.gf(), T.has_var(), x.base);
        if (!rf::is_zero(canon)) return std::nullopt;
        return Elem{w, {}};
    }
    const ExtStep& st = step_at(T, level);
    if (st.kind == ExtStep::Kind::Inseparable) {
        // wp(w0 + w1*d) = (wp(w0) + w1^2*b) + w1*d
        const Elem& w1 = x.ext[1];
        Elem arg = add_l(T, level - 1, x.ext[0],
                         mul_l(T, level - 1, mul_l(T, level - 1, w1, w1), st.gen));
        auto w0 = wp_witness_l(T, level - 1, arg);
        if (!w0) return std::nullopt;
        return mk_pair(*w0, w1);
    }
    // wp(w0 + w1*d) = (wp(w0) + w1^2*a) + wp(w1)*d; ker wp = {0,1}
    auto w1 = wp_witness_l(T, level - 1, x.ext[1]);
    if (!w1) return std::nullopt;
    Elem onel = zero_level(level - 1);
    // build 1 at level-1
    Elem one1 = onel;
    {
        Elem* p = &one1;
        while (!p->ext.empty()) p = &p->ext[0];
        p->base = rf::one();
    }
    for (int choice = 0; choice < 2; ++choice) {
        Elem cand = choice == 0 ? *w1 : add_l(T, level - 1, *w1, one1);
        Elem arg = add_l(T, level - 1, x.ext[0],
                         mul_l(T, level - 1, mul_l(T, level - 1, cand, cand), st.gen));
        auto w0 = wp_witness_l(T, level - 1, arg);
        if (w0) return mk_pair(*w0, cand);
    }
    return std::nullopt;
}

} // namespace

// ---- Tower ----

class TowerBuilder {
public:
    static TowerPtr build(Gf2k gf, bool has_var, std::vector<ExtStep> steps) {
        auto t = std::shared_ptr<Tower>(new Tower(std::move(gf), has_var));
        t->steps_ = std::move(steps);
        return t;
    }
};

TowerPtr Tower::finite(int k) { return TowerBuilder::build(Gf2k(k), false, {}); }
TowerPtr Tower::rational(int k) { return TowerBuilder::build(Gf2k(k), true, {}); }

bool Tower::is_finite_field() const {
    return !has_var_; // inseparable steps require a variable; AS steps keep finiteness
}

TowerPtr Tower::adjoin_sqrt(const Elem& b) const {
    if (depth() >= 3) throw unsupported_tower("tower depth capped at 3");
    if (b.level() != depth()) throw tower_mismatch("adjoin_sqrt: wrong level");
    if (e_is_zero(b)) throw std::invalid_argument("adjoin_sqrt: zero generator");
    if (e_is_square(*this, b)) throw std::invalid_argument("adjoin_sqrt: generator is a square");
    std::vector<ExtStep> st = steps_;
    st.push_back({ExtStep::Kind::Inseparable, b});
    return TowerBuilder::build(gf_, has_var_, std::move(st));
}

TowerPtr Tower::adjoin_artin_schreier(const Elem& a) const {
    if (depth() >= 3) throw unsupported_tower("tower depth capped at 3");
    if (a.level() != depth()) throw tower_mismatch("adjoin_as: wrong level");
    if (wp_witness(*this, a)) throw std::invalid_argument("adjoin_as: generator in wp image");
    std::vector<ExtStep> st = steps_;
    st.push_back({ExtStep::Kind::ArtinSchreier, a});
    return TowerBuilder::build(gf_, has_var_, std::move(st));
}

bool Tower::same_field(const Tower& o) const {
    return gf_ == o.gf_ && has_var_ == o.has_var_ && steps_ == o.steps_;
}

bool Tower::extends(const Tower& o) const {
    if (!(gf_ == o.gf_) || has_var_ != o.has_var_) return false;
    if (o.steps_.size() > steps_.size()) return false;
    for (std::size_t i = 0; i < o.steps_.size(); ++i) {
        if (!(steps_[i] == o.steps_[i])) return false;
    }
    return true;
}

// ---- public element API ----

Elem e_zero(const Tower& T) { return zero_level(T.depth()); }

Elem e_const(const Tower& T, gf_t c) {
    Elem e = e_zero(T);
    Elem* p = &e;
    while (!p->ext.empty()) p = &p->ext[0];
    p->base = rf::constant(c);
    return e;
}

Elem e_one(const Tower& T) { return e_const(T, 1); }
Elem e_int(const Tower& T, long n) { return e_const(T, static_cast<gf_t>(((n % 2) + 2) % 2)); }

Elem e_base(const Tower& T, RatFunc r) {
    if (!T.has_var() && pf::deg(r.num) > 0)
        throw tower_mismatch("e_base: non-constant value in a finite tower");
    Elem e = e_zero(T);
    Elem* p = &e;
    while (!p->ext.empty()) p = &p->ext[0];
    p->base = std::move(r);
    return e;
}

Elem e_var(const Tower& T) {
    if (!T.has_var()) throw tower_mismatch("e_var: tower has no variable");
    return e_base(T, rf::var());
}

Elem e_gen(const Tower& T, int step) {
    if (step < 0 || step >= T.depth()) throw std::out_of_range("e_gen: bad step");
    Elem e = e_zero(T);
    Elem* p = &e;
    for (int lvl = T.depth(); lvl > step + 1; --lvl) p = &p->ext[0];
    // p now sits at level step+1; set its hi part to 1
    Elem* q = &p->ext[1];
    while (!q->ext.empty()) q = &q->ext[0];
    q->base = rf::one();
    return e;
}

bool e_is_zero(const Elem& x) { return is_zero_l(x); }

static void check_level(const Tower& T, const Elem& x, const char* who) {
    if (x.level() != T.depth()) throw tower_mismatch(std::string(who) + ": element level mismatch");
}

Elem e_add(const Tower& T, const Elem& x, const Elem& y) {
    check_level(T, x, "e_add");
    check_level(T, y, "e_add");
    return add_l(T, T.depth(), x, y);
}

Elem e_mul(const Tower& T, const Elem& x, const Elem& y) {
    check_level(T, x, "e_mul");
    check_level(T, y, "e_mul");
    return mul_l(T, T.depth(), x, y);
}

Elem e_sq(const Tower& T, const Elem& x) { return e_mul(T, x, x); }

Elem e_inv(const Tower& T, const Elem& x) {
    check_level(T, x, "e_inv");
    return inv_l(T, T.depth(), x);
}

Elem e_div(const Tower& T, const Elem& x, const Elem& y) {
    return e_mul(T, x, e_inv(T, y));
}

Elem embed(const Tower& from, const Tower& to, const Elem& x) {
    if (!to.extends(from)) throw tower_mismatch("embed: not an extension");
    check_level(from, x, "embed");
    Elem e = x;
    for (int lvl = from.depth(); lvl < to.depth(); ++lvl) e = mk_pair(e, zero_level(lvl));
    return e;
}

std::optional<Elem> descend(const Tower& from, const Tower& to, const Elem& x) {
    if (!from.extends(to)) throw tower_mismatch("descend: not an extension");
    check_level(from, x, "descend");
    Elem e = x;
    for (int lvl = from.depth(); lvl > to.depth(); --lvl) {
        if (!is_zero_l(e.ext[1])) return std::nullopt;
        e = e.ext[0];
    }
    return e;
}

std::optional<Elem> e_sqrt(const Tower& T, const Elem& x) {
    check_level(T, x, "e_sqrt");
    return sqrt_l(T, T.depth(), x);
}

bool e_is_square(const Tower& T, const Elem& x) { return e_sqrt(T, x).has_value(); }

std::optional<Elem> wp_witness(const Tower& T, const Elem& x) {
    check_level(T, x, "wp_witness");
    return wp_witness_l(T, T.depth(), x);
}

std::pair<Elem, Elem> wp_reduce(const Tower& T, const Elem& x) {
    if (T.depth() != 0)
        throw unsupported_tower("wp_reduce: only ground towers GF(2^k) or GF(2^k)(t)");
    check_level(T, x, "wp_reduce");
    auto [c, w] = wp_reduce_rf(T.gf(), T.has_var(), x.base);
    return {Elem{c, {}}, Elem{w, {}}};
}

static std::string e_str_l(const Tower& T, int level, const Elem& x) {
    if (level == 0) return rf::to_string(T.gf(), x.base);
    // generator display name: per-kind index among the first `level` steps
    int idx = 0;
    for (int i = 0; i < level; ++i) {
        if (T.steps()[i].kind == T.steps()[level - 1].kind) ++idx;
    }
    std::string gen =
        (T.steps()[level - 1].kind == ExtStep::Kind::Inseparable ? "sqrt#" : "as#") +
        std::to_string(idx);
    std::string lo = e_str_l(T, level - 1, x.ext[0]);
    if (is_zero_l(x.ext[1])) return lo;
    std::string hi = e_str_l(T, level - 1, x.ext[1]);
    std::string hi_part = hi == "1" ? gen : "(" + hi + ")*" + gen;
    if (is_zero_l(x.ext[0])) return hi_part;
    return lo + " + " + hi_part;
}

std::string e_str(const Tower& T, const Elem& x) { return e_str_l(T, T.depth(), x); }

} // namespace qf2
