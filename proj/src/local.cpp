#include "qf2/local.hpp"

#include <algorithm>

namespace qf2 {

Place place_infinity() { return Place{true, {}}; }

Place place_finite(Poly p) {
    Place v{false, std::move(p)};
    if (pf::deg(v.p) < 1) throw std::invalid_argument("place_finite: constant polynomial");
    return v;
}

bool place_less(const Place& a, const Place& b) {
    if (a.infinite != b.infinite) return !a.infinite; // infinity sorts last
    if (pf::deg(a.p) != pf::deg(b.p)) return pf::deg(a.p) < pf::deg(b.p);
    for (int i = pf::deg(a.p); i >= 0; --i) {
        if (a.p[i] != b.p[i]) return a.p[i] < b.p[i];
    }
    return false;
}

std::string place_str(const Gf2k& F, const Place& v) {
    return v.infinite ? "inf" : pf::to_string(F, v.p);
}

std::vector<Place> enumerate_places(const Gf2k& F, const std::vector<RatFunc>& elems) {
    std::vector<Place> out;
    out.push_back(place_infinity());
    for (const RatFunc& e : elems) {
        if (rf::is_zero(e)) throw std::invalid_argument("enumerate_places: zero element");
        for (const Poly* part : {&e.num, &e.den}) {
            if (pf::deg(*part) < 1) continue;
            for (const auto& [p, m] : pf::factor(F, *part).factors) out.push_back(place_finite(p));
        }
    }
    std::sort(out.begin(), out.end(), place_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Arithmetic in the residue field: GF(2^k)[t]/p at a finite place, plain
// constants at infinity (p empty).
struct ResCtx {
    const Gf2k& F;
    Poly p; // empty => constants
    std::uint64_t Q;

    explicit ResCtx(const Gf2k& F_, const Place& v) : F(F_) {
        if (!v.infinite) p = v.p;
        Q = 1;
        for (int i = 0; i < (p.empty() ? 1 : pf::deg(p)); ++i) Q *= F.order();
    }
    Poly mul(const Poly& a, const Poly& b) const {
        return p.empty() ? pf::mul(F, a, b) : pf::mul_mod(F, a, b, p);
    }
    Poly inv(const Poly& a) const {
        if (pf::is_zero(a)) throw std::domain_error("residue field inverse of zero");
        if (p.empty()) return pf::constant(F.inv(a[0]));
        return pf::pow_mod(F, a, Q - 2, p);
    }
    Poly reduce(const Poly& a) const { return p.empty() ? a : pf::mod(F, a, p); }
};

using Series = std::vector<Poly>; // coeff of u^0 .. u^{n-1}

Series s_mul(const ResCtx& C, const Series& a, const Series& b, std::size_t n) {
    Series r(n, pf::zero());
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (pf::is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            if (pf::is_zero(b[j])) continue;
            r[i + j] = pf::add(r[i + j], C.mul(a[i], b[j]));
        }
    }
    return r;
}

Series s_inv(const ResCtx& C, const Series& a, std::size_t n) {
    Series r(n, pf::zero());
    Poly a0i = C.inv(a.at(0));
    r[0] = a0i;
    for (std::size_t m = 1; m < n; ++m) {
        Poly acc = pf::zero();
        for (std::size_t i = 1; i <= m && i < a.size(); ++i) {
            acc = pf::add(acc, C.mul(a[i], r[m - i]));
        }
        r[m] = C.mul(a0i, acc);
    }
    return r;
}

// Evaluate a polynomial with ground-field coefficients on a series.
Series s_eval(const ResCtx& C, const Poly& q, const Series& T, std::size_t n) {
    Series r(n, pf::zero());
    for (int i = pf::deg(q); i >= 0; --i) {
        r = s_mul(C, r, T, n);
        if (q[i] != 0) r[0] = pf::add(r[0], pf::constant(q[i]));
    }
    return r;
}

// Image of t in the completion at a finite place: the series T(u) with
// p(T(u)) = u and T(0) = class of t. Newton iteration; p' is nonzero since
// irreducible polynomials over a perfect field are separable.
Series uniformizer_image(const ResCtx& C, std::size_t n) {
    const Poly& p = C.p;
    Series T{C.reduce(pf::monomial(1, 1))};
    T.resize(n, pf::zero());
    if (pf::deg(p) == 1) {
        if (n > 1) T[1] = pf::one();
        return T;
    }
    Poly dp = pf::derivative(p);
    std::size_t k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        Series pt = s_eval(C, p, T, k);
        pt[1] = pf::add(pt[1], pf::one()); // p(T) - u
        Series corr = s_mul(C, pt, s_inv(C, s_eval(C, dp, T, k), k), k);
        for (std::size_t i = 0; i < k; ++i) T[i] = pf::add(T[i], corr[i]);
    }
    return T;
}

LaurentSeries from_parts(const ResCtx& C, Series ns, Series ds, int shift, int precision) {
    // strip valuations
    std::size_t vn = 0, vd = 0;
    while (vn < ns.size() && pf::is_zero(ns[vn])) ++vn;
    if (vn == ns.size()) return LaurentSeries{0, {}, precision};
    while (pf::is_zero(ds[vd])) ++vd;
    ns.erase(ns.begin(), ns.begin() + vn);
    ds.erase(ds.begin(), ds.begin() + vd);
    std::size_t n = static_cast<std::size_t>(precision);
    Series q = s_mul(C, ns, s_inv(C, ds, n), n);
    q.resize(n, pf::zero());
    return LaurentSeries{static_cast<int>(vn) - static_cast<int>(vd) + shift, std::move(q),
                         precision};
}

int poly_val_at(const Gf2k& F, const Poly& a, const Poly& p) {
    int v = 0;
    Poly r = a;
    for (;;) {
        auto [q, rem] = pf::divmod(F, r, p);
        if (!pf::is_zero(rem)) return v;
        ++v;
        r = q;
    }
}

} // namespace

LaurentSeries complete_at(const Gf2k& F, const RatFunc& x, const Place& v, int precision) {
    if (precision < 1) throw std::invalid_argument("complete_at: precision must be positive");
    ResCtx C(F, v);
    if (rf::is_zero(x)) return LaurentSeries{0, {}, precision};
    if (v.infinite) {
        int dn = pf::deg(x.num), dd = pf::deg(x.den);
        auto rev = [&](const Poly& a, int d) {
            Series s(static_cast<std::size_t>(d) + 1, pf::zero());
            for (int i = 0; i <= d; ++i) s[d - i] = pf::constant(a[i]);
            return s;
        };
        return from_parts(C, rev(x.num, dn), rev(x.den, dd), dd - dn, precision);
    }
    // work precision must cover the p-adic valuations of both parts
    int slack = poly_val_at(F, x.num, v.p) + poly_val_at(F, x.den, v.p);
    std::size_t n = static_cast<std::size_t>(precision + slack);
    Series T = uniformizer_image(C, n);
    return from_parts(C, s_eval(C, x.num, T, n), s_eval(C, x.den, T, n), 0, precision);
}

Poly residue(const Gf2k& F, const RatFunc& f, const RatFunc& g, const Place& v) {
    if (rf::is_zero(g)) throw std::invalid_argument("residue: g must be nonzero");
    if (rf::is_zero(f) || pf::deg(g.num) + pf::deg(g.den) == 0) return pf::zero();
    ResCtx C(F, v);
    for (int prec = 16; prec <= 1024; prec *= 2) {
        LaurentSeries fs = complete_at(F, f, v, prec);
        LaurentSeries gs = complete_at(F, g, v, prec + 1);
        if (fs.is_zero()) return pf::zero();
        // dg/du: exponent e keeps the coefficient of u^{e+1} when e+1 is odd
        int glead = gs.lead - 1;
        int gcount = static_cast<int>(gs.coef.size());
        // the u^{-1} coefficient of f * dg/du needs f through exponent -1-glead
        // and dg/du through -1-fs.lead
        bool f_ok = -1 - glead < fs.lead + static_cast<int>(fs.coef.size());
        bool g_ok = -1 - fs.lead < glead + gcount;
        if (!f_ok || !g_ok) continue;
        Poly acc = pf::zero();
        for (int i = fs.lead; i + glead <= -1; ++i) {
            int j = -1 - i; // exponent in dg/du
            if (i < fs.lead || i >= fs.lead + static_cast<int>(fs.coef.size())) continue;
            if (j < glead || j >= glead + gcount) continue;
            if ((j + 1) % 2 == 0) continue; // derivative kills even source exponents
            const Poly& fc = fs.coef[static_cast<std::size_t>(i - fs.lead)];
            const Poly& gc = gs.coef[static_cast<std::size_t>(j + 1 - gs.lead)];
            acc = pf::add(acc, C.mul(fc, gc));
        }
        return acc;
    }
    throw std::runtime_error("residue: precision cap exceeded");
}

int residue_field_trace(const Gf2k& F, const Place& v, const Poly& a) {
    if (v.infinite) return F.trace(pf::is_zero(a) ? 0 : a[0]);
    int d = pf::deg(v.p);
    Poly s = pf::zero();
    Poly x = pf::mod(F, a, v.p);
    for (int i = 0; i < F.degree() * d; ++i) {
        s = pf::add(s, x);
        x = pf::mul_mod(F, x, x, v.p);
    }
    if (pf::deg(s) > 0 || (!pf::is_zero(s) && s[0] != 0 && s[0] != 1))
        throw std::logic_error("residue_field_trace: not in GF(2)");
    return pf::is_zero(s) ? 0 : 1;
}

std::string LaurentSeries::str(const Gf2k& F) const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        if (pf::is_zero(coef[i])) continue;
        if (!first) out += " + ";
        first = false;
        int e = lead + static_cast<int>(i);
        std::string c = pf::to_string(F, coef[i], "r");
        if (e == 0) {
            out += c;
        } else {
            std::string upow = e == 1 ? "u" : "u^" + std::to_string(e);
            out += (c == "1") ? upow : "(" + c + ")*" + upow;
        }
    }
    if (first) out = "0";
    out += " + O(u^" + std::to_string(lead + static_cast<int>(coef.size())) + ")";
    return out;
}

} // namespace qf2
