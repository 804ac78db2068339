#include "qf2/model.hpp"

namespace qf2 {

namespace {

RatFunc img_rec(const Gf2k& F, const RatFunc& t_image, const std::vector<RatFunc>& gens,
                const Elem& x, int level) {
    if (level == 0) return rf::subst(F, x.base, t_image);
    RatFunc lo = img_rec(F, t_image, gens, x.ext[0], level - 1);
    RatFunc hi = img_rec(F, t_image, gens, x.ext[1], level - 1);
    return rf::add(F, lo, rf::mul(F, hi, gens[static_cast<std::size_t>(level) - 1]));
}

Elem eval_poly_at(const Tower& T, const Poly& p, const Elem& x) {
    Elem r = e_zero(T);
    for (int i = pf::deg(p); i >= 0; --i) {
        r = e_mul(T, r, x);
        if (p[static_cast<std::size_t>(i)] != 0)
            r = e_add(T, r, e_const(T, p[static_cast<std::size_t>(i)]));
    }
    return r;
}

Elem eval_rf_at(const Tower& Ki, const Elem& pre, const RatFunc& f) {
    Elem n = eval_poly_at(Ki, f.num, pre);
    Elem d = eval_poly_at(Ki, f.den, pre);
    return e_div(Ki, n, d);
}

} // namespace

RatFunc RationalModel::to_model(const Elem& x) const {
    return img_rec(tower->gf(), t_image, gen_image, x, tower->depth());
}

Elem RationalModel::from_model(const RatFunc& f) const {
    return eval_rf_at(*tower, var_preimage, f);
}

std::optional<RationalModel> RationalModel::build(TowerPtr T) {
    if (!T || !T->has_var()) return std::nullopt;
    const Gf2k& F = T->gf();

    RationalModel M;
    M.tower = T;
    M.ground = Tower::rational(F.degree());
    M.t_image = rf::var();
    M.gen_image.clear();

    TowerPtr Ki = Tower::rational(F.degree());
    Elem pre = e_var(*Ki); // preimage of the running model variable

    auto resubst = [&](const RatFunc& repl) {
        M.t_image = rf::subst(F, M.t_image, repl);
        for (RatFunc& g : M.gen_image) g = rf::subst(F, g, repl);
    };

    try {
        for (int i = 0; i < T->depth(); ++i) {
            const ExtStep& st = T->steps()[static_cast<std::size_t>(i)];
            RatFunc gi = img_rec(F, M.t_image, M.gen_image, st.gen, i);
            if (st.kind == ExtStep::Kind::Inseparable) {
                // gi = u * S * (C/den)^2 with S monic squarefree
                Poly P = pf::mul(F, gi.num, gi.den);
                auto sp = pf::sqfree_split(F, P);
                if (pf::deg(sp.sqfree) != 1) return std::nullopt; // positive genus
                gf_t v = sp.sqfree[0];
                // old variable s = r^2 + v in the new variable r
                RatFunc repl = rf::add(F, rf::sq(F, rf::var()), rf::constant(v));
                resubst(repl);
                RatFunc cq = rf::make(F, sp.cofactor, gi.den);
                RatFunc gnew = rf::mul(F, rf::constant(F.sqrt(sp.unit)),
                                       rf::mul(F, rf::subst(F, cq, repl), rf::var()));
                M.gen_image.push_back(gnew);
                TowerPtr Kn = Ki->adjoin_sqrt(st.gen);
                // new variable upstairs: sqrt(old model var + v)
                Elem arg = e_add(*Kn, embed(*Ki, *Kn, pre), e_const(*Kn, v));
                auto r = e_sqrt(*Kn, arg);
                if (!r) return std::nullopt;
                pre = *r;
                Ki = Kn;
            } else {
                auto [canon, w] = wp_reduce(*M.ground, Elem{gi, {}});
                const RatFunc& g = canon.base;
                if (pf::deg(g.den) != 0 || pf::deg(g.num) != 1) return std::nullopt;
                gf_t c1 = g.num[1], c0 = g.num.size() > 0 ? g.num[0] : 0;
                // old variable s = (rho^2 + rho + c0) / c1
                RatFunc repl = rf::make(
                    F, pf::add(pf::add(pf::monomial(1, 2), pf::monomial(1, 1)), pf::constant(c0)),
                    pf::constant(c1));
                RatFunc wimg = rf::subst(F, w.base, repl);
                resubst(repl);
                M.gen_image.push_back(rf::add(F, rf::var(), wimg));
                TowerPtr Kn = Ki->adjoin_artin_schreier(st.gen);
                Elem pw = eval_rf_at(*Ki, pre, w.base);
                pre = e_add(*Kn, e_gen(*Kn, i), embed(*Ki, *Kn, pw));
                Ki = Kn;
            }
        }
    } catch (const unsupported_tower&) {
        return std::nullopt;
    }
    M.var_preimage = pre;
    return M;
}

} // namespace qf2
