#include "qf2/brauer.hpp"

#include "qf2/model.hpp"

#include <algorithm>

namespace qf2 {

namespace {

bool is_ground_rational(const Tower& T) { return T.depth() == 0 && T.has_var(); }

std::string symbol_key(const QuaternionSymbol& q) {
    return e_str(*q.T, q.a) + "|" + e_str(*q.T, q.b);
}

bool symbol_same(const QuaternionSymbol& x, const QuaternionSymbol& y) {
    return x.a == y.a && x.b == y.b;
}

} // namespace

QuaternionSymbol make_symbol(TowerPtr T, Elem a, Elem b) {
    if (e_is_zero(b)) throw std::invalid_argument("make_symbol: b must be nonzero");
    const Tower& Tw = *T;
    if (is_ground_rational(Tw)) {
        a = wp_reduce(Tw, a).first;
        const Gf2k& F = Tw.gf();
        Poly P = pf::mul(F, b.base.num, b.base.den);
        auto sp = pf::sqfree_split(F, P);
        b = Elem{rf::from_poly(sp.sqfree), {}};
    } else if (Tw.depth() == 0) {
        // finite ground field: wp has index 2, squares are everything
        a = wp_reduce(Tw, a).first;
        b = e_one(Tw);
    } else {
        if (wp_witness(Tw, a)) a = e_zero(Tw);
        // [c^2, b) = [c, b): peel squares off a until it stops being one
        for (;;) {
            auto r = e_sqrt(Tw, a);
            if (!r || *r == a) break;
            a = *r;
            if (wp_witness(Tw, a)) {
                a = e_zero(Tw);
                break;
            }
        }
        if (e_is_square(Tw, b)) b = e_one(Tw);
    }
    return QuaternionSymbol{std::move(T), std::move(a), std::move(b)};
}

BrauerClass make_class(TowerPtr T, std::vector<QuaternionSymbol> symbols) {
    std::vector<QuaternionSymbol> out;
    for (QuaternionSymbol& s : symbols) {
        if (!s.T->same_field(*T)) throw tower_mismatch("make_class: symbol tower mismatch");
        QuaternionSymbol c = make_symbol(T, s.a, s.b);
        if (e_is_zero(c.a) || c.b == e_one(*T)) continue; // split symbol
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const QuaternionSymbol& x, const QuaternionSymbol& y) {
        return symbol_key(x) < symbol_key(y);
    });
    return BrauerClass{std::move(T), std::move(out)};
}

BrauerClass trivial_class(TowerPtr T) { return BrauerClass{std::move(T), {}}; }

BrauerClass class_add(const BrauerClass& a, const BrauerClass& b) {
    if (!a.T->same_field(*b.T)) throw tower_mismatch("class_add: different towers");
    std::vector<QuaternionSymbol> s = a.symbols;
    s.insert(s.end(), b.symbols.begin(), b.symbols.end());
    return make_class(a.T, std::move(s));
}

BrauerClass symbol_simplify(const BrauerClass& c) {
    const Tower& T = *c.T;
    std::vector<QuaternionSymbol> cur = make_class(c.T, c.symbols).symbols;
    bool changed = true;
    while (changed) {
        changed = false;
        // 2-torsion: drop equal pairs
        for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                if (symbol_same(cur[i], cur[j])) {
                    cur.erase(cur.begin() + static_cast<long>(j));
                    cur.erase(cur.begin() + static_cast<long>(i));
                    changed = true;
                    break;
                }
            }
        }
        if (changed) continue;
        // biadditivity: same b -> add the a's; same a -> multiply the b's
        for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                if (cur[i].b == cur[j].b) {
                    Elem na = e_add(T, cur[i].a, cur[j].a);
                    Elem nb = cur[i].b;
                    cur.erase(cur.begin() + static_cast<long>(j));
                    cur.erase(cur.begin() + static_cast<long>(i));
                    cur.push_back(QuaternionSymbol{c.T, na, nb});
                    changed = true;
                    break;
                }
                if (cur[i].a == cur[j].a) {
                    Elem na = cur[i].a;
                    Elem nb = e_mul(T, cur[i].b, cur[j].b);
                    cur.erase(cur.begin() + static_cast<long>(j));
                    cur.erase(cur.begin() + static_cast<long>(i));
                    cur.push_back(QuaternionSymbol{c.T, na, nb});
                    changed = true;
                    break;
                }
            }
        }
        if (changed) cur = make_class(c.T, std::move(cur)).symbols;
    }
    return BrauerClass{c.T, std::move(cur)};
}

int local_invariant(const QuaternionSymbol& q, const Place& v) {
    const Tower& T = *q.T;
    if (!is_ground_rational(T)) throw unsupported_tower("local_invariant: needs GF(2^k)(t)");
    QuaternionSymbol s = make_symbol(q.T, q.a, q.b);
    if (e_is_zero(s.a) || s.b == e_one(T)) return 0;
    const Gf2k& F = T.gf();
    RatFunc f = rf::div(F, s.a.base, s.b.base);
    return residue_field_trace(F, v, residue(F, f, s.b.base, v));
}

std::vector<std::pair<Place, int>> invariant_vector(const BrauerClass& c) {
    const Tower& T = *c.T;
    if (!is_ground_rational(T)) throw unsupported_tower("invariant_vector: needs GF(2^k)(t)");
    const Gf2k& F = T.gf();
    BrauerClass cc = make_class(c.T, c.symbols);
    std::vector<RatFunc> support;
    for (const QuaternionSymbol& s : cc.symbols) {
        support.push_back(s.b.base);
        if (!rf::is_zero(s.a.base) && pf::deg(s.a.base.den) > 0) support.push_back(s.a.base);
    }
    std::vector<std::pair<Place, int>> out;
    for (const Place& v : enumerate_places(F, support)) {
        int inv = 0;
        for (const QuaternionSymbol& s : cc.symbols) inv ^= local_invariant(s, v);
        out.emplace_back(v, inv);
    }
    return out;
}

namespace {

// map a class over a modelled tower down to its rational model
BrauerClass to_ground_class(const RationalModel& M, const BrauerClass& c) {
    std::vector<QuaternionSymbol> syms;
    for (const QuaternionSymbol& s : c.symbols) {
        RatFunc a = M.to_model(s.a);
        RatFunc b = M.to_model(s.b);
        if (rf::is_zero(b)) throw std::logic_error("to_ground_class: zero b image");
        syms.push_back(QuaternionSymbol{M.ground, Elem{a, {}}, Elem{b, {}}});
    }
    return make_class(M.ground, std::move(syms));
}

} // namespace

TriBool class_trivial(const BrauerClass& c) {
    const Tower& T = *c.T;
    BrauerClass s = symbol_simplify(c);
    if (s.symbols.empty()) return TriBool::Yes;
    if (T.is_finite_field()) return TriBool::Yes; // finite fields have trivial Brauer group
    if (is_ground_rational(T)) {
        for (const auto& [v, inv] : invariant_vector(s)) {
            if (inv != 0) return TriBool::No;
        }
        return TriBool::Yes;
    }
    if (auto M = RationalModel::build(c.T)) return class_trivial(to_ground_class(*M, s));
    return TriBool::Unknown;
}

TriBool class_equal(const BrauerClass& a, const BrauerClass& b) {
    if (!a.T->same_field(*b.T)) throw tower_mismatch("class_equal: different towers");
    return class_trivial(class_add(a, b));
}

SplitResult split_test(const QuaternionSymbol& q) {
    const Tower& T = *q.T;
    QuaternionSymbol s = make_symbol(q.T, q.a, q.b);
    if (e_is_zero(s.a) || s.b == e_one(T)) return SplitResult::Split;
    if (T.is_finite_field()) return SplitResult::Split;
    TriBool t = class_trivial(BrauerClass{q.T, {s}});
    if (t == TriBool::Yes) return SplitResult::Split;
    if (t == TriBool::No) return SplitResult::Nonsplit;
    // unmodelled tower: fall back to the norm-form criterion
    HypResult h = is_hyperbolic(pfister(q.T, {s.b}, s.a));
    if (h.kind == HypResult::Kind::Yes) return SplitResult::Split;
    if (h.kind == HypResult::Kind::No) return SplitResult::Nonsplit;
    return SplitResult::Unknown;
}

BrauerClass frobenius_map(const BrauerClass& c, TowerPtr F) {
    const Tower& K = *c.T;
    if (!K.extends(*F) || K.depth() != F->depth() + 1 ||
        K.steps().back().kind != ExtStep::Kind::Inseparable)
        throw tower_mismatch("frobenius_map: K must be F(sqrt b)");
    std::vector<QuaternionSymbol> out;
    for (const QuaternionSymbol& s : c.symbols) {
        auto x2 = descend(K, *F, e_sq(K, s.a));
        auto y2 = descend(K, *F, e_sq(K, s.b));
        if (!x2 || !y2) throw std::logic_error("frobenius_map: squares must lie in the base");
        out.push_back(QuaternionSymbol{F, *x2, *y2});
    }
    return make_class(F, std::move(out));
}

BrauerClass restrict_class(const BrauerClass& c, TowerPtr K) {
    if (!K->extends(*c.T)) throw tower_mismatch("restrict_class: not an extension");
    std::vector<QuaternionSymbol> out;
    for (const QuaternionSymbol& s : c.symbols) {
        out.push_back(QuaternionSymbol{K, embed(*c.T, *K, s.a), embed(*c.T, *K, s.b)});
    }
    return make_class(K, std::move(out));
}

BrauerClass e2(const QuadraticForm& f) {
    const Tower& T = *f.T;
    if (f.dim() % 2 != 0) throw std::invalid_argument("e2: odd dimension");
    ArfClass a = arf(f);
    if (!arf_trivial(a)) throw std::invalid_argument("e2: nontrivial Arf invariant");
    std::vector<std::pair<Elem, Elem>> blk;
    for (const auto& [x, y] : f.blocks) {
        if (e_is_zero(x) || e_is_zero(y)) continue; // hyperbolic contribution
        blk.push_back({x, y});
    }
    if (blk.size() <= 1) return trivial_class(f.T);
    // telescoping pair decomposition: with partial Arf sums d_i, the class is
    // sum over i < n of [d_i, a_i * a_{i+1})
    std::vector<QuaternionSymbol> syms;
    Elem d = e_zero(T);
    for (std::size_t i = 0; i + 1 < blk.size(); ++i) {
        d = e_add(T, d, e_mul(T, blk[i].first, blk[i].second));
        Elem bpart = e_mul(T, blk[i].first, blk[i + 1].first);
        syms.push_back(QuaternionSymbol{f.T, d, bpart});
    }
    return symbol_simplify(make_class(f.T, std::move(syms)));
}

E2Report e2_well_defined_check(const QuadraticForm& f, const QuadraticForm& g) {
    E2Report r{equivalent(f, g), TriBool::Unknown, e2(f), e2(g)};
    r.classes_equal = class_equal(r.left, r.right);
    return r;
}

std::optional<std::pair<Elem, Elem>> norm_equation_search(TowerPtr T, const Elem& a, const Elem& b,
                                                          int budget) {
    const Tower& Tw = *T;
    if (Tw.depth() != 0) throw unsupported_tower("norm_equation_search: ground towers only");
    // x^2 + xy + a y^2 = b
    if (auto r = e_sqrt(Tw, b)) return std::make_pair(*r, e_zero(Tw)); // y = 0
    if (!Tw.has_var()) {
        const Gf2k& F = Tw.gf();
        for (gf_t x = 0; x < F.order(); ++x) {
            for (gf_t y = 0; y < F.order(); ++y) {
                gf_t av = e_is_zero(a) ? 0 : a.base.num[0];
                gf_t bv = e_is_zero(b) ? 0 : b.base.num[0];
                gf_t val = F.add(F.add(F.sq(x), F.mul(x, y)), F.mul(av, F.sq(y)));
                if (val == bv) return std::make_pair(e_const(Tw, x), e_const(Tw, y));
            }
        }
        return std::nullopt;
    }
    // a in the Artin-Schreier image: the quadratic algebra is split F x F and
    // every b is a norm. With u = x + wy the norm factors as u(u + y); take
    // u = 1, y = 1 + b.
    if (auto w = wp_witness(Tw, a)) {
        Elem y = e_add(Tw, e_one(Tw), b);
        Elem x = e_add(Tw, e_one(Tw), e_mul(Tw, *w, y));
        return std::make_pair(x, y);
    }
    // Constructive route: an isotropic vector of <<b, a]] = [1,a] | [b, a/b]
    // yields z1, z2 in F[th]/(th^2+th+a) with N(z1) = b N(z2), z2 != 0 (z2 = 0
    // or N(z2) = 0 would force a into the Artin-Schreier image, excluded
    // above), and then N(z1 conj(z2) / N(z2)) = b.
    try {
        IsotropyResult iso = is_isotropic(pfister(T, {b}, a), budget);
        if (iso.kind == IsotropyResult::Kind::Anisotropic) return std::nullopt;
        if (iso.kind == IsotropyResult::Kind::Isotropic) {
            auto norm = [&](const Elem& x, const Elem& y) {
                return e_add(Tw, e_add(Tw, e_sq(Tw, x), e_mul(Tw, x, y)),
                             e_mul(Tw, a, e_sq(Tw, y)));
            };
            // the second block is [b, a/b] = b * N(x2, y2/b) in norm coordinates
            Elem x1 = iso.witness[0], y1 = iso.witness[1];
            Elem x2 = iso.witness[2], y2 = e_div(Tw, iso.witness[3], b);
            Elem n2 = norm(x2, y2);
            // z1 * conj(z2): conj(x + y th) = (x + y) + y th
            Elem c = e_add(Tw, x2, y2);
            Elem zx = e_add(Tw, e_mul(Tw, x1, c), e_mul(Tw, a, e_mul(Tw, y1, y2)));
            Elem zy = e_add(Tw, e_add(Tw, e_mul(Tw, x1, y2), e_mul(Tw, y1, c)),
                            e_mul(Tw, y1, y2));
            Elem x = e_div(Tw, zx, n2);
            Elem y = e_div(Tw, zy, n2);
            if (norm(x, y) == b) return std::make_pair(x, y);
        }
    } catch (const std::exception&) {
        // isotropy search gave up; fall back to direct enumeration
    }
    const Gf2k& F = Tw.gf();
    // x = y*w: wp(w) = a + b / y^2; enumerate y among polynomials and inverse
    // polynomials of bounded degree
    std::uint64_t per = 1;
    for (int i = 0; i <= budget; ++i) per *= F.order();
    for (int invert = 0; invert < 2; ++invert) {
        for (std::uint64_t idx = 1; idx < per; ++idx) {
            Poly p;
            std::uint64_t r = idx;
            for (int i = 0; i <= budget; ++i) {
                p.push_back(static_cast<gf_t>(r % F.order()));
                r /= F.order();
            }
            pf::trim(p);
            if (pf::is_zero(p)) continue;
            RatFunc y = rf::from_poly(p);
            if (invert) y = rf::inv(F, y);
            RatFunc rhs = rf::add(F, a.base, rf::div(F, b.base, rf::sq(F, y)));
            auto w = wp_witness(Tw, Elem{rhs, {}});
            if (w) {
                RatFunc x = rf::mul(F, y, w->base);
                return std::make_pair(Elem{x, {}}, Elem{y, {}});
            }
        }
    }
    return std::nullopt;
}

std::string symbol_str(const QuaternionSymbol& q) {
    return "[" + e_str(*q.T, q.a) + ", " + e_str(*q.T, q.b) + ")";
}

std::string class_str(const BrauerClass& c) {
    if (c.symbols.empty()) return "{trivial}";
    std::string s = "{";
    for (std::size_t i = 0; i < c.symbols.size(); ++i) {
        if (i) s += " + ";
        s += symbol_str(c.symbols[i]);
    }
    return s + "}";
}

} // namespace qf2
