#include "qf2/forms.hpp"

#include "qf2/brauer.hpp"
#include "qf2/model.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace qf2 {

QuadraticForm make_form(TowerPtr T, std::vector<std::pair<Elem, Elem>> blocks) {
    if (!T) throw std::invalid_argument("make_form: null tower");
    for (auto& [a, b] : blocks) {
        if (a.level() != T->depth() || b.level() != T->depth())
            throw tower_mismatch("make_form: coefficient level mismatch");
    }
    return QuadraticForm{std::move(T), std::move(blocks)};
}

QuadraticForm hyperbolic_plane(TowerPtr T) {
    Elem z = e_zero(*T);
    return make_form(std::move(T), {{z, z}});
}

BilinearForm make_bilinear(TowerPtr T, std::vector<Elem> diag) {
    for (const Elem& d : diag) {
        if (e_is_zero(d)) throw std::invalid_argument("make_bilinear: zero entry");
    }
    return BilinearForm{std::move(T), std::move(diag)};
}

Elem eval_form(const QuadraticForm& f, const Vec& v) {
    const Tower& T = *f.T;
    if (static_cast<int>(v.size()) != f.dim()) throw std::invalid_argument("eval_form: bad vector");
    Elem acc = e_zero(T);
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const Elem& x = v[2 * i];
        const Elem& y = v[2 * i + 1];
        Elem term = e_add(T, e_mul(T, f.blocks[i].first, e_sq(T, x)),
                          e_add(T, e_mul(T, x, y), e_mul(T, f.blocks[i].second, e_sq(T, y))));
        acc = e_add(T, acc, term);
    }
    return acc;
}

Elem polar(const QuadraticForm& f, const Vec& v, const Vec& w) {
    const Tower& T = *f.T;
    Vec s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = e_add(T, v[i], w[i]);
    return e_add(T, eval_form(f, s), e_add(T, eval_form(f, v), eval_form(f, w)));
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Elem& e) { return e_is_zero(e); });
}

namespace {

Vec zero_vec(const Tower& T, int n) { return Vec(static_cast<std::size_t>(n), e_zero(T)); }

Vec apply_witness(const Tower& T, const std::vector<Vec>& cols, const Vec& v) {
    Vec out = zero_vec(T, static_cast<int>(cols.front().size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (e_is_zero(v[j])) continue;
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = e_add(T, out[i], e_mul(T, v[j], cols[j][i]));
        }
    }
    return out;
}

} // namespace

bool verify_witness(const IsometryWitness& w) {
    const Tower& T = *w.source.T;
    int n = w.source.dim();
    if (w.target.dim() != n || static_cast<int>(w.cols.size()) != n) return false;
    auto basis_vec = [&](int j) {
        Vec v = zero_vec(T, n);
        v[static_cast<std::size_t>(j)] = e_one(T);
        return v;
    };
    // quadratic values on the standard basis and on all pairwise sums pin down
    // both Q and its polar form
    for (int j = 0; j < n; ++j) {
        Vec src = basis_vec(j);
        if (!(eval_form(w.target, apply_witness(T, w.cols, src)) == eval_form(w.source, src)))
            return false;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Vec src = basis_vec(i);
            src[static_cast<std::size_t>(j)] = e_one(T);
            if (!(eval_form(w.target, apply_witness(T, w.cols, src)) == eval_form(w.source, src)))
                return false;
        }
    }
    return true;
}

IsometryWitness identity_witness(const QuadraticForm& f) {
    const Tower& T = *f.T;
    int n = f.dim();
    std::vector<Vec> cols;
    for (int j = 0; j < n; ++j) {
        Vec c = zero_vec(T, n);
        c[static_cast<std::size_t>(j)] = e_one(T);
        cols.push_back(std::move(c));
    }
    return IsometryWitness{f, f, std::move(cols)};
}

IsometryWitness compose_witness(const IsometryWitness& first, const IsometryWitness& second) {
    const Tower& T = *first.source.T;
    std::vector<Vec> cols;
    for (const Vec& c : first.cols) cols.push_back(apply_witness(T, second.cols, c));
    return IsometryWitness{first.source, second.target, std::move(cols)};
}

QuadraticForm orth_sum(const QuadraticForm& a, const QuadraticForm& b) {
    if (!a.T->same_field(*b.T)) throw tower_mismatch("orth_sum: different towers");
    QuadraticForm r = a;
    r.blocks.insert(r.blocks.end(), b.blocks.begin(), b.blocks.end());
    return r;
}

QuadraticForm scale_form(const Elem& lambda, const QuadraticForm& f) {
    const Tower& T = *f.T;
    if (e_is_zero(lambda)) throw std::invalid_argument("scale_form: zero scalar");
    QuadraticForm r{f.T, {}};
    for (const auto& [a, b] : f.blocks) {
        r.blocks.emplace_back(e_mul(T, lambda, a), e_div(T, b, lambda));
    }
    return r;
}

QuadraticForm tensor(const BilinearForm& b, const QuadraticForm& f) {
    if (!b.T->same_field(*f.T)) throw tower_mismatch("tensor: different towers");
    QuadraticForm r{f.T, {}};
    for (const Elem& d : b.diag) {
        QuadraticForm s = scale_form(d, f);
        r.blocks.insert(r.blocks.end(), s.blocks.begin(), s.blocks.end());
    }
    return r;
}

QuadraticForm pfister(TowerPtr T, const std::vector<Elem>& slots, const Elem& v) {
    QuadraticForm f = make_form(T, {{e_one(*T), v}});
    for (auto it = slots.rbegin(); it != slots.rend(); ++it) {
        if (e_is_zero(*it)) throw std::invalid_argument("pfister: zero slot");
        f = tensor(make_bilinear(T, {e_one(*T), *it}), f);
    }
    return f;
}

ArfClass arf(const QuadraticForm& f) {
    const Tower& T = *f.T;
    Elem s = e_zero(T);
    for (const auto& [a, b] : f.blocks) s = e_add(T, s, e_mul(T, a, b));
    return ArfClass{f.T, s};
}

bool arf_trivial(const ArfClass& a) { return wp_witness(*a.T, a.rep).has_value(); }

bool arf_equal(const ArfClass& a, const ArfClass& b) {
    if (!a.T->same_field(*b.T)) throw tower_mismatch("arf_equal: different towers");
    return wp_witness(*a.T, e_add(*a.T, a.rep, b.rep)).has_value();
}

std::pair<QuadraticForm, IsometryWitness> block_relation(const QuadraticForm& f, BlockRule rule,
                                                         int pos, const Elem* param) {
    const Tower& T = *f.T;
    int n = static_cast<int>(f.blocks.size());
    if (pos < 0 || pos >= n || (rule == BlockRule::R3 && pos + 1 >= n))
        throw std::out_of_range("block_relation: position");
    std::size_t p = static_cast<std::size_t>(pos);
    QuadraticForm out = f;
    IsometryWitness w = identity_witness(f);
    auto set = [&](int col, int row, const Elem& val) {
        w.cols[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)] = val;
    };
    switch (rule) {
        case BlockRule::R1: {
            if (!param || e_is_zero(*param))
                throw std::invalid_argument("R1 needs a nonzero scalar");
            const Elem& l = *param;
            Elem l2 = e_sq(T, l);
            out.blocks[p].first = e_mul(T, f.blocks[p].first, l2);
            out.blocks[p].second = e_div(T, f.blocks[p].second, l2);
            set(2 * pos, 2 * pos, e_inv(T, l));
            set(2 * pos + 1, 2 * pos + 1, l);
            break;
        }
        case BlockRule::R2: {
            if (!param) throw std::invalid_argument("R2 needs a shift witness");
            if (!(f.blocks[p].first == e_one(T)))
                throw std::invalid_argument("R2 applies to blocks [1,x]");
            const Elem& sh = *param;
            out.blocks[p].second =
                e_add(T, f.blocks[p].second, e_add(T, e_sq(T, sh), sh));
            // (X,Y) -> (X + wY, Y)
            set(2 * pos + 1, 2 * pos, sh);
            break;
        }
        case BlockRule::R3: {
            const auto& [u, pp] = f.blocks[p];
            const auto& [v, q] = f.blocks[p + 1];
            out.blocks[p] = {u, e_add(T, pp, q)};
            out.blocks[p + 1] = {e_add(T, u, v), q};
            // e1 -> e1', f1 -> f1'+f2', e2 -> e1'+e2', f2 -> f2'
            set(2 * pos + 1, 2 * pos + 3, e_one(T));
            set(2 * pos + 2, 2 * pos, e_one(T));
            break;
        }
        case BlockRule::R4: {
            std::swap(out.blocks[p].first, out.blocks[p].second);
            set(2 * pos, 2 * pos, e_zero(T));
            set(2 * pos, 2 * pos + 1, e_one(T));
            set(2 * pos + 1, 2 * pos, e_one(T));
            set(2 * pos + 1, 2 * pos + 1, e_zero(T));
            break;
        }
    }
    w.target = out;
    return {out, std::move(w)};
}

std::pair<QuadraticForm, IsometryWitness> block_shift(const QuadraticForm& f, int pos,
                                                      const Elem& c) {
    const Tower& T = *f.T;
    if (pos < 0 || pos >= static_cast<int>(f.blocks.size()))
        throw std::out_of_range("block_shift: position");
    std::size_t p = static_cast<std::size_t>(pos);
    const Elem& u = f.blocks[p].first;
    QuadraticForm out = f;
    // [u,x] ~ [u, x + u c^2 + c] via (X,Y) -> (X + cY, Y)
    out.blocks[p].second =
        e_add(T, f.blocks[p].second, e_add(T, e_mul(T, u, e_sq(T, c)), c));
    IsometryWitness w = identity_witness(f);
    w.cols[static_cast<std::size_t>(2 * pos + 1)][static_cast<std::size_t>(2 * pos)] = c;
    w.target = out;
    return {out, std::move(w)};
}

// ---------------- symplectic reduction ----------------

std::pair<QuadraticForm, std::vector<Vec>> symplectic_blocks(const QuadraticForm& f,
                                                             std::vector<Vec> basis) {
    const Tower& T = *f.T;
    std::vector<std::pair<Elem, Elem>> blocks;
    std::vector<Vec> paired;
    std::vector<Vec> pool = std::move(basis);
    for (;;) {
        int ei = -1, fi = -1;
        Elem pairing;
        for (std::size_t i = 0; i < pool.size() && ei < 0; ++i) {
            if (vec_is_zero(pool[i])) continue;
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                Elem bij = polar(f, pool[i], pool[j]);
                if (!e_is_zero(bij)) {
                    ei = static_cast<int>(i);
                    fi = static_cast<int>(j);
                    pairing = bij;
                    break;
                }
            }
        }
        if (ei < 0) break;
        const Tower& Tw = T;
        Vec e = pool[static_cast<std::size_t>(ei)];
        Vec fv = pool[static_cast<std::size_t>(fi)];
        Elem inv = e_inv(Tw, pairing);
        for (Elem& c : fv) c = e_mul(Tw, c, inv); // b(e,f) = 1
        blocks.emplace_back(eval_form(f, e), eval_form(f, fv));
        paired.push_back(e);
        paired.push_back(fv);
        // project the rest into the orthogonal complement of span(e,f)
        std::vector<Vec> next;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (static_cast<int>(i) == ei || static_cast<int>(i) == fi) continue;
            Vec wv = pool[i];
            Elem ce = polar(f, wv, fv); // coefficient of e
            Elem cf = polar(f, wv, e);  // coefficient of f
            for (std::size_t r = 0; r < wv.size(); ++r) {
                wv[r] = e_add(Tw, wv[r],
                              e_add(Tw, e_mul(Tw, ce, e[r]), e_mul(Tw, cf, fv[r])));
            }
            next.push_back(std::move(wv));
        }
        pool = std::move(next);
    }
    for (const Vec& leftover : pool) {
        if (!vec_is_zero(leftover))
            throw std::logic_error("symplectic_blocks: degenerate polar form on span");
    }
    return {make_form(f.T, std::move(blocks)), std::move(paired)};
}

SplitOff split_hyperbolic(const QuadraticForm& f, const Vec& v) {
    const Tower& T = *f.T;
    if (vec_is_zero(v) || !e_is_zero(eval_form(f, v)))
        throw std::invalid_argument("split_hyperbolic: not an isotropic vector");
    int n = f.dim();
    // find u with b(v,u) != 0 among the standard basis
    Vec u;
    for (int j = 0; j < n; ++j) {
        Vec cand = zero_vec(T, n);
        cand[static_cast<std::size_t>(j)] = e_one(T);
        if (!e_is_zero(polar(f, v, cand))) {
            u = std::move(cand);
            break;
        }
    }
    if (u.empty()) throw std::logic_error("split_hyperbolic: vector in the radical");
    Elem bu = polar(f, v, u);
    Elem bui = e_inv(T, bu);
    for (Elem& c : u) c = e_mul(T, c, bui);
    // q = u + Q(u) v is the second isotropic vector of the plane
    Elem qu = eval_form(f, u);
    Vec q = u;
    for (std::size_t r = 0; r < q.size(); ++r)
        q[r] = e_add(T, q[r], e_mul(T, qu, v[r]));
    // project the standard basis into the complement
    std::vector<Vec> pool;
    for (int j = 0; j < n; ++j) {
        Vec wv = zero_vec(T, n);
        wv[static_cast<std::size_t>(j)] = e_one(T);
        Elem cv = polar(f, wv, q);
        Elem cq = polar(f, wv, v);
        for (std::size_t r = 0; r < wv.size(); ++r) {
            wv[r] = e_add(T, wv[r], e_add(T, e_mul(T, cv, v[r]), e_mul(T, cq, q[r])));
        }
        pool.push_back(std::move(wv));
    }
    auto [rest, paired] = symplectic_blocks(f, std::move(pool));
    return SplitOff{std::move(rest), v, std::move(q), std::move(paired)};
}

// ---------------- isotropy ----------------

namespace {

// block [a,b] isotropy handled exactly through wp membership of ab
std::optional<Vec> block_isotropy_witness(const QuadraticForm& f) {
    const Tower& T = *f.T;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const auto& [a, b] = f.blocks[i];
        Vec v = zero_vec(T, f.dim());
        if (e_is_zero(a)) {
            v[2 * i] = e_one(T);
            return v;
        }
        if (e_is_zero(b)) {
            v[2 * i + 1] = e_one(T);
            return v;
        }
        auto w = wp_witness(T, e_mul(T, a, b));
        if (w) {
            v[2 * i] = e_div(T, *w, a);
            v[2 * i + 1] = e_one(T);
            return v;
        }
    }
    return std::nullopt;
}

struct GroundForm {
    TowerPtr g; // GF(2^k)(s)
    std::vector<std::pair<RatFunc, RatFunc>> blk;
};

Elem ge(const RatFunc& r) { return Elem{r, {}}; }

int rf_degree(const RatFunc& r) { return std::max(pf::deg(r.num), pf::deg(r.den)); }

// enumerate polynomials of degree <= d over GF(2^k), lexicographic by index
class PolyEnum {
public:
    PolyEnum(const Gf2k& F, int maxdeg) : F_(F), maxdeg_(maxdeg) {
        total_ = 1;
        for (int i = 0; i <= maxdeg; ++i) total_ *= F.order();
    }
    std::uint64_t size() const { return total_; }
    Poly at(std::uint64_t idx) const {
        Poly p;
        for (int i = 0; i <= maxdeg_; ++i) {
            p.push_back(static_cast<gf_t>(idx % F_.order()));
            idx /= F_.order();
        }
        pf::trim(p);
        return p;
    }

private:
    const Gf2k& F_;
    int maxdeg_;
    std::uint64_t total_;
};

// Search x,y with A x^2 + xy + B y^2 = C z^2 for the cross-block strategies.
// Specifically: find a vector for [A,B] | [C,D] given that it is isotropic.
std::optional<std::array<RatFunc, 4>> pair_witness_search(const Gf2k& F, const TowerPtr& g,
                                                          const RatFunc& A, const RatFunc& B,
                                                          const RatFunc& C, const RatFunc& D,
                                                          int degbudget, std::uint64_t cap) {
    auto wp_g = [&](const RatFunc& x) -> std::optional<RatFunc> {
        auto w = wp_witness(*g, ge(x));
        if (!w) return std::nullopt;
        return w->base;
    };
    RatFunc zero = rf::zero(), one = rf::one();
    // y1 = y2 = 0: A/C a square
    {
        RatFunc q = rf::div(F, A, C);
        if (rf::is_square(F, q)) return std::array<RatFunc, 4>{one, zero, rf::sqrt(F, q), zero};
    }
    PolyEnum en(F, degbudget);
    std::uint64_t n = std::min<std::uint64_t>(en.size(), cap);
    // y1 = 0, y2 = 1: wp(C x2) = C A z^2 + C D
    for (std::uint64_t i = 0; i < n; ++i) {
        RatFunc z = rf::from_poly(en.at(i));
        if (rf::is_zero(z)) continue;
        RatFunc rhs = rf::add(F, rf::mul(F, rf::mul(F, C, A), rf::sq(F, z)), rf::mul(F, C, D));
        if (auto X = wp_g(rhs)) return std::array<RatFunc, 4>{z, zero, rf::div(F, *X, C), one};
    }
    // y2 = 0, y1 = 1: wp(A x1) = A C z^2 + A B
    for (std::uint64_t i = 0; i < n; ++i) {
        RatFunc z = rf::from_poly(en.at(i));
        if (rf::is_zero(z)) continue;
        RatFunc rhs = rf::add(F, rf::mul(F, rf::mul(F, A, C), rf::sq(F, z)), rf::mul(F, A, B));
        if (auto X = wp_g(rhs)) return std::array<RatFunc, 4>{rf::div(F, *X, A), one, z, zero};
    }
    // y2 = 1, y1 = y: wp(C x2) = C(A x1^2 + x1 y + B y^2 + D); enumerate x1, y
    std::uint64_t budget2 = cap;
    for (std::uint64_t i = 0; i < n && budget2; ++i) {
        RatFunc y = rf::from_poly(en.at(i));
        if (rf::is_zero(y)) continue;
        for (std::uint64_t j = 0; j < n && budget2; ++j, --budget2) {
            RatFunc x1 = rf::from_poly(en.at(j));
            RatFunc q1 = rf::add(
                F, rf::mul(F, A, rf::sq(F, x1)),
                rf::add(F, rf::mul(F, x1, y), rf::mul(F, B, rf::sq(F, y))));
            RatFunc rhs = rf::mul(F, C, rf::add(F, q1, D));
            if (auto X = wp_g(rhs))
                return std::array<RatFunc, 4>{x1, y, rf::div(F, *X, C), one};
        }
    }
    return std::nullopt;
}

SplitResult ground_pair_split(const TowerPtr& g, const RatFunc& A, const RatFunc& B,
                              const RatFunc& C, const RatFunc& D) {
    const Gf2k& F = g->gf();
    // trivial-Arf pair [A,B] | [C,D]: class is [AB, AC)
    QuaternionSymbol s = make_symbol(g, ge(rf::mul(F, A, B)), ge(rf::mul(F, A, C)));
    return split_test(s);
}

} // namespace

IsotropyResult is_isotropic(const QuadraticForm& f, int budget) {
    const Tower& T = *f.T;
    if (f.blocks.empty())
        return {IsotropyResult::Kind::Anisotropic, {}, "zero-dimensional form"};

    if (auto v = block_isotropy_witness(f))
        return {IsotropyResult::Kind::Isotropic, *v, ""};

    // from here on every block [a,b] has a,b nonzero and ab outside wp
    if (T.is_finite_field()) {
        if (f.blocks.size() >= 2) {
            Vec v = zero_vec(T, f.dim());
            v[0] = e_one(T);
            Elem ratio = e_div(T, f.blocks[0].first, f.blocks[1].first);
            auto r = e_sqrt(T, ratio);
            v[2] = *r; // finite fields of characteristic 2 are perfect
            return {IsotropyResult::Kind::Isotropic, v, ""};
        }
        return {IsotropyResult::Kind::Anisotropic, {}, "binary form with nontrivial Arf"};
    }

    if (f.blocks.size() == 1)
        return {IsotropyResult::Kind::Anisotropic, {}, "binary form with nontrivial Arf"};

    auto model = RationalModel::build(f.T);
    if (!model)
        return {IsotropyResult::Kind::Unknown, {}, "no rational model for the tower"};

    const Gf2k& F = T.gf();
    GroundForm gf{model->ground, {}};
    for (const auto& [a, b] : f.blocks)
        gf.blk.emplace_back(model->to_model(a), model->to_model(b));

    int maxdeg = 0;
    for (const auto& [a, b] : gf.blk)
        maxdeg = std::max({maxdeg, rf_degree(a), rf_degree(b)});
    if (budget < 0) budget = 2 * maxdeg + 4;

    auto lift_vec = [&](std::size_t i, std::size_t j, const std::array<RatFunc, 4>& w) {
        Vec v = zero_vec(T, f.dim());
        v[2 * i] = model->from_model(w[0]);
        v[2 * i + 1] = model->from_model(w[1]);
        v[2 * j] = model->from_model(w[2]);
        v[2 * j + 1] = model->from_model(w[3]);
        return v;
    };

    bool known_isotropic = false;
    bool all_pairs_decided = true;
    bool some_pair_trivial_arf = false;
    for (std::size_t i = 0; i < gf.blk.size(); ++i) {
        for (std::size_t j = i + 1; j < gf.blk.size(); ++j) {
            const auto& [A, B] = gf.blk[i];
            const auto& [C, D] = gf.blk[j];
            RatFunc d = rf::add(F, rf::mul(F, A, B), rf::mul(F, C, D));
            if (!wp_witness(*gf.g, ge(d))) {
                all_pairs_decided = false; // nontrivial pair Arf: no split criterion here
                continue;
            }
            some_pair_trivial_arf = true;
            SplitResult sr = ground_pair_split(gf.g, A, B, C, D);
            if (sr == SplitResult::Split) {
                known_isotropic = true;
                for (int deg = 1; deg <= std::max(2, budget / 2); ++deg) {
                    auto w = pair_witness_search(F, gf.g, A, B, C, D, deg, 4096);
                    if (w) {
                        Vec v = lift_vec(i, j, *w);
                        if (!e_is_zero(eval_form(f, v)))
                            throw std::logic_error("is_isotropic: witness verification failed");
                        return {IsotropyResult::Kind::Isotropic, v, ""};
                    }
                }
            } else if (sr == SplitResult::Unknown) {
                all_pairs_decided = false;
            }
        }
    }

    if (f.blocks.size() == 2 && some_pair_trivial_arf && all_pairs_decided && !known_isotropic)
        return {IsotropyResult::Kind::Anisotropic, {},
                "dim 4, trivial Arf, e2 nonsplit (Schmid invariants)"};

    if (f.blocks.size() == 2 && !some_pair_trivial_arf) {
        // dim 4, nontrivial Arf delta: isotropic iff e2(f | [1,delta]) is split
        // by F(wp^{-1}(delta))
        const auto& [A, B] = gf.blk[0];
        const auto& [C, D] = gf.blk[1];
        RatFunc delta = rf::add(F, rf::mul(F, A, B), rf::mul(F, C, D));
        QuadraticForm six = make_form(
            gf.g, {{ge(A), ge(B)}, {ge(C), ge(D)}, {ge(rf::one()), ge(delta)}});
        BrauerClass Cc = e2(six);
        try {
            TowerPtr Kd = gf.g->adjoin_artin_schreier(ge(delta));
            TriBool tv = class_trivial(restrict_class(Cc, Kd));
            if (tv == TriBool::No)
                return {IsotropyResult::Kind::Anisotropic, {},
                        "dim 4, nontrivial Arf: obstruction over F(wp^{-1}(Arf))"};
            if (tv == TriBool::Yes) known_isotropic = true;
        } catch (const unsupported_tower&) {
        }
    }

    // last resort: bounded lexicographic search over polynomial vectors
    {
        int n = f.dim();
        for (int deg = 0; deg <= std::min(budget, 2); ++deg) {
            PolyEnum en(F, deg);
            std::uint64_t per = en.size();
            double total_d = 1;
            for (int c = 0; c < n; ++c) total_d *= static_cast<double>(per);
            if (total_d > 2e5) break;
            std::uint64_t total = 1;
            for (int c = 0; c < n; ++c) total *= per;
            for (std::uint64_t idx = 1; idx < total; ++idx) {
                std::uint64_t rem = idx;
                Vec v = zero_vec(T, n);
                bool nz = false;
                RatFunc acc = rf::zero();
                std::vector<RatFunc> coords(static_cast<std::size_t>(n));
                for (int c = 0; c < n; ++c) {
                    coords[static_cast<std::size_t>(c)] = rf::from_poly(en.at(rem % per));
                    rem /= per;
                    nz = nz || !rf::is_zero(coords[static_cast<std::size_t>(c)]);
                }
                if (!nz) continue;
                acc = rf::zero();
                for (std::size_t bi = 0; bi < gf.blk.size(); ++bi) {
                    const RatFunc& x = coords[2 * bi];
                    const RatFunc& y = coords[2 * bi + 1];
                    RatFunc term = rf::add(
                        F, rf::mul(F, gf.blk[bi].first, rf::sq(F, x)),
                        rf::add(F, rf::mul(F, x, y),
                                rf::mul(F, gf.blk[bi].second, rf::sq(F, y))));
                    acc = rf::add(F, acc, term);
                }
                if (rf::is_zero(acc)) {
                    for (int c = 0; c < n; ++c)
                        v[static_cast<std::size_t>(c)] =
                            model->from_model(coords[static_cast<std::size_t>(c)]);
                    return {IsotropyResult::Kind::Isotropic, v, ""};
                }
            }
        }
    }

    if (known_isotropic)
        return {IsotropyResult::Kind::Unknown, {},
                "isotropic by invariants, but no witness within the search budget"};
    return {IsotropyResult::Kind::Unknown, {}, "search budget exhausted"};
}

// ---------------- hyperbolicity and Witt reduction ----------------

HypResult is_hyperbolic(const QuadraticForm& f) {
    const Tower& T = *f.T;
    ArfClass a = arf(f);
    if (!arf_trivial(a))
        return {HypResult::Kind::No, {}, "nontrivial Arf invariant"};
    if (f.blocks.empty()) return {HypResult::Kind::Yes, {}, "empty form"};

    // strip blocks that are hyperbolic planes on their own
    QuadraticForm rest{f.T, {}};
    std::vector<Vec> chain;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const auto& [x, y] = f.blocks[i];
        bool planar = e_is_zero(x) || e_is_zero(y) ||
                      wp_witness(T, e_mul(T, x, y)).has_value();
        if (planar) {
            Vec v = zero_vec(T, f.dim());
            if (e_is_zero(x)) {
                v[2 * i] = e_one(T);
            } else if (e_is_zero(y)) {
                v[2 * i + 1] = e_one(T);
            } else {
                v[2 * i] = e_div(T, *wp_witness(T, e_mul(T, x, y)), x);
                v[2 * i + 1] = e_one(T);
            }
            chain.push_back(std::move(v));
        } else {
            rest.blocks.push_back(f.blocks[i]);
        }
    }
    if (rest.blocks.empty()) return {HypResult::Kind::Yes, std::move(chain), "blockwise"};

    if (T.is_finite_field())
        return {HypResult::Kind::Yes, std::move(chain),
                "finite field: even dimension with trivial Arf"};

    BrauerClass c2 = e2(rest);
    TriBool t = class_trivial(c2);
    if (t == TriBool::No)
        return {HypResult::Kind::No, {}, "nontrivial Clifford invariant e2"};
    if (t == TriBool::Unknown)
        return {HypResult::Kind::Unknown, {}, "e2 triviality undecided for this tower"};
    if (rest.dim() <= 6)
        return {HypResult::Kind::Yes, std::move(chain),
                "trivial Arf and e2, dim <= 6 (Hauptsatz)"};
    if (RationalModel::build(f.T))
        return {HypResult::Kind::Yes, std::move(chain),
                "trivial Arf and e2 over a rational function field (I^3 = 0)"};
    return {HypResult::Kind::Unknown, {}, "dim >= 8 over an unmodelled tower"};
}

WittDecomposition witt_reduce(const QuadraticForm& f) {
    WittDecomposition out{f, 0, true};
    for (;;) {
        if (out.anisotropic.blocks.empty()) return out;
        IsotropyResult r = is_isotropic(out.anisotropic);
        if (r.kind == IsotropyResult::Kind::Anisotropic) return out;
        if (r.kind == IsotropyResult::Kind::Unknown) {
            out.complete = false;
            return out;
        }
        SplitOff s = split_hyperbolic(out.anisotropic, r.witness);
        out.anisotropic = s.rest;
        ++out.hyperbolic_count;
    }
}

TriBool equivalent(const QuadraticForm& a, const QuadraticForm& b) {
    if (!a.T->same_field(*b.T)) throw tower_mismatch("equivalent: different towers");
    if (a.dim() != b.dim()) return TriBool::No;
    HypResult h = is_hyperbolic(orth_sum(a, b));
    switch (h.kind) {
        case HypResult::Kind::Yes: return TriBool::Yes;
        case HypResult::Kind::No: return TriBool::No;
        default: return TriBool::Unknown;
    }
}

QuadraticForm restrict_form(const QuadraticForm& f, TowerPtr K) {
    if (!K->extends(*f.T)) throw tower_mismatch("restrict_form: not an extension");
    QuadraticForm r{K, {}};
    for (const auto& [a, b] : f.blocks)
        r.blocks.emplace_back(embed(*f.T, *K, a), embed(*f.T, *K, b));
    return r;
}

std::string form_str(const QuadraticForm& f) {
    if (f.blocks.empty()) return "<empty>";
    std::string s;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        if (i) s += " _|_ ";
        s += "[" + e_str(*f.T, f.blocks[i].first) + ", " + e_str(*f.T, f.blocks[i].second) + "]";
    }
    return s;
}

} // namespace qf2
