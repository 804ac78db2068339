#include "qf2/transfer.hpp"

#include <algorithm>
#include <set>

namespace qf2 {

namespace {

Elem unit_vec_entry(const Tower& K, bool on) { return on ? e_one(K) : e_zero(K); }

Vec scale_vec(const Tower& K, const Elem& c, const Vec& v) {
    Vec out;
    out.reserve(v.size());
    for (const Elem& x : v) out.push_back(e_mul(K, c, x));
    return out;
}

Vec add_vec(const Tower& K, const Vec& a, const Vec& b) {
    Vec out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(e_add(K, a[i], b[i]));
    return out;
}

/// Collects the rational-function leaves of an element.
void collect_leaves(const Elem& x, std::vector<RatFunc>& out) {
    if (x.ext.empty()) {
        out.push_back(x.base);
        return;
    }
    collect_leaves(x.ext[0], out);
    collect_leaves(x.ext[1], out);
}

int elem_degree_measure(const Elem& x) {
    std::vector<RatFunc> leaves;
    collect_leaves(x, leaves);
    int m = 0;
    for (const RatFunc& r : leaves) {
        if (!rf::is_zero(r)) m += std::max(pf::deg(r.num), 0) + std::max(pf::deg(r.den), 0);
    }
    return m;
}

} // namespace

TowerPtr base_tower(TowerPtr K) {
    if (K->depth() == 0) throw tower_mismatch("base_tower: ground tower has no base step");
    TowerPtr F = K->has_var() ? Tower::rational(K->gf().degree()) : Tower::finite(K->gf().degree());
    for (int i = 0; i + 1 < K->depth(); ++i) {
        const ExtStep& st = K->steps()[i];
        F = st.kind == ExtStep::Kind::Inseparable ? F->adjoin_sqrt(st.gen)
                                                  : F->adjoin_artin_schreier(st.gen);
    }
    return F;
}

TransferFunctional make_transfer(TowerPtr K) {
    TowerPtr F = base_tower(K);
    return TransferFunctional{std::move(K), std::move(F)};
}

std::pair<Elem, Elem> transfer_components(const TransferFunctional& s, const Elem& z) {
    if (z.level() != s.K->depth()) throw tower_mismatch("transfer: element level mismatch");
    return {z.ext[0], z.ext[1]};
}

Elem transfer_apply(const TransferFunctional& s, const Elem& z) {
    return transfer_components(s, z).second;
}

TransferredBilinear transfer_bilinear(const TransferFunctional& s, const BilinearForm& b) {
    const Tower& K = *s.K;
    const Tower& F = *s.F;
    if (!b.T->same_field(K)) throw tower_mismatch("transfer_bilinear: form not over K");
    Elem delta = e_gen(K, K.depth() - 1);
    std::vector<Elem> diag;
    int metabolic = 0;
    for (const Elem& z : b.diag) {
        Elem zd = e_mul(K, z, delta);
        Elem zdd = e_mul(K, zd, delta);
        // Gram matrix of s_*(<z>) on the basis {1, delta}
        Elem g11 = transfer_apply(s, z);
        Elem g12 = transfer_apply(s, zd);
        Elem g22 = transfer_apply(s, zdd);
        if (!e_is_zero(g11)) {
            diag.push_back(g11);
            diag.push_back(e_add(F, g22, e_div(F, e_sq(F, g12), g11)));
        } else if (!e_is_zero(g22)) {
            diag.push_back(g22);
            diag.push_back(e_div(F, e_sq(F, g12), g22));
        } else {
            if (e_is_zero(g12)) throw std::logic_error("transfer_bilinear: degenerate entry");
            ++metabolic; // alternating 2x2 plane: no diagonal basis in char 2
        }
    }
    BilinearForm df{s.F, std::move(diag)};
    return TransferredBilinear{std::move(df), metabolic};
}

QuadraticForm transfer_quadratic(const TransferFunctional& s, const QuadraticForm& phi) {
    const Tower& K = *s.K;
    if (!phi.T->same_field(K)) throw tower_mismatch("transfer_quadratic: form not over K");
    const Tower& F = *s.F;
    if (phi.blocks.empty()) return QuadraticForm{s.F, {}};
    int n = phi.dim();
    Elem delta = e_gen(K, K.depth() - 1);

    std::vector<Vec> basis;
    for (int i = 0; i < n; ++i) {
        Vec e;
        for (int j = 0; j < n; ++j) e.push_back(unit_vec_entry(K, j == i));
        basis.push_back(e);
        basis.push_back(scale_vec(K, delta, e));
    }

    auto q_of = [&](const Vec& v) { return transfer_apply(s, eval_form(phi, v)); };
    auto pr = [&](const Vec& u, const Vec& v) { return transfer_apply(s, polar(phi, u, v)); };

    std::vector<std::pair<Elem, Elem>> blocks;
    while (!basis.empty()) {
        Vec v = basis.front();
        basis.erase(basis.begin());
        std::size_t j = basis.size();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!e_is_zero(pr(v, basis[i]))) {
                j = i;
                break;
            }
        }
        if (j == basis.size())
            throw std::logic_error("transfer_quadratic: polar form degenerate on remaining span");
        Elem p = pr(v, basis[j]);
        Vec u = scale_vec(K, embed(F, K, e_inv(F, p)), basis[j]);
        basis.erase(basis.begin() + static_cast<long>(j));
        for (Vec& w : basis) {
            Elem cu = pr(w, u); // coefficient of v to cancel the pairing with u
            Elem cv = pr(w, v);
            w = add_vec(K, w, scale_vec(K, embed(F, K, cu), v));
            w = add_vec(K, w, scale_vec(K, embed(F, K, cv), u));
        }
        blocks.emplace_back(q_of(v), q_of(u));
    }
    return make_form(s.F, std::move(blocks));
}

ReciprocityReport frobenius_reciprocity_check(const TransferFunctional& s, const BilinearForm& b,
                                              const QuadraticForm& phi) {
    if (!phi.T->same_field(*s.F)) throw tower_mismatch("reciprocity: phi must live over F");
    QuadraticForm phiK = restrict_form(phi, s.K);
    QuadraticForm lhs = transfer_quadratic(s, tensor(b, phiK));

    TransferredBilinear tb = transfer_bilinear(s, b);
    std::vector<std::pair<Elem, Elem>> rblocks;
    if (!tb.diag.diag.empty()) {
        QuadraticForm part = tensor(tb.diag, phi);
        rblocks = part.blocks;
    }
    // each metabolic plane tensors with phi into dim(phi) hyperbolic planes
    for (int i = 0; i < tb.metabolic_planes * phi.dim(); ++i)
        rblocks.emplace_back(e_zero(*s.F), e_zero(*s.F));
    QuadraticForm rhs = make_form(s.F, std::move(rblocks));

    ReciprocityReport rep{equivalent(lhs, rhs), std::move(lhs), std::move(rhs)};
    return rep;
}

QuadraticForm arf_trivialize_descent(const QuadraticForm& psi, TowerPtr K) {
    const Tower& F = *psi.T;
    if (!K->extends(F) || K->depth() != F.depth() + 1)
        throw tower_mismatch("arf_trivialize_descent: K must be a quadratic extension of F");
    Elem d = arf(psi).rep;
    if (e_is_zero(d)) return psi;
    if (!wp_witness(*K, embed(F, *K, d)))
        throw std::invalid_argument("arf_trivialize_descent: Arf of psi is not trivial over K");
    // last block with a != 0; if every a vanishes the Arf representative is 0
    int pos = -1;
    for (int i = static_cast<int>(psi.blocks.size()) - 1; i >= 0; --i) {
        if (!e_is_zero(psi.blocks[i].first)) {
            pos = i;
            break;
        }
    }
    if (pos < 0) throw std::logic_error("arf_trivialize_descent: nonzero Arf with all a_i = 0");
    auto blocks = psi.blocks;
    const Elem& a = blocks[pos].first;
    blocks[pos].second = e_add(F, blocks[pos].second, e_div(F, d, a));
    return make_form(psi.T, std::move(blocks));
}

DescentResult descend_form_search(const QuadraticForm& phi, int budget) {
    TowerPtr K = phi.T;
    if (K->depth() == 0) throw tower_mismatch("descend_form_search: phi already lives over a ground tower");
    TransferFunctional s = make_transfer(K);
    const Tower& F = *s.F;

    DescentResult res;
    res.psi = QuadraticForm{s.F, {}};
    res.transfer_hyperbolic = is_hyperbolic(transfer_quadratic(s, phi)).kind == HypResult::Kind::Yes;

    auto accept = [&](const QuadraticForm& cand) {
        QuadraticForm candK = restrict_form(cand, K);
        // cheap prefilter: the Arf classes must match over K
        Elem diff = e_add(*K, arf(candK).rep, arf(phi).rep);
        if (!wp_witness(*K, diff)) return false;
        return equivalent(candK, phi) == TriBool::Yes;
    };

    // fast path: the coefficients already descend to F
    {
        std::vector<std::pair<Elem, Elem>> blocks;
        bool ok = true;
        for (const auto& [a, b] : phi.blocks) {
            auto da = descend(*K, F, a);
            auto db = descend(*K, F, b);
            if (!da || !db) {
                ok = false;
                break;
            }
            blocks.emplace_back(*da, *db);
        }
        if (ok) {
            QuadraticForm cand = make_form(s.F, blocks);
            ++res.candidates_tried;
            if (accept(cand)) {
                res.found = true;
                res.psi = std::move(cand);
                return res;
            }
        }
    }

    // candidate pool: 0, 1, F-components of phi's coefficients and their
    // inverses, and polynomials in t up to the degree budget
    int maxdeg = 0;
    std::vector<Elem> pool = {e_zero(F), e_one(F)};
    for (const auto& [a, b] : phi.blocks) {
        for (const Elem* c : {&a, &b}) {
            maxdeg = std::max(maxdeg, elem_degree_measure(*c));
            auto [lo, hi] = transfer_components(s, *c);
            for (const Elem& comp : {lo, hi}) {
                if (e_is_zero(comp)) continue;
                pool.push_back(comp);
                pool.push_back(e_inv(F, comp));
            }
        }
    }
    if (budget < 0) budget = maxdeg + 2;
    if (F.has_var()) {
        const Gf2k& g = F.gf();
        std::uint64_t count = 1;
        for (int i = 0; i <= budget; ++i) count *= g.order();
        for (std::uint64_t idx = 1; idx < count; ++idx) {
            Poly p;
            std::uint64_t r = idx;
            for (int i = 0; i <= budget; ++i) {
                p.push_back(static_cast<gf_t>(r % g.order()));
                r /= g.order();
            }
            pf::trim(p);
            pool.push_back(e_base(F, rf::from_poly(p)));
        }
    }
    std::sort(pool.begin(), pool.end(), [&](const Elem& x, const Elem& y) {
        int mx = elem_degree_measure(x), my = elem_degree_measure(y);
        if (mx != my) return mx < my;
        return e_str(F, x) < e_str(F, y);
    });
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    const long cap = 1000000;
    const int slots = static_cast<int>(phi.blocks.size()) * 2;
    std::vector<int> measures;
    int max_measure = 0;
    for (const Elem& e : pool) {
        measures.push_back(elem_degree_measure(e));
        max_measure = std::max(max_measure, measures.back());
    }

    std::vector<int> pick(slots, 0);
    // enumerate index tuples ordered by total degree measure, then lex
    for (int total = 0; total <= max_measure * slots; ++total) {
        std::function<bool(int, int)> rec = [&](int slot, int remaining) -> bool {
            if (res.candidates_tried >= cap) return true; // stop everything
            if (slot == slots) {
                if (remaining != 0) return false;
                std::vector<std::pair<Elem, Elem>> blocks;
                for (int i = 0; i < slots; i += 2)
                    blocks.emplace_back(pool[pick[i]], pool[pick[i + 1]]);
                QuadraticForm cand = make_form(s.F, std::move(blocks));
                ++res.candidates_tried;
                try {
                    if (accept(cand)) {
                        res.found = true;
                        res.psi = std::move(cand);
                        return true;
                    }
                } catch (const std::exception&) {
                    // candidate outside the decidable range; keep searching
                }
                return false;
            }
            for (std::size_t i = 0; i < pool.size(); ++i) {
                if (measures[i] > remaining) continue;
                pick[slot] = static_cast<int>(i);
                if (rec(slot + 1, remaining - measures[i])) return true;
            }
            return false;
        };
        if (rec(0, total)) break;
        if (res.candidates_tried >= cap) break;
    }
    return res;
}

} // namespace qf2
