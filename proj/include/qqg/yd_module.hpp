#pragma once

// Twisted Yetter-Drinfeld modules over (kG, w) for a finite abelian group G
// and a normalized 3-cocycle w: G-graded spaces whose degree-g part is a
// projective representation for the 2-cocycle tilde_phi(w, g).

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian_group.hpp"
#include "cocycle.hpp"
#include "matrix.hpp"

namespace qqg {

/// Homogeneous component: degree, dimension, and the action matrix of every
/// group element (indexed like the group's elements).
struct YDComponent {
    std::size_t degree = 0;
    std::size_t dim = 0;
    std::vector<ExactMatrix> action;
};

struct YDModule {
    GroupSpec group;
    Cochain3 cocycle;
    std::vector<YDComponent> components;

    std::size_t dim() const {
        std::size_t d = 0;
        for (const auto& c : components) d += c.dim;
        return d;
    }
};

/// Module whose components are all 1-dimensional: basis vector j has degree
/// degrees[j] and group elements act on it by chars[j][e]. q(i, j) is the
/// action of degrees[i] on basis vector j.
struct DiagonalModule {
    GroupSpec group;
    Cochain3 cocycle;
    std::vector<std::size_t> degrees;
    std::vector<std::vector<CycScalar>> chars;
    ExactMatrix q;
};

/// Trivial 3-cocycle on a group.
inline Cochain3 trivial_cochain3(const GroupSpec& g) {
    return Cochain3{g, 1, [](std::size_t, std::size_t, std::size_t) { return 0; }};
}

/// Projective identity e.(f.v) = tilde_phi_g(e,f) (ef).v on every pair, plus
/// 1.v = v, for every component; reports the first failing pair.
inline CheckResult verify_yd_module(const YDModule& v) {
    const auto& G = v.group;
    if (v.cocycle.group != G) return CheckResult::fail("cocycle defined on a different group");
    for (std::size_t c = 0; c < v.components.size(); ++c) {
        const auto& comp = v.components[c];
        const std::string where = "component " + std::to_string(c) + " (degree " + G.format(comp.degree) + ")";
        if (comp.action.size() != G.size()) return CheckResult::fail(where + ": action table must list every element");
        for (const auto& m : comp.action)
            if (m.rows() != comp.dim || m.cols() != comp.dim) return CheckResult::fail(where + ": action matrix has wrong shape");
        if (comp.action[0] != identity_matrix(comp.dim)) return CheckResult::fail(where + ": identity does not act trivially", {0});
        const Cochain2 phi = tilde_phi(v.cocycle, comp.degree);
        for (std::size_t e = 0; e < G.size(); ++e)
            for (std::size_t f = 0; f < G.size(); ++f) {
                ExactMatrix lhs = comp.action[e] * comp.action[f];
                ExactMatrix rhs = scaled(comp.action[G.mul(e, f)], phi.value(e, f));
                if (lhs != rhs)
                    return CheckResult::fail(where + ": projective identity fails at (" + G.format(e) + "," + G.format(f) + ")",
                                             {e, f});
            }
    }
    return CheckResult::pass();
}

/// Necessary condition on commutation ratios:
/// rho(1) = id and rho(g) rho(h) = phi(g,h)/phi(h,g) rho(h) rho(g).
inline CheckResult ratio_precheck(const YDModule& v) {
    const auto& G = v.group;
    for (std::size_t c = 0; c < v.components.size(); ++c) {
        const auto& comp = v.components[c];
        if (comp.action[0] != identity_matrix(comp.dim)) return CheckResult::fail("identity does not act trivially", {0});
        const Cochain2 phi = tilde_phi(v.cocycle, comp.degree);
        for (std::size_t g = 0; g < G.size(); ++g)
            for (std::size_t h = g + 1; h < G.size(); ++h) {
                CycScalar ratio = CycScalar::zeta(phi.root_order, phi.at(g, h) - phi.at(h, g));
                if (comp.action[g] * comp.action[h] != scaled(comp.action[h] * comp.action[g], ratio))
                    return CheckResult::fail("commutation ratio fails at (" + G.format(g) + "," + G.format(h) + ")", {g, h});
            }
    }
    return CheckResult::pass();
}

/// Extends matrices given on the standard generators to every element using
/// rho(g y) = tilde_phi_d(g, y)^{-1} rho(g) rho(y) along a breadth-first tree
/// (generators tried in order). The result still has to be verified.
inline YDComponent complete_from_generators(const Cochain3& w, std::size_t degree,
                                            const std::vector<ExactMatrix>& generator_action) {
    const auto& G = w.group;
    if (generator_action.size() != G.rank()) throw std::invalid_argument("complete_from_generators: one matrix per factor required");
    const std::size_t d = generator_action.empty() ? 0 : generator_action[0].rows();
    YDComponent comp{degree, d, std::vector<ExactMatrix>(G.size())};
    const Cochain2 phi = tilde_phi(w, degree);
    std::vector<bool> done(G.size(), false);
    comp.action[0] = identity_matrix(d);
    done[0] = true;
    std::vector<std::size_t> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t y = queue[head];
        for (std::size_t i = 0; i < G.rank(); ++i) {
            const std::size_t g = G.generator(i);
            const std::size_t x = G.mul(g, y);
            if (done[x]) continue;
            comp.action[x] = scaled(generator_action[i] * comp.action[y], CycScalar::zeta(phi.root_order, -phi.at(g, y)));
            done[x] = true;
            queue.push_back(x);
        }
    }
    return comp;
}

// ---------------------------------------------------------------------------
// Simple modules

struct SimplesSummary {
    std::size_t radical_order = 0;   // m = |R|
    std::size_t dimension = 0;       // n
    std::vector<std::size_t> radical;
    std::vector<std::size_t> lagrangian;
};

namespace detail {

inline std::vector<std::size_t> closure_with(const GroupSpec& G, const std::vector<std::size_t>& members, std::size_t x) {
    std::vector<bool> in(G.size(), false);
    std::vector<std::size_t> out;
    for (auto m : members) {
        in[m] = true;
        out.push_back(m);
    }
    for (std::size_t head = 0; head < out.size(); ++head) {
        std::size_t y = G.mul(out[head], x);
        if (!in[y]) {
            in[y] = true;
            out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// All simple projective representations for tilde_phi_g, pairwise
/// non-isomorphic, each as a one-component module of degree g. Built by
/// inducing quasi-characters from a maximal isotropic subgroup L of the
/// commutator pairing b(f,h) = phi(f,h)/phi(h,f); classes are labeled by the
/// restriction of the quasi-character to the radical of b.
inline std::vector<YDModule> simples_at(const Cochain3& w, std::size_t g, SimplesSummary* summary = nullptr) {
    const auto& G = w.group;
    const std::size_t s = G.size();
    const Cochain2 phi = tilde_phi(w, g);
    const int n = phi.root_order;
    auto beta = [&](std::size_t a, std::size_t b) { return detail::mod_floor(phi.at(a, b) - phi.at(b, a), n); };

    std::vector<std::size_t> radical;
    for (std::size_t f = 0; f < s; ++f) {
        bool central = true;
        for (std::size_t h = 0; h < s && central; ++h) central = beta(f, h) == 0;
        if (central) radical.push_back(f);
    }
    std::vector<std::size_t> lag = radical;
    std::vector<bool> in_lag(s, false);
    for (auto x : lag) in_lag[x] = true;
    for (std::size_t x = 0; x < s; ++x) {
        if (in_lag[x]) continue;
        bool iso = true;
        for (std::size_t l : lag)
            if (beta(x, l) != 0) {
                iso = false;
                break;
            }
        if (!iso) continue;
        lag = detail::closure_with(G, lag, x);
        std::fill(in_lag.begin(), in_lag.end(), false);
        for (auto y : lag) in_lag[y] = true;
    }
    const std::size_t index_r = s / radical.size();
    const std::size_t dim = s / lag.size();
    if (dim * dim != index_r) throw std::logic_error("simples_at: index of the radical is not a perfect square");

    // quasi-characters of phi restricted to L, via the presentation of L
    std::vector<std::size_t> lag_gens;
    {
        std::vector<std::size_t> acc{0};
        for (std::size_t x : lag)
            if (!std::binary_search(acc.begin(), acc.end(), x)) {
                lag_gens.push_back(x);
                acc = detail::closure_with(G, acc, x);
            }
    }
    Subgroup L = subgroup_generated(G, lag_gens);
    Cochain2 phi_l(L.presentation, n);
    for (std::size_t a = 0; a < L.size(); ++a)
        for (std::size_t b = 0; b < L.size(); ++b) phi_l.at(a, b) = phi.at(L.embedding[a], L.embedding[b]);
    auto qcs = quasi_characters(phi_l);
    if (qcs.size() != L.size()) throw std::logic_error("simples_at: restricted cocycle is not symmetric on the isotropic subgroup");

    // coset representatives: least element of each coset, in enumeration order
    std::vector<std::ptrdiff_t> coset_of(s, -1);
    std::vector<std::size_t> reps;
    for (std::size_t x = 0; x < s; ++x) {
        if (coset_of[x] >= 0) continue;
        for (std::size_t l : lag) coset_of[G.mul(x, l)] = static_cast<std::ptrdiff_t>(reps.size());
        reps.push_back(x);
    }
    auto chi_at = [&](const QuasiCharacter& q, std::size_t parent_elem) {
        return q.value(static_cast<std::size_t>(L.locate[parent_elem]));
    };

    std::vector<YDModule> out;
    std::vector<std::vector<int>> seen_restrictions;
    for (const auto& q : qcs) {
        std::vector<int> key;
        for (std::size_t r : radical) key.push_back(q.exps[static_cast<std::size_t>(L.locate[r])]);
        if (std::find(seen_restrictions.begin(), seen_restrictions.end(), key) != seen_restrictions.end()) continue;
        seen_restrictions.push_back(key);
        YDComponent comp{g, dim, std::vector<ExactMatrix>(s)};
        const int order = static_cast<int>(lcm_ll(n, q.root_order));
        for (std::size_t e = 0; e < s; ++e) {
            ExactMatrix m(dim, dim, CycScalar::zero(order));
            for (std::size_t t = 0; t < dim; ++t) {
                const std::size_t et = G.mul(e, reps[t]);
                const std::size_t t2 = static_cast<std::size_t>(coset_of[et]);
                const std::size_t l = G.mul(et, G.inv(reps[t2]));
                // e.v_t = phi(e,t) phi(t',l)^{-1} chi(l) v_{t'}
                CycScalar c = CycScalar::zeta(n, phi.at(e, reps[t]) - phi.at(reps[t2], l)) * chi_at(q, l);
                m(t2, t) = c.embed(order);
            }
            comp.action[e] = std::move(m);
        }
        out.push_back(YDModule{G, w, {std::move(comp)}});
        if (out.size() == radical.size()) break;
    }
    if (out.size() != radical.size()) throw std::logic_error("simples_at: fewer classes than the radical order");
    if (summary) *summary = SimplesSummary{radical.size(), dim, radical, lag};
    return out;
}

inline std::vector<YDModule> simples_at(const CocycleSpec& spec, std::size_t g, SimplesSummary* summary = nullptr) {
    return simples_at(omega_cochain(spec), g, summary);
}

// ---------------------------------------------------------------------------
// Diagonal type

/// Diagonal test: every component's tilde_phi is symmetric. When it holds the
/// commuting action is simultaneously diagonalized; basis vectors are ordered
/// by component, then by the tuple of eigenvalue exponents on the standard
/// generators (lexicographic).
inline std::optional<DiagonalModule> is_diagonal(const YDModule& v) {
    const auto& G = v.group;
    DiagonalModule d{G, v.cocycle, {}, {}, {}};
    for (const auto& comp : v.components) {
        const Cochain2 phi = tilde_phi(v.cocycle, comp.degree);
        if (!phi.symmetric()) return std::nullopt;
        // rho(h_j)^{m_j} = c_j id with c_j = prod_{a<m_j} phi(h_j^a, h_j); eigenvalues are m_j-th roots of c_j
        const int big = static_cast<int>(lcm_ll(phi.root_order, 1) * G.exponent());
        int entry_order = 1;
        for (const auto& m : comp.action)
            for (const auto& x : m.data()) entry_order = static_cast<int>(lcm_ll(entry_order, x.root_order()));
        const int order = static_cast<int>(lcm_ll(big, entry_order));
        std::vector<long long> base(G.rank());
        for (std::size_t j = 0; j < G.rank(); ++j) {
            long long p = 0;
            std::size_t x = G.generator(j);
            for (int a = 1; a < G.order(j); ++a) {
                p += phi.at(x, G.generator(j));
                x = G.mul(x, G.generator(j));
            }
            base[j] = p * (order / phi.root_order);
        }
        GroupSpec choices(G.orders());
        std::size_t found = 0;
        for (std::size_t c = 0; c < choices.size() && found < comp.dim; ++c) {
            auto t = choices.exponents(c);
            ExactMatrix stacked(G.rank() * comp.dim, comp.dim, CycScalar::zero(order));
            std::vector<CycScalar> lambda;
            for (std::size_t j = 0; j < G.rank(); ++j) {
                const long long mj = G.order(j);
                long long ex = base[j] / mj + static_cast<long long>(t[j]) * (order / mj);
                CycScalar l = CycScalar::zeta(order, ex);
                lambda.push_back(l);
                const auto& a = comp.action[G.generator(j)];
                for (std::size_t r = 0; r < comp.dim; ++r)
                    for (std::size_t k = 0; k < comp.dim; ++k)
                        stacked(j * comp.dim + r, k) = (r == k ? a(r, k) - l : a(r, k)).embed(order);
            }
            for (auto& vec : nullspace(stacked)) {
                std::vector<CycScalar> ch(G.size(), CycScalar::zero(order));
                std::size_t pivot = 0;
                while (vec[pivot].is_zero()) ++pivot;
                for (std::size_t e = 0; e < G.size(); ++e) {
                    auto img = mat_vec(comp.action[e], vec);
                    CycScalar val = img[pivot] / vec[pivot];
                    for (std::size_t r = 0; r < comp.dim; ++r)
                        if (img[r] != val * vec[r]) throw std::logic_error("is_diagonal: joint eigenvector is not an eigenvector of every element");
                    ch[e] = val;
                }
                d.degrees.push_back(comp.degree);
                d.chars.push_back(std::move(ch));
                ++found;
            }
        }
        if (found != comp.dim) throw std::logic_error("is_diagonal: commuting action is not diagonalizable over the chosen roots");
    }
    const std::size_t n = d.degrees.size();
    d.q = ExactMatrix(n, n, CycScalar::zero(1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d.q(i, j) = d.chars[j][d.degrees[i]];
    return d;
}

/// A diagonal module viewed as a direct sum of 1-dimensional components.
inline YDModule to_module(const DiagonalModule& d) {
    YDModule v{d.group, d.cocycle, {}};
    for (std::size_t j = 0; j < d.degrees.size(); ++j) {
        YDComponent c{d.degrees[j], 1, {}};
        for (const auto& x : d.chars[j]) c.action.push_back(ExactMatrix(1, 1, x));
        v.components.push_back(std::move(c));
    }
    return v;
}

// ---------------------------------------------------------------------------
// Constructions

inline YDModule direct_sum(const YDModule& a, const YDModule& b) {
    if (a.group != b.group) throw std::invalid_argument("direct_sum: modules over different groups");
    YDModule out = a;
    for (const auto& c : b.components) out.components.push_back(c);
    return out;
}

/// Component-wise tensor product with e.(X (x) Y) = tilde_phi_e(g,h) (e.X) (x) (e.Y).
inline YDModule tensor(const YDModule& a, const YDModule& b) {
    if (a.group != b.group) throw std::invalid_argument("tensor: modules over different groups");
    const auto& G = a.group;
    YDModule out{G, a.cocycle, {}};
    std::vector<Cochain2> tp;
    for (std::size_t e = 0; e < G.size(); ++e) tp.push_back(tilde_phi(a.cocycle, e));
    for (const auto& x : a.components)
        for (const auto& y : b.components) {
            YDComponent c{G.mul(x.degree, y.degree), x.dim * y.dim, {}};
            for (std::size_t e = 0; e < G.size(); ++e)
                c.action.push_back(scaled(kronecker(x.action[e], y.action[e]), tp[e].value(x.degree, y.degree)));
            out.components.push_back(std::move(c));
        }
    return out;
}

/// Dual module: component of degree g^{-1} with rho*(e) = s(e) (rho(e)^{-1})^T,
/// where s is the first quasi-character of tilde_phi_{g^{-1}} tilde_phi_g (s = 1
/// whenever tilde_phi is multiplicative in g, as for every representative).
inline YDModule dual(const YDModule& v) {
    const auto& G = v.group;
    YDModule out{G, v.cocycle, {}};
    for (const auto& comp : v.components) {
        const std::size_t ginv = G.inv(comp.degree);
        Cochain2 a = tilde_phi(v.cocycle, comp.degree), b = tilde_phi(v.cocycle, ginv);
        Cochain2 psi(G, a.root_order);
        for (std::size_t i = 0; i < psi.exps.size(); ++i) psi.exps[i] = static_cast<int>(detail::mod_floor(a.exps[i] + b.exps[i], a.root_order));
        std::vector<CycScalar> s(G.size(), CycScalar::one());
        if (!psi.is_trivial()) {
            auto qs = quasi_characters(psi);
            if (qs.empty()) throw std::logic_error("dual: tilde_phi_g tilde_phi_{g^-1} is not symmetric");
            for (std::size_t e = 0; e < G.size(); ++e) s[e] = qs[0].value(e);
        }
        YDComponent c{ginv, comp.dim, {}};
        for (std::size_t e = 0; e < G.size(); ++e) c.action.push_back(scaled(transpose(inverse_matrix(comp.action[e])), s[e]));
        out.components.push_back(std::move(c));
    }
    return out;
}

/// The module re-indexed over its support group (the subgroup generated by
/// the component degrees), with the cocycle restricted along the embedding.
struct Restricted {
    YDModule module;
    Subgroup support;
};

inline Restricted restrict_support(const YDModule& v) {
    std::vector<std::size_t> degs;
    for (const auto& c : v.components)
        if (std::find(degs.begin(), degs.end(), c.degree) == degs.end()) degs.push_back(c.degree);
    Subgroup h = subgroup_generated(v.group, degs);
    Cochain3 w = pullback(v.cocycle, h.presentation, h.embedding);
    if (h.presentation.size() <= 64) w = w.tabulated();
    YDModule out{h.presentation, w, {}};
    for (const auto& c : v.components) {
        YDComponent r{static_cast<std::size_t>(h.locate[c.degree]), c.dim, {}};
        for (std::size_t p = 0; p < h.size(); ++p) r.action.push_back(c.action[h.embedding[p]]);
        out.components.push_back(std::move(r));
    }
    return {std::move(out), std::move(h)};
}

/// The module over the squared cover: degrees moved by the section, action
/// pulled back through the projection, cocycle pulled back.
inline YDModule lift_cover(const YDModule& v, const SquaredCover& pi) {
    if (pi.base != v.group) throw std::invalid_argument("lift_cover: cover of a different group");
    YDModule out{pi.cover, pullback(v.cocycle, pi.cover, pi.projection), {}};
    for (const auto& c : v.components) {
        YDComponent r{pi.section[c.degree], c.dim, {}};
        for (std::size_t x = 0; x < pi.cover.size(); ++x) r.action.push_back(c.action[pi.projection[x]]);
        out.components.push_back(std::move(r));
    }
    return out;
}

/// Twisted action g ._J X = J(g,x)/J(x,g) (g . X) on components of degree x;
/// the result is a module for the cocycle w dJ.
inline YDModule twist(const YDModule& v, const Cochain2& j) {
    if (j.group != v.group) throw std::invalid_argument("twist: cochain on a different group");
    const auto& G = v.group;
    const int n = static_cast<int>(lcm_ll(v.cocycle.root_order, j.root_order));
    const long long fw = n / v.cocycle.root_order, fj = n / j.root_order;
    auto base = v.cocycle;
    auto jj = std::make_shared<const Cochain2>(j);
    Cochain3 w{G, n, [base, jj, fw, fj, n, G](std::size_t x, std::size_t y, std::size_t z) {
                   const auto& J = *jj;
                   long long d = static_cast<long long>(J.at(y, z)) + J.at(x, G.mul(y, z)) - J.at(G.mul(x, y), z) - J.at(x, y);
                   return static_cast<int>(detail::mod_floor(base.at(x, y, z) * fw + d * fj, n));
               }};
    if (G.size() <= 64) w = w.tabulated();
    YDModule out{G, w, {}};
    for (const auto& c : v.components) {
        YDComponent r{c.degree, c.dim, {}};
        for (std::size_t g = 0; g < G.size(); ++g)
            r.action.push_back(scaled(c.action[g], CycScalar::zeta(j.root_order, j.at(g, c.degree) - j.at(c.degree, g))));
        out.components.push_back(std::move(r));
    }
    return out;
}

}  // namespace qqg
