#pragma once

// Truncated biproducts H # kG of a braided Hopf algebra H in the twisted
// Yetter-Drinfeld category over G with the group algebra (kG, Phi).
//
// H = B(V) is realized inside the tensor algebra through the symmetrizer:
// B(V)_n is identified with Im(S_n), the product of [s] and [t] is
// [S_{n+m}(s (x) t)] for preimages s, t, and the braided coproduct becomes
// deconcatenation of images. This needs an honest braided vector space, so
// the cocycle must be trivial on the support group of V.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cocycle.hpp"
#include "matrix.hpp"
#include "yd_module.hpp"

namespace qqg {

/// Sparse vector over a basis, index -> nonzero coefficient.
using SparseVec = std::map<std::size_t, CycScalar>;
/// Sparse element of a tensor square.
using SparsePair = std::map<std::pair<std::size_t, std::size_t>, CycScalar>;

/// Raised when a construction is outside what the truncated tables support.
class BosonizationRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void add_to(SparseVec& v, std::size_t i, const CycScalar& c) {
    if (c.is_zero()) return;
    auto it = v.find(i);
    if (it == v.end()) {
        v.emplace(i, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

inline void add_to(SparsePair& v, std::pair<std::size_t, std::size_t> i, const CycScalar& c) {
    if (c.is_zero()) return;
    auto it = v.find(i);
    if (it == v.end()) {
        v.emplace(i, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

/// Coordinates with respect to a set of linearly independent vectors.
class Coordinates {
public:
    Coordinates() = default;

    explicit Coordinates(std::vector<std::vector<CycScalar>> cols) : cols_(std::move(cols)) {
        if (cols_.empty()) return;
        const std::size_t len = cols_.front().size(), k = cols_.size();
        ExactMatrix t(k, len, CycScalar::zero(1));
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t r = 0; r < len; ++r) t(c, r) = cols_[c][r];
        int order = 1;
        ExactMatrix red = unify_field(t, order);
        rows_ = row_reduce(red, false);
        if (rows_.size() != k) throw std::logic_error("Coordinates: vectors are dependent");
        ExactMatrix sq(k, k, CycScalar::zero(1));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < k; ++c) sq(i, c) = cols_[c][rows_[i]];
        inv_ = inverse_matrix(sq);
    }

    std::size_t size() const noexcept { return cols_.size(); }

    /// Coefficients c with sum c_j cols_j = v; throws when v is outside the span.
    std::vector<CycScalar> of(const std::vector<CycScalar>& v) const {
        const std::size_t k = cols_.size();
        std::vector<CycScalar> sel(k, CycScalar::zero(1));
        for (std::size_t i = 0; i < k; ++i) sel[i] = v[rows_[i]];
        std::vector<CycScalar> c = k == 0 ? std::vector<CycScalar>{} : mat_vec(inv_, sel);
        for (std::size_t r = 0; r < v.size(); ++r) {
            CycScalar acc = CycScalar::zero(1);
            for (std::size_t j = 0; j < k; ++j)
                if (!c[j].is_zero() && !cols_[j][r].is_zero()) acc += c[j] * cols_[j][r];
            if (acc != v[r]) throw std::logic_error("Coordinates: vector is not in the span");
        }
        return c;
    }

    const std::vector<std::size_t>& pivot_rows() const noexcept { return rows_; }
    const ExactMatrix& pivot_inverse() const noexcept { return inv_; }
    const std::vector<std::vector<CycScalar>>& columns() const noexcept { return cols_; }

private:
    std::vector<std::vector<CycScalar>> cols_;
    std::vector<std::size_t> rows_;
    ExactMatrix inv_;
};

}  // namespace detail

/// Basis, structure tables and G-action of B(V) through a truncation length.
/// Basis element 0 is the unit.
struct BraidedHopfTruncation {
    GroupSpec group;
    Cochain3 cocycle;
    int truncation = 0;
    /// True when some degree <= truncation vanishes, so the tables describe all of B(V).
    bool complete = false;
    std::vector<std::size_t> degree;
    std::vector<int> length;
    std::vector<std::string> names;
    /// product[i][j], present when length[i] + length[j] <= truncation.
    std::vector<std::vector<std::optional<SparseVec>>> product;
    std::vector<SparsePair> coproduct;
    std::vector<SparseVec> antipode;
    /// action[g][i] = g . X_i.
    std::vector<std::vector<SparseVec>> action;

    std::size_t size() const noexcept { return degree.size(); }
};

namespace detail {

/// Tensor power bookkeeping for a braided vector space with letter basis.
class TensorSpace {
public:
    TensorSpace(const YDModule& v) : v_(v) {
        for (std::size_t c = 0; c < v.components.size(); ++c)
            for (std::size_t r = 0; r < v.components[c].dim; ++r) {
                comp_.push_back(c);
                row_.push_back(r);
            }
        const std::size_t n = letters();
        act_.assign(v.group.size(), std::vector<SparseVec>(n));
        for (std::size_t e = 0; e < v.group.size(); ++e)
            for (std::size_t a = 0; a < n; ++a) {
                const auto& m = v.components[comp_[a]].action[e];
                std::size_t base = a - row_[a];
                for (std::size_t s = 0; s < m.rows(); ++s) add_to(act_[e][a], base + s, m(s, row_[a]));
            }
    }

    std::size_t letters() const noexcept { return comp_.size(); }
    std::size_t letter_degree(std::size_t a) const { return v_.components[comp_[a]].degree; }
    const SparseVec& act(std::size_t e, std::size_t a) const { return act_[e][a]; }

    std::size_t power(int n) const {
        std::size_t s = 1;
        for (int i = 0; i < n; ++i) s *= letters();
        return s;
    }

    std::vector<std::size_t> word(std::size_t idx, int n) const {
        std::vector<std::size_t> w(static_cast<std::size_t>(n));
        for (int p = n; p-- > 0;) {
            w[static_cast<std::size_t>(p)] = idx % letters();
            idx /= letters();
        }
        return w;
    }

    std::size_t index(const std::vector<std::size_t>& w) const {
        std::size_t idx = 0;
        for (auto a : w) idx = idx * letters() + a;
        return idx;
    }

    std::size_t word_degree(const std::vector<std::size_t>& w) const {
        std::size_t g = 0;
        for (auto a : w) g = v_.group.mul(g, letter_degree(a));
        return g;
    }

    /// Local braiding at positions (p, p+1): v_a (x) v_b -> (deg a . v_b) (x) v_a.
    std::vector<CycScalar> braid_at(const std::vector<CycScalar>& t, int n, std::size_t p) const {
        std::vector<CycScalar> out(t.size(), CycScalar::zero(1));
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i].is_zero()) continue;
            auto w = word(i, n);
            const std::size_t a = w[p], b = w[p + 1];
            for (const auto& [s, c] : act(letter_degree(a), b)) {
                w[p] = s;
                w[p + 1] = a;
                out[index(w)] += t[i] * c;
            }
        }
        return out;
    }

    /// g acting on V^{(x) n}: rho(g) on each letter times the tensor factors
    /// tilde_phi_g(d_1 ... d_{k-1}, d_k) of the left-nested product.
    std::vector<CycScalar> act_on(std::size_t g, const std::vector<CycScalar>& t, int n) const {
        const auto& G = v_.group;
        const Cochain2 phi = tilde_phi(v_.cocycle, g);
        std::vector<CycScalar> out(t.size(), CycScalar::zero(1));
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i].is_zero()) continue;
            const auto w = word(i, n);
            long long e = 0;
            std::size_t d = 0;
            for (std::size_t p = 0; p < w.size(); ++p) {
                if (p > 0) e += phi.at(d, letter_degree(w[p]));
                d = G.mul(d, letter_degree(w[p]));
            }
            const CycScalar f = CycScalar::zeta(phi.root_order, e) * t[i];
            std::vector<std::pair<std::vector<std::size_t>, CycScalar>> acc{{{}, f}};
            for (auto a : w) {
                std::vector<std::pair<std::vector<std::size_t>, CycScalar>> next;
                for (const auto& [pre, c] : acc)
                    for (const auto& [s, m] : act(g, a)) {
                        auto q = pre;
                        q.push_back(s);
                        next.emplace_back(std::move(q), c * m);
                    }
                acc = std::move(next);
            }
            for (const auto& [q, c] : acc) out[index(q)] += c;
        }
        return out;
    }

private:
    const YDModule& v_;
    std::vector<std::size_t> comp_, row_;
    std::vector<std::vector<SparseVec>> act_;
};

}  // namespace detail

/// Truncated B(V) for a module whose cocycle is trivial on its support group.
/// `budget` bounds dim V^truncation.
inline BraidedHopfTruncation nichols_truncation(const YDModule& v, int truncation, std::size_t budget = 4096) {
    if (truncation < 1) throw BosonizationRefused("truncation length must be at least 1");
    const auto& G = v.group;
    std::vector<std::size_t> degs;
    for (const auto& c : v.components) degs.push_back(c.degree);
    const Subgroup h = subgroup_generated(G, degs);
    for (auto x : h.members)
        for (auto y : h.members)
            for (auto z : h.members)
                if (detail::mod_floor(v.cocycle.at(x, y, z), v.cocycle.root_order) != 0)
                    throw BosonizationRefused("the cocycle is not trivial on the support group " + h.presentation.describe() +
                                              " (at " + G.format(x) + ", " + G.format(y) + ", " + G.format(z) + ")");
    detail::TensorSpace ts(v);
    if (ts.letters() == 0) truncation = 1;
    {
        std::size_t s = 1;
        for (int k = 0; k < truncation; ++k) {
            if (ts.letters() != 0 && s > budget / std::max<std::size_t>(ts.letters(), 1))
                throw BosonizationRefused("dim V^" + std::to_string(truncation) + " exceeds the size budget");
            s *= std::max<std::size_t>(ts.letters(), 1);
        }
    }
    BraidedHopfTruncation out{G, v.cocycle, truncation, false, {}, {}, {}, {}, {}, {}, {}};
    // symmetrizer images, per length: sym[n][word] = S_n(word)
    std::vector<std::vector<std::vector<CycScalar>>> sym(static_cast<std::size_t>(truncation) + 1);
    sym[0] = {{CycScalar::one()}};
    // basis per length: preimage word, image, G-degree
    struct Elem {
        int len;
        std::size_t word;
        std::size_t deg;
    };
    std::vector<Elem> elems{{0, 0, 0}};
    std::vector<detail::Coordinates> coords(static_cast<std::size_t>(truncation) + 1);
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(truncation) + 1);
    coords[0] = detail::Coordinates({{CycScalar::one()}});
    members[0] = {0};
    int top = 0;
    for (int n = 1; n <= truncation; ++n) {
        const std::size_t size = ts.power(n);
        auto& cur = sym[static_cast<std::size_t>(n)];
        for (std::size_t w = 0; w < size; ++w) {
            // S_n(w) = sum_p c_p ... c_{n-1} (S_{n-1}(w') (x) w_n)
            std::vector<CycScalar> u(size, CycScalar::zero(1));
            const auto& prev = sym[static_cast<std::size_t>(n - 1)][w / ts.letters()];
            for (std::size_t i = 0; i < prev.size(); ++i)
                if (!prev[i].is_zero()) u[i * ts.letters() + w % ts.letters()] = prev[i];
            std::vector<CycScalar> total = u;
            for (std::size_t p = static_cast<std::size_t>(n - 1); p-- > 0;) {
                u = ts.braid_at(u, n, p);
                for (std::size_t i = 0; i < size; ++i)
                    if (!u[i].is_zero()) total[i] += u[i];
            }
            cur.push_back(std::move(total));
        }
        // independent images, grouped by G-degree, lexicographic words first
        std::vector<std::vector<CycScalar>> chosen;
        std::vector<std::size_t> chosen_words;
        std::map<std::size_t, std::vector<std::size_t>> by_degree;
        for (std::size_t w = 0; w < size; ++w) by_degree[ts.word_degree(ts.word(w, n))].push_back(w);
        for (const auto& [g, ws] : by_degree) {
            std::vector<std::vector<CycScalar>> block;
            for (auto w : ws) {
                auto cand = block;
                cand.push_back(cur[w]);
                ExactMatrix m(cand.size(), size, CycScalar::zero(1));
                for (std::size_t r = 0; r < cand.size(); ++r)
                    for (std::size_t c = 0; c < size; ++c) m(r, c) = cand[r][c];
                if (rank(m) == cand.size()) {
                    block = std::move(cand);
                    chosen_words.push_back(w);
                    chosen.push_back(cur[w]);
                    elems.push_back({n, w, g});
                    members[static_cast<std::size_t>(n)].push_back(elems.size() - 1);
                }
            }
        }
        if (chosen.empty()) {
            out.complete = true;
            break;
        }
        top = n;
        coords[static_cast<std::size_t>(n)] = detail::Coordinates(std::move(chosen));
    }
    const std::size_t nb = elems.size();
    for (const auto& e : elems) {
        out.degree.push_back(e.deg);
        out.length.push_back(e.len);
        std::string name;
        for (auto a : ts.word(e.word, e.len)) name += "x" + std::to_string(a + 1);
        out.names.push_back(e.len == 0 ? "1" : name);
    }
    auto image_of = [&](std::size_t i) -> const std::vector<CycScalar>& {
        return sym[static_cast<std::size_t>(elems[i].len)][elems[i].word];
    };
    // express a vector of V^{(x) n} lying in Im S_n in the basis
    auto to_basis = [&](const std::vector<CycScalar>& img, int n) {
        SparseVec r;
        if (n > top) {
            for (const auto& x : img)
                if (!x.is_zero()) throw std::logic_error("nichols_truncation: nonzero image above the top degree");
            return r;
        }
        auto c = coords[static_cast<std::size_t>(n)].of(img);
        for (std::size_t j = 0; j < c.size(); ++j) detail::add_to(r, members[static_cast<std::size_t>(n)][j], c[j]);
        return r;
    };
    // product: [S_{n+m}(w_X (x) w_Y)]
    out.product.assign(nb, std::vector<std::optional<SparseVec>>(nb));
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const int n = elems[i].len + elems[j].len;
            if (n > truncation) {
                if (out.complete) out.product[i][j] = SparseVec{};
                continue;
            }
            if (n > top) {
                out.product[i][j] = SparseVec{};
                continue;
            }
            const std::size_t w = elems[i].word * ts.power(elems[j].len) + elems[j].word;
            out.product[i][j] = to_basis(sym[static_cast<std::size_t>(n)][w], n);
        }
    // coproduct: deconcatenation of images
    for (std::size_t i = 0; i < nb; ++i) {
        SparsePair d;
        const int n = elems[i].len;
        const auto& img = image_of(i);
        for (int a = 0; a <= n; ++a) {
            const std::size_t right = ts.power(n - a);
            const auto& cl = coords[static_cast<std::size_t>(a)];
            const auto& cr = coords[static_cast<std::size_t>(n - a)];
            // coefficient matrix C with img = sum C_{jk} left_j (x) right_k
            std::vector<std::vector<CycScalar>> half(cr.size());
            for (std::size_t r = 0; r < ts.power(a); ++r) {
                std::vector<CycScalar> row(img.begin() + static_cast<std::ptrdiff_t>(r * right),
                                           img.begin() + static_cast<std::ptrdiff_t>((r + 1) * right));
                auto c = cr.of(row);
                for (std::size_t k = 0; k < c.size(); ++k) half[k].push_back(c[k]);
            }
            for (std::size_t k = 0; k < half.size(); ++k) {
                auto c = cl.of(half[k]);
                for (std::size_t j = 0; j < c.size(); ++j)
                    detail::add_to(d, {members[static_cast<std::size_t>(a)][j], members[static_cast<std::size_t>(n - a)][k]}, c[j]);
            }
        }
        out.coproduct.push_back(std::move(d));
    }
    // action: S_n commutes with the action, so g . [w] = [S_n(g . w)]
    out.action.assign(G.size(), std::vector<SparseVec>(nb));
    for (std::size_t g = 0; g < G.size(); ++g)
        for (std::size_t i = 0; i < nb; ++i) {
            const int n = elems[i].len;
            std::vector<CycScalar> basis_word(ts.power(n), CycScalar::zero(1));
            basis_word[elems[i].word] = CycScalar::one();
            const auto moved = ts.act_on(g, basis_word, n);
            std::vector<CycScalar> img(ts.power(n), CycScalar::zero(1));
            for (std::size_t w = 0; w < moved.size(); ++w)
                if (!moved[w].is_zero())
                    for (std::size_t r = 0; r < img.size(); ++r) {
                        const auto& s = sym[static_cast<std::size_t>(n)][w][r];
                        if (!s.is_zero()) img[r] += moved[w] * s;
                    }
            out.action[g][i] = to_basis(img, n);
        }
    // antipode: S(1) = 1, S(X) = -sum over terms X' (x) X'' other than X (x) 1 of S(X') X''
    out.antipode.assign(nb, SparseVec{});
    out.antipode[0] = SparseVec{{0, CycScalar::one()}};
    for (std::size_t i = 1; i < nb; ++i) {
        SparseVec s;
        for (const auto& [pr, c] : out.coproduct[i]) {
            if (pr.first == i && pr.second == 0) continue;
            for (const auto& [a, ca] : out.antipode[pr.first])
                for (const auto& [b, cb] : *out.product[a][pr.second]) detail::add_to(s, b, -(c * ca * cb));
        }
        out.antipode[i] = std::move(s);
    }
    return out;
}

/// Trivial braided part (H = k): the biproduct is (kG, Phi) itself.
inline BraidedHopfTruncation trivial_braided(const Cochain3& w) {
    const auto& G = w.group;
    BraidedHopfTruncation h{G, w, 1, true, {0}, {0}, {"1"}, {}, {}, {}, {}};
    h.product = {{SparseVec{{0, CycScalar::one()}}}};
    h.coproduct = {SparsePair{{{0, 0}, CycScalar::one()}}};
    h.antipode = {SparseVec{{0, CycScalar::one()}}};
    h.action.assign(G.size(), {SparseVec{{0, CycScalar::one()}}});
    return h;
}

// ---------------------------------------------------------------------------
// Biproduct

struct BiproductOptions {
    /// Multiplies the product prefactor by -1 whenever both factors have
    /// positive length. Only for exercising the axiom checker.
    bool corrupt_product_sign = false;
};

/// H # kG on basis X_i (x) g, index i * |G| + g.
class BiproductTruncation {
public:
    BiproductTruncation(BraidedHopfTruncation h, BiproductOptions opt = {}) : h_(std::move(h)), opt_(opt) {}

    const BraidedHopfTruncation& braided() const noexcept { return h_; }
    const GroupSpec& group() const noexcept { return h_.group; }
    std::size_t dim() const noexcept { return h_.size() * h_.group.size(); }
    std::size_t index(std::size_t x, std::size_t g) const { return x * h_.group.size() + g; }
    std::size_t part(std::size_t a) const { return a / h_.group.size(); }
    std::size_t grp(std::size_t a) const { return a % h_.group.size(); }
    int length(std::size_t a) const { return h_.length[part(a)]; }
    std::string name(std::size_t a) const { return h_.names[part(a)] + "#" + h_.group.format(grp(a)); }
    std::size_t unit() const { return index(0, 0); }

    CycScalar phi(std::size_t x, std::size_t y, std::size_t z) const { return h_.cocycle.value(x, y, z); }

    /// (X (x) g)(Y (x) h) = Phi(xg,y,h) Phi(x,y,g) / (Phi(x,g,y) Phi(xy,g,h)) X(g.Y) (x) gh.
    /// nullopt when the product leaves the truncation.
    std::optional<SparseVec> product(std::size_t a, std::size_t b) const {
        const auto& G = h_.group;
        const std::size_t X = part(a), g = grp(a), Y = part(b), hh = grp(b);
        const std::size_t x = h_.degree[X], y = h_.degree[Y];
        if (h_.length[X] + h_.length[Y] > h_.truncation && !h_.complete) return std::nullopt;
        const long long n = h_.cocycle.root_order;
        long long e = static_cast<long long>(h_.cocycle.at(G.mul(x, g), y, hh)) + h_.cocycle.at(x, y, g) -
                      h_.cocycle.at(x, g, y) - h_.cocycle.at(G.mul(x, y), g, hh);
        CycScalar pref = CycScalar::zeta(static_cast<int>(n), e);
        if (opt_.corrupt_product_sign && h_.length[X] > 0 && h_.length[Y] > 0) pref = -pref;
        SparseVec out;
        for (const auto& [z, cz] : h_.action[g][Y]) {
            const auto& p = h_.product[X][z];
            if (!p) return std::nullopt;
            for (const auto& [t, ct] : *p) detail::add_to(out, index(t, G.mul(g, hh)), pref * cz * ct);
        }
        return out;
    }

    /// Delta(X (x) g) = Phi(x',x'',g)^{-1} (X' (x) x''g) (x) (X'' (x) g).
    SparsePair coproduct(std::size_t a) const {
        const auto& G = h_.group;
        const std::size_t X = part(a), g = grp(a);
        SparsePair out;
        for (const auto& [pr, c] : h_.coproduct[X]) {
            const std::size_t x1 = h_.degree[pr.first], x2 = h_.degree[pr.second];
            const CycScalar f = CycScalar::zeta(h_.cocycle.root_order, -static_cast<long long>(h_.cocycle.at(x1, x2, g)));
            detail::add_to(out, {index(pr.first, G.mul(x2, g)), index(pr.second, g)}, c * f);
        }
        return out;
    }

    CycScalar epsilon(std::size_t a) const { return part(a) == 0 ? CycScalar::one() : CycScalar::zero(1); }
    CycScalar alpha(std::size_t a) const { return epsilon(a); }
    CycScalar beta(std::size_t a) const {
        if (part(a) != 0) return CycScalar::zero(1);
        const auto& G = h_.group;
        const std::size_t g = grp(a);
        return phi(g, G.inv(g), g).inverse();
    }

    /// Associator Phi(pi a, pi b, pi c), pi(X (x) g) = epsilon(X) g.
    CycScalar associator(std::size_t a, std::size_t b, std::size_t c) const {
        if (part(a) != 0 || part(b) != 0 || part(c) != 0) return CycScalar::zero(1);
        return phi(grp(a), grp(b), grp(c));
    }

    /// Convolution inverse of the associator.
    CycScalar associator_inverse(std::size_t a, std::size_t b, std::size_t c) const {
        if (part(a) != 0 || part(b) != 0 || part(c) != 0) return CycScalar::zero(1);
        return phi(grp(a), grp(b), grp(c)).inverse();
    }

    /// S(X (x) g) = Phi(g^-1,g,g^-1) / (Phi(x^-1 g^-1, xg, g^-1) Phi(x,g,g^-1)) (1 (x) x^-1 g^-1)(S_H(X) (x) 1).
    std::optional<SparseVec> antipode(std::size_t a) const {
        const auto& G = h_.group;
        const std::size_t X = part(a), g = grp(a), x = h_.degree[X];
        const std::size_t gi = G.inv(g), xi = G.inv(x);
        const long long e = static_cast<long long>(h_.cocycle.at(gi, g, gi)) - h_.cocycle.at(G.mul(xi, gi), G.mul(x, g), gi) -
                            h_.cocycle.at(x, g, gi);
        const CycScalar pref = CycScalar::zeta(h_.cocycle.root_order, e);
        SparseVec out;
        for (const auto& [z, cz] : h_.antipode[X]) {
            auto p = product(index(0, G.mul(xi, gi)), index(z, 0));
            if (!p) return std::nullopt;
            for (const auto& [t, ct] : *p) detail::add_to(out, t, pref * cz * ct);
        }
        return out;
    }

private:
    BraidedHopfTruncation h_;
    BiproductOptions opt_;
};

inline BiproductTruncation biproduct_build(BraidedHopfTruncation h, BiproductOptions opt = {}) {
    return BiproductTruncation(std::move(h), opt);
}

/// Biproduct B(V) # kG through `truncation`.
inline BiproductTruncation biproduct_build(const YDModule& v, int truncation, BiproductOptions opt = {}) {
    return BiproductTruncation(nichols_truncation(v, truncation), opt);
}

// ---------------------------------------------------------------------------
// Axiom verification

struct CoquasiReport {
    bool ok = true;
    std::string witness;
    /// Checked and skipped (leaving the truncation) instances per axiom.
    std::map<std::string, std::size_t> checked;
    std::map<std::string, std::size_t> skipped;

    explicit operator bool() const noexcept { return ok; }
};

namespace detail {

/// Iterated coproduct of a basis element into k tensor factors.
inline std::vector<std::pair<std::vector<std::size_t>, CycScalar>> iterated_coproduct(const BiproductTruncation& m,
                                                                                       std::size_t a, int k) {
    std::vector<std::pair<std::vector<std::size_t>, CycScalar>> cur{{{a}, CycScalar::one()}};
    for (int step = 1; step < k; ++step) {
        std::vector<std::pair<std::vector<std::size_t>, CycScalar>> next;
        for (const auto& [t, c] : cur) {
            const std::size_t last = t.back();
            for (const auto& [pr, cc] : m.coproduct(last)) {
                auto u = t;
                u.back() = pr.first;
                u.push_back(pr.second);
                next.emplace_back(std::move(u), c * cc);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

/// Product of sparse elements; nullopt when a term leaves the truncation.
inline std::optional<SparseVec> multiply(const BiproductTruncation& m, const SparseVec& u, const SparseVec& v) {
    SparseVec out;
    for (const auto& [a, ca] : u)
        for (const auto& [b, cb] : v) {
            auto p = m.product(a, b);
            if (!p) return std::nullopt;
            for (const auto& [t, ct] : *p) add_to(out, t, ca * cb * ct);
        }
    return out;
}

inline SparseVec basis_vec(std::size_t a) { return SparseVec{{a, CycScalar::one()}}; }

inline bool sparse_equal(const SparseVec& a, const SparseVec& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end() || it->second != v) return false;
    }
    return true;
}

inline bool pair_equal(const SparsePair& a, const SparsePair& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end() || it->second != v) return false;
    }
    return true;
}

}  // namespace detail

/// Exhaustive check of the coquasi-Hopf axioms on basis elements: products
/// and the associator on triples (and quadruples for the associator
/// coherence) of total length <= max_len, the remaining identities on single
/// elements of length <= max_len. Instances leaving the truncation are
/// skipped and counted.
inline CoquasiReport verify_coquasi(const BiproductTruncation& m, int max_len) {
    using detail::basis_vec;
    CoquasiReport rep;
    const std::size_t dim = m.dim();
    std::vector<std::size_t> upto;
    for (std::size_t a = 0; a < dim; ++a)
        if (m.length(a) <= max_len) upto.push_back(a);
    auto fail = [&](const std::string& what) {
        if (rep.ok) {
            rep.ok = false;
            rep.witness = what;
        }
    };
    auto count = [&](const char* k) { ++rep.checked[k]; };
    auto skip = [&](const char* k) { ++rep.skipped[k]; };
    const SparseVec one = basis_vec(m.unit());

    // coalgebra: counit and coassociativity
    for (auto a : upto) {
        const auto d = m.coproduct(a);
        SparseVec left, right;
        for (const auto& [pr, c] : d) {
            detail::add_to(left, pr.second, c * m.epsilon(pr.first));
            detail::add_to(right, pr.first, c * m.epsilon(pr.second));
        }
        count("counit");
        if (!detail::sparse_equal(left, basis_vec(a)) || !detail::sparse_equal(right, basis_vec(a)))
            fail("counit fails at " + m.name(a));
        std::map<std::array<std::size_t, 3>, CycScalar> l3, r3;
        auto add3 = [](std::map<std::array<std::size_t, 3>, CycScalar>& t, std::array<std::size_t, 3> k, const CycScalar& c) {
            auto it = t.find(k);
            if (it == t.end()) t.emplace(k, c);
            else it->second += c;
        };
        for (const auto& [pr, c] : d) {
            for (const auto& [q, cq] : m.coproduct(pr.first)) add3(l3, {q.first, q.second, pr.second}, c * cq);
            for (const auto& [q, cq] : m.coproduct(pr.second)) add3(r3, {pr.first, q.first, q.second}, c * cq);
        }
        for (auto* t : {&l3, &r3})
            for (auto it = t->begin(); it != t->end();) it = it->second.is_zero() ? t->erase(it) : std::next(it);
        count("coassociativity");
        bool same = l3.size() == r3.size();
        for (const auto& [k, v] : l3)
            if (!same) break;
            else if (auto it = r3.find(k); it == r3.end() || it->second != v) same = false;
        if (!same) fail("coassociativity fails at " + m.name(a));
    }

    // unit, multiplicativity of the counit and coproduct
    for (auto a : upto) {
        count("unit");
        auto l = m.product(m.unit(), a), r = m.product(a, m.unit());
        if (!l || !r || !detail::sparse_equal(*l, basis_vec(a)) || !detail::sparse_equal(*r, basis_vec(a)))
            fail("unit law fails at " + m.name(a));
        for (auto b : upto) {
            if (m.length(a) + m.length(b) > max_len) continue;
            auto ab = m.product(a, b);
            if (!ab) {
                skip("coproduct multiplicative");
                continue;
            }
            count("coproduct multiplicative");
            SparsePair lhs;
            CycScalar eps = CycScalar::zero(1);
            for (const auto& [t, ct] : *ab) {
                eps += ct * m.epsilon(t);
                for (const auto& [pr, c] : m.coproduct(t)) detail::add_to(lhs, pr, ct * c);
            }
            if (eps != m.epsilon(a) * m.epsilon(b)) fail("counit is not multiplicative at (" + m.name(a) + ", " + m.name(b) + ")");
            SparsePair rhs;
            bool inside = true;
            for (const auto& [pa, ca] : m.coproduct(a))
                for (const auto& [pb, cb] : m.coproduct(b)) {
                    auto p1 = m.product(pa.first, pb.first), p2 = m.product(pa.second, pb.second);
                    if (!p1 || !p2) {
                        inside = false;
                        continue;
                    }
                    for (const auto& [s, cs] : *p1)
                        for (const auto& [t, ct] : *p2) detail::add_to(rhs, {s, t}, ca * cb * cs * ct);
                }
            if (!inside) continue;
            if (!detail::pair_equal(lhs, rhs)) fail("coproduct is not multiplicative at (" + m.name(a) + ", " + m.name(b) + ")");
        }
    }

    // quasi-associativity: a1(b1c1) Phi(a2,b2,c2) = Phi(a1,b1,c1) (a2b2)c2
    for (auto a : upto)
        for (auto b : upto) {
            if (m.length(a) + m.length(b) > max_len) continue;
            for (auto c : upto) {
                if (m.length(a) + m.length(b) + m.length(c) > max_len) continue;
                SparseVec lhs, rhs;
                bool inside = true;
                const auto da = m.coproduct(a), db = m.coproduct(b), dc = m.coproduct(c);
                for (const auto& [pa, ca] : da)
                    for (const auto& [pb, cb] : db)
                        for (const auto& [pc, cc] : dc) {
                            const CycScalar k = ca * cb * cc;
                            const CycScalar fr = m.associator(pa.second, pb.second, pc.second);
                            if (!fr.is_zero()) {
                                auto bc = m.product(pb.first, pc.first);
                                auto abc = bc ? detail::multiply(m, basis_vec(pa.first), *bc) : std::nullopt;
                                if (!abc) inside = false;
                                else
                                    for (const auto& [t, ct] : *abc) detail::add_to(lhs, t, k * fr * ct);
                            }
                            const CycScalar fl = m.associator(pa.first, pb.first, pc.first);
                            if (!fl.is_zero()) {
                                auto ab = m.product(pa.second, pb.second);
                                auto abc = ab ? detail::multiply(m, *ab, basis_vec(pc.second)) : std::nullopt;
                                if (!abc) inside = false;
                                else
                                    for (const auto& [t, ct] : *abc) detail::add_to(rhs, t, k * fl * ct);
                            }
                        }
                if (!inside) {
                    skip("quasi-associativity");
                    continue;
                }
                count("quasi-associativity");
                if (!detail::sparse_equal(lhs, rhs))
                    fail("quasi-associativity fails at (" + m.name(a) + ", " + m.name(b) + ", " + m.name(c) + ")");
            }
        }

    // associator normalization and coherence
    for (auto a : upto)
        for (auto b : upto) {
            if (m.length(a) + m.length(b) > max_len) continue;
            count("associator normalization");
            if (m.associator(a, m.unit(), b) != m.epsilon(a) * m.epsilon(b))
                fail("Phi(a,1,b) != eps(a)eps(b) at (" + m.name(a) + ", " + m.name(b) + ")");
        }
    {
        // Phi(a1,b1,c1d1)Phi(a2b2,c2,d2) = Phi(b1,c1,d1)Phi(a1,b2c2,d2)Phi(a2,b3,c3)
        auto phi_on = [&](const SparseVec& u, const SparseVec& v, const SparseVec& w) {
            CycScalar s = CycScalar::zero(1);
            for (const auto& [x, cx] : u)
                for (const auto& [y, cy] : v)
                    for (const auto& [z, cz] : w) {
                        const auto f = m.associator(x, y, z);
                        if (!f.is_zero()) s += cx * cy * cz * f;
                    }
            return s;
        };
        std::map<std::size_t, std::vector<std::pair<std::vector<std::size_t>, CycScalar>>> co2, co3;
        for (auto a : upto) {
            co2[a] = detail::iterated_coproduct(m, a, 2);
            co3[a] = detail::iterated_coproduct(m, a, 3);
        }
        for (auto a : upto)
            for (auto b : upto) {
                if (m.length(a) + m.length(b) > max_len) continue;
                for (auto c : upto) {
                    if (m.length(a) + m.length(b) + m.length(c) > max_len) continue;
                    for (auto d : upto) {
                        if (m.length(a) + m.length(b) + m.length(c) + m.length(d) > max_len) continue;
                        const auto &a2 = co2[a], &b2 = co2[b], &c2 = co2[c], &d2 = co2[d], &b3 = co3[b], &c3 = co3[c];
                        CycScalar lhs = CycScalar::zero(1), rhs = CycScalar::zero(1);
                        bool inside = true;
                        for (const auto& [ta, ca] : a2)
                            for (const auto& [tb, cb] : b2) {
                                if (m.associator(ta[0], tb[0], m.unit()).is_zero() && m.length(ta[0]) + m.length(tb[0]) > 0) continue;
                                if (m.length(ta[1]) + m.length(tb[1]) > 0) continue;
                                for (const auto& [tc, cc] : c2)
                                    for (const auto& [td, cd] : d2) {
                                        // Phi_M vanishes off length 0 and products add lengths
                                        if (m.length(tc[0]) + m.length(td[0]) > 0) continue;
                                        auto cd1 = m.product(tc[0], td[0]);
                                        auto ab2 = m.product(ta[1], tb[1]);
                                        if (!cd1 || !ab2) {
                                            inside = false;
                                            continue;
                                        }
                                        lhs += ca * cb * cc * cd * phi_on(basis_vec(ta[0]), basis_vec(tb[0]), *cd1) *
                                               phi_on(*ab2, basis_vec(tc[1]), basis_vec(td[1]));
                                    }
                            }
                        for (const auto& [ta, ca] : a2)
                            for (const auto& [tb, cb] : b3)
                                for (const auto& [tc, cc] : c3) {
                                    const CycScalar last = m.associator(ta[1], tb[2], tc[2]);
                                    if (last.is_zero()) continue;
                                    for (const auto& [td, cd] : d2) {
                                        const CycScalar first = m.associator(tb[0], tc[0], td[0]);
                                        if (first.is_zero() || m.length(tb[1]) + m.length(tc[1]) > 0) continue;
                                        auto bc = m.product(tb[1], tc[1]);
                                        if (!bc) {
                                            inside = false;
                                            continue;
                                        }
                                        rhs += ca * cb * cc * cd * first * phi_on(basis_vec(ta[0]), *bc, basis_vec(td[1])) * last;
                                    }
                                }
                        if (!inside) {
                            skip("associator coherence");
                            continue;
                        }
                        count("associator coherence");
                        if (lhs != rhs)
                            fail("associator coherence fails at (" + m.name(a) + ", " + m.name(b) + ", " + m.name(c) + ", " +
                                 m.name(d) + ")");
                    }
                }
            }
    }

    // quasi-antipode
    for (auto a : upto) {
        auto t3 = detail::iterated_coproduct(m, a, 3);
        SparseVec l1, l2;
        bool inside = true;
        for (const auto& [t, c] : t3) {
            const CycScalar al = m.alpha(t[1]);
            if (!al.is_zero()) {
                auto s = m.antipode(t[0]);
                auto p = s ? detail::multiply(m, *s, basis_vec(t[2])) : std::nullopt;
                if (!p) inside = false;
                else
                    for (const auto& [k, v] : *p) detail::add_to(l1, k, c * al * v);
            }
            const CycScalar be = m.beta(t[1]);
            if (!be.is_zero()) {
                auto s = m.antipode(t[2]);
                auto p = s ? detail::multiply(m, basis_vec(t[0]), *s) : std::nullopt;
                if (!p) inside = false;
                else
                    for (const auto& [k, v] : *p) detail::add_to(l2, k, c * be * v);
            }
        }
        if (!inside) {
            skip("quasi-antipode");
            continue;
        }
        count("quasi-antipode");
        SparseVec r1, r2;
        detail::add_to(r1, m.unit(), m.alpha(a));
        detail::add_to(r2, m.unit(), m.beta(a));
        if (!detail::sparse_equal(l1, r1)) fail("S(a1)alpha(a2)a3 != alpha(a)1 at " + m.name(a));
        if (!detail::sparse_equal(l2, r2)) fail("a1 beta(a2) S(a3) != beta(a)1 at " + m.name(a));

        auto t5 = detail::iterated_coproduct(m, a, 5);
        CycScalar e1 = CycScalar::zero(1), e2 = CycScalar::zero(1);
        for (const auto& [t, c] : t5) {
            const CycScalar k1 = m.beta(t[1]) * m.alpha(t[3]);
            if (!k1.is_zero()) {
                auto s = m.antipode(t[2]);
                if (!s) inside = false;
                else
                    for (const auto& [k, v] : *s) {
                        const auto f = m.associator(t[0], k, t[4]);
                        if (!f.is_zero()) e1 += c * k1 * v * f;
                    }
            }
            const CycScalar k2 = m.alpha(t[1]) * m.beta(t[3]);
            if (!k2.is_zero()) {
                auto s0 = m.antipode(t[0]), s4 = m.antipode(t[4]);
                if (!s0 || !s4) inside = false;
                else
                    for (const auto& [x, vx] : *s0)
                        for (const auto& [z, vz] : *s4) {
                            const auto f = m.associator_inverse(x, t[2], z);
                            if (!f.is_zero()) e2 += c * k2 * vx * vz * f;
                        }
            }
        }
        if (!inside) {
            skip("quasi-antipode associator");
            continue;
        }
        count("quasi-antipode associator");
        if (e1 != m.epsilon(a)) fail("Phi(a1,S(a3),a5)beta(a2)alpha(a4) != eps(a) at " + m.name(a));
        if (e2 != m.epsilon(a)) fail("Phi^-1(S(a1),a3,S(a5))alpha(a2)beta(a4) != eps(a) at " + m.name(a));
    }
    return rep;
}

/// Compares the length-0 part of a biproduct with (kG, w): g h = gh,
/// Delta(g) = g (x) g, S(g) = g^-1, alpha(g) = 1, beta(g) = w(g,g^-1,g)^-1 and
/// associator w.
inline CheckResult check_grouplike_part(const BiproductTruncation& m, const Cochain3& w) {
    const auto& G = m.group();
    auto name = [&](std::size_t g) { return G.format(g); };
    for (std::size_t g = 0; g < G.size(); ++g) {
        const std::size_t a = m.index(0, g);
        if (!detail::pair_equal(m.coproduct(a), SparsePair{{{a, a}, CycScalar::one()}}))
            return CheckResult::fail("coproduct of " + name(g) + " is not g (x) g", {g});
        auto s = m.antipode(a);
        if (!s || !detail::sparse_equal(*s, detail::basis_vec(m.index(0, G.inv(g)))))
            return CheckResult::fail("antipode of " + name(g) + " is not its inverse", {g});
        if (m.alpha(a) != CycScalar::one()) return CheckResult::fail("alpha(" + name(g) + ") != 1", {g});
        if (m.beta(a) != w.value(g, G.inv(g), g).inverse()) return CheckResult::fail("beta(" + name(g) + ") != w(g,g^-1,g)^-1", {g});
        for (std::size_t h = 0; h < G.size(); ++h) {
            const std::size_t b = m.index(0, h);
            auto p = m.product(a, b);
            if (!p || !detail::sparse_equal(*p, detail::basis_vec(m.index(0, G.mul(g, h)))))
                return CheckResult::fail("product " + name(g) + " * " + name(h) + " is not gh", {g, h});
            for (std::size_t k = 0; k < G.size(); ++k)
                if (m.associator(a, b, m.index(0, k)) != w.value(g, h, k))
                    return CheckResult::fail("associator differs at (" + name(g) + ", " + name(h) + ", " + name(k) + ")", {g, h, k});
        }
    }
    return CheckResult::pass();
}

// ---------------------------------------------------------------------------
// Coinvariants

/// Braided tables recovered from a biproduct: the coinvariants X (x) 1 with
/// product from M, G-action g.Y = Phi(y,g,g^-1) (1 (x) g)(Y (x) 1)(1 (x) g^-1),
/// degree from (pi (x) id)Delta, and coproduct from Delta(X (x) 1) by
/// dropping the group part of the left factor.
struct RecoveredTables {
    std::vector<std::size_t> coinvariants;
    std::vector<std::size_t> degree;
    std::vector<std::vector<std::optional<SparseVec>>> product;
    std::vector<SparsePair> coproduct;
    std::vector<std::vector<SparseVec>> action;
};

inline RecoveredTables recover_from_coinvariants(const BiproductTruncation& m) {
    const auto& G = m.group();
    const std::size_t nb = m.braided().size();
    RecoveredTables r;
    // coinvariants among basis elements: (id (x) pi)Delta(a) = a (x) 1
    for (std::size_t a = 0; a < m.dim(); ++a) {
        SparsePair img;
        for (const auto& [pr, c] : m.coproduct(a))
            if (m.part(pr.second) == 0) detail::add_to(img, {pr.first, m.grp(pr.second)}, c);
        if (img.size() == 1 && img.begin()->first == std::make_pair(a, std::size_t{0}) && img.begin()->second.is_one())
            r.coinvariants.push_back(a);
    }
    if (r.coinvariants.size() != nb) throw std::logic_error("recover_from_coinvariants: unexpected coinvariant count");
    for (std::size_t i = 0; i < nb; ++i)
        if (r.coinvariants[i] != m.index(i, 0)) throw std::logic_error("recover_from_coinvariants: coinvariants are not X (x) 1");
    auto strip = [&](const SparseVec& v) {
        SparseVec out;
        for (const auto& [k, c] : v) {
            if (m.grp(k) != 0) throw std::logic_error("recover_from_coinvariants: result leaves the coinvariants");
            detail::add_to(out, m.part(k), c);
        }
        return out;
    };
    r.product.assign(nb, std::vector<std::optional<SparseVec>>(nb));
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if (auto p = m.product(m.index(i, 0), m.index(j, 0))) r.product[i][j] = strip(*p);
    for (std::size_t i = 0; i < nb; ++i) {
        std::optional<std::size_t> deg;
        SparsePair d;
        for (const auto& [pr, c] : m.coproduct(m.index(i, 0))) {
            if (m.part(pr.first) == 0 && pr.second == m.index(i, 0)) deg = m.grp(pr.first);
            if (m.grp(pr.second) != 0) throw std::logic_error("recover_from_coinvariants: right factor is not coinvariant");
            detail::add_to(d, {m.part(pr.first), m.part(pr.second)}, c);
        }
        if (!deg) throw std::logic_error("recover_from_coinvariants: no grouplike left factor");
        r.degree.push_back(*deg);
        r.coproduct.push_back(std::move(d));
    }
    r.action.assign(G.size(), std::vector<SparseVec>(nb));
    for (std::size_t g = 0; g < G.size(); ++g)
        for (std::size_t i = 0; i < nb; ++i) {
            auto left = m.product(m.index(0, g), m.index(i, 0));
            auto both = left ? detail::multiply(m, *left, detail::basis_vec(m.index(0, G.inv(g)))) : std::nullopt;
            if (!both) continue;
            const CycScalar f = m.phi(r.degree[i], g, G.inv(g));
            SparseVec s;
            for (const auto& [k, c] : strip(*both)) detail::add_to(s, k, c * f);
            r.action[g][i] = std::move(s);
        }
    return r;
}

}  // namespace qqg
