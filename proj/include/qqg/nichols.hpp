#pragma once

// Nichols algebras of diagonal braidings c(x_i (x) x_j) = q_ij x_j (x) x_i.
//
// The degree-k symmetrizer factors as S_k = R_k (S_{k-1} (x) id), where R_k
// moves the last letter of a word w to position p with coefficient
// q_{w_p, w_k} ... q_{w_{k-1}, w_k}. Since S_k preserves the letter multiset,
// the image on a multidegree block a is R_k applied to the sum over letters x
// of Im(S_{k-1})_{a - e_x} (x) x, so each block is computed from bases of the
// blocks one degree lower.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coboundary.hpp"
#include "cyclotomic.hpp"
#include "matrix.hpp"
#include "yd_module.hpp"

namespace qqg {

/// Raised when a computation would exceed the configured size budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// (n, k) with s = zeta_n^k, n the exact multiplicative order of s.
inline std::optional<std::pair<int, int>> root_of_unity(const CycScalar& s) {
    auto o = unity_order(s);
    if (!o) return std::nullopt;
    const int n = *o;
    const int l = static_cast<int>(lcm_ll(n, s.root_order()));
    const CycScalar t = s.embed(l);
    for (int k = 0; k < n; ++k) {
        if (std::gcd(k, n) != 1 && n != 1) continue;
        if (CycScalar::zeta(l, static_cast<long long>(k) * (l / n)) == t) return std::make_pair(n, k);
    }
    return std::nullopt;
}

/// Arithmetic in Q(zeta_N) on flat coefficient arrays, one block of phi(N)
/// rationals per vector entry.
class CycloField {
public:
    explicit CycloField(int n) : n_(n), tab_(Registry::instance().tables(n)), deg_(tab_->phi.size() - 1) {}

    int order() const noexcept { return n_; }
    std::size_t degree() const noexcept { return deg_; }

    /// out[0..deg) += c * zeta^k.
    void add_monomial(mpq_class* out, const mpq_class& c, long long k) const {
        const auto& v = tab_->pow[static_cast<std::size_t>(mod_floor(k, n_))];
        for (std::size_t i = 0; i < deg_; ++i)
            if (v[i] != 0) out[i] += c * static_cast<long>(v[i]);
    }

    /// out += zeta^k * b.
    void add_shifted(mpq_class* out, const mpq_class* b, long long k) const {
        for (std::size_t i = 0; i < deg_; ++i)
            if (sgn(b[i]) != 0) add_monomial(out, b[i], static_cast<long long>(i) + k);
    }

    /// out -= f * b.
    void sub_mul(mpq_class* out, const mpq_class* f, const mpq_class* b) const {
        for (std::size_t i = 0; i < deg_; ++i) {
            if (sgn(f[i]) == 0) continue;
            for (std::size_t j = 0; j < deg_; ++j) {
                if (sgn(b[j]) == 0) continue;
                const mpq_class p = f[i] * b[j];
                const auto& v = tab_->pow[i + j];
                for (std::size_t t = 0; t < deg_; ++t)
                    if (v[t] != 0) out[t] -= p * static_cast<long>(v[t]);
            }
        }
    }

    std::vector<mpq_class> mul(const mpq_class* a, const mpq_class* b) const {
        std::vector<mpq_class> out(deg_);
        std::vector<mpq_class> neg(b, b + deg_);
        for (auto& x : neg) x = -x;
        sub_mul(out.data(), a, neg.data());
        return out;
    }

    bool is_zero(const mpq_class* a) const {
        for (std::size_t i = 0; i < deg_; ++i)
            if (sgn(a[i]) != 0) return false;
        return true;
    }

    std::vector<mpq_class> inverse(const mpq_class* a) const {
        CycScalar s(n_, std::vector<Rational>(a, a + deg_));
        return s.inverse().coeffs();
    }

private:
    int n_;
    std::shared_ptr<const FieldTables> tab_;
    std::size_t deg_;
};

/// Row space of vectors over Q(zeta_N), kept in semi-echelon form: each row
/// has a unit pivot and zeros at the pivots of all earlier rows.
class RowSpace {
public:
    RowSpace(const CycloField& f, std::size_t width) : f_(f), width_(width) {}

    std::size_t rank() const noexcept { return pivots_.size(); }
    const std::vector<std::vector<mpq_class>>& rows() const noexcept { return rows_; }

    /// Reduces v against the rows; appends it when independent.
    bool insert(std::vector<mpq_class> v) {
        const std::size_t d = f_.degree();
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const mpq_class* coef = &v[pivots_[r] * d];
            if (f_.is_zero(coef)) continue;
            const std::vector<mpq_class> c(coef, coef + d);
            const auto& row = rows_[r];
            for (std::size_t j = 0; j < width_; ++j)
                if (!f_.is_zero(&row[j * d])) f_.sub_mul(&v[j * d], c.data(), &row[j * d]);
        }
        std::size_t p = 0;
        while (p < width_ && f_.is_zero(&v[p * d])) ++p;
        if (p == width_) return false;
        const auto inv = f_.inverse(&v[p * d]);
        std::vector<mpq_class> out(v.size());
        for (std::size_t j = p; j < width_; ++j)
            if (!f_.is_zero(&v[j * d])) {
                auto m = f_.mul(inv.data(), &v[j * d]);
                std::copy(m.begin(), m.end(), out.begin() + static_cast<std::ptrdiff_t>(j * d));
            }
        rows_.push_back(std::move(out));
        pivots_.push_back(p);
        return true;
    }

private:
    const CycloField& f_;
    std::size_t width_;
    std::vector<std::vector<mpq_class>> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::string exponent_label(int n, long long k) {
    k = mod_floor(k, n);
    if (k == 0) return "1";
    const long long g = std::gcd(static_cast<long long>(n), k);
    const long long m = n / g, e = k / g;
    if (m == 2) return "-1";
    return "z" + std::to_string(m) + (e == 1 ? "" : "^" + std::to_string(e));
}

}  // namespace detail

/// Short label for a root of unity: "1", "-1", "z3", "z3^2"; other scalars
/// use the polynomial form.
inline std::string root_label(const CycScalar& s) {
    if (auto r = detail::root_of_unity(s)) return detail::exponent_label(r->first, r->second);
    return s.to_string();
}

// ---------------------------------------------------------------------------
// Braiding matrices

/// Diagonal braiding q_ij = zeta_N^{exps[i][j]}, N the least common order.
struct BraidingMatrix {
    int root_order = 1;
    std::vector<std::vector<int>> exps;

    std::size_t rank() const noexcept { return exps.size(); }
    CycScalar at(std::size_t i, std::size_t j) const { return CycScalar::zeta(root_order, exps[i][j]); }

    ExactMatrix matrix() const {
        ExactMatrix m(rank(), rank(), CycScalar::zero(root_order));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) m(i, j) = at(i, j);
        return m;
    }

    /// Braiding in the basis order x_{perm[0]}, x_{perm[1]}, ...
    BraidingMatrix permuted(const std::vector<std::size_t>& perm) const {
        BraidingMatrix b{root_order, std::vector<std::vector<int>>(rank(), std::vector<int>(rank()))};
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) b.exps[i][j] = exps[perm[i]][perm[j]];
        return b.normalized();
    }

    /// Same braiding over the smallest root order.
    BraidingMatrix normalized() const {
        long long n = 1;
        for (const auto& row : exps)
            for (int e : row) {
                const long long k = detail::mod_floor(e, root_order);
                n = lcm_ll(n, root_order / std::gcd(static_cast<long long>(root_order), k));
            }
        BraidingMatrix b{static_cast<int>(n), exps};
        for (auto& row : b.exps)
            for (auto& e : row) e = static_cast<int>(detail::mod_floor(e, root_order) / (root_order / n));
        return b;
    }

    std::string key() const {
        std::ostringstream os;
        os << root_order << ':';
        for (const auto& row : exps) {
            for (int e : row) os << e << ',';
            os << ';';
        }
        return os.str();
    }

    /// Validates that every entry is a root of unity.
    static BraidingMatrix from_matrix(const ExactMatrix& q) {
        if (q.rows() != q.cols()) throw std::invalid_argument("braiding matrix must be square");
        const std::size_t n = q.rows();
        std::vector<std::pair<int, int>> roots;
        long long order = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto r = detail::root_of_unity(q(i, j));
                if (!r)
                    throw std::invalid_argument("braiding entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                ") is not a root of unity");
                roots.push_back(*r);
                order = lcm_ll(order, r->first);
            }
        BraidingMatrix b{static_cast<int>(order), std::vector<std::vector<int>>(n, std::vector<int>(n))};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto& r = roots[i * n + j];
                b.exps[i][j] = static_cast<int>(r.second * (order / r.first));
            }
        return b;
    }
};

// ---------------------------------------------------------------------------
// Symmetrizer

namespace detail {

/// Applies R_k to b (x) x, adding into out. Words of block a are indexed by
/// `index`; `prev` lists the words of the block a - e_x.
inline void apply_last_letter_shuffle(const CycloField& f, const BraidingMatrix& q, const std::vector<std::string>& prev,
                                      const std::vector<mpq_class>& b, int x,
                                      const std::unordered_map<std::string, std::size_t>& index,
                                      std::vector<mpq_class>& out) {
    const std::size_t d = f.degree();
    const int n = q.root_order;
    for (std::size_t w = 0; w < prev.size(); ++w) {
        const mpq_class* c = &b[w * d];
        if (f.is_zero(c)) continue;
        std::string word = prev[w];
        word.push_back(static_cast<char>(x));
        long long e = 0;
        for (std::size_t p = word.size(); p-- > 0;) {
            if (p + 1 < word.size()) {
                e += q.exps[static_cast<std::size_t>(word[p])][static_cast<std::size_t>(x)];
                std::swap(word[p], word[p + 1]);
            }
            f.add_shifted(&out[index.at(word) * d], c, mod_floor(e, n));
        }
    }
}

inline std::vector<std::string> words_of(const std::vector<int>& a) {
    std::string w;
    for (std::size_t i = 0; i < a.size(); ++i) w.append(static_cast<std::size_t>(a[i]), static_cast<char>(i));
    std::vector<std::string> out;
    do out.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

/// Number of words with letter counts a, saturating at limit + 1.
inline unsigned long long multinomial_capped(const std::vector<int>& a, unsigned long long limit) {
    unsigned long long r = 1;
    int total = 0;
    for (int c : a)
        for (int i = 1; i <= c; ++i) {
            ++total;
            const unsigned __int128 v = static_cast<unsigned __int128>(r) * static_cast<unsigned>(total) / static_cast<unsigned>(i);
            if (v > limit) return limit + 1;
            r = static_cast<unsigned long long>(v);
        }
    return r;
}

}  // namespace detail

/// The braided symmetrizer on V^{(x) deg} in the word basis (first letter most
/// significant), as a matrix acting on column vectors.
inline ExactMatrix symmetrizer(const BraidingMatrix& q, int deg, std::size_t budget = 65536) {
    if (deg < 1) throw std::invalid_argument("symmetrizer: degree must be positive");
    const std::size_t n = q.rank();
    std::size_t size = 1;
    for (int k = 0; k < deg; ++k) {
        if (n != 0 && size > budget / n) throw BudgetExceeded("symmetrizer: rank^deg exceeds the size budget");
        size *= n;
    }
    if (size > budget) throw BudgetExceeded("symmetrizer: rank^deg exceeds the size budget");
    auto word = [&](std::size_t idx, int len) {
        std::string w(static_cast<std::size_t>(len), 0);
        for (int p = len; p-- > 0;) {
            w[static_cast<std::size_t>(p)] = static_cast<char>(idx % n);
            idx /= n;
        }
        return w;
    };
    // columns of S_k, each a vector over words of length k
    std::vector<std::vector<CycScalar>> cols;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<CycScalar> c(n, CycScalar::zero(q.root_order));
        c[i] = CycScalar::one(q.root_order);
        cols.push_back(std::move(c));
    }
    std::size_t len = n;
    for (int k = 2; k <= deg; ++k) {
        std::vector<std::vector<CycScalar>> next;
        for (std::size_t col = 0; col < len * n; ++col) {
            const auto& prev = cols[col / n];
            const int x = static_cast<int>(col % n);
            std::vector<CycScalar> out(len * n, CycScalar::zero(q.root_order));
            for (std::size_t w = 0; w < len; ++w) {
                if (prev[w].is_zero()) continue;
                std::string s = word(w, k - 1);
                s.push_back(static_cast<char>(x));
                long long e = 0;
                for (std::size_t p = s.size(); p-- > 0;) {
                    if (p + 1 < s.size()) {
                        e += q.exps[static_cast<std::size_t>(s[p])][static_cast<std::size_t>(x)];
                        std::swap(s[p], s[p + 1]);
                    }
                    std::size_t idx = 0;
                    for (char ch : s) idx = idx * n + static_cast<std::size_t>(ch);
                    out[idx] += prev[w] * CycScalar::zeta(q.root_order, e);
                }
            }
            next.push_back(std::move(out));
        }
        cols = std::move(next);
        len *= n;
    }
    ExactMatrix m(len, len, CycScalar::zero(q.root_order));
    for (std::size_t c = 0; c < len; ++c)
        for (std::size_t r = 0; r < len; ++r) m(r, c) = cols[c][r];
    return m;
}

// ---------------------------------------------------------------------------
// Hilbert series

enum class VerdictKind { Finite, InfiniteByCriterion, UnknownAtCutoff };

inline std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Finite: return "Finite";
        case VerdictKind::InfiniteByCriterion: return "InfiniteByCriterion";
        case VerdictKind::UnknownAtCutoff: return "UnknownAtCutoff";
    }
    return "?";
}

struct NicholsOptions {
    int cutoff = 12;
    /// Largest multidegree block (number of words) the engine will handle.
    std::size_t budget = 65536;
    bool multidegree = false;
};

/// Height of a multidegree alpha: order of q_alpha = prod q_ij^{alpha_i alpha_j}
/// when q_alpha != 1, infinite (nullopt) otherwise.
struct RootHeight {
    std::vector<int> alpha;
    CycScalar q_alpha;
    std::optional<int> height;
};

struct NicholsReport {
    std::size_t rank = 0;
    /// dims[k] = dim B(V)_k; through the top degree when finite, else through the last computed degree.
    std::vector<std::size_t> dims;
    /// Nonzero multidegree dimensions (filled on request).
    std::map<std::vector<int>, std::size_t> multidegree;
    VerdictKind verdict = VerdictKind::UnknownAtCutoff;
    std::size_t total = 0;
    std::size_t top = 0;
    int cutoff = 0;
    std::string reason;
    bool budget_exhausted = false;
    /// Indices i with q_ii = 1 (x_i^k is nonzero in every degree).
    std::vector<std::size_t> unit_diagonal;
    std::vector<RootHeight> heights;
};

namespace detail {

inline NicholsReport hilbert_uncached(const BraidingMatrix& q, int cutoff, std::size_t budget) {
    const std::size_t n = q.rank();
    NicholsReport rep;
    rep.rank = n;
    rep.cutoff = cutoff;
    for (std::size_t i = 0; i < n; ++i)
        if (mod_floor(q.exps[i][i], q.root_order) == 0) rep.unit_diagonal.push_back(i);
    rep.dims.push_back(1);
    if (n == 0) {
        rep.verdict = VerdictKind::Finite;
        rep.total = 1;
        rep.reason = "zero-dimensional braided space";
        return rep;
    }
    const CycloField f(q.root_order);
    const std::size_t d = f.degree();
    struct Block {
        std::vector<std::string> words;
        std::vector<std::vector<mpq_class>> basis;
    };
    std::map<std::vector<int>, Block> level;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> a(n, 0);
        a[i] = 1;
        Block b{{std::string(1, static_cast<char>(i))}, {}};
        std::vector<mpq_class> v(d);
        v[0] = 1;
        b.basis.push_back(std::move(v));
        rep.multidegree[a] = 1;
        level.emplace(std::move(a), std::move(b));
    }
    rep.dims.push_back(n);
    int k = 1;
    for (; k < cutoff; ++k) {
        std::map<std::vector<int>, Block> next;
        std::vector<std::vector<int>> targets;
        for (const auto& [a, blk] : level)
            for (std::size_t x = 0; x < n; ++x) {
                auto t = a;
                ++t[x];
                targets.push_back(std::move(t));
            }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        std::size_t dim = 0;
        bool exhausted = false;
        for (const auto& a : targets) {
            const auto rows = multinomial_capped(a, budget);
            if (rows > budget) {
                exhausted = true;
                rep.reason = "size budget exceeded in degree " + std::to_string(k + 1) + ": a multidegree block has more than " +
                             std::to_string(budget) + " words";
                break;
            }
            Block blk{words_of(a), {}};
            std::unordered_map<std::string, std::size_t> index;
            for (std::size_t w = 0; w < blk.words.size(); ++w) index.emplace(blk.words[w], w);
            RowSpace space(f, blk.words.size());
            for (std::size_t x = 0; x < n; ++x) {
                if (a[x] == 0) continue;
                auto prev = a;
                --prev[x];
                auto it = level.find(prev);
                if (it == level.end()) continue;
                for (const auto& b : it->second.basis) {
                    std::vector<mpq_class> out(blk.words.size() * d);
                    apply_last_letter_shuffle(f, q, it->second.words, b, static_cast<int>(x), index, out);
                    space.insert(std::move(out));
                }
            }
            if (space.rank() == 0) continue;
            dim += space.rank();
            rep.multidegree[a] = space.rank();
            blk.basis = space.rows();
            next.emplace(a, std::move(blk));
        }
        if (exhausted) {
            rep.budget_exhausted = true;
            for (auto it = rep.multidegree.begin(); it != rep.multidegree.end();) {
                int tot = std::accumulate(it->first.begin(), it->first.end(), 0);
                it = tot > k ? rep.multidegree.erase(it) : std::next(it);
            }
            break;
        }
        if (dim == 0) {
            rep.verdict = VerdictKind::Finite;
            rep.top = static_cast<std::size_t>(k);
            rep.total = std::accumulate(rep.dims.begin(), rep.dims.end(), std::size_t{0});
            rep.reason = "degree " + std::to_string(k + 1) + " vanishes";
            return rep;
        }
        rep.dims.push_back(dim);
        level = std::move(next);
    }
    rep.verdict = VerdictKind::UnknownAtCutoff;
    if (!rep.budget_exhausted) {
        rep.reason = "all degrees through " + std::to_string(cutoff) + " are nonzero";
        if (!rep.unit_diagonal.empty()) rep.reason += "; some q_ii = 1, so B(V) is infinite-dimensional";
    }
    rep.cutoff = rep.budget_exhausted ? static_cast<int>(rep.dims.size()) - 1 : cutoff;
    return rep;
}

}  // namespace detail

/// Graded dimensions of B(V) for a diagonal braiding, degree by degree until
/// a degree vanishes (Finite) or the cutoff is reached. Results are cached
/// per braiding, cutoff and budget.
inline NicholsReport hilbert(const BraidingMatrix& q, const NicholsOptions& opt = {}) {
    if (opt.cutoff < 1) throw std::invalid_argument("hilbert: cutoff must be positive");
    static std::mutex mu;
    static std::map<std::string, NicholsReport> cache;
    const BraidingMatrix nq = q.normalized();
    const std::string key = nq.key() + "|" + std::to_string(opt.cutoff) + "|" + std::to_string(opt.budget);
    NicholsReport rep;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) rep = it->second;
    }
    if (rep.dims.empty()) {
        rep = detail::hilbert_uncached(nq, opt.cutoff, opt.budget);
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(key, rep);
    }
    if (!opt.multidegree) rep.multidegree.clear();
    return rep;
}

inline NicholsReport hilbert(const ExactMatrix& q, const NicholsOptions& opt = {}) {
    return hilbert(BraidingMatrix::from_matrix(q), opt);
}

// ---------------------------------------------------------------------------
// Generalized Dynkin diagrams

struct DynkinDiagram {
    std::vector<CycScalar> vertex_labels;
    /// (i, j) with i < j -> q_ij q_ji, present only when the product is not 1.
    std::map<std::pair<std::size_t, std::size_t>, CycScalar> edges;

    /// Vertex sets of the connected components, each sorted, in order of least vertex.
    std::vector<std::vector<std::size_t>> components() const {
        const std::size_t n = vertex_labels.size();
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& [e, l] : edges) parent[find(e.first)] = find(e.second);
        std::map<std::size_t, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
        std::vector<std::vector<std::size_t>> out;
        for (auto& [root, vs] : groups) out.push_back(std::move(vs));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string to_text() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < vertex_labels.size(); ++i)
            os << "x" << i + 1 << " [" << root_label(vertex_labels[i]) << "]\n";
        for (const auto& [e, l] : edges) os << "x" << e.first + 1 << " -- x" << e.second + 1 << " [" << root_label(l) << "]\n";
        return os.str();
    }

    std::string to_dot() const {
        std::ostringstream os;
        os << "graph dynkin {\n";
        for (std::size_t i = 0; i < vertex_labels.size(); ++i)
            os << "  x" << i + 1 << " [label=\"" << root_label(vertex_labels[i]) << "\"];\n";
        for (const auto& [e, l] : edges)
            os << "  x" << e.first + 1 << " -- x" << e.second + 1 << " [label=\"" << root_label(l) << "\"];\n";
        os << "}\n";
        return os.str();
    }
};

inline DynkinDiagram dynkin(const BraidingMatrix& q) {
    DynkinDiagram d;
    const int n = q.root_order;
    for (std::size_t i = 0; i < q.rank(); ++i) {
        d.vertex_labels.push_back(q.at(i, i));
        for (std::size_t j = i + 1; j < q.rank(); ++j) {
            const long long e = detail::mod_floor(static_cast<long long>(q.exps[i][j]) + q.exps[j][i], n);
            if (e != 0) d.edges.emplace(std::make_pair(i, j), CycScalar::zeta(n, e));
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Heights

/// q_alpha = prod_{i,j} q_ij^{alpha_i alpha_j} and its height.
inline RootHeight root_height(const BraidingMatrix& q, const std::vector<int>& alpha) {
    long long e = 0;
    for (std::size_t i = 0; i < q.rank(); ++i)
        for (std::size_t j = 0; j < q.rank(); ++j)
            e += static_cast<long long>(alpha[i]) * alpha[j] * q.exps[i][j];
    e = detail::mod_floor(e, q.root_order);
    RootHeight h{alpha, CycScalar::zeta(q.root_order, e), std::nullopt};
    if (e != 0) h.height = static_cast<int>(q.root_order / std::gcd(static_cast<long long>(q.root_order), e));
    return h;
}

// ---------------------------------------------------------------------------
// Finiteness of simple nondiagonal modules

enum class SimpleVerdict { FiniteC1, FiniteC2, Infinite };

inline std::string to_string(SimpleVerdict v) {
    switch (v) {
        case SimpleVerdict::FiniteC1: return "Finite-C1";
        case SimpleVerdict::FiniteC2: return "Finite-C2";
        case SimpleVerdict::Infinite: return "Infinite";
    }
    return "?";
}

struct SimpleFiniteness {
    SimpleVerdict verdict = SimpleVerdict::Infinite;
    /// The scalar by which the degree g_V acts.
    CycScalar lambda;
    std::string reason;
};

/// C1: g_V acts by -1. C2: dim V = 2 and g_V acts by a primitive cube root
/// zeta_3. Otherwise B(V) is infinite-dimensional.
inline SimpleFiniteness finiteness_simple(const YDModule& v) {
    if (v.components.size() != 1) throw std::invalid_argument("finiteness_simple: module must have a single simple component");
    if (is_diagonal(v)) throw std::invalid_argument("finiteness_simple: module is of diagonal type");
    const auto& c = v.components.front();
    auto lambda = scalar_multiple_of_identity(c.action[c.degree]);
    if (!lambda) throw std::logic_error("finiteness_simple: the degree does not act by a scalar on a simple module");
    SimpleFiniteness out{SimpleVerdict::Infinite, *lambda, {}};
    const std::string deg = v.group.format(c.degree);
    if (*lambda == CycScalar::rational(-1)) {
        out.verdict = SimpleVerdict::FiniteC1;
        out.reason = deg + " acts by -1";
    } else if (c.dim == 2 && *lambda == CycScalar::zeta(3)) {
        out.verdict = SimpleVerdict::FiniteC2;
        out.reason = "dim 2 and " + deg + " acts by z3";
    } else {
        out.reason = deg + " acts by " + root_label(*lambda) + " on a module of dimension " + std::to_string(c.dim) +
                     ", which is neither -1 nor (dim 2, z3)";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reduction to diagonal type

struct ReduceOptions {
    NicholsOptions nichols;
    CoboundaryOptions coboundary;
};

struct ReductionRefusal {
    std::string reason;
    /// Indices of the simple components that are not of diagonal type over the support.
    std::vector<std::size_t> witnesses;
    std::vector<std::string> witness_degrees;
};

struct Reduction {
    std::optional<ReductionRefusal> refusal;
    std::string support;
    bool lifted = false;
    std::optional<Cochain2> twist;
    std::optional<DiagonalModule> diagonal;
    std::optional<BraidingMatrix> braiding;
    NicholsReport report;
    DynkinDiagram diagram;

    bool refused() const noexcept { return refusal.has_value(); }
};

namespace detail {

inline bool is_trivial_cochain3(const Cochain3& w) {
    const std::size_t s = w.group.size();
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y)
            for (std::size_t z = 0; z < s; ++z)
                if (mod_floor(w.at(x, y, z), w.root_order) != 0) return false;
    return true;
}

}  // namespace detail

/// Restricts V to its support group, lifts to the squared cover when the
/// restricted cocycle is not a coboundary there, twists by a solution of
/// dJ = cocycle to reach an ordinary braided space of diagonal type, and
/// computes the Hilbert data. Refuses when the restricted cocycle is
/// nonabelian.
inline Reduction reduce_and_compute(const YDModule& v, const ReduceOptions& opt = {}) {
    Reduction out;
    Restricted r = restrict_support(v);
    out.support = r.module.group.describe();
    if (!is_abelian(r.module.cocycle)) {
        ReductionRefusal ref{"the cocycle restricted to the support group " + out.support + " is not abelian", {}, {}};
        for (std::size_t i = 0; i < r.module.components.size(); ++i) {
            YDModule single{r.module.group, r.module.cocycle, {r.module.components[i]}};
            if (is_diagonal(single)) continue;
            ref.witnesses.push_back(i);
            ref.witness_degrees.push_back(v.group.format(v.components[i].degree));
        }
        out.refusal = std::move(ref);
        return out;
    }
    YDModule base = std::move(r.module);
    auto j = solve_coboundary(base.cocycle, opt.coboundary);
    if (!j) {
        const SquaredCover pi = squared_cover(base.group);
        base = lift_cover(base, pi);
        if (base.group.size() <= 64) base.cocycle = base.cocycle.tabulated();
        out.lifted = true;
        j = solve_coboundary(base.cocycle, opt.coboundary);
        if (!j) throw std::logic_error("reduce_and_compute: abelian cocycle is not a coboundary on the squared cover");
    }
    YDModule ordinary = twist(base, inverse_cochain(*j));
    if (!detail::is_trivial_cochain3(ordinary.cocycle))
        throw std::logic_error("reduce_and_compute: twisted cocycle is not trivial");
    ordinary.cocycle = trivial_cochain3(ordinary.group);
    auto d = is_diagonal(ordinary);
    if (!d) throw std::logic_error("reduce_and_compute: ordinary module is not of diagonal type");
    out.twist = std::move(j);
    out.braiding = BraidingMatrix::from_matrix(d->q);
    out.diagonal = std::move(d);
    out.report = hilbert(*out.braiding, opt.nichols);
    out.diagram = dynkin(*out.braiding);
    return out;
}

// ---------------------------------------------------------------------------
// Finite-type series of quasi-characters

/// V(chi_1, ..., chi_n): basis X_i of degree g_i with g . X_j = chi_j(g) X_j.
inline YDModule series_module(const Cochain3& w, const std::vector<std::size_t>& degrees,
                              const std::vector<QuasiCharacter>& chars) {
    if (degrees.size() != chars.size()) throw std::invalid_argument("series_module: one character per degree required");
    const auto& G = w.group;
    YDModule v{G, w, {}};
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const auto& chi = chars[i];
        if (chi.group != G) throw std::invalid_argument("series_module: character " + std::to_string(i + 1) + " is on another group");
        if (chi.exps.size() != G.size())
            throw std::invalid_argument("series_module: character " + std::to_string(i + 1) + " needs one value per element");
        const Cochain2 phi = tilde_phi(w, degrees[i]);
        const long long n = lcm_ll(phi.root_order, chi.root_order);
        const long long fp = n / phi.root_order, fc = n / chi.root_order;
        if (detail::mod_floor(chi.exps[0], chi.root_order) != 0)
            throw std::invalid_argument("series_module: character " + std::to_string(i + 1) + " is not 1 at the identity");
        for (std::size_t f = 0; f < G.size(); ++f)
            for (std::size_t g = 0; g < G.size(); ++g) {
                const long long lhs = (static_cast<long long>(chi.exps[f]) + chi.exps[g]) * fc;
                const long long rhs = static_cast<long long>(phi.at(f, g)) * fp + static_cast<long long>(chi.exps[G.mul(f, g)]) * fc;
                if (detail::mod_floor(lhs - rhs, n) != 0)
                    throw std::invalid_argument("series_module: character " + std::to_string(i + 1) +
                                                " is not a quasi-character for the degree " + G.format(degrees[i]) +
                                                " (fails at " + G.format(f) + ", " + G.format(g) + ")");
            }
        YDComponent c{degrees[i], 1, {}};
        for (std::size_t e = 0; e < G.size(); ++e) {
            ExactMatrix m(1, 1, CycScalar::zeta(chi.root_order, chi.exps[e]));
            c.action.push_back(std::move(m));
        }
        v.components.push_back(std::move(c));
    }
    return v;
}

/// Builds V(chi_1, ..., chi_n), reduces it and runs the Hilbert computation
/// with multidegree data. Heights are reported for every multidegree whose
/// component is 1-dimensional. A Finite verdict certifies finite type.
inline NicholsReport finite_type_check(const CocycleSpec& spec, const std::vector<std::size_t>& degrees,
                                       const std::vector<QuasiCharacter>& chars, const ReduceOptions& opt = {}) {
    const YDModule v = series_module(omega_cochain(spec), degrees, chars);
    ReduceOptions o = opt;
    o.nichols.multidegree = true;
    Reduction red = reduce_and_compute(v, o);
    if (red.refused()) throw std::invalid_argument("finite_type_check: " + red.refusal->reason);
    NicholsReport rep = red.report;
    for (const auto& [a, d] : rep.multidegree)
        if (d == 1) rep.heights.push_back(root_height(*red.braiding, a));
    if (!opt.nichols.multidegree) rep.multidegree.clear();
    return rep;
}

// ---------------------------------------------------------------------------
// Overall finiteness decision

struct FinitenessDecision {
    VerdictKind verdict = VerdictKind::UnknownAtCutoff;
    std::string reason;
    std::optional<SimpleFiniteness> simple;
    std::optional<Reduction> reduction;
};

/// Simple nondiagonal modules are decided by the C1/C2 criterion. Otherwise
/// the module is reduced: a vanishing degree gives Finite, a diagonal entry
/// q_ii = 1 gives InfiniteByCriterion, anything else is UnknownAtCutoff.
inline FinitenessDecision decide_finiteness(const YDModule& v, const ReduceOptions& opt = {}) {
    FinitenessDecision out;
    if (v.components.size() == 1 && !is_diagonal(v)) {
        out.simple = finiteness_simple(v);
        out.verdict = out.simple->verdict == SimpleVerdict::Infinite ? VerdictKind::InfiniteByCriterion : VerdictKind::Finite;
        out.reason = to_string(out.simple->verdict) + ": " + out.simple->reason;
        return out;
    }
    Reduction red = reduce_and_compute(v, opt);
    if (red.refused()) {
        out.reason = red.refusal->reason;
        out.reduction = std::move(red);
        return out;
    }
    const auto& rep = red.report;
    if (rep.verdict == VerdictKind::Finite) {
        out.verdict = VerdictKind::Finite;
        out.reason = "dimension " + std::to_string(rep.total) + ", top degree " + std::to_string(rep.top);
    } else if (!rep.unit_diagonal.empty()) {
        out.verdict = VerdictKind::InfiniteByCriterion;
        out.reason = "q_" + std::to_string(rep.unit_diagonal.front() + 1) + std::to_string(rep.unit_diagonal.front() + 1) +
                     " = 1, so the powers of that generator never vanish";
    } else {
        out.reason = rep.reason;
    }
    out.reduction = std::move(red);
    return out;
}

}  // namespace qqg
