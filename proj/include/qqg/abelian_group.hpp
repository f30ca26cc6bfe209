#pragma once

// Finite abelian groups Z_{m_1} x ... x Z_{m_n}, their elements, subgroups
// generated by given elements, and the squared cover Z_{m_1^2} x ... x Z_{m_n^2}.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "integer_linalg.hpp"

namespace qqg {

using Exponents = std::vector<int>;

/// Z_{m_1} x ... x Z_{m_n}. Elements are identified with indices
/// 0 .. |G|-1 in lexicographic order of exponent tuples, first factor most
/// significant; index 0 is the identity.
class GroupSpec {
public:
    GroupSpec() : GroupSpec(std::vector<int>{}) {}

    explicit GroupSpec(std::vector<int> orders) : orders_(std::move(orders)) {
        std::size_t n = 1;
        stride_.assign(orders_.size(), 1);
        for (std::size_t i = orders_.size(); i-- > 0;) {
            if (orders_[i] < 1) throw std::invalid_argument("GroupSpec: factor orders must be positive");
            stride_[i] = n;
            n *= static_cast<std::size_t>(orders_[i]);
            if (n > (std::size_t{1} << 24)) throw std::invalid_argument("GroupSpec: group too large");
        }
        size_ = n;
        if (size_ <= kTableLimit) {
            auto t = std::make_shared<std::vector<std::uint32_t>>(size_ * size_);
            for (std::size_t a = 0; a < size_; ++a)
                for (std::size_t b = 0; b < size_; ++b) (*t)[a * size_ + b] = static_cast<std::uint32_t>(mul_slow(a, b));
            table_ = std::move(t);
        }
    }

    const std::vector<int>& orders() const noexcept { return orders_; }
    std::size_t rank() const noexcept { return orders_.size(); }
    std::size_t size() const noexcept { return size_; }
    int order(std::size_t i) const { return orders_.at(i); }

    /// Least common multiple of the factor orders.
    long long exponent() const {
        long long e = 1;
        for (int m : orders_) e = lcm_ll(e, m);
        return e;
    }

    Exponents exponents(std::size_t idx) const {
        Exponents e(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            e[i] = static_cast<int>(idx / stride_[i]);
            idx %= stride_[i];
        }
        return e;
    }

    int exponent_of(std::size_t idx, std::size_t factor) const {
        return static_cast<int>((idx / stride_[factor]) % static_cast<std::size_t>(orders_[factor]));
    }

    /// Index of the element with the given exponents, each reduced modulo its factor order.
    template <class Int>
    std::size_t index(const std::vector<Int>& e) const {
        if (e.size() != orders_.size()) throw std::invalid_argument("GroupSpec::index: wrong number of exponents");
        std::size_t idx = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            long long m = orders_[i];
            long long r = static_cast<long long>(e[i]) % m;
            if (r < 0) r += m;
            idx += static_cast<std::size_t>(r) * stride_[i];
        }
        return idx;
    }

    std::size_t generator(std::size_t i) const {
        if (i >= orders_.size()) throw std::out_of_range("GroupSpec::generator");
        return orders_[i] == 1 ? 0 : stride_[i];
    }

    std::size_t identity() const noexcept { return 0; }

    std::size_t mul(std::size_t a, std::size_t b) const {
        if (table_) return (*table_)[a * size_ + b];
        return mul_slow(a, b);
    }

    std::size_t inv(std::size_t a) const {
        std::size_t out = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            std::size_t m = static_cast<std::size_t>(orders_[i]);
            std::size_t x = (a / stride_[i]) % m;
            out += ((m - x) % m) * stride_[i];
        }
        return out;
    }

    std::size_t pow(std::size_t a, long long k) const {
        std::size_t out = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            long long m = orders_[i];
            long long x = static_cast<long long>((a / stride_[i]) % static_cast<std::size_t>(m));
            long long r = (x * (k % m)) % m;
            if (r < 0) r += m;
            out += static_cast<std::size_t>(r) * stride_[i];
        }
        return out;
    }

    /// Order of an element: lcm over factors of m_i / gcd(m_i, x_i).
    int elem_order(std::size_t a) const {
        long long o = 1;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            int m = orders_[i];
            int x = exponent_of(a, i);
            o = lcm_ll(o, m / std::gcd(m, x));
        }
        return static_cast<int>(o);
    }

    std::string format(std::size_t idx) const {
        auto e = exponents(idx);
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
        os << ")";
        return os.str();
    }

    std::string describe() const {
        if (orders_.empty()) return "trivial";
        std::ostringstream os;
        for (std::size_t i = 0; i < orders_.size(); ++i) os << (i ? " x " : "") << "Z" << orders_[i];
        return os.str();
    }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.orders_ == b.orders_; }
    friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

private:
    static constexpr std::size_t kTableLimit = 1024;

    std::size_t mul_slow(std::size_t a, std::size_t b) const {
        std::size_t out = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            std::size_t m = static_cast<std::size_t>(orders_[i]);
            out += (((a / stride_[i]) % m + (b / stride_[i]) % m) % m) * stride_[i];
        }
        return out;
    }

    std::vector<int> orders_;
    std::vector<std::size_t> stride_;
    std::size_t size_ = 1;
    std::shared_ptr<const std::vector<std::uint32_t>> table_;
};

/// A subgroup H of G together with an isomorphism from a standard group
/// Z_{d_1} x ... x Z_{d_r} (d_i > 1, d_i | d_{i+1}).
struct Subgroup {
    GroupSpec parent;
    GroupSpec presentation;
    std::vector<std::size_t> embedding;    // presentation index -> parent index
    std::vector<std::size_t> members;      // parent indices of H, increasing
    std::vector<std::ptrdiff_t> locate;    // parent index -> presentation index, or -1

    std::size_t size() const noexcept { return embedding.size(); }
    bool contains(std::size_t parent_idx) const { return locate.at(parent_idx) >= 0; }
};

namespace detail {

inline IntMatrix unimodular_inverse(const IntMatrix& u) {
    const std::size_t n = u.rows();
    Matrix<mpq_class> a(n, 2 * n, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u(i, j);
        a(i, n + i) = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw std::logic_error("unimodular_inverse: singular matrix");
        for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(p, j), a(c, j));
        mpq_class piv = a(c, c);
        for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            mpq_class f = a(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    IntMatrix out(n, n, mpz_class(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& x = a(i, n + j);
            if (x.get_den() != 1) throw std::logic_error("unimodular_inverse: matrix is not unimodular");
            out(i, j) = x.get_num();
        }
    return out;
}

}  // namespace detail

/// Subgroup generated by the given elements (parent indices).
inline Subgroup subgroup_generated(const GroupSpec& g, const std::vector<std::size_t>& gens) {
    const std::size_t k = gens.size(), r = g.rank();
    Subgroup h;
    h.parent = g;
    h.locate.assign(g.size(), -1);
    if (k == 0) {
        h.presentation = GroupSpec(std::vector<int>{});
        h.embedding = {0};
        h.members = {0};
        h.locate[0] = 0;
        return h;
    }
    // relation lattice {a in Z^k : sum a_j gens_j = 0} = kernel of [M | diag(m)] projected
    IntMatrix big(r, k + r, mpz_class(0));
    for (std::size_t j = 0; j < k; ++j) {
        auto e = g.exponents(gens[j]);
        for (std::size_t i = 0; i < r; ++i) big(i, j) = e[i];
    }
    for (std::size_t i = 0; i < r; ++i) big(i, k + i) = g.order(i);
    SmithForm sf = smith_normal_form(big);
    IntMatrix rel(k, k + r - sf.rank, mpz_class(0));
    for (std::size_t c = sf.rank; c < k + r; ++c)
        for (std::size_t j = 0; j < k; ++j) rel(j, c - sf.rank) = sf.v(j, c);
    SmithForm rs = smith_normal_form(rel);
    // Z^k / rel ~ sum Z / d_i via a -> u a; generators are the columns of u^{-1}
    IntMatrix uinv = detail::unimodular_inverse(rs.u);
    std::vector<int> orders;
    std::vector<std::size_t> gen_images;
    for (std::size_t i = 0; i < k; ++i) {
        mpz_class d = i < rs.rank ? rs.d(i, i) : mpz_class(0);
        if (d == 0) throw std::logic_error("subgroup_generated: relation lattice is not of full rank");
        if (d == 1) continue;
        std::vector<long long> e(r, 0);
        for (std::size_t j = 0; j < k; ++j) {
            mpz_class c = uinv(j, i);
            auto ge = g.exponents(gens[j]);
            for (std::size_t t = 0; t < r; ++t) {
                mpz_class v = c * ge[t];
                mpz_class m = g.order(t);
                mpz_class rem;
                mpz_fdiv_r(rem.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
                e[t] = (e[t] + rem.get_si()) % g.order(t);
            }
        }
        orders.push_back(static_cast<int>(d.get_si()));
        gen_images.push_back(g.index(e));
    }
    h.presentation = GroupSpec(orders);
    h.embedding.resize(h.presentation.size());
    for (std::size_t idx = 0; idx < h.presentation.size(); ++idx) {
        auto e = h.presentation.exponents(idx);
        std::size_t x = 0;
        for (std::size_t i = 0; i < e.size(); ++i) x = g.mul(x, g.pow(gen_images[i], e[i]));
        if (h.locate[x] >= 0) throw std::logic_error("subgroup_generated: presentation is not injective");
        h.embedding[idx] = x;
        h.locate[x] = static_cast<std::ptrdiff_t>(idx);
    }
    for (std::size_t x = 0; x < g.size(); ++x)
        if (h.locate[x] >= 0) h.members.push_back(x);
    for (auto x : gens)
        if (h.locate[x] < 0) throw std::logic_error("subgroup_generated: generator missing from image");
    return h;
}

/// The cover Z_{m_1^2} x ... x Z_{m_n^2} with projection reducing exponents
/// modulo m_i and the set-theoretic section picking exponents in [0, m_i).
struct SquaredCover {
    GroupSpec base;
    GroupSpec cover;
    std::vector<std::size_t> projection;  // cover index -> base index
    std::vector<std::size_t> section;     // base index -> cover index
};

inline SquaredCover squared_cover(const GroupSpec& g) {
    std::vector<int> sq;
    for (int m : g.orders()) sq.push_back(m * m);
    SquaredCover c{g, GroupSpec(sq), {}, {}};
    c.projection.resize(c.cover.size());
    for (std::size_t x = 0; x < c.cover.size(); ++x) c.projection[x] = g.index(c.cover.exponents(x));
    c.section.resize(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) c.section[x] = c.cover.index(g.exponents(x));
    return c;
}

}  // namespace qqg
