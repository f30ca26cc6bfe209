#pragma once

// Integer and modular linear algebra: Smith normal form over Z and an
// echelon (Howell) form over Z/L used to solve systems of congruences.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace qqg {

using IntMatrix = Matrix<mpz_class>;

struct SmithForm {
    IntMatrix d;  // diagonal, d_i | d_{i+1}, nonnegative
    IntMatrix u;  // unimodular, rows x rows
    IntMatrix v;  // unimodular, cols x cols; u * a * v == d
    std::size_t rank = 0;
};

inline IntMatrix int_identity(std::size_t n) {
    IntMatrix m(n, n, mpz_class(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("integer matrix product: shape mismatch");
    IntMatrix out(a.rows(), b.cols(), mpz_class(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

inline SmithForm smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm s{a, int_identity(m), int_identity(n), 0};
    IntMatrix& d = s.d;
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c) std::swap(d(i, c), d(j, c));
        for (std::size_t c = 0; c < m; ++c) std::swap(s.u(i, c), s.u(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < m; ++r) std::swap(d(r, i), d(r, j));
        for (std::size_t r = 0; r < n; ++r) std::swap(s.v(r, i), s.v(r, j));
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const mpz_class& f) {  // row dst += f * row src
        for (std::size_t c = 0; c < n; ++c) d(dst, c) += f * d(src, c);
        for (std::size_t c = 0; c < m; ++c) s.u(dst, c) += f * s.u(src, c);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
        for (std::size_t r = 0; r < m; ++r) d(r, dst) += f * d(r, src);
        for (std::size_t r = 0; r < n; ++r) s.v(r, dst) += f * s.v(r, src);
    };

    std::size_t t = 0;
    while (t < m && t < n) {
        // pivot: smallest nonzero |entry| in the trailing block
        bool found = false;
        std::size_t pr = t, pc = t;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (d(i, j) != 0 && (!found || abs(d(i, j)) < abs(d(pr, pc)))) {
                    found = true;
                    pr = i;
                    pc = j;
                }
        if (!found) break;
        if (pr != t) swap_rows(pr, t);
        if (pc != t) swap_cols(pc, t);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
                add_row(i, t, -q);
                if (d(i, t) != 0) {
                    swap_rows(i, t);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
                add_col(j, t, -q);
                if (d(t, j) != 0) {
                    swap_cols(j, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // divisibility of the trailing block by the pivot
            for (std::size_t i = t + 1; i < m && !dirty; ++i)
                for (std::size_t j = t + 1; j < n && !dirty; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        add_row(t, i, 1);
                        dirty = true;
                    }
        }
        if (d(t, t) < 0) {
            for (std::size_t c = 0; c < n; ++c) d(t, c) = -d(t, c);
            for (std::size_t c = 0; c < m; ++c) s.u(t, c) = -s.u(t, c);
        }
        ++t;
    }
    s.rank = t;
    return s;
}

namespace detail {

inline long long mod_norm(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline long long mul_mod(long long a, long long b, long long m) {
    return static_cast<long long>((static_cast<__int128>(a) * b) % m);
}

/// (g, s, t) with g = gcd(a, b) = s a + t b, g >= 0.
inline std::tuple<long long, long long, long long> ext_gcd(long long a, long long b) {
    long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        long long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

inline long long inv_mod(long long a, long long m) {
    auto [g, s, t] = ext_gcd(mod_norm(a, m), m);
    (void)t;
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod_norm(s, m);
}

}  // namespace detail

/// Row echelon form of a submodule of (Z/L)^n with the Howell property: for
/// every column c, the rows whose leading column is >= c span every row-space
/// vector vanishing before c. Rows are inserted incrementally.
class ModularEchelon {
public:
    ModularEchelon(std::size_t width, long long modulus) : width_(width), mod_(modulus), pivot_(width) {
        if (modulus < 1) throw std::invalid_argument("ModularEchelon: modulus must be positive");
    }

    long long modulus() const noexcept { return mod_; }
    std::size_t width() const noexcept { return width_; }

    void insert(std::vector<long long> row) {
        for (auto& x : row) x = detail::mod_norm(x, mod_);
        std::vector<std::vector<long long>> pending{std::move(row)};
        while (!pending.empty()) {
            std::vector<long long> v = std::move(pending.back());
            pending.pop_back();
            reduce_in(std::move(v), pending);
        }
    }

    /// True when the span contains a vector whose only nonzero entry is in
    /// column `col` (used with an augmented right-hand-side column).
    bool has_pivot(std::size_t col) const { return !pivot_[col].empty(); }
    const std::vector<long long>& pivot_row(std::size_t col) const { return pivot_[col]; }

private:
    void normalize(std::vector<long long>& v, std::size_t c) const {
        // multiply by a unit so that the leading entry divides L
        long long a = v[c];
        long long g = std::gcd(a, mod_);
        if (a == g) return;
        long long mg = mod_ / g;
        long long t = (a / g) % mg;
        long long u0 = mg == 1 ? 1 : detail::inv_mod(t, mg);
        long long u = u0;
        while (std::gcd(u, mod_) != 1) u += mg;
        for (std::size_t j = c; j < width_; ++j) v[j] = detail::mul_mod(v[j], u, mod_);
    }

    void reduce_in(std::vector<long long> v, std::vector<std::vector<long long>>& pending) {
        for (std::size_t c = 0; c < width_; ++c) {
            if (v[c] == 0) continue;
            if (pivot_[c].empty()) {
                normalize(v, c);
                annihilator(v, c, pending);
                pivot_[c] = std::move(v);
                return;
            }
            auto& p = pivot_[c];
            long long a = p[c], b = v[c];
            if (b % a == 0) {
                long long f = b / a;
                for (std::size_t j = c; j < width_; ++j) v[j] = detail::mod_norm(v[j] - detail::mul_mod(f, p[j], mod_), mod_);
                continue;
            }
            auto [g, s, t] = detail::ext_gcd(a, b);
            std::vector<long long> np(width_, 0), rest(width_, 0);
            long long ag = a / g, bg = b / g;
            for (std::size_t j = c; j < width_; ++j) {
                np[j] = detail::mod_norm(detail::mul_mod(detail::mod_norm(s, mod_), p[j], mod_) + detail::mul_mod(detail::mod_norm(t, mod_), v[j], mod_), mod_);
                rest[j] = detail::mod_norm(detail::mul_mod(bg, p[j], mod_) - detail::mul_mod(ag, v[j], mod_), mod_);
            }
            normalize(np, c);
            annihilator(np, c, pending);
            pivot_[c] = std::move(np);
            v = std::move(rest);
        }
    }

    void annihilator(const std::vector<long long>& v, std::size_t c, std::vector<std::vector<long long>>& pending) const {
        long long f = mod_ / std::gcd(v[c], mod_);
        if (f == 1 || f == mod_) return;
        std::vector<long long> w(width_, 0);
        bool nz = false;
        for (std::size_t j = c + 1; j < width_; ++j) {
            w[j] = detail::mul_mod(f, v[j], mod_);
            nz = nz || w[j] != 0;
        }
        if (nz) pending.push_back(std::move(w));
    }

    std::size_t width_;
    long long mod_;
    std::vector<std::vector<long long>> pivot_;
};

/// Solves A x = b where row i is read modulo moduli[i]. Returns the canonical
/// solution obtained by back substitution through the echelon form, taking the
/// least nonnegative value at each pivot and 0 for free unknowns; nullopt when
/// the system is inconsistent. When `free_values` is given, free unknown c
/// takes free_values[c] instead of 0.
inline std::optional<std::vector<long long>> solve_echelon(const ModularEchelon& e,
                                                           const std::vector<long long>* free_values = nullptr) {
    const std::size_t n = e.width() - 1;  // last column holds the right-hand side
    const long long L = e.modulus();
    if (e.has_pivot(n)) return std::nullopt;
    std::vector<long long> x(n, 0);
    for (std::size_t c = n; c-- > 0;) {
        if (!e.has_pivot(c)) {
            if (free_values) x[c] = detail::mod_norm(free_values->at(c), L);
            continue;
        }
        const auto& row = e.pivot_row(c);
        long long r = row[n];
        for (std::size_t j = c + 1; j < n; ++j)
            if (row[j] != 0 && x[j] != 0) r = detail::mod_norm(r - detail::mul_mod(row[j], x[j], L), L);
        long long a = row[c];  // divides L
        if (r % a != 0) return std::nullopt;
        long long la = L / a;
        // a x = r (mod L)  <=>  x = r / a (mod L / a), since a | L
        x[c] = detail::mod_norm(r / a, la);
    }
    return x;
}

inline std::optional<std::vector<long long>> solve_linear_mod(const std::vector<std::vector<long long>>& a,
                                                              const std::vector<long long>& b,
                                                              const std::vector<long long>& moduli) {
    if (a.size() != b.size() || a.size() != moduli.size()) throw std::invalid_argument("solve_linear_mod: shape mismatch");
    std::size_t n = a.empty() ? 0 : a[0].size();
    long long L = 1;
    for (auto m : moduli) {
        if (m < 1) throw std::invalid_argument("solve_linear_mod: moduli must be positive");
        L = lcm_ll(L, m);
    }
    ModularEchelon e(n + 1, L);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != n) throw std::invalid_argument("solve_linear_mod: ragged matrix");
        long long scale = L / moduli[i];
        std::vector<long long> row(n + 1);
        for (std::size_t j = 0; j < n; ++j) row[j] = detail::mul_mod(detail::mod_norm(a[i][j], L), scale, L);
        row[n] = detail::mul_mod(detail::mod_norm(b[i], L), scale, L);
        e.insert(std::move(row));
    }
    auto x = solve_echelon(e);
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc = detail::mod_norm(acc + detail::mul_mod(detail::mod_norm(a[i][j], moduli[i]), (*x)[j] % moduli[i], moduli[i]), moduli[i]);
        if (acc != detail::mod_norm(b[i], moduli[i])) throw std::logic_error("solve_linear_mod: solution fails a congruence");
    }
    return x;
}

}  // namespace qqg
