#pragma once

#include "cyclotomic.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qqg {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<T>& data() const noexcept { return data_; }
    std::vector<T>& data() noexcept { return data_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<CycScalar>;

inline ExactMatrix identity_matrix(std::size_t n, int root_order = 1) {
    ExactMatrix m(n, n, CycScalar::zero(root_order));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = CycScalar::one(root_order);
    return m;
}

inline ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    ExactMatrix out(a.rows(), b.cols(), CycScalar::zero(1));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const CycScalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
        }
    return out;
}

inline ExactMatrix scaled(const ExactMatrix& a, const CycScalar& s) {
    ExactMatrix out = a;
    for (auto& x : out.data()) x *= s;
    return out;
}

inline ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < a.data().size(); ++i) a.data()[i] += b.data()[i];
    return a;
}

inline bool is_zero_matrix(const ExactMatrix& a) {
    for (const auto& x : a.data())
        if (!x.is_zero()) return false;
    return true;
}

namespace detail {

/// Brings every entry into one common field Q(zeta_N).
inline ExactMatrix unify_field(const ExactMatrix& m, int& order) {
    long long n = 1;
    for (const auto& x : m.data()) n = lcm_ll(n, x.root_order());
    order = static_cast<int>(n);
    ExactMatrix out(m.rows(), m.cols(), CycScalar::zero(order));
    for (std::size_t i = 0; i < m.data().size(); ++i) out.data()[i] = m.data()[i].embed(order);
    return out;
}

/// Row reduction to reduced echelon form in place; returns pivot columns.
/// Pivot choice: in each column the first row (top to bottom) with a nonzero
/// entry among the rows not yet used.
inline std::vector<std::size_t> row_reduce(ExactMatrix& a, bool reduced) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const std::size_t rows = a.rows(), cols = a.cols();
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(a(p, j), a(r, j));
        CycScalar inv = a(r, c).inverse();
        for (std::size_t j = c; j < cols; ++j)
            if (!a(r, j).is_zero()) a(r, j) *= inv;
        const std::size_t start = reduced ? 0 : r + 1;
        for (std::size_t i = start; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            CycScalar f = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!a(r, j).is_zero()) a(i, j).sub_mul(f, a(r, j));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Exact rank over the cyclotomic field containing every entry.
inline std::size_t rank(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0 || is_zero_matrix(m)) return 0;
    int order = 1;
    ExactMatrix a = detail::unify_field(m, order);
    return detail::row_reduce(a, false).size();
}

/// Basis of the right kernel {v : m v = 0}, one column vector per entry.
inline std::vector<std::vector<CycScalar>> nullspace(const ExactMatrix& m) {
    int order = 1;
    ExactMatrix a = detail::unify_field(m, order);
    auto piv = detail::row_reduce(a, true);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<CycScalar>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<CycScalar> v(m.cols(), CycScalar::zero(order));
        v[f] = CycScalar::one(order);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline ExactMatrix transpose(const ExactMatrix& a) {
    ExactMatrix out(a.cols(), a.rows(), CycScalar::zero(1));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

inline ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), CycScalar::zero(1));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

/// Inverse of a square matrix; throws std::domain_error when singular.
inline ExactMatrix inverse_matrix(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse_matrix: matrix is not square");
    const std::size_t n = m.rows();
    int order = 1;
    ExactMatrix u = detail::unify_field(m, order);
    ExactMatrix a(n, 2 * n, CycScalar::zero(order));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u(i, j);
        a(i, n + i) = CycScalar::one(order);
    }
    auto piv = detail::row_reduce(a, true);
    if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("inverse_matrix: matrix is singular");
    ExactMatrix out(n, n, CycScalar::zero(order));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, n + j);
    return out;
}

/// True when m equals s times the identity for some scalar s, which is returned.
inline std::optional<CycScalar> scalar_multiple_of_identity(const ExactMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return std::nullopt;
    const CycScalar s = m(0, 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i == j ? m(i, j) != s : !m(i, j).is_zero()) return std::nullopt;
    return s;
}

inline std::vector<CycScalar> mat_vec(const ExactMatrix& m, const std::vector<CycScalar>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<CycScalar> out(m.rows(), CycScalar::zero(1));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
    return out;
}

}  // namespace qqg
