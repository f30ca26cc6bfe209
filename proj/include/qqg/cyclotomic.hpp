#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N), represented in the power
// basis of Q[x] / (Phi_N(x)).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qqg {

using Rational = mpq_class;
using IntPoly = std::vector<long long>;  // coefficient of x^i at index i

namespace detail {

inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
    // den is monic
    if (num.size() < den.size()) return {0};
    IntPoly quot(num.size() - den.size() + 1, 0);
    for (std::size_t i = num.size(); i-- >= den.size();) {
        long long lead = num[i];
        std::size_t shift = i - (den.size() - 1);
        quot[shift] = lead;
        for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= lead * den[j];
    }
    for (long long r : num)
        if (r != 0) throw std::logic_error("cyclotomic division left a remainder");
    return quot;
}

struct FieldTables {
    IntPoly phi;                              // Phi_N, monic
    std::vector<std::vector<long long>> pow;  // x^k mod Phi_N for 0 <= k < 2 deg, as coeff vectors
};

class Registry {
public:
    static Registry& instance() {
        static Registry r;
        return r;
    }

    const IntPoly& cyclo(int n) {
        std::lock_guard<std::mutex> lock(mu_);
        return cyclo_locked(n);
    }

    std::shared_ptr<const FieldTables> tables(int n) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = tables_.find(n);
        if (it != tables_.end()) return it->second;
        auto t = std::make_shared<FieldTables>();
        t->phi = cyclo_locked(n);
        std::size_t deg = t->phi.size() - 1;
        std::size_t count = std::max<std::size_t>(2 * deg, static_cast<std::size_t>(n) + 1);
        t->pow.reserve(count);
        std::vector<long long> cur(deg, 0);
        cur[0] = 1;
        if (deg == 0) throw std::logic_error("degenerate cyclotomic polynomial");
        for (std::size_t k = 0; k < count; ++k) {
            t->pow.push_back(cur);
            // multiply by x, reduce using x^deg = -sum phi_i x^i
            long long top = cur[deg - 1];
            for (std::size_t i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            for (std::size_t i = 0; i < deg; ++i) cur[i] -= top * t->phi[i];
        }
        tables_.emplace(n, t);
        return t;
    }

private:
    const IntPoly& cyclo_locked(int n) {
        auto it = cyclo_.find(n);
        if (it != cyclo_.end()) return it->second;
        IntPoly p(static_cast<std::size_t>(n) + 1, 0);
        p[0] = -1;
        p[static_cast<std::size_t>(n)] = 1;
        for (int d = 1; d < n; ++d)
            if (n % d == 0) p = poly_divide_exact(p, cyclo_locked(d));
        return cyclo_.emplace(n, std::move(p)).first->second;
    }

    std::mutex mu_;
    std::map<int, IntPoly> cyclo_;
    std::map<int, std::shared_ptr<const FieldTables>> tables_;
};

inline long long mod_floor(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace detail

/// The N-th cyclotomic polynomial, obtained by exact division of x^N - 1 by
/// Phi_d for every proper divisor d of N.
inline IntPoly cyclo_poly(int n) {
    if (n < 1) throw std::invalid_argument("cyclo_poly: N must be positive");
    return detail::Registry::instance().cyclo(n);
}

inline int euler_phi(int n) { return static_cast<int>(cyclo_poly(n).size()) - 1; }

inline long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

/// Element of Q(zeta_N). Two scalars with different N are compared and
/// combined after embedding both into Q(zeta_lcm).
class CycScalar {
public:
    CycScalar() : CycScalar(1) {}

    explicit CycScalar(int root_order) : order_(root_order), tab_(detail::Registry::instance().tables(root_order)) {
        coeffs_.assign(tab_->phi.size() - 1, Rational(0));
    }

    CycScalar(int root_order, std::vector<Rational> coeffs) : CycScalar(root_order) {
        if (coeffs.size() != coeffs_.size()) throw std::invalid_argument("CycScalar: coefficient count must equal phi(N)");
        coeffs_ = std::move(coeffs);
    }

    static CycScalar zero(int n = 1) { return CycScalar(n); }

    static CycScalar rational(const Rational& r, int n = 1) {
        CycScalar s(n);
        s.coeffs_[0] = r;
        return s;
    }

    static CycScalar one(int n = 1) { return rational(1, n); }

    /// zeta_N^k for any integer k.
    static CycScalar zeta(int n, long long k = 1) {
        CycScalar s(n);
        const auto& v = s.tab_->pow[static_cast<std::size_t>(detail::mod_floor(k, n))];
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) s.coeffs_[i] = Rational(static_cast<long>(v[i]));
        return s;
    }

    int root_order() const noexcept { return order_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    std::size_t degree() const noexcept { return coeffs_.size(); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (sgn(c) != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (sgn(coeffs_[i]) != 0) return false;
        return true;
    }

    bool is_one() const { return is_rational() && coeffs_[0] == 1; }

    /// Image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^(M/N). Requires N | M.
    CycScalar embed(int m) const {
        if (m == order_) return *this;
        if (m % order_ != 0) throw std::invalid_argument("CycScalar::embed: target order must be a multiple");
        CycScalar out(m);
        const long long step = m / order_;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (sgn(coeffs_[i]) == 0) continue;
            const auto& v = out.tab_->pow[static_cast<std::size_t>((static_cast<long long>(i) * step) % m)];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (v[j] != 0) out.coeffs_[j] += coeffs_[i] * static_cast<long>(v[j]);
        }
        return out;
    }

    CycScalar& operator+=(const CycScalar& o) {
        if (o.order_ != order_) return *this = align_op(*this, o, [](CycScalar& a, const CycScalar& b) { a += b; });
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }

    CycScalar& operator-=(const CycScalar& o) {
        if (o.order_ != order_) return *this = align_op(*this, o, [](CycScalar& a, const CycScalar& b) { a -= b; });
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }

    CycScalar& operator*=(const CycScalar& o) {
        if (o.order_ != order_) return *this = align_op(*this, o, [](CycScalar& a, const CycScalar& b) { a *= b; });
        const std::size_t d = coeffs_.size();
        if (d == 1) {
            coeffs_[0] *= o.coeffs_[0];
            return *this;
        }
        std::vector<Rational> prod(2 * d - 1, Rational(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (sgn(coeffs_[i]) == 0) continue;
            for (std::size_t j = 0; j < d; ++j)
                if (sgn(o.coeffs_[j]) != 0) prod[i + j] += coeffs_[i] * o.coeffs_[j];
        }
        for (std::size_t i = 0; i < d; ++i) coeffs_[i] = prod[i];
        for (std::size_t k = d; k < prod.size(); ++k) {
            if (sgn(prod[k]) == 0) continue;
            const auto& v = tab_->pow[k];
            for (std::size_t j = 0; j < d; ++j)
                if (v[j] != 0) coeffs_[j] += prod[k] * static_cast<long>(v[j]);
        }
        return *this;
    }

    /// this -= a * b, the inner step of elimination.
    void sub_mul(const CycScalar& a, const CycScalar& b) {
        if (a.order_ != order_ || b.order_ != order_) {
            *this -= a * b;
            return;
        }
        if (coeffs_.size() == 1) {
            coeffs_[0] -= a.coeffs_[0] * b.coeffs_[0];
            return;
        }
        CycScalar t = a;
        t *= b;
        *this -= t;
    }

    CycScalar operator-() const {
        CycScalar r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
    friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_N.
    CycScalar inverse() const {
        if (is_zero()) throw std::domain_error("CycScalar: inverse of zero");
        const std::size_t d = coeffs_.size();
        if (d == 1) return rational(1 / coeffs_[0], order_);
        using P = std::vector<Rational>;
        auto trim = [](P& p) {
            while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
        };
        auto is_zero_poly = [](const P& p) { return p.size() == 1 && sgn(p[0]) == 0; };
        P r0;
        for (long long c : tab_->phi) r0.emplace_back(static_cast<long>(c));
        P r1(coeffs_);
        trim(r1);
        P s0{Rational(0)}, s1{Rational(1)};  // invariant: r_i == s_i * this (mod Phi_N)
        while (!is_zero_poly(r1)) {
            P q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, Rational(0));
            P r = r0;
            while (!is_zero_poly(r) && r.size() >= r1.size()) {
                Rational f = r.back() / r1.back();
                std::size_t sh = r.size() - r1.size();
                q[sh] += f;
                for (std::size_t i = 0; i < r1.size(); ++i) r[sh + i] -= f * r1[i];
                r.back() = 0;
                trim(r);
            }
            P qs(q.size() + s1.size() - 1, Rational(0));
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
            P s2(std::max(s0.size(), qs.size()), Rational(0));
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 is a nonzero constant: s0 * this == r0 (mod Phi)
        if (r0.size() != 1) throw std::logic_error("CycScalar::inverse: Phi_N not coprime to element");
        CycScalar out(order_);
        // reduce s0 / r0 modulo Phi_N
        for (std::size_t k = 0; k < s0.size(); ++k) {
            if (sgn(s0[k]) == 0) continue;
            Rational c = s0[k] / r0[0];
            const auto& v = tab_->pow[k];
            for (std::size_t j = 0; j < d; ++j)
                if (v[j] != 0) out.coeffs_[j] += c * static_cast<long>(v[j]);
        }
        return out;
    }

    friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }

    friend bool operator==(const CycScalar& a, const CycScalar& b) {
        if (a.order_ != b.order_) {
            int m = static_cast<int>(lcm_ll(a.order_, b.order_));
            return a.embed(m).coeffs_ == b.embed(m).coeffs_;
        }
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    CycScalar pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        CycScalar result = one(order_), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    /// Exponent k with *this == zeta_N^k, if the element is such a power.
    std::optional<int> zeta_exponent() const {
        // a power of zeta_N has a coefficient vector that is a reduced power table row
        for (int k = 0; k < order_; ++k) {
            const auto& v = tab_->pow[static_cast<std::size_t>(k)];
            bool eq = true;
            for (std::size_t j = 0; j < v.size() && eq; ++j) eq = (coeffs_[j] == static_cast<long>(v[j]));
            if (eq) return k;
        }
        return std::nullopt;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const CycScalar& s) {
        if (auto k = s.zeta_exponent()) {
            if (*k == 0) return os << "1";
            return os << "z" << s.order_ << "^" << *k;
        }
        if (auto k = (-s).zeta_exponent()) {
            if (*k == 0) return os << "-1";
            return os << "-z" << s.order_ << "^" << *k;
        }
        bool first = true;
        for (std::size_t i = 0; i < s.coeffs_.size(); ++i) {
            if (sgn(s.coeffs_[i]) == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << s.coeffs_[i].get_str() << ")";
            if (i > 0) os << "*z" << s.order_ << "^" << i;
        }
        if (first) os << "0";
        return os;
    }

private:
    template <class Op>
    static CycScalar align_op(const CycScalar& a, const CycScalar& b, Op op) {
        int m = static_cast<int>(lcm_ll(a.order_, b.order_));
        CycScalar x = a.embed(m);
        op(x, b.embed(m));
        return x;
    }

    int order_;
    std::shared_ptr<const detail::FieldTables> tab_;
    std::vector<Rational> coeffs_;
};

/// Multiplicative order of s when s is a root of unity; nullopt otherwise
/// (including s = 0). Roots of unity in Q(zeta_N) are exactly +-zeta_N^k.
inline std::optional<int> unity_order(const CycScalar& s) {
    if (s.is_zero()) return std::nullopt;
    const int n = s.root_order();
    if (auto k = s.zeta_exponent()) return n / std::gcd(n, *k);
    if (auto k = (-s).zeta_exponent()) {
        // -zeta_N^k = zeta_{2N}^{N + 2k}
        const int m = 2 * n;
        return m / std::gcd(m, n + 2 * *k);
    }
    return std::nullopt;
}

/// Smallest M with the scalar a power of zeta_M (used to pick common fields).
inline int common_order(const std::vector<CycScalar>& xs) {
    long long m = 1;
    for (const auto& x : xs) m = lcm_ll(m, x.root_order());
    return static_cast<int>(m);
}

}  // namespace qqg
