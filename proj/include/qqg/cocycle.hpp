#pragma once

// Normalized 2- and 3-cochains on finite abelian groups with values in roots
// of unity, stored as exponents of a fixed primitive root zeta_N.

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelian_group.hpp"
#include "cyclotomic.hpp"

namespace qqg {

/// Coefficients of a canonical 3-cocycle representative on a product of cyclic
/// groups. Factor indices are 0-based; pairs (s, t) have s < t and triples
/// (r, s, t) have r < s < t.
struct CocycleSpec {
    GroupSpec group;
    std::vector<int> c_single;
    std::map<std::pair<int, int>, int> c_pair;
    std::map<std::array<int, 3>, int> c_triple;

    CocycleSpec() = default;
    explicit CocycleSpec(GroupSpec g) : group(std::move(g)), c_single(group.rank(), 0) {}

    int pair(int s, int t) const {
        auto it = c_pair.find({s, t});
        return it == c_pair.end() ? 0 : it->second;
    }
    int triple(int r, int s, int t) const {
        auto it = c_triple.find({r, s, t});
        return it == c_triple.end() ? 0 : it->second;
    }

    bool has_triple_terms() const {
        for (const auto& [k, v] : c_triple)
            if (v != 0) return true;
        return false;
    }

    /// Throws std::invalid_argument unless every coefficient lies in its range.
    void validate() const {
        const int n = static_cast<int>(group.rank());
        if (static_cast<int>(c_single.size()) != n) throw std::invalid_argument("c_single must have one entry per factor");
        for (int l = 0; l < n; ++l)
            if (c_single[l] < 0 || c_single[l] >= group.order(l))
                throw std::invalid_argument("c_single[" + std::to_string(l) + "] out of range");
        for (const auto& [k, v] : c_pair) {
            auto [s, t] = k;
            if (s < 0 || t >= n || s >= t) throw std::invalid_argument("c_pair index out of range");
            if (v < 0 || v >= std::gcd(group.order(s), group.order(t))) throw std::invalid_argument("c_pair value out of range");
        }
        for (const auto& [k, v] : c_triple) {
            if (k[0] < 0 || k[2] >= n || k[0] >= k[1] || k[1] >= k[2]) throw std::invalid_argument("c_triple index out of range");
            int g = std::gcd(std::gcd(group.order(k[0]), group.order(k[1])), group.order(k[2]));
            if (v < 0 || v >= g) throw std::invalid_argument("c_triple value out of range");
        }
    }

    std::string describe() const {
        std::ostringstream os;
        os << group.describe() << " c=[";
        for (std::size_t i = 0; i < c_single.size(); ++i) os << (i ? "," : "") << c_single[i];
        os << "]";
        for (const auto& [k, v] : c_pair)
            if (v) os << " c" << k.first + 1 << k.second + 1 << "=" << v;
        for (const auto& [k, v] : c_triple)
            if (v) os << " c" << k[0] + 1 << k[1] + 1 << k[2] + 1 << "=" << v;
        return os.str();
    }
};

/// Normalized 2-cochain: value at (x, y) is zeta_N^exps[x * |G| + y].
struct Cochain2 {
    GroupSpec group;
    int root_order = 1;
    std::vector<int> exps;

    Cochain2() = default;
    Cochain2(GroupSpec g, int n) : group(std::move(g)), root_order(n), exps(group.size() * group.size(), 0) {}

    int at(std::size_t x, std::size_t y) const { return exps[x * group.size() + y]; }
    int& at(std::size_t x, std::size_t y) { return exps[x * group.size() + y]; }
    CycScalar value(std::size_t x, std::size_t y) const { return CycScalar::zeta(root_order, at(x, y)); }

    /// Same values expressed over zeta_M, M a multiple of the current order.
    Cochain2 rescaled(int m) const {
        if (m % root_order != 0) throw std::invalid_argument("Cochain2::rescaled: order must be a multiple");
        Cochain2 out(group, m);
        const int f = m / root_order;
        for (std::size_t i = 0; i < exps.size(); ++i) out.exps[i] = exps[i] * f;
        return out;
    }

    bool is_trivial() const {
        for (int e : exps)
            if (e != 0) return false;
        return true;
    }

    bool symmetric() const {
        for (std::size_t x = 0; x < group.size(); ++x)
            for (std::size_t y = x + 1; y < group.size(); ++y)
                if (at(x, y) != at(y, x)) return false;
        return true;
    }
};

/// Normalized 3-cochain with exponent values modulo root_order. Either a dense
/// table or an evaluation function backs it.
struct Cochain3 {
    GroupSpec group;
    int root_order = 1;
    std::function<int(std::size_t, std::size_t, std::size_t)> eval;

    int at(std::size_t x, std::size_t y, std::size_t z) const { return eval(x, y, z); }
    CycScalar value(std::size_t x, std::size_t y, std::size_t z) const {
        return CycScalar::zeta(root_order, at(x, y, z));
    }

    static Cochain3 from_table(GroupSpec g, int n, std::vector<int> table) {
        const std::size_t s = g.size();
        if (table.size() != s * s * s) throw std::invalid_argument("Cochain3: table must have |G|^3 entries");
        auto t = std::make_shared<const std::vector<int>>(std::move(table));
        Cochain3 c{std::move(g), n, {}};
        c.eval = [t, s](std::size_t x, std::size_t y, std::size_t z) { return (*t)[(x * s + y) * s + z]; };
        return c;
    }

    /// Materializes the values into a dense table (for |G|^3 of moderate size).
    Cochain3 tabulated() const {
        const std::size_t s = group.size();
        std::vector<int> t(s * s * s);
        for (std::size_t x = 0; x < s; ++x)
            for (std::size_t y = 0; y < s; ++y)
                for (std::size_t z = 0; z < s; ++z) t[(x * s + y) * s + z] = at(x, y, z);
        return from_table(group, root_order, std::move(t));
    }
};

namespace detail {

struct OmegaTerms {
    int n = 1;  // root order: exponent of the group
    std::vector<int> m;
    std::vector<int> w_single;                               // c_l * N / m_l
    std::vector<std::tuple<int, int, int>> pairs;            // (s, t, c_st * N / m_t)
    std::vector<std::tuple<int, int, int, int>> triples;     // (r, s, t, c_rst * N / gcd)
};

inline OmegaTerms omega_terms(const CocycleSpec& spec) {
    OmegaTerms o;
    o.n = static_cast<int>(spec.group.exponent());
    o.m = spec.group.orders();
    for (std::size_t l = 0; l < o.m.size(); ++l) o.w_single.push_back(spec.c_single.at(l) * (o.n / o.m[l]));
    for (const auto& [k, v] : spec.c_pair)
        if (v) o.pairs.emplace_back(k.first, k.second, v * (o.n / o.m[k.second]));
    for (const auto& [k, v] : spec.c_triple)
        if (v) {
            int g = std::gcd(std::gcd(o.m[k[0]], o.m[k[1]]), o.m[k[2]]);
            o.triples.emplace_back(k[0], k[1], k[2], v * (o.n / g));
        }
    return o;
}

inline int omega_exponent(const OmegaTerms& o, const Exponents& i, const Exponents& j, const Exponents& k) {
    long long e = 0;
    for (std::size_t l = 0; l < o.m.size(); ++l)
        if (o.w_single[l] && j[l] + k[l] >= o.m[l]) e += static_cast<long long>(o.w_single[l]) * i[l];
    for (const auto& [s, t, w] : o.pairs)
        if (j[s] + k[s] >= o.m[s]) e += static_cast<long long>(w) * i[t];
    for (const auto& [r, s, t, w] : o.triples) e += static_cast<long long>(w) * k[r] * j[s] * i[t];
    return static_cast<int>(detail::mod_floor(e, o.n));
}

}  // namespace detail

/// The canonical representative as an exponent-valued 3-cochain over zeta_N,
/// N the exponent of the group. Tabulated when |G| <= 64.
inline Cochain3 omega_cochain(const CocycleSpec& spec) {
    auto terms = std::make_shared<const detail::OmegaTerms>(detail::omega_terms(spec));
    const GroupSpec g = spec.group;
    std::vector<Exponents> ex;
    ex.reserve(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) ex.push_back(g.exponents(x));
    auto exps = std::make_shared<const std::vector<Exponents>>(std::move(ex));
    Cochain3 c{g, terms->n, [terms, exps](std::size_t x, std::size_t y, std::size_t z) {
                   return detail::omega_exponent(*terms, (*exps)[x], (*exps)[y], (*exps)[z]);
               }};
    if (g.size() <= 64) return c.tabulated();
    return c;
}

inline CycScalar omega_eval(const CocycleSpec& spec, const Exponents& x, const Exponents& y, const Exponents& z) {
    auto terms = detail::omega_terms(spec);
    const auto& g = spec.group;
    return CycScalar::zeta(terms.n, detail::omega_exponent(terms, g.exponents(g.index(x)), g.exponents(g.index(y)),
                                                           g.exponents(g.index(z))));
}

struct CheckResult {
    bool ok = true;
    std::string witness;  // empty when ok
    std::vector<std::size_t> elements;  // offending tuple of element indices

    explicit operator bool() const noexcept { return ok; }

    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string w, std::vector<std::size_t> e = {}) { return {false, std::move(w), std::move(e)}; }
};

/// Exhaustive check of the 3-cocycle identity
/// w(ef,g,h) w(e,f,gh) = w(e,f,g) w(e,fg,h) w(f,g,h) and normalization
/// w(f,1,g) = 1, reporting the first violation in enumeration order.
inline CheckResult verify_3cocycle(const Cochain3& w) {
    const auto& G = w.group;
    const std::size_t s = G.size();
    const int n = w.root_order;
    for (std::size_t f = 0; f < s; ++f)
        for (std::size_t g = 0; g < s; ++g)
            if (w.at(f, 0, g) % n != 0)
                return CheckResult::fail("normalization fails at (" + G.format(f) + ",1," + G.format(g) + ")", {f, 0, g});
    for (std::size_t e = 0; e < s; ++e)
        for (std::size_t f = 0; f < s; ++f) {
            const std::size_t ef = G.mul(e, f);
            for (std::size_t g = 0; g < s; ++g) {
                const std::size_t fg = G.mul(f, g);
                const int efg = w.at(e, f, g);
                for (std::size_t h = 0; h < s; ++h) {
                    long long lhs = w.at(ef, g, h) + w.at(e, f, G.mul(g, h));
                    long long rhs = efg + w.at(e, fg, h) + w.at(f, g, h);
                    if ((lhs - rhs) % n != 0)
                        return CheckResult::fail("cocycle identity fails at (" + G.format(e) + "," + G.format(f) + "," +
                                                     G.format(g) + "," + G.format(h) + ")",
                                                 {e, f, g, h});
                }
            }
        }
    return CheckResult::pass();
}

inline CheckResult verify_3cocycle(const CocycleSpec& spec) { return verify_3cocycle(omega_cochain(spec)); }

/// Exhaustive check of p(x,y) p(xy,z) = p(y,z) p(x,yz) and normalization.
inline CheckResult verify_2cocycle(const Cochain2& p) {
    const auto& G = p.group;
    const std::size_t s = G.size();
    const int n = p.root_order;
    for (std::size_t x = 0; x < s; ++x)
        if (p.at(0, x) % n != 0 || p.at(x, 0) % n != 0)
            return CheckResult::fail("normalization fails at " + G.format(x), {x});
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y) {
            const std::size_t xy = G.mul(x, y);
            for (std::size_t z = 0; z < s; ++z)
                if ((p.at(x, y) + p.at(xy, z) - p.at(y, z) - p.at(x, G.mul(y, z))) % n != 0)
                    return CheckResult::fail("2-cocycle identity fails at (" + G.format(x) + "," + G.format(y) + "," +
                                                 G.format(z) + ")",
                                             {x, y, z});
        }
    return CheckResult::pass();
}

/// The 2-cochain (x, y) -> w(g,x,y) w(x,y,g) / w(x,g,y).
inline Cochain2 tilde_phi(const Cochain3& w, std::size_t g) {
    const std::size_t s = w.group.size();
    Cochain2 out(w.group, w.root_order);
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y)
            out.at(x, y) = static_cast<int>(detail::mod_floor(
                static_cast<long long>(w.at(g, x, y)) + w.at(x, y, g) - w.at(x, g, y), w.root_order));
    return out;
}

inline Cochain2 tilde_phi(const CocycleSpec& spec, std::size_t g) { return tilde_phi(omega_cochain(spec), g); }

/// Abelian test on standard generators: tilde_phi_{g_i}(g_j, g_k) symmetric in
/// (j, k) for all i, j, k. For representative specs this is cross-checked
/// against the vanishing of every triple coefficient.
inline bool is_abelian(const CocycleSpec& spec) {
    const auto w = omega_cochain(spec);
    const auto& G = spec.group;
    bool generator_route = true;
    for (std::size_t i = 0; i < G.rank() && generator_route; ++i) {
        const std::size_t gi = G.generator(i);
        for (std::size_t j = 0; j < G.rank() && generator_route; ++j)
            for (std::size_t k = j + 1; k < G.rank() && generator_route; ++k) {
                const std::size_t gj = G.generator(j), gk = G.generator(k);
                long long a = static_cast<long long>(w.at(gi, gj, gk)) + w.at(gj, gk, gi) - w.at(gj, gi, gk);
                long long b = static_cast<long long>(w.at(gi, gk, gj)) + w.at(gk, gj, gi) - w.at(gk, gi, gj);
                generator_route = (a - b) % w.root_order == 0;
            }
    }
    const bool coefficient_route = !spec.has_triple_terms();
    if (generator_route != coefficient_route)
        throw std::logic_error("is_abelian: generator criterion disagrees with the coefficient form for " + spec.describe());
    return generator_route;
}

/// Abelian test for an arbitrary cocycle table: tilde_phi_g symmetric for every g.
inline bool is_abelian(const Cochain3& w) {
    for (std::size_t g = 0; g < w.group.size(); ++g)
        if (!tilde_phi(w, g).symmetric()) return false;
    return true;
}

/// Composition of w with a group homomorphism given as an index map from a
/// group H into w's group.
inline Cochain3 pullback(const Cochain3& w, const GroupSpec& h, const std::vector<std::size_t>& map) {
    if (map.size() != h.size()) throw std::invalid_argument("pullback: map size must equal |H|");
    auto m = std::make_shared<const std::vector<std::size_t>>(map);
    auto base = w.group.size() <= 64 ? w.tabulated() : w;
    Cochain3 c{h, w.root_order, [base, m](std::size_t x, std::size_t y, std::size_t z) {
                   return base.at((*m)[x], (*m)[y], (*m)[z]);
               }};
    return c;
}

inline Cochain3 pullback(const SquaredCover& pi, const CocycleSpec& spec) {
    if (pi.base != spec.group) throw std::invalid_argument("pullback: cover of a different group");
    return pullback(omega_cochain(spec), pi.cover, pi.projection);
}

// ---------------------------------------------------------------------------
// Representatives

/// Number of canonical representatives on the group (size of the index set A).
inline unsigned long long representative_count(const GroupSpec& g) {
    unsigned long long c = 1;
    const std::size_t n = g.rank();
    for (std::size_t l = 0; l < n; ++l) c *= static_cast<unsigned long long>(g.order(l));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) c *= static_cast<unsigned long long>(std::gcd(g.order(s), g.order(t)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s)
            for (std::size_t t = s + 1; t < n; ++t)
                c *= static_cast<unsigned long long>(std::gcd(std::gcd(g.order(r), g.order(s)), g.order(t)));
    return c;
}

/// The representative with the given index, counting in lexicographic order of
/// the sequence (c_1..c_n, c_12, c_13, .., c_123, ..) with the last entry fastest.
inline CocycleSpec representative_at(const GroupSpec& g, unsigned long long idx) {
    const int n = static_cast<int>(g.rank());
    struct Slot {
        int kind;
        std::array<int, 3> k;
        int range;
    };
    std::vector<Slot> slots;
    for (int l = 0; l < n; ++l) slots.push_back({1, {l, 0, 0}, g.order(l)});
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) slots.push_back({2, {s, t, 0}, std::gcd(g.order(s), g.order(t))});
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s)
            for (int t = s + 1; t < n; ++t)
                slots.push_back({3, {r, s, t}, std::gcd(std::gcd(g.order(r), g.order(s)), g.order(t))});
    CocycleSpec spec(g);
    for (std::size_t i = slots.size(); i-- > 0;) {
        const auto& sl = slots[i];
        int v = static_cast<int>(idx % static_cast<unsigned long long>(sl.range));
        idx /= static_cast<unsigned long long>(sl.range);
        if (sl.kind == 1) spec.c_single[sl.k[0]] = v;
        else if (sl.kind == 2) spec.c_pair[{sl.k[0], sl.k[1]}] = v;
        else spec.c_triple[sl.k] = v;
    }
    if (idx != 0) throw std::out_of_range("representative_at: index beyond the representative count");
    return spec;
}

/// All representatives, or a fixed-seed sample of `limit` distinct ones in
/// increasing index order when there are more than `limit`.
inline std::vector<CocycleSpec> representatives(const GroupSpec& g, unsigned long long limit = 10000,
                                                std::uint64_t seed = 20240101) {
    const unsigned long long total = representative_count(g);
    std::vector<unsigned long long> idx;
    if (total <= limit) {
        for (unsigned long long i = 0; i < total; ++i) idx.push_back(i);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<unsigned long long> d(0, total - 1);
        std::vector<unsigned long long> pick;
        std::map<unsigned long long, bool> seen;
        while (pick.size() < limit) {
            auto v = d(rng);
            if (seen.emplace(v, true).second) pick.push_back(v);
        }
        std::sort(pick.begin(), pick.end());
        idx = std::move(pick);
    }
    std::vector<CocycleSpec> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(representative_at(g, i));
    return out;
}

// ---------------------------------------------------------------------------
// Quasi-characters

/// A solution of chi(f) chi(g) = w(f,g) chi(fg), chi(1) = 1, with values
/// zeta_M^exps[x].
struct QuasiCharacter {
    GroupSpec group;
    int root_order = 1;
    std::vector<int> exps;

    CycScalar value(std::size_t x) const { return CycScalar::zeta(root_order, exps.at(x)); }
};

/// All quasi-characters of a 2-cocycle: empty exactly when w is not symmetric,
/// otherwise |G| of them, ordered by the choice of root on each standard
/// generator (lexicographic, first generator slowest).
inline std::vector<QuasiCharacter> quasi_characters(const Cochain2& w) {
    const auto& G = w.group;
    const std::size_t s = G.size();
    if (!w.symmetric()) return {};
    const int m = static_cast<int>(static_cast<long long>(w.root_order) * G.exponent());
    const int scale = m / w.root_order;
    // chi(g_j)^{m_j} = prod_{a=1}^{m_j-1} w(g_j^a, g_j)
    std::vector<long long> base(G.rank());
    for (std::size_t j = 0; j < G.rank(); ++j) {
        const std::size_t g = G.generator(j);
        long long p = 0;
        std::size_t x = g;
        for (int a = 1; a < G.order(j); ++a) {
            p += w.at(x, g);
            x = G.mul(x, g);
        }
        base[j] = p * scale;  // exponent over zeta_M of the m_j-th power
    }
    std::vector<QuasiCharacter> out;
    GroupSpec choices(G.orders());
    for (std::size_t c = 0; c < choices.size(); ++c) {
        auto t = choices.exponents(c);
        std::vector<long long> gen(G.rank());
        for (std::size_t j = 0; j < G.rank(); ++j) {
            const long long mj = G.order(j);
            // an m_j-th root of zeta_M^{base}: exponent (base + t M) / m_j
            if (base[j] % mj != 0) throw std::logic_error("quasi_characters: root order too small");
            gen[j] = detail::mod_floor(base[j] / mj + static_cast<long long>(t[j]) * (m / mj), m);
        }
        QuasiCharacter q{G, m, std::vector<int>(s, 0)};
        // chi(x g_j) = chi(x) chi(g_j) / w(x, g_j), along lexicographic order
        for (std::size_t x = 1; x < s; ++x) {
            auto e = G.exponents(x);
            std::size_t j = 0;
            while (e[j] == 0) ++j;
            e[j] -= 1;
            const std::size_t prev = G.index(e);
            const std::size_t g = G.generator(j);
            q.exps[x] = static_cast<int>(detail::mod_floor(
                static_cast<long long>(q.exps[prev]) + gen[j] - static_cast<long long>(w.at(prev, g)) * scale, m));
        }
        for (std::size_t x = 0; x < s; ++x)
            for (std::size_t y = 0; y < s; ++y)
                if ((static_cast<long long>(q.exps[x]) + q.exps[y] - static_cast<long long>(w.at(x, y)) * scale -
                     q.exps[G.mul(x, y)]) %
                        m !=
                    0)
                    throw std::logic_error("quasi_characters: constructed function violates the defining identity");
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace qqg
