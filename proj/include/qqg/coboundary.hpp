#pragma once

// Solving dJ = T for a normalized 2-cochain J, where
// (dJ)(x,y,z) = J(y,z) J(x,yz) J(xy,z)^{-1} J(x,y)^{-1}.
//
// Unknowns are reduced to the rows J(g_i, .) for standard generators g_i: every
// other row follows from dJ(g, x, z) = T(g, x, z) along a breadth-first
// spanning tree of the Cayley graph, and the values on tree edges are fixed to
// 1 by a coboundary gauge. The remaining equations dJ(g_i, y, z) = T(g_i, y, z)
// for non-tree edges (g_i, y) imply the full identity, since dJ T^{-1} is a
// 3-cocycle vanishing on the generator slices. Equations are added lazily:
// only those violated by the current candidate enter the echelon form.

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "cocycle.hpp"
#include "integer_linalg.hpp"

namespace qqg {

struct CoboundaryOptions {
    /// Build the spanning tree preferring the last generator first. Changes the
    /// gauge and therefore the returned solution.
    bool reverse_generators = false;
    /// Upper bound on rows inserted per round of constraint generation.
    std::size_t batch = 256;
    /// Nonzero: unconstrained unknowns take values from a generator with this
    /// seed instead of 0, selecting another solution when one exists.
    unsigned free_seed = 0;
};

/// Pointwise check of dJ = T.
inline CheckResult verify_coboundary(const Cochain2& j, const Cochain3& t) {
    const auto& G = t.group;
    if (j.group != G) return CheckResult::fail("group mismatch");
    const long long n = lcm_ll(j.root_order, t.root_order);
    const long long fj = n / j.root_order, ft = n / t.root_order;
    const std::size_t s = G.size();
    for (std::size_t x = 0; x < s; ++x)
        for (std::size_t y = 0; y < s; ++y) {
            const std::size_t xy = G.mul(x, y);
            const long long jxy = j.at(x, y);
            for (std::size_t z = 0; z < s; ++z) {
                long long d = (static_cast<long long>(j.at(y, z)) + j.at(x, G.mul(y, z)) - j.at(xy, z) - jxy) * fj -
                              static_cast<long long>(t.at(x, y, z)) * ft;
                if (d % n != 0)
                    return CheckResult::fail("dJ differs from target at (" + G.format(x) + "," + G.format(y) + "," +
                                                 G.format(z) + ")",
                                             {x, y, z});
            }
        }
    return CheckResult::pass();
}

namespace detail {

class CoboundarySystem {
public:
    CoboundarySystem(const Cochain3& t, int modulus, const CoboundaryOptions& opt)
        : t_(t), g_(t.group), n_(modulus), scale_(modulus / t.root_order), s_(g_.size()) {
        for (std::size_t i = 0; i < g_.rank(); ++i)
            if (g_.order(i) > 1) gens_.push_back(g_.generator(i));
        if (opt.reverse_generators) std::reverse(gens_.begin(), gens_.end());
        build_tree();
        var_.assign(gens_.size() * s_, -1);
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t y = 1; y < s_; ++y)
                if (!is_tree_edge(i, y)) var_[i * s_ + y] = static_cast<long>(nvars_++);
    }

    std::size_t unknowns() const noexcept { return nvars_; }

    long long target(std::size_t x, std::size_t y, std::size_t z) const {
        return static_cast<long long>(t_.at(x, y, z)) * scale_;
    }

    /// Full J table from values of the unknowns.
    Cochain2 evaluate(const std::vector<long long>& u) const {
        Cochain2 j(g_, n_);
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t y = 0; y < s_; ++y) {
                long v = var_[i * s_ + y];
                j.at(gens_[i], y) = v < 0 ? 0 : static_cast<int>(u[static_cast<std::size_t>(v)]);
            }
        for (std::size_t x : order_) {
            if (x == 0 || is_generator_node(x)) continue;
            const std::size_t p = parent_[x], gi = via_[x], g = gens_[gi];
            for (std::size_t z = 0; z < s_; ++z)
                j.at(x, z) = static_cast<int>(mod_floor(
                    static_cast<long long>(j.at(p, z)) + j.at(g, g_.mul(p, z)) - target(g, p, z), n_));
        }
        return j;
    }

    /// Residual dJ(g_i, y, z) - T(g_i, y, z) for a candidate table.
    long long residual(const Cochain2& j, std::size_t i, std::size_t y, std::size_t z) const {
        const std::size_t g = gens_[i];
        return mod_floor(static_cast<long long>(j.at(y, z)) + j.at(g, g_.mul(y, z)) - j.at(g_.mul(g, y), z) -
                             j.at(g, y) - target(g, y, z),
                         n_);
    }

    /// Linear equation (coefficients over the unknowns, right-hand side last).
    std::vector<long long> equation(std::size_t i, std::size_t y, std::size_t z) const {
        std::vector<long long> row(nvars_ + 1, 0);
        long long c = 0;
        const std::size_t g = gens_[i];
        c += expand(y, z, 1, row);
        c += expand(g, g_.mul(y, z), 1, row);
        c += expand(g_.mul(g, y), z, -1, row);
        c += expand(g, y, -1, row);
        row[nvars_] = mod_floor(target(g, y, z) - c, n_);
        for (std::size_t k = 0; k < nvars_; ++k) row[k] = mod_floor(row[k], n_);
        return row;
    }

    std::size_t generator_count() const noexcept { return gens_.size(); }
    bool is_tree_edge(std::size_t i, std::size_t y) const {
        const std::size_t x = g_.mul(gens_[i], y);
        return x != 0 && parent_[x] == y && via_[x] == i;
    }

private:
    bool is_generator_node(std::size_t x) const { return parent_[x] == 0; }

    void build_tree() {
        parent_.assign(s_, s_);
        via_.assign(s_, 0);
        parent_[0] = 0;
        order_.push_back(0);
        for (std::size_t head = 0; head < order_.size(); ++head) {
            const std::size_t y = order_[head];
            for (std::size_t i = 0; i < gens_.size(); ++i) {
                const std::size_t x = g_.mul(gens_[i], y);
                if (x == 0 || parent_[x] != s_) continue;
                parent_[x] = y;
                via_[x] = i;
                order_.push_back(x);
            }
        }
        if (order_.size() != s_) throw std::logic_error("coboundary: generators do not span the group");
    }

    /// Adds coef * (linear part of J(x, z)) to row; returns coef * constant part.
    long long expand(std::size_t x, std::size_t z, long long coef, std::vector<long long>& row) const {
        long long c = 0;
        while (x != 0) {
            const std::size_t p = parent_[x], i = via_[x], g = gens_[i];
            const std::size_t w = g_.mul(p, z);
            long v = var_[i * s_ + w];
            if (v >= 0) row[static_cast<std::size_t>(v)] += coef;
            c -= coef * target(g, p, z);
            x = p;
        }
        return c;
    }

    const Cochain3& t_;
    GroupSpec g_;
    long long n_;
    long long scale_;
    std::size_t s_;
    std::vector<std::size_t> gens_;
    std::vector<std::size_t> parent_, via_, order_;
    std::vector<long> var_;
    std::size_t nvars_ = 0;
};

inline std::optional<Cochain2> solve_coboundary_at(const Cochain3& t, int modulus, const CoboundaryOptions& opt) {
    CoboundarySystem sys(t, modulus, opt);
    ModularEchelon ech(sys.unknowns() + 1, modulus);
    const std::size_t s = t.group.size();
    std::vector<long long> free_values;
    if (opt.free_seed != 0) {
        std::mt19937 rng(opt.free_seed);
        std::uniform_int_distribution<long long> dist(0, modulus - 1);
        for (std::size_t k = 0; k < sys.unknowns(); ++k) free_values.push_back(dist(rng));
    }
    while (true) {
        auto u = solve_echelon(ech, free_values.empty() ? nullptr : &free_values);
        if (!u && !free_values.empty()) u = solve_echelon(ech);
        if (!u) return std::nullopt;
        Cochain2 j = sys.evaluate(*u);
        std::size_t added = 0;
        for (std::size_t i = 0; i < sys.generator_count() && added < opt.batch; ++i)
            for (std::size_t y = 0; y < s && added < opt.batch; ++y) {
                if (y == 0 || sys.is_tree_edge(i, y)) continue;
                for (std::size_t z = 1; z < s && added < opt.batch; ++z)
                    if (sys.residual(j, i, y, z) != 0) {
                        ech.insert(sys.equation(i, y, z));
                        ++added;
                    }
            }
        if (added == 0) return j;
    }
}

}  // namespace detail

/// A normalized 2-cochain J with dJ = T, or nullopt when none exists. The
/// search first uses zeta_N with N = lcm(order of T's values, exponent of the
/// group), then N times the exponent, which suffices whenever any solution
/// exists. The result is re-verified pointwise.
inline std::optional<Cochain2> solve_coboundary(const Cochain3& t, const CoboundaryOptions& opt = {}) {
    const auto& G = t.group;
    for (std::size_t x = 0; x < G.size(); ++x)
        for (std::size_t z = 0; z < G.size(); ++z)
            if (t.at(x, 0, z) % t.root_order != 0) throw std::invalid_argument("solve_coboundary: target is not normalized");
    const long long e = G.exponent();
    const long long n0 = lcm_ll(t.root_order, e);
    for (long long n : {n0, n0 * e}) {
        auto j = detail::solve_coboundary_at(t, static_cast<int>(n), opt);
        if (!j) continue;
        auto check = verify_coboundary(*j, t);
        if (!check) throw std::logic_error("solve_coboundary: solution failed verification: " + check.witness);
        return j;
    }
    return std::nullopt;
}

/// Pointwise inverse of a 2-cochain.
inline Cochain2 inverse_cochain(const Cochain2& j) {
    Cochain2 out = j;
    for (auto& e : out.exps) e = static_cast<int>(detail::mod_floor(-static_cast<long long>(e), j.root_order));
    return out;
}

}  // namespace qqg
