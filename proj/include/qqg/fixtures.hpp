#pragma once

// Named example modules: two simple nondiagonal modules (over Z2^3 and Z6^3
// with the cocycle (-1)^{x_3 y_2 z_1}) and three simple modules over Z2^3 used
// in direct sums. Each is given by its generator matrices and completed to a
// full action table.

#include <stdexcept>
#include <string>
#include <vector>

#include "yd_module.hpp"

namespace qqg {

namespace detail {

inline ExactMatrix mat2(const CycScalar& a, const CycScalar& b, const CycScalar& c, const CycScalar& d) {
    ExactMatrix m(2, 2, CycScalar::zero(1));
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

inline CycScalar r(long v) { return CycScalar::rational(v); }

inline ExactMatrix swap2() { return mat2(r(0), r(1), r(1), r(0)); }
inline ExactMatrix diag2(const CycScalar& a, const CycScalar& b) { return mat2(a, r(0), r(0), b); }

inline YDModule module_from_generators(const CocycleSpec& spec, const std::vector<int>& degree,
                                       const std::vector<ExactMatrix>& gens) {
    Cochain3 w = omega_cochain(spec);
    YDModule v{spec.group, w, {}};
    v.components.push_back(complete_from_generators(w, spec.group.index(degree), gens));
    return v;
}

}  // namespace detail

/// Z2^3 with the single triple coefficient c_123 = 1.
inline CocycleSpec z2cube_cocycle() {
    CocycleSpec s(GroupSpec({2, 2, 2}));
    s.c_triple[{0, 1, 2}] = 1;
    return s;
}

/// Z6^3 with c_123 = 3, i.e. the sign (-1)^{x_3 y_2 z_1}.
inline CocycleSpec z6cube_cocycle() {
    CocycleSpec s(GroupSpec({6, 6, 6}));
    s.c_triple[{0, 1, 2}] = 3;
    return s;
}

/// Two-dimensional simple module of degree e1 over Z2^3 with
/// e1 -> -I, e2 -> diag(1,-1), e3 -> swap.
inline YDModule example_z2cube_simple() {
    using namespace detail;
    return module_from_generators(z2cube_cocycle(), {1, 0, 0}, {diag2(r(-1), r(-1)), diag2(r(1), r(-1)), swap2()});
}

/// The eight matrices of the Z2^3 example as printed, listed for
/// 1, e1, e2, e3, e1e2, e1e3, e2e3, e1e2e3 and stored in element order.
inline YDModule example_z2cube_printed_table() {
    using namespace detail;
    const auto spec = z2cube_cocycle();
    const auto& G = spec.group;
    YDComponent c{G.index(std::vector<int>{1, 0, 0}), 2, std::vector<ExactMatrix>(G.size())};
    auto set = [&](std::vector<int> e, ExactMatrix m) { c.action[G.index(e)] = std::move(m); };
    set({0, 0, 0}, diag2(r(1), r(1)));
    set({1, 0, 0}, diag2(r(-1), r(-1)));
    set({0, 1, 0}, diag2(r(1), r(-1)));
    set({0, 0, 1}, swap2());
    set({1, 1, 0}, diag2(r(-1), r(1)));
    set({1, 0, 1}, mat2(r(0), r(-1), r(-1), r(0)));
    set({0, 1, 1}, mat2(r(0), r(-1), r(1), r(0)));
    set({1, 1, 1}, mat2(r(0), r(1), r(-1), r(0)));
    return YDModule{G, omega_cochain(spec), {std::move(c)}};
}

/// Two-dimensional simple module of degree e1 over Z6^3 with
/// e1 -> diag(z3, z3), e2 -> diag(z3, -z3), e3 -> swap.
inline YDModule example_z6cube_simple() {
    using namespace detail;
    const CycScalar z3 = CycScalar::zeta(3);
    return module_from_generators(z6cube_cocycle(), {1, 0, 0}, {diag2(z3, z3), diag2(z3, -z3), swap2()});
}

/// Simple modules of degree g1, g2, g3 over Z2^3 (index 1, 2, 3).
inline YDModule z2cube_summand(int k) {
    using namespace detail;
    const auto I = diag2(r(-1), r(-1));
    const auto D = diag2(r(1), r(-1));
    const auto S = swap2();
    switch (k) {
        case 1: return module_from_generators(z2cube_cocycle(), {1, 0, 0}, {I, D, S});
        case 2: return module_from_generators(z2cube_cocycle(), {0, 1, 0}, {D, I, S});
        case 3: return module_from_generators(z2cube_cocycle(), {0, 0, 1}, {S, D, I});
        default: throw std::invalid_argument("z2cube_summand: index must be 1, 2 or 3");
    }
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names{"example-3.19", "example-3.20", "sec5-V1", "sec5-V2", "sec5-V3"};
    return names;
}

/// Cocycle coefficients underlying a named fixture.
inline CocycleSpec fixture_cocycle(const std::string& name) {
    if (name == "example-3.20") return z6cube_cocycle();
    if (name == "example-3.19" || name == "sec5-V1" || name == "sec5-V2" || name == "sec5-V3") return z2cube_cocycle();
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

inline YDModule fixture(const std::string& name) {
    if (name == "example-3.19") return example_z2cube_simple();
    if (name == "example-3.20") return example_z6cube_simple();
    if (name == "sec5-V1") return z2cube_summand(1);
    if (name == "sec5-V2") return z2cube_summand(2);
    if (name == "sec5-V3") return z2cube_summand(3);
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace qqg
