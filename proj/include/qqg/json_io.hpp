#pragma once

// JSON encodings of groups, cocycles, exact scalars, modules and reports.
//
// Scalars: {"root_order": N, "exponent": k} for roots of unity (N minimal),
// otherwise {"root_order": N, "coeffs": ["p/q", ...]} in the power basis of
// Q(zeta_N). Plain integers and "p/q" strings are accepted as rationals.
// Cocycles: {"c_single": [...], "c_pair": {"1,2": v}, "c_triple": {"1,2,3": v}}
// with 1-based factor indices.

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosonization.hpp"
#include "cocycle.hpp"
#include "fixtures.hpp"
#include "nichols.hpp"
#include "yd_module.hpp"

namespace qqg {

using Json = nlohmann::ordered_json;

/// Malformed input, located by a JSON path such as $.module.components[0].degree.
class InputError : public std::runtime_error {
public:
    InputError(std::string path, const std::string& what) : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(child(path, key), "missing");
    return *it;
}

inline long long as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path, "expected an integer");
    return j.get<long long>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path, "expected an array");
    return j;
}

inline std::vector<int> int_list(const Json& j, const std::string& path) {
    std::vector<int> out;
    for (std::size_t i = 0; i < as_array(j, path).size(); ++i) out.push_back(static_cast<int>(as_int(j[i], child(path, i))));
    return out;
}

inline Rational parse_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            Rational r(j.get<std::string>());
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            throw InputError(path, "not a rational '" + j.get<std::string>() + "'");
        }
    }
    throw InputError(path, "expected an integer or a \"p/q\" string");
}

inline std::vector<int> split_key(const std::string& key, const std::string& path) {
    std::vector<int> out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw InputError(path, "bad factor key '" + key + "'");
        }
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalars

inline Json to_json(const CycScalar& s) {
    if (auto r = detail::root_of_unity(s)) return Json{{"root_order", r->first}, {"exponent", r->second}};
    Json c = Json::array();
    for (const auto& q : s.coeffs()) c.push_back(q.get_str());
    return Json{{"root_order", s.root_order()}, {"coeffs", c}};
}

inline CycScalar scalar_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) return CycScalar::rational(detail::parse_rational(j, path));
    const long long n = detail::as_int(detail::require(j, "root_order", path), detail::child(path, "root_order"));
    if (n < 1 || n > 10000) throw InputError(detail::child(path, "root_order"), "must lie in 1..10000");
    if (j.contains("exponent")) return CycScalar::zeta(static_cast<int>(n), detail::as_int(j["exponent"], detail::child(path, "exponent")));
    const std::string cp = detail::child(path, "coeffs");
    const auto& c = detail::as_array(detail::require(j, "coeffs", path), cp);
    std::vector<Rational> q;
    for (std::size_t i = 0; i < c.size(); ++i) q.push_back(detail::parse_rational(c[i], detail::child(cp, i)));
    const std::size_t deg = static_cast<std::size_t>(euler_phi(static_cast<int>(n)));
    if (q.size() != deg) throw InputError(cp, "expected " + std::to_string(deg) + " coefficients");
    return CycScalar(static_cast<int>(n), std::move(q));
}

inline Json to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline ExactMatrix matrix_from_json(const Json& j, const std::string& path) {
    const auto& rows = detail::as_array(j, path);
    if (rows.empty()) throw InputError(path, "empty matrix");
    const std::size_t n = rows.size();
    ExactMatrix m(n, n, CycScalar::zero(1));
    for (std::size_t r = 0; r < n; ++r) {
        const std::string rp = detail::child(path, r);
        const auto& row = detail::as_array(rows[r], rp);
        if (row.size() != n) throw InputError(rp, "matrix must be square");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = scalar_from_json(row[c], detail::child(rp, c));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Groups and cocycles

inline Json to_json(const GroupSpec& g) { return Json(g.orders()); }

inline GroupSpec group_from_json(const Json& j, const std::string& path) {
    auto orders = detail::int_list(j, path);
    if (orders.empty()) throw InputError(path, "a group needs at least one cyclic factor");
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] < 1) throw InputError(detail::child(path, i), "factor orders must be positive");
    long long size = 1;
    for (int m : orders) {
        size *= m;
        if (size > 4096) throw InputError(path, "group order exceeds 4096");
    }
    return GroupSpec(orders);
}

inline Json to_json(const CocycleSpec& s) {
    Json pair = Json::object(), triple = Json::object();
    for (const auto& [k, v] : s.c_pair)
        if (v) pair[std::to_string(k.first + 1) + "," + std::to_string(k.second + 1)] = v;
    for (const auto& [k, v] : s.c_triple)
        if (v) triple[std::to_string(k[0] + 1) + "," + std::to_string(k[1] + 1) + "," + std::to_string(k[2] + 1)] = v;
    return Json{{"c_single", s.c_single}, {"c_pair", pair}, {"c_triple", triple}};
}

inline CocycleSpec cocycle_from_json(const Json& j, const GroupSpec& g, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    CocycleSpec s(g);
    const int n = static_cast<int>(g.rank());
    if (j.contains("c_single")) {
        const std::string p = detail::child(path, "c_single");
        s.c_single = detail::int_list(j["c_single"], p);
        if (static_cast<int>(s.c_single.size()) != n) throw InputError(p, "expected one entry per factor");
        for (int l = 0; l < n; ++l)
            if (s.c_single[l] < 0 || s.c_single[l] >= g.order(l))
                throw InputError(detail::child(p, static_cast<std::size_t>(l)), "must lie in 0.." + std::to_string(g.order(l) - 1));
    }
    if (j.contains("c_pair")) {
        const std::string p = detail::child(path, "c_pair");
        if (!j["c_pair"].is_object()) throw InputError(p, "expected an object");
        for (const auto& [key, val] : j["c_pair"].items()) {
            const std::string kp = detail::child(p, key);
            auto k = detail::split_key(key, kp);
            if (k.size() != 2 || k[0] < 1 || k[0] >= k[1] || k[1] > n) throw InputError(kp, "expected a key \"i,j\" with 1 <= i < j <= " + std::to_string(n));
            const int v = static_cast<int>(detail::as_int(val, kp));
            const int bound = std::gcd(g.order(k[0] - 1), g.order(k[1] - 1));
            if (v < 0 || v >= bound) throw InputError(kp, "must lie in 0.." + std::to_string(bound - 1));
            s.c_pair[{k[0] - 1, k[1] - 1}] = v;
        }
    }
    if (j.contains("c_triple")) {
        const std::string p = detail::child(path, "c_triple");
        if (!j["c_triple"].is_object()) throw InputError(p, "expected an object");
        for (const auto& [key, val] : j["c_triple"].items()) {
            const std::string kp = detail::child(p, key);
            auto k = detail::split_key(key, kp);
            if (k.size() != 3 || k[0] < 1 || k[0] >= k[1] || k[1] >= k[2] || k[2] > n)
                throw InputError(kp, "expected a key \"i,j,k\" with 1 <= i < j < k <= " + std::to_string(n));
            const int v = static_cast<int>(detail::as_int(val, kp));
            const int bound = std::gcd(std::gcd(g.order(k[0] - 1), g.order(k[1] - 1)), g.order(k[2] - 1));
            if (v < 0 || v >= bound) throw InputError(kp, "must lie in 0.." + std::to_string(bound - 1));
            s.c_triple[{k[0] - 1, k[1] - 1, k[2] - 1}] = v;
        }
    }
    for (const auto& [key, val] : j.items())
        if (key != "c_single" && key != "c_pair" && key != "c_triple") throw InputError(detail::child(path, key), "unknown field");
    return s;
}

// ---------------------------------------------------------------------------
// Modules

inline std::vector<int> exponents_of(const GroupSpec& g, std::size_t idx) {
    std::vector<int> e;
    for (std::size_t i = 0; i < g.rank(); ++i) e.push_back(g.exponent_of(idx, i));
    return e;
}

/// Components with their degree and the matrices of the standard generators.
inline Json to_json(const YDModule& v) {
    Json comps = Json::array();
    for (const auto& c : v.components) {
        Json gens = Json::array();
        for (std::size_t i = 0; i < v.group.rank(); ++i) gens.push_back(to_json(c.action[v.group.generator(i)]));
        comps.push_back(Json{{"degree", exponents_of(v.group, c.degree)}, {"dim", c.dim}, {"generators", gens}});
    }
    return Json{{"components", comps}};
}

/// A component gives either "generators" (one matrix per cyclic factor,
/// completed to the full projective action) or "action" (one matrix per group
/// element in lexicographic order).
inline YDModule module_from_json(const Json& j, const CocycleSpec& spec, const std::string& path) {
    const auto& G = spec.group;
    const Cochain3 w = omega_cochain(spec);
    YDModule v{G, w, {}};
    const std::string cp = detail::child(path, "components");
    const auto& comps = detail::as_array(detail::require(j, "components", path), cp);
    if (comps.empty()) throw InputError(cp, "a module needs at least one component");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string p = detail::child(cp, i);
        const auto& c = comps[i];
        const std::string dp = detail::child(p, "degree");
        auto deg = detail::int_list(detail::require(c, "degree", p), dp);
        if (deg.size() != G.rank()) throw InputError(dp, "expected one exponent per factor");
        const std::size_t d = G.index(deg);
        if (c.contains("generators")) {
            const std::string gp = detail::child(p, "generators");
            const auto& gens = detail::as_array(c["generators"], gp);
            if (gens.size() != G.rank()) throw InputError(gp, "expected one matrix per factor");
            std::vector<ExactMatrix> ms;
            for (std::size_t k = 0; k < gens.size(); ++k) ms.push_back(matrix_from_json(gens[k], detail::child(gp, k)));
            for (std::size_t k = 1; k < ms.size(); ++k)
                if (ms[k].rows() != ms[0].rows()) throw InputError(detail::child(gp, k), "matrix sizes differ");
            try {
                v.components.push_back(complete_from_generators(w, d, ms));
            } catch (const std::exception& e) {
                throw InputError(gp, e.what());
            }
        } else if (c.contains("action")) {
            const std::string ap = detail::child(p, "action");
            const auto& acts = detail::as_array(c["action"], ap);
            if (acts.size() != G.size()) throw InputError(ap, "expected one matrix per group element (" + std::to_string(G.size()) + ")");
            YDComponent comp{d, 0, {}};
            for (std::size_t k = 0; k < acts.size(); ++k) {
                comp.action.push_back(matrix_from_json(acts[k], detail::child(ap, k)));
                if (comp.action.back().rows() != comp.action.front().rows()) throw InputError(detail::child(ap, k), "matrix sizes differ");
            }
            comp.dim = comp.action.front().rows();
            v.components.push_back(std::move(comp));
        } else {
            throw InputError(p, "a component needs \"generators\" or \"action\"");
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const DynkinDiagram& d) {
    Json verts = Json::array(), edges = Json::array();
    for (std::size_t i = 0; i < d.vertex_labels.size(); ++i)
        verts.push_back(Json{{"vertex", i + 1}, {"label", to_json(d.vertex_labels[i])}});
    for (const auto& [e, s] : d.edges) edges.push_back(Json{{"from", e.first + 1}, {"to", e.second + 1}, {"label", to_json(s)}});
    return Json{{"vertices", verts}, {"edges", edges}, {"components", d.components().size()}};
}

inline Json to_json(const BraidingMatrix& q) {
    return Json{{"root_order", q.root_order}, {"exps", q.exps}};
}

inline Json to_json(const NicholsReport& r) {
    Json j{{"rank", r.rank},
           {"verdict", to_string(r.verdict)},
           {"dims", r.dims},
           {"total", r.verdict == VerdictKind::Finite ? Json(r.total) : Json(nullptr)},
           {"top_degree", r.verdict == VerdictKind::Finite ? Json(r.top) : Json(nullptr)},
           {"cutoff", r.cutoff},
           {"budget_exhausted", r.budget_exhausted},
           {"reason", r.reason}};
    if (!r.unit_diagonal.empty()) {
        Json u = Json::array();
        for (auto i : r.unit_diagonal) u.push_back(i + 1);
        j["unit_diagonal"] = u;
    }
    if (!r.multidegree.empty()) {
        Json m = Json::array();
        for (const auto& [a, d] : r.multidegree) m.push_back(Json{{"multidegree", a}, {"dim", d}});
        j["multidegree"] = m;
    }
    if (!r.heights.empty()) {
        Json h = Json::array();
        for (const auto& x : r.heights)
            h.push_back(Json{{"alpha", x.alpha}, {"q_alpha", to_json(x.q_alpha)}, {"height", x.height ? Json(*x.height) : Json("infinite")}});
        j["heights"] = h;
    }
    return j;
}

inline Json to_json(const Reduction& r) {
    if (r.refusal) {
        Json w = Json::array();
        for (std::size_t i = 0; i < r.refusal->witnesses.size(); ++i)
            w.push_back(Json{{"component", r.refusal->witnesses[i] + 1}, {"degree", r.refusal->witness_degrees[i]}});
        return Json{{"refused", true}, {"support", r.support}, {"reason", r.refusal->reason}, {"witnesses", w}};
    }
    return Json{{"refused", false},
                {"support", r.support},
                {"lifted_to_cover", r.lifted},
                {"braiding", to_json(*r.braiding)},
                {"hilbert", to_json(r.report)},
                {"dynkin", to_json(r.diagram)}};
}

inline Json to_json(const CheckResult& c) {
    Json j{{"ok", c.ok}};
    if (!c.ok) j["witness"] = c.witness;
    return j;
}

inline Json to_json(const CoquasiReport& r) {
    Json j{{"ok", r.ok}};
    if (!r.ok) j["witness"] = r.witness;
    j["checked"] = Json(r.checked);
    j["skipped"] = Json(r.skipped);
    return j;
}

inline Json sparse_json(const SparseVec& v, const std::vector<std::string>& names) {
    Json out = Json::array();
    for (const auto& [k, c] : v) out.push_back(Json{{"basis", names[k]}, {"coeff", to_json(c)}});
    return out;
}

inline Json sparse_json(const SparsePair& v, const std::vector<std::string>& names) {
    Json out = Json::array();
    for (const auto& [k, c] : v) out.push_back(Json{{"left", names[k.first]}, {"right", names[k.second]}, {"coeff", to_json(c)}});
    return out;
}

/// Full structure tables of a biproduct. Products leaving the truncation are null.
inline Json to_json(const BiproductTruncation& m) {
    std::vector<std::string> names;
    for (std::size_t a = 0; a < m.dim(); ++a) names.push_back(m.name(a));
    const auto& h = m.braided();
    Json basis = Json::array();
    for (std::size_t a = 0; a < m.dim(); ++a)
        basis.push_back(Json{{"name", names[a]}, {"length", m.length(a)}, {"degree", exponents_of(m.group(), h.degree[m.part(a)])},
                             {"group", exponents_of(m.group(), m.grp(a))}, {"alpha", to_json(m.alpha(a))}, {"beta", to_json(m.beta(a))}});
    Json prod = Json::array(), cop = Json::array(), anti = Json::array();
    for (std::size_t a = 0; a < m.dim(); ++a) {
        for (std::size_t b = 0; b < m.dim(); ++b) {
            auto p = m.product(a, b);
            prod.push_back(Json{{"left", names[a]}, {"right", names[b]}, {"value", p ? sparse_json(*p, names) : Json(nullptr)}});
        }
        cop.push_back(Json{{"element", names[a]}, {"value", sparse_json(m.coproduct(a), names)}});
        auto s = m.antipode(a);
        anti.push_back(Json{{"element", names[a]}, {"value", s ? sparse_json(*s, names) : Json(nullptr)}});
    }
    return Json{{"dim", m.dim()},
                {"braided_dim", h.size()},
                {"truncation", h.truncation},
                {"complete", h.complete},
                {"basis", basis},
                {"product", prod},
                {"coproduct", cop},
                {"antipode", anti}};
}

}  // namespace qqg
