#pragma once

// Command-line front end. Exit status: 0 success, 1 mathematical refusal or
// failed verification, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace qqg::cli {

enum Exit : int { Success = 0, Refusal = 1, InputFailure = 2 };

/// Parsed job file. Group and cocycle come from the job or from a fixture module.
struct Job {
    Json raw = Json::object();
    std::optional<CocycleSpec> spec;
    std::optional<YDModule> module;
    std::string module_name;
    std::optional<BraidingMatrix> braiding;
};

namespace detail {

inline Json read_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw InputError("$", "cannot open job file '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError("$", std::string("invalid JSON: ") + e.what());
    }
}

inline bool same_spec(const CocycleSpec& a, const CocycleSpec& b) {
    return a.group.orders() == b.group.orders() && to_json(a) == to_json(b);
}

/// A fixture name or several joined by '+' (direct sum).
inline std::pair<YDModule, CocycleSpec> named_module(const std::string& name, const std::string& path) {
    std::vector<std::string> parts;
    std::stringstream ss(name);
    std::string part;
    while (std::getline(ss, part, '+')) parts.push_back(part);
    std::optional<YDModule> v;
    std::optional<CocycleSpec> spec;
    for (const auto& p : parts) {
        const auto& names = fixture_names();
        const std::string full = std::find(names.begin(), names.end(), p) != names.end() ? p : "sec5-" + p;
        if (std::find(names.begin(), names.end(), full) == names.end()) throw InputError(path, "unknown fixture '" + p + "'");
        const auto s = fixture_cocycle(full);
        if (spec && !same_spec(*spec, s)) throw InputError(path, "fixtures '" + name + "' live over different cocycles");
        spec = s;
        v = v ? direct_sum(*v, fixture(full)) : fixture(full);
    }
    if (!v) throw InputError(path, "empty fixture name");
    return {*v, *spec};
}

inline BraidingMatrix braiding_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    if (j.contains("matrix")) {
        try {
            return BraidingMatrix::from_matrix(matrix_from_json(j["matrix"], path + ".matrix"));
        } catch (const std::invalid_argument& e) {
            throw InputError(path + ".matrix", e.what());
        }
    }
    const auto n = qqg::detail::as_int(qqg::detail::require(j, "root_order", path), path + ".root_order");
    if (n < 1 || n > 10000) throw InputError(path + ".root_order", "must lie in 1..10000");
    const std::string ep = path + ".exps";
    const auto& rows = qqg::detail::as_array(qqg::detail::require(j, "exps", path), ep);
    BraidingMatrix q{static_cast<int>(n), {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        q.exps.push_back(qqg::detail::int_list(rows[i], ep + "[" + std::to_string(i) + "]"));
        if (q.exps.back().size() != rows.size()) throw InputError(ep + "[" + std::to_string(i) + "]", "braiding must be square");
        for (auto& e : q.exps.back()) e = static_cast<int>(qqg::detail::mod_floor(e, n));
    }
    if (q.exps.empty()) throw InputError(ep, "empty braiding");
    return q;
}

inline Job load_job(const std::string& path, const std::string& fixture_override) {
    Job job;
    if (!path.empty()) job.raw = read_json(path);
    if (!job.raw.is_object()) throw InputError("$", "a job must be a JSON object");
    if (job.raw.contains("group")) {
        const auto g = group_from_json(job.raw["group"], "$.group");
        job.spec = job.raw.contains("cocycle") ? cocycle_from_json(job.raw["cocycle"], g, "$.cocycle") : CocycleSpec(g);
    } else if (job.raw.contains("cocycle")) {
        throw InputError("$.group", "missing (required with a cocycle)");
    }
    Json module = fixture_override.empty() ? (job.raw.contains("module") ? job.raw["module"] : Json(nullptr)) : Json(fixture_override);
    if (module.is_string()) {
        job.module_name = module.get<std::string>();
        auto [v, s] = named_module(job.module_name, "$.module");
        job.module = std::move(v);
        if (job.spec && !same_spec(*job.spec, s)) throw InputError("$.module", "fixture does not match the job's group and cocycle");
        job.spec = s;
    } else if (module.is_object()) {
        if (!job.spec) throw InputError("$.group", "missing (required with an inline module)");
        job.module = module_from_json(module, *job.spec, "$.module");
        auto ok = verify_yd_module(*job.module);
        if (!ok) throw InputError("$.module", "not a twisted Yetter-Drinfeld module: " + ok.witness);
    } else if (!module.is_null()) {
        throw InputError("$.module", "expected a fixture name or an object");
    }
    if (job.raw.contains("braiding")) job.braiding = braiding_from_json(job.raw["braiding"], "$.braiding");
    return job;
}

inline const CocycleSpec& need_spec(const Job& job) {
    if (!job.spec) throw InputError("$.group", "missing");
    return *job.spec;
}

inline const YDModule& need_module(const Job& job) {
    if (!job.module) throw InputError("$.module", "missing");
    return *job.module;
}

template <class T>
T job_param(const Job& job, const std::string& key, T fallback) {
    if (!job.raw.contains(key)) return fallback;
    const auto& v = job.raw[key];
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw InputError("$." + key, "expected a boolean");
        return v.get<bool>();
    } else {
        if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError("$." + key, "expected a nonnegative integer");
        return static_cast<T>(v.get<long long>());
    }
}

inline std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

/// Options shared by the subcommands; flags override job fields.
struct Options {
    std::string job;
    std::string fixture;
    std::string format = "json";
    std::optional<int> cutoff;
    std::optional<std::size_t> budget;
    bool multidegree = false;
    std::optional<int> truncation;
    std::optional<int> max_len;
    std::string degree;
    bool dot = false;
    bool corrupt_sign = false;
    std::string example;
    std::string group;
    std::optional<unsigned long long> limit;
};

namespace detail {

inline NicholsOptions nichols_options(const Job& job, const Options& o) {
    NicholsOptions n;
    n.cutoff = o.cutoff.value_or(job_param<int>(job, "cutoff", n.cutoff));
    n.budget = o.budget.value_or(job_param<std::size_t>(job, "budget", n.budget));
    n.multidegree = o.multidegree || job_param<bool>(job, "multidegree", false);
    if (n.cutoff < 1) throw InputError("$.cutoff", "must be at least 1");
    return n;
}

inline std::string hilbert_text(const NicholsReport& r) {
    std::ostringstream os;
    os << "verdict: " << to_string(r.verdict) << "\n";
    os << "dims: " << join(r.dims) << "\n";
    if (r.verdict == VerdictKind::Finite) os << "total: " << r.total << "\ntop degree: " << r.top << "\n";
    if (!r.reason.empty()) os << "reason: " << r.reason << "\n";
    return os.str();
}

/// Either the job's braiding or the reduction of its module.
inline int nichols_subject(const Job& job, const Options& o, std::ostream& out, bool dynkin_only) {
    const auto nopt = nichols_options(job, o);
    if (job.braiding) {
        auto rep = hilbert(*job.braiding, nopt);
        auto d = dynkin(*job.braiding);
        if (dynkin_only) {
            if (o.dot) out << d.to_dot();
            else if (o.format == "text") out << d.to_text();
            else emit(out, Json{{"braiding", to_json(*job.braiding)}, {"dynkin", to_json(d)}});
        } else if (o.format == "text") {
            out << hilbert_text(rep);
        } else {
            emit(out, Json{{"braiding", to_json(*job.braiding)}, {"hilbert", to_json(rep)}});
        }
        return Success;
    }
    ReduceOptions ropt;
    ropt.nichols = nopt;
    auto r = reduce_and_compute(need_module(job), ropt);
    if (r.refused()) {
        if (o.format == "text" || o.dot) out << "refused: " << r.refusal->reason << "\n";
        else emit(out, to_json(r));
        return Refusal;
    }
    if (dynkin_only) {
        if (o.dot) out << r.diagram.to_dot();
        else if (o.format == "text") out << r.diagram.to_text();
        else emit(out, Json{{"braiding", to_json(*r.braiding)}, {"dynkin", to_json(r.diagram)}});
    } else if (o.format == "text") {
        out << hilbert_text(r.report);
    } else {
        emit(out, to_json(r));
    }
    return Success;
}

inline std::size_t parse_degree(const std::string& s, const GroupSpec& g) {
    std::vector<int> e;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            e.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw InputError("--degree", "expected comma-separated exponents");
        }
    }
    if (e.size() != g.rank()) throw InputError("--degree", "expected one exponent per factor");
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<int>(qqg::detail::mod_floor(e[i], g.order(i)));
    return g.index(e);
}

inline int cmd_simples(const Job& job, const Options& o, std::ostream& out) {
    const auto& spec = need_spec(job);
    const auto& G = spec.group;
    std::string deg = o.degree;
    if (deg.empty() && job.raw.contains("degree")) {
        for (auto x : qqg::detail::int_list(job.raw["degree"], "$.degree")) deg += (deg.empty() ? "" : ",") + std::to_string(x);
    }
    if (deg.empty()) throw InputError("--degree", "missing");
    const std::size_t g = parse_degree(deg, G);
    SimplesSummary sum;
    auto simples = simples_at(spec, g, &sum);
    Json list = Json::array();
    for (std::size_t i = 0; i < simples.size(); ++i) {
        const auto& v = simples[i];
        list.push_back(Json{{"index", i + 1}, {"dim", v.dim()}, {"diagonal", is_diagonal(v).has_value()}, {"module", to_json(v)}});
    }
    const bool arithmetic = sum.radical_order * sum.dimension * sum.dimension == G.size() && G.size() % sum.dimension == 0;
    if (o.format == "text") {
        out << "degree " << G.format(g) << ": " << simples.size() << " simples of dimension " << sum.dimension << ", radical order "
            << sum.radical_order << "\n";
        out << "m*n^2 = |G|: " << (arithmetic ? "yes" : "no") << "\n";
    } else {
        emit(out, Json{{"group", to_json(G)},
                       {"cocycle", to_json(spec)},
                       {"degree", exponents_of(G, g)},
                       {"count", simples.size()},
                       {"dimension", sum.dimension},
                       {"radical_order", sum.radical_order},
                       {"dimension_identity", arithmetic},
                       {"simples", list}});
    }
    return arithmetic ? Success : Refusal;
}

inline int cmd_finiteness(const Job& job, const Options& o, std::ostream& out) {
    ReduceOptions ropt;
    ropt.nichols = nichols_options(job, o);
    auto d = decide_finiteness(need_module(job), ropt);
    Json j{{"verdict", to_string(d.verdict)}, {"reason", d.reason}};
    if (d.simple) j["criterion"] = Json{{"verdict", to_string(d.simple->verdict)}, {"lambda", to_json(d.simple->lambda)}, {"reason", d.simple->reason}};
    if (d.reduction) j["reduction"] = to_json(*d.reduction);
    if (o.format == "text") {
        out << "verdict: " << to_string(d.verdict) << "\n";
        if (d.simple) out << "criterion: " << to_string(d.simple->verdict) << "\n";
        out << "reason: " << d.reason << "\n";
    } else {
        emit(out, j);
    }
    return d.reduction && d.reduction->refused() ? Refusal : Success;
}

inline int cmd_boson(const Job& job, const Options& o, std::ostream& out, bool check) {
    const int trunc = o.truncation.value_or(job_param<int>(job, "truncation", 3));
    const int max_len = o.max_len.value_or(job_param<int>(job, "max_len", trunc));
    if (trunc < 1) throw InputError("$.truncation", "must be at least 1");
    if (max_len > trunc) throw InputError("$.max_len", "must not exceed the truncation");
    BiproductOptions bopt;
    bopt.corrupt_product_sign = o.corrupt_sign;
    std::optional<BiproductTruncation> m;
    try {
        if (job.module) m = biproduct_build(*job.module, trunc, bopt);
        else m = biproduct_build(trivial_braided(omega_cochain(need_spec(job))), bopt);
    } catch (const BosonizationRefused& e) {
        if (o.format == "text") out << "refused: " << e.what() << "\n";
        else emit(out, Json{{"refused", true}, {"reason", e.what()}});
        return Refusal;
    }
    if (!check) {
        if (o.format == "text") out << "dim " << m->dim() << " (braided part " << m->braided().size() << ")\n";
        else emit(out, to_json(*m));
        return Success;
    }
    auto rep = verify_coquasi(*m, max_len);
    auto grp = check_grouplike_part(*m, m->braided().cocycle);
    const bool ok = rep.ok && grp.ok;
    if (o.format == "text") {
        out << "dim " << m->dim() << " (braided part " << m->braided().size() << "), max length " << max_len << "\n";
        for (const auto& [k, n] : rep.checked) {
            auto it = rep.skipped.find(k);
            out << k << ": " << n << " checked, " << (it == rep.skipped.end() ? 0 : it->second) << " skipped\n";
        }
        out << "grouplike part: " << (grp.ok ? "matches (kG, w)" : grp.witness) << "\n";
        out << (ok ? "PASS" : "FAIL: " + (rep.ok ? grp.witness : rep.witness)) << "\n";
    } else {
        emit(out, Json{{"dim", m->dim()}, {"braided_dim", m->braided().size()}, {"max_len", max_len}, {"axioms", to_json(rep)},
                       {"grouplike_part", to_json(grp)}, {"ok", ok}});
    }
    return ok ? Success : Refusal;
}

inline int cmd_paper_example(const std::string& name, const Options& o, std::ostream& out) {
    const YDModule v = named_module(name, "<name>").first;
    const auto verified = verify_yd_module(v);
    const bool diagonal = is_diagonal(v).has_value();
    Json j{{"example", name}, {"group", to_json(v.group)}, {"dim", v.dim()}, {"verified", verified.ok}, {"diagonal", diagonal}};
    std::optional<SimpleFiniteness> crit;
    if (v.components.size() == 1 && !diagonal) {
        crit = finiteness_simple(v);
        j["criterion"] = to_string(crit->verdict);
    }
    Job job;
    auto r = reduce_and_compute(v, ReduceOptions{nichols_options(job, o), {}});
    j["reduction"] = to_json(r);
    if (o.format == "text") {
        out << name << ": dim " << v.dim() << " over " << v.group.describe() << "\n";
        out << "verified: " << (verified.ok ? "yes" : "no: " + verified.witness) << "\n";
        out << "diagonal: " << (diagonal ? "yes" : "no") << "\n";
        if (crit) out << "criterion: " << to_string(crit->verdict) << "\n";
        if (r.refused()) {
            out << "refused: " << r.refusal->reason << "\n";
        } else {
            out << hilbert_text(r.report) << "dynkin:\n" << r.diagram.to_text();
        }
    } else {
        emit(out, j);
    }
    if (!verified.ok) return Refusal;
    return r.refused() ? Refusal : Success;
}

inline int cmd_seed_corpus(const Options& o, std::ostream& out) {
    if (o.group.empty()) throw InputError("--group", "missing");
    std::vector<int> orders;
    std::stringstream ss(o.group);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            orders.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw InputError("--group", "expected comma-separated factor orders");
        }
    }
    const auto g = group_from_json(Json(orders), "--group");
    const auto total = representative_count(g);
    const auto limit = o.limit.value_or(total);
    if (!o.limit && total > 1000000) throw InputError("--group", std::to_string(total) + " representatives; pass --limit");
    Json arr = Json::array();
    for (const auto& s : representatives(g, limit)) arr.push_back(Json{{"group", orders}, {"cocycle", to_json(s)}});
    emit(out, arr);
    return Success;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Computations in twisted Yetter-Drinfeld categories over finite abelian groups"};
    app.require_subcommand(0, 1);
    Options o;
    bool seed = false;
    app.add_flag("--seed-corpus", seed, "Emit all representative cocycles of --group as a JSON array");
    app.add_option("--group", o.group, "Factor orders, e.g. 2,2,2");
    app.add_option("--limit", o.limit, "Sample at most this many representatives");

    auto job_opts = [&](CLI::App* c) {
        c->add_option("--job", o.job, "Job JSON file, '-' for stdin");
        c->add_option("--fixture", o.fixture, "Fixture module name (overrides the job's module)");
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    };
    auto nichols_opts = [&](CLI::App* c) {
        c->add_option("--cutoff", o.cutoff, "Highest degree computed");
        c->add_option("--budget", o.budget, "Maximal words per multidegree block");
        c->add_flag("--multidegree", o.multidegree, "Report multidegree dimensions");
    };

    auto* cocycle = app.add_subcommand("cocycle", "3-cocycle checks")->require_subcommand(1);
    auto* cverify = cocycle->add_subcommand("verify", "Verify the 3-cocycle identity exhaustively");
    auto* cabelian = cocycle->add_subcommand("abelian", "Decide whether the cocycle is abelian");
    job_opts(cverify);
    job_opts(cabelian);

    auto* simples = app.add_subcommand("simples", "Simple twisted Yetter-Drinfeld modules of one degree");
    job_opts(simples);
    simples->add_option("--degree", o.degree, "Degree exponents, e.g. 1,0,0");

    auto* nichols = app.add_subcommand("nichols", "Nichols algebra data")->require_subcommand(1);
    auto* nhilbert = nichols->add_subcommand("hilbert", "Hilbert series of B(V)");
    auto* ndynkin = nichols->add_subcommand("dynkin", "Generalized Dynkin diagram");
    job_opts(nhilbert);
    job_opts(ndynkin);
    nichols_opts(nhilbert);
    nichols_opts(ndynkin);
    ndynkin->add_flag("--dot", o.dot, "Emit a DOT graph");

    auto* fin = app.add_subcommand("finiteness", "Finiteness decision for B(V)");
    job_opts(fin);
    nichols_opts(fin);

    auto* boson = app.add_subcommand("boson", "Truncated biproduct B(V)#kG")->require_subcommand(1);
    auto* bbuild = boson->add_subcommand("build", "Structure tables");
    auto* bcheck = boson->add_subcommand("check", "Coquasi-Hopf axiom check");
    for (auto* c : {bbuild, bcheck}) {
        job_opts(c);
        c->add_option("--truncation", o.truncation, "Truncation length");
    }
    bcheck->add_option("--max-len", o.max_len, "Total length bound for checked instances");
    bcheck->add_flag("--corrupt-sign", o.corrupt_sign, "Negate the product prefactor (exercises the checker)");

    auto* paper = app.add_subcommand("paper-examples", "Run a built-in example end to end");
    paper->add_option("name", o.example, "example-3.19, example-3.20, sec5-V1, sec5-V2, sec5-V3 or a '+' sum such as sec5-V1+sec5-V2")
        ->required();
    paper->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    nichols_opts(paper);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InputFailure;
    }

    try {
        if (seed) return detail::cmd_seed_corpus(o, out);
        if (paper->parsed()) return detail::cmd_paper_example(o.example, o, out);
        if (app.get_subcommands().empty()) {
            out << app.help();
            return InputFailure;
        }
        const Job job = detail::load_job(o.job, o.fixture);
        if (cverify->parsed()) {
            const auto& spec = detail::need_spec(job);
            auto r = verify_3cocycle(spec);
            if (o.format == "text") out << (r.ok ? "PASS" : "FAIL: " + r.witness) << "\n";
            else detail::emit(out, Json{{"group", to_json(spec.group)}, {"cocycle", to_json(spec)}, {"verify", to_json(r)}});
            return r.ok ? Success : Refusal;
        }
        if (cabelian->parsed()) {
            const auto& spec = detail::need_spec(job);
            const bool ab = is_abelian(spec);
            if (o.format == "text") out << (ab ? "true" : "false") << "\n";
            else detail::emit(out, Json{{"group", to_json(spec.group)}, {"cocycle", to_json(spec)}, {"abelian", ab}});
            return Success;
        }
        if (simples->parsed()) return detail::cmd_simples(job, o, out);
        if (nhilbert->parsed()) return detail::nichols_subject(job, o, out, false);
        if (ndynkin->parsed()) return detail::nichols_subject(job, o, out, true);
        if (fin->parsed()) return detail::cmd_finiteness(job, o, out);
        if (bbuild->parsed()) return detail::cmd_boson(job, o, out, false);
        if (bcheck->parsed()) return detail::cmd_boson(job, o, out, true);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return InputFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return InputFailure;
    }
    return InputFailure;
}

}  // namespace qqg::cli
