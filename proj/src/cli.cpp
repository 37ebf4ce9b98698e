#include "aitlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "aitlab/complexity.hpp"
#include "aitlab/json_io.hpp"

namespace aitlab::cli {

namespace {

struct Undefined : std::runtime_error {
    json body;
    Undefined(const std::string& what, json b) : std::runtime_error(what), body(std::move(b)) {}
};

struct Common {
    std::size_t maxlen = 16;
    std::uint64_t fuel = 512;
    unsigned precision = 32;
    unsigned jobs = 0;
    std::string cache_dir;
    bool no_cache = false;
    std::string format;
    std::string version;

    Budget budget() const {
        Budget b{maxlen, fuel, precision};
        b.validate();
        return b;
    }
};

std::string default_cache_dir() {
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0')
        return (std::filesystem::path(xdg) / "aitlab").string();
    if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0')
        return (std::filesystem::path(home) / ".cache" / "aitlab").string();
    return ".aitlab-cache";
}

Dyadic dyadic_arg(const std::string& name, const std::string& text) {
    try {
        return Dyadic::parse(text);
    } catch (const std::exception&) {
        throw CLI::ValidationError(name, "expected a dyadic literal p/2^q, got '" + text + "'");
    }
}

BitString bits_arg(const std::string& name, const std::string& text) {
    try {
        return BitString::parse(text);
    } catch (const std::exception&) {
        throw CLI::ValidationError(name, "expected a bit string, got '" + text + "'");
    }
}

// "s:p/2^q,s:p/2^q" with "-" for the empty string, or the JSON mirror.
Ensemble ensemble_arg(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '@') {
        std::ifstream in(body.substr(1));
        if (!in) throw std::invalid_argument("cannot read " + body.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    const auto first = body.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && body[first] == '{') return ensemble_from_json(json::parse(body));
    std::vector<Ensemble::Entry> entries;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("ensemble entry needs s:weight, got '" + item + "'");
        entries.emplace_back(BitString::parse(item.substr(0, colon)), Dyadic::parse(item.substr(colon + 1)));
    }
    return Ensemble::make(std::move(entries));
}

json header(const std::string& command, const Budget& b) {
    return json{{"command", command}, {"machine_version", machine_version}, {"budget", b}};
}

json merged(json base, const json& extra) {
    for (const auto& [k, v] : extra.items()) base[k] = v;
    return base;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

template <class T>
T require_defined(const std::optional<T>& v, const std::string& what, const json& body) {
    if (!v) throw Undefined(what + " is undefined within the budget", body);
    return *v;
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
    Outcome result;
    std::ostringstream out;
    std::ostringstream err;

    CLI::App app{"Budgeted algorithmic information quantities on the tinyvm reference machine", "aitlab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file");

    Common common;
    app.add_option("--maxlen", common.maxlen, "program length bound in bits")->capture_default_str();
    app.add_option("--fuel", common.fuel, "step budget")->capture_default_str();
    app.add_option("--precision", common.precision, "interval precision in bits (>= 16)")->capture_default_str();
    app.add_option("--jobs", common.jobs, "worker threads (0 = hardware)")->capture_default_str();
    app.add_option("--cache-dir", common.cache_dir, "table cache directory")->envname("AITLAB_CACHE");
    app.add_flag("--no-cache", common.no_cache, "bypass the table cache");
    app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--machine-version", common.version, "abort unless this matches the built-in machine");

    std::string x_text;
    std::string y_text;
    std::string delta_text = "0";
    std::string Delta_text = "0";
    std::string ens_text;
    std::string bits_text;
    std::string constraint_text = "none";
    std::string family_text;
    std::string condition_text = "chaitin";
    std::uint64_t z = 0;
    std::size_t k = 0;
    std::size_t n = 0;
    std::uint64_t y_num = 0;
    std::size_t N = 12;
    bool omega_machine = false;
    std::string omega_table;
    std::optional<std::size_t> stability_maxlen;
    std::string cache_action;

    auto* c_cmd = app.add_subcommand("c", "plain complexity C(x)");
    c_cmd->add_option("--x", x_text, "bit string")->required();
    auto* k_cmd = app.add_subcommand("k", "prefix complexity K(x)");
    k_cmd->add_option("--x", x_text, "bit string")->required();
    auto* condk_cmd = app.add_subcommand("condk", "conditional complexity K(x|y) with aux y");
    condk_cmd->add_option("--x", x_text)->required();
    condk_cmd->add_option("--y", y_text)->required();
    auto* chaitink_cmd = app.add_subcommand("chaitink", "conditional complexity K_*(x|y) with aux y*");
    chaitink_cmd->add_option("--x", x_text)->required();
    chaitink_cmd->add_option("--y", y_text)->required();
    app.add_subcommand("omega", "Kraft sum over halting prefix programs");
    auto* ens_cmd = app.add_subcommand("ensemble", "serialize or parse an ensemble");
    auto* ens_in = ens_cmd->add_option("--ensemble", ens_text, "s:p/2^q,... or JSON or @file");
    auto* ens_bits = ens_cmd->add_option("--bits", bits_text, "canonical serialization to parse");
    ens_in->excludes(ens_bits);
    auto* typ_cmd = app.add_subcommand("typical", "delta-typicality of x for an ensemble");
    typ_cmd->add_option("--x", x_text)->required();
    typ_cmd->add_option("--ensemble", ens_text)->required();
    typ_cmd->add_option("--delta", delta_text, "dyadic")->capture_default_str();
    auto* sigma_cmd = app.add_subcommand("sigma", "total information K(E) + H(E)");
    sigma_cmd->add_option("--ensemble", ens_text)->required();
    auto* eff_cmd = app.add_subcommand("effcomp", "effective complexity");
    eff_cmd->add_option("--x", x_text)->required();
    eff_cmd->add_option("--delta", delta_text, "dyadic")->capture_default_str();
    eff_cmd->add_option("--Delta", Delta_text, "dyadic")->capture_default_str();
    eff_cmd->add_option("--constraint", constraint_text, "none | fixed-length | fixed-length:N")->capture_default_str();
    eff_cmd->add_option("--stability-maxlen", stability_maxlen, "also solve at this length bound and compare");
    auto* tau_cmd = app.add_subcommand("tau", "outputs of programs of length <= y halting within f(y) steps");
    tau_cmd->add_option("--y", y_num)->required();
    tau_cmd->add_option("--family", family_text, "identity | n2n | tower")->required();
    tau_cmd->add_option("--constraint", constraint_text)->capture_default_str();
    tau_cmd->add_option("--x", x_text, "string whose length fixes a fixed-length constraint");
    auto* depth_cmd = app.add_subcommand("depth", "logical depth");
    depth_cmd->add_option("--x", x_text)->required();
    depth_cmd->add_option("--z", z)->capture_default_str();
    depth_cmd->add_option("--family", family_text, "also report the tau witness for this growth family");
    auto* st_cmd = app.add_subcommand("structure", "structure function H_k(x|n)");
    st_cmd->add_option("--x", x_text)->required();
    st_cmd->add_option("--k", k)->required();
    st_cmd->add_option("--condition", condition_text, "chaitin | plain")->capture_default_str();
    auto* kmss_cmd = app.add_subcommand("kmss", "Kolmogorov minimal sufficient statistic");
    kmss_cmd->add_option("--x", x_text)->required();
    kmss_cmd->add_option("--Delta", Delta_text, "dyadic")->capture_default_str();
    kmss_cmd->add_option("--condition", condition_text, "chaitin | plain")->capture_default_str();
    auto* census_cmd = app.add_subcommand("census", "every quantity for every string of length n");
    census_cmd->add_option("--n", n)->required();
    census_cmd->add_option("--delta", delta_text, "dyadic")->capture_default_str();
    census_cmd->add_option("--Delta", Delta_text, "dyadic")->capture_default_str();
    census_cmd->add_option("--z", z)->capture_default_str();
    auto* app_cmd = app.add_subcommand("appendix", "ensemble with entropy 2 + Omega");
    app_cmd->add_option("--N", N, "blocks")->capture_default_str();
    auto* from_machine = app_cmd->add_flag("--omega-from-machine", omega_machine, "default");
    auto* from_table = app_cmd->add_option("--omega-table", omega_table, "file with one dyadic per line");
    from_machine->excludes(from_table);
    auto* cache_cmd = app.add_subcommand("cache", "inspect the table cache");
    cache_cmd->add_option("action", cache_action, "list | purge | verify")
        ->required()
        ->check(CLI::IsMember({"list", "purge", "verify"}));

    std::vector<std::string> argv_store{"aitlab"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success&) {
        const CLI::App* target = &app;
        for (const CLI::App* sub : app.get_subcommands()) target = sub;
        out << target->help();
        return {exit_ok, out.str(), ""};
    } catch (const CLI::ParseError& e) {
        const CLI::App* target = &app;
        for (const CLI::App* sub : app.get_subcommands()) target = sub;
        err << "error: " << e.what() << "\n\n" << target->help();
        return {exit_usage, "", err.str()};
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();

    try {
        if (!common.version.empty() && common.version != machine_version)
            throw std::invalid_argument("machine version mismatch: requested " + common.version + ", built-in " +
                                        std::string(machine_version));
        const Budget b = common.budget();
        auto& store = TableStore::global();
        store.set_jobs(common.jobs == 0 ? default_jobs() : common.jobs);
        if (common.no_cache)
            store.set_cache_dir(std::nullopt);
        else
            store.set_cache_dir(common.cache_dir.empty() ? default_cache_dir() : common.cache_dir);
        const json head = header(cmd, b);

        if (cmd == "c" || cmd == "k") {
            const BitString x = bits_arg("--x", x_text);
            const MachineKind kind = cmd == "c" ? MachineKind::plain : MachineKind::prefix;
            const char* key = cmd == "c" ? "C" : "K";
            auto t = store.table(kind, {}, b);
            const TableEntry* e = t->find(x);
            json body = merged(head, {{"x", x}, {key, e ? json(e->min_len) : json(nullptr)},
                                      {"witness", e ? json(e->witness) : json(nullptr)}});
            if (!e) throw Undefined(std::string(key) + "(x) is undefined within the budget", body);
            body["min_steps_at_min_len"] = e->min_steps_at_min_len;
            emit(out, body);
        } else if (cmd == "condk" || cmd == "chaitink") {
            const BitString x = bits_arg("--x", x_text);
            const BitString y = bits_arg("--y", y_text);
            json body = merged(head, {{"x", x}, {"y", y}});
            BitString aux = y;
            if (cmd == "chaitink") {
                auto ystar = shortest_program(y, MachineKind::prefix, b);
                body["y_star"] = opt(ystar);
                aux = require_defined(ystar, "y*", body);
            }
            auto t = store.table(MachineKind::prefix, aux, b);
            const TableEntry* e = t->find(x);
            body["K"] = e ? json(e->min_len) : json(nullptr);
            body["witness"] = e ? json(e->witness) : json(nullptr);
            if (!e) throw Undefined("the conditional complexity is undefined within the budget", body);
            emit(out, body);
        } else if (cmd == "omega") {
            const OmegaApprox o = omega_lower(b, store.jobs());
            emit(out, merged(head, {{"omega", o.value}, {"approx", o.value.to_double()}}));
        } else if (cmd == "ensemble") {
            if (!bits_text.empty() || ens_text.empty()) {
                if (bits_text.empty()) throw CLI::RequiredError("--ensemble or --bits");
                const BitString bits = bits_arg("--bits", bits_text);
                auto parsed = parse_ensemble(bits);
                if (const auto* pe = std::get_if<ParseError>(&parsed)) {
                    emit(out, merged(head, {{"bits", bits}, {"error", to_string(pe->kind)}, {"detail", pe->detail}}));
                    result.code = exit_error;
                } else {
                    const Ensemble& e = std::get<Ensemble>(parsed);
                    emit(out, merged(head, {{"bits", bits}, {"ensemble", e}, {"H", entropy(e, b.precision)}}));
                }
            } else {
                const Ensemble e = ensemble_arg(ens_text);
                emit(out, merged(head, {{"ensemble", e},
                                        {"bits", serialize_ensemble(e)},
                                        {"H", entropy(e, b.precision)}}));
            }
        } else if (cmd == "typical") {
            const BitString x = bits_arg("--x", x_text);
            const Ensemble e = ensemble_arg(ens_text);
            const Dyadic delta = dyadic_arg("--delta", delta_text);
            const TypicalDecision d = decide_typical(x, e, delta, b.precision);
            emit(out, merged(head, {{"x", x},
                                    {"delta", delta},
                                    {"weight", e.weight(x)},
                                    {"H", entropy(e, b.precision)},
                                    {"typical", d.typical},
                                    {"ambiguous", d.ambiguous},
                                    {"precision_used", d.precision_used}}));
        } else if (cmd == "sigma") {
            const Ensemble e = ensemble_arg(ens_text);
            const auto K = ensemble_K(e, b);
            const RealInterval H = entropy(e, b.precision);
            json body = merged(head, {{"ensemble", e}, {"K", opt(K)}, {"H", H}, {"Sigma", nullptr}});
            require_defined(K, "K(E)", body);
            body["Sigma"] = RealInterval::point(Dyadic(static_cast<long>(*K))) + H;
            emit(out, body);
        } else if (cmd == "effcomp") {
            const BitString x = bits_arg("--x", x_text);
            const Dyadic delta = dyadic_arg("--delta", delta_text);
            const Dyadic Delta = dyadic_arg("--Delta", Delta_text);
            const ConstraintSet c = parse_constraint(constraint_text, x);
            try {
                const EffectiveResult r = effective_complexity(x, delta, Delta, b, c);
                json body = merged(head, r);
                if (stability_maxlen) {
                    const Budget other{*stability_maxlen, b.max_steps, b.precision};
                    json s = {{"budget", other}, {"value", nullptr}, {"domain_size", 0}};
                    try {
                        const EffectiveResult o = effective_complexity(x, delta, Delta, other, c);
                        s["value"] = opt(o.value);
                        s["domain_size"] = o.domain_size;
                        s["same_value"] = o.value == r.value;
                    } catch (const KxUndefined&) {
                        s["same_value"] = false;
                    }
                    body["stability"] = s;
                }
                emit(out, body);
            } catch (const KxUndefined& e) {
                throw Undefined(e.what(), merged(head, {{"x", x},
                                                        {"delta", delta},
                                                        {"Delta", Delta},
                                                        {"constraint", c.id()},
                                                        {"K_x", nullptr},
                                                        {"value", nullptr},
                                                        {"witness", nullptr},
                                                        {"domain_size", 0}}));
            }
        } else if (cmd == "tau") {
            const GrowthFamily f = parse_growth(family_text);
            const ConstraintSet c = parse_constraint(constraint_text, bits_arg("--x", x_text));
            const TauResult t = tau_set_constrained(y_num, f, b, c);
            emit(out, merged(head, merged(json(t), {{"family", to_string(f)},
                                                    {"constraint", c.id()},
                                                    {"K", opt(t.set.K(b))},
                                                    {"H", t.set.size() ? json(t.set.entropy(b.precision)) : json(nullptr)}})));
        } else if (cmd == "depth") {
            const BitString x = bits_arg("--x", x_text);
            DepthResult d;
            try {
                d = logical_depth(x, z, b);
            } catch (const CxUndefined& e) {
                throw Undefined(e.what(), merged(head, {{"x", x}, {"C", nullptr}, {"depth", nullptr}}));
            }
            json body = merged(head, d);
            if (!family_text.empty()) body["tau"] = depth_edge_report(x, z, parse_growth(family_text), b);
            require_defined(d.value, "depth", body);
            emit(out, body);
        } else if (cmd == "structure") {
            const BitString x = bits_arg("--x", x_text);
            const StructureResult s = structure_function(x, k, b, parse_condition_mode(condition_text));
            json body = merged(head, merged(json(s), {{"condition", condition_text}}));
            require_defined(s.cardinality, "H_k", body);
            emit(out, body);
        } else if (cmd == "kmss") {
            const BitString x = bits_arg("--x", x_text);
            const KmssResult r = kmss(x, dyadic_arg("--Delta", Delta_text), b, parse_condition_mode(condition_text));
            json body = merged(head, merged(json(r), {{"condition", condition_text}}));
            require_defined(r.k_delta, "k_Delta", body);
            emit(out, body);
        } else if (cmd == "census") {
            CensusOptions o;
            o.n = n;
            o.delta = dyadic_arg("--delta", delta_text);
            o.Delta = dyadic_arg("--Delta", Delta_text);
            o.z = z;
            o.budget = b;
            o.jobs = store.jobs();
            const Census c = census(o);
            if (common.format == "json")
                emit(out, merged(head, c));
            else
                out << census_csv(c);
        } else if (cmd == "appendix") {
            const OmegaSequence om =
                omega_table.empty() ? machine_omega(N, store.jobs()) : omega_from_table(omega_table, N);
            const PartialAppendixEnsemble p = build_appendix_ensemble(N, om, b.precision);
            json body = merged(head, p);
            body["omega_budgets"] = om.budgets;
            body["comparison"] = compare_to_two_plus_omega(p);
            emit(out, body);
        } else if (cmd == "cache") {
            if (common.no_cache) throw std::invalid_argument("cache commands need a cache directory");
            const std::filesystem::path dir = *store.cache_dir();
            if (cache_action == "list") {
                emit(out, json{{"command", "cache list"}, {"dir", dir.string()}, {"tables", list_cache(dir)}});
            } else if (cache_action == "purge") {
                emit(out, json{{"command", "cache purge"}, {"dir", dir.string()}, {"removed", purge_cache(dir)}});
            } else {
                const VerifyReport r = verify_cache(dir, store.jobs());
                emit(out, merged(json{{"command", "cache verify"}, {"dir", dir.string()}}, r));
                for (const auto& p : r.problems) err << "mismatch: " << p << '\n';
                if (!r.problems.empty()) result.code = exit_error;
            }
        }
    } catch (const Undefined& u) {
        emit(out, merged(u.body, {{"undefined", u.what()}}));
        err << "undefined: " << u.what() << '\n';
        result.code = exit_undefined;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << sub->help();
        result.code = exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        result.code = exit_error;
    }
    result.out = out.str();
    result.err += err.str();
    return result;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const Outcome o = run(args);
    std::cout << o.out;
    std::cerr << o.err;
    return o.code;
}

}  // namespace aitlab::cli
