#include "aitlab/json_io.hpp"

namespace aitlab {

void to_json(json& j, const BitString& b) { j = b.str(); }

void to_json(json& j, const Dyadic& d) { j = d.to_string(); }

void to_json(json& j, const RealInterval& r) {
    j = json{{"lo", r.lo}, {"hi", r.hi}, {"approx", ((r.lo + r.hi) * Dyadic::pow2(-1)).to_double()}};
}

void to_json(json& j, const Budget& b) {
    j = json{{"max_len", b.max_len}, {"max_steps", b.max_steps}, {"precision", b.precision}};
}

void to_json(json& j, const MachineResult& r) {
    j = json{{"status", to_string(r.status)}, {"output", r.output}, {"steps", r.steps}, {"consumed", r.consumed}};
}

void to_json(json& j, const Ensemble& e) {
    json entries = json::array();
    for (const auto& [s, w] : e.entries()) {
        // Weights are at most 1, so the exponent is never negative.
        json num = w.numerator().fits_ulong_p() ? json(w.numerator().get_ui()) : json(w.numerator().get_str());
        entries.push_back({{"s", s}, {"num", std::move(num)}, {"exp", w.exponent()}});
    }
    j = json{{"entries", std::move(entries)}};
}

Ensemble ensemble_from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw std::invalid_argument("ensemble JSON needs an \"entries\" array");
    std::vector<Ensemble::Entry> entries;
    for (const auto& e : j["entries"]) {
        const std::string num = e.at("num").is_string() ? e.at("num").get<std::string>() : e.at("num").dump();
        entries.emplace_back(BitString::parse(e.at("s").get<std::string>()),
                             Dyadic::from_parts(mpz_class(num), e.at("exp").get<std::int64_t>()));
    }
    return Ensemble::make(std::move(entries));
}

void to_json(json& j, const UniformSet& s) {
    j = json{{"size", s.size()}, {"members", s.members}};
}

void to_json(json& j, const EffectiveResult& r) {
    j = json{{"x", r.x},
             {"delta", r.delta},
             {"Delta", r.Delta},
             {"budget", r.budget},
             {"constraint", r.constraint},
             {"K_x", r.kx},
             {"value", r.value ? json(*r.value) : json("Infinite")},
             {"witness", opt(r.witness)},
             {"witness_program", r.value ? json(r.witness_program) : json(nullptr)},
             {"witness_sigma", opt(r.witness_sigma)},
             {"domain_size", r.domain_size},
             {"borderline_excluded", r.borderline_excluded},
             {"ambiguous_typical", r.ambiguous_typical}};
}

void to_json(json& j, const TauResult& t) {
    j = json{{"y", t.y}, {"f_y", t.fy}, {"set", t.set}};
}

void to_json(json& j, const TauWitness& w) {
    j = json{{"size", w.size}, {"K", opt(w.K)},           {"H", w.H},
             {"sigma", opt(w.sigma)}, {"contains_x", w.contains_x}, {"typical", w.typical}};
}

void to_json(json& j, const DepthEdgeReport& r) {
    j = json{{"x", r.x},         {"z", r.z},         {"family", to_string(r.family)}, {"budget", r.budget},
             {"C", opt(r.cx)},   {"K_C", opt(r.k_cx)}, {"depth", opt(r.depth)},       {"y", opt(r.y)},
             {"f_y", opt(r.fy)}, {"witness", opt(r.witness)}, {"note", r.note}};
}

void to_json(json& j, const DepthResult& r) {
    j = json{{"x", r.x},
             {"z", r.z},
             {"C", r.cx},
             {"budget", r.budget},
             {"depth", opt(r.value)},
             {"witness", r.value ? json(r.witness) : json(nullptr)}};
}

void to_json(json& j, const StructureResult& r) {
    j = json{{"x", r.x},
             {"k", r.k},
             {"cardinality", opt(r.cardinality)},
             {"H_k", opt(r.hk)},
             {"set", r.witness_set},
             {"set_K", r.cardinality ? json(r.set_K) : json(nullptr)},
             {"program", r.cardinality ? json(r.witness_program) : json(nullptr)}};
}

void to_json(json& j, const KmssResult& r) {
    j = json{{"x", r.x},
             {"Delta", r.Delta},
             {"K_x_given_n", opt(r.k_x_given_n)},
             {"k_Delta", opt(r.k_delta)},
             {"set", r.set},
             {"program", r.k_delta ? json(r.program) : json(nullptr)},
             {"H_k", opt(r.hk)}};
}

void to_json(json& j, const CensusRow& r) {
    json eff = nullptr;
    if (r.eff) eff = r.eff->value ? json(*r.eff->value) : json("Infinite");
    j = json{{"x", r.x},
             {"n", r.x.size()},
             {"C", opt(r.cx)},
             {"K", opt(r.kx)},
             {"r", opt(r.r)},
             {"m", opt(r.m)},
             {"wb", opt(r.wb)},
             {"eff", eff},
             {"eff_domain", r.eff ? json(r.eff->domain_size) : json(nullptr)},
             {"depth", r.depth ? opt(r.depth->value) : json(nullptr)},
             {"depth_witness", r.depth && r.depth->value ? json(r.depth->witness) : json(nullptr)}};
}

void to_json(json& j, const Census& c) {
    json argmax = json::array();
    for (std::size_t i : c.argmax_eff) argmax.push_back(c.rows[i].x);
    j = json{{"n", c.options.n},       {"delta", c.options.delta}, {"Delta", c.options.Delta},
             {"z", c.options.z},       {"budget", c.options.budget}, {"rows", c.rows},
             {"argmax_eff", std::move(argmax)}};
}

void to_json(json& j, const AppendixBlock& b) {
    json parts = json::array();
    for (std::size_t i = 0; i < b.weights.size(); ++i) parts.push_back({{"s", b.strings[i]}, {"w", b.weights[i]}});
    j = json{{"n", b.n},     {"mass", b.mass},       {"target", b.target}, {"tol", b.tol},
             {"parts", b.weights.size()}, {"entropy", b.entropy}, {"weights", std::move(parts)}};
}

void to_json(json& j, const PartialAppendixEnsemble& p) {
    j = json{{"N", p.N},
             {"precision", p.precision},
             {"omega_source", p.omega.source},
             {"omega", p.omega.values},
             {"blocks", p.blocks},
             {"partial_entropy", p.partial_entropy}};
}

void to_json(json& j, const OmegaComparison& c) {
    j = json{{"two_plus_omega", c.reference}, {"difference", c.difference}, {"tail", c.tail},
             {"bound", c.bound},              {"within", c.within}};
}

void to_json(json& j, const ChainRuleRow& r) {
    j = json{{"x", r.x},        {"y", r.y},          {"K_xy", opt(r.k_pair)},
             {"K_y", opt(r.k_y)}, {"K_x_given_ystar", opt(r.k_x_given_y)}, {"gap", opt(r.gap)}};
}

void to_json(json& j, const KmssGapRow& r) {
    j = json{{"x", r.x},
             {"delta", r.delta},
             {"Delta", r.Delta},
             {"eff", opt(r.eff)},
             {"k_Delta", opt(r.k_delta)},
             {"l_kstar", opt(r.set_K)},
             {"K_n", opt(r.k_n)},
             {"gap_lkstar_minus_eff", opt(r.upper_left)},
             {"gap_kDelta_plus_Kn_minus_lkstar", opt(r.upper_right)},
             {"Delta_prime", opt(r.Delta_prime)},
             {"k_Delta_prime", opt(r.k_delta_prime)},
             {"K_delta", opt(r.k_of_delta)},
             {"gap_eff_plus_Kdelta_minus_kDeltaprime", opt(r.lower)}};
}

void to_json(json& j, const CacheListing& l) {
    j = json{{"file", l.path.filename().string()}, {"kind", to_string(l.kind)}, {"aux", l.aux},
             {"budget", l.budget},                  {"entries", l.entries},      {"bytes", l.bytes}};
}

void to_json(json& j, const VerifyReport& r) {
    j = json{{"files", r.files}, {"sampled_entries", r.sampled_entries}, {"problems", r.problems}};
}

}  // namespace aitlab
