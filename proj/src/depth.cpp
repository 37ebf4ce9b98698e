#include "aitlab/depth.hpp"

#include <algorithm>
#include <sstream>

#include "aitlab/complexity.hpp"
#include "aitlab/parallel.hpp"

namespace aitlab {

DepthResult logical_depth(const BitString& x, std::uint64_t z, const Budget& b) {
    auto cx = plain_C(x, b);
    if (!cx) throw CxUndefined(x);
    DepthResult r{x, z, *cx, b, std::nullopt, {}};
    auto profile = TableStore::global().profile(MachineKind::plain, b);
    if (const TimeProfile* p = profile->find(x)) {
        if (const ProfilePoint* pt = p->at(static_cast<std::size_t>(*cx + z))) {
            r.value = pt->steps;
            r.witness = pt->witness;
        }
    }
    return r;
}

std::string_view to_string(ConditionMode m) { return m == ConditionMode::chaitin ? "chaitin" : "plain"; }

ConditionMode parse_condition_mode(std::string_view text) {
    if (text == "chaitin") return ConditionMode::chaitin;
    if (text == "plain") return ConditionMode::plain;
    throw std::invalid_argument("condition mode must be chaitin or plain");
}

std::optional<BitString> length_condition(std::size_t n, ConditionMode mode, const Budget& b) {
    if (n == 0) throw std::invalid_argument("conditioning on length needs n >= 1");
    const BitString gn = gamma_encode(static_cast<std::uint64_t>(n));
    if (mode == ConditionMode::plain) return gn;
    return shortest_program(gn, MachineKind::prefix, b);
}

namespace {

MachineKind conditional_kind(ConditionMode mode) {
    return mode == ConditionMode::chaitin ? MachineKind::prefix : MachineKind::plain;
}

}  // namespace

std::optional<std::size_t> K_given_length(const BitString& x, ConditionMode mode, const Budget& b) {
    auto aux = length_condition(x.size(), mode, b);
    if (!aux) return std::nullopt;
    auto t = TableStore::global().table(conditional_kind(mode), *aux, b);
    const TableEntry* e = t->find(x);
    if (e == nullptr) return std::nullopt;
    return e->min_len;
}

std::shared_ptr<const std::vector<QualifyingSet>> structure_catalog(std::size_t n, ConditionMode mode, const Budget& b) {
    const std::string key = "catalog|" + std::to_string(n) + "|" + std::string(to_string(mode)) + "|" + budget_key(b);
    return TableStore::global().memo<std::vector<QualifyingSet>>(key, [&]() {
        std::vector<QualifyingSet> out;
        auto aux = length_condition(n, mode, b);
        if (!aux) return out;
        auto t = TableStore::global().table(conditional_kind(mode), *aux, b);
        for (const auto& [bits, e] : t->entries) {
            auto members = decode_set(bits);
            if (!members || members->empty()) continue;
            if (!std::all_of(members->begin(), members->end(), [n](const BitString& s) { return s.size() == n; })) continue;
            out.push_back({std::move(*members), e.min_len, e.witness, bits});
        }
        return out;
    });
}

namespace {

bool has_member(const QualifyingSet& s, const BitString& x) {
    return std::binary_search(s.members.begin(), s.members.end(), x);
}

// Smallest set containing x with K <= k; first in catalog order on ties.
const QualifyingSet* best_set(const std::vector<QualifyingSet>& catalog, const BitString& x, std::size_t k) {
    const QualifyingSet* best = nullptr;
    for (const auto& s : catalog) {
        if (s.K > k || !has_member(s, x)) continue;
        if (best == nullptr || s.members.size() < best->members.size()) best = &s;
    }
    return best;
}

}  // namespace

StructureResult structure_function(const BitString& x, std::size_t k, const Budget& b, ConditionMode mode) {
    if (x.empty()) throw std::invalid_argument("structure function needs l(x) >= 1");
    StructureResult r;
    r.x = x;
    r.k = k;
    auto catalog = structure_catalog(x.size(), mode, b);
    if (const QualifyingSet* s = best_set(*catalog, x, k)) {
        r.cardinality = s->members.size();
        r.hk = log2_count(s->members.size(), b.precision);
        r.witness_set = s->members;
        r.witness_program = s->program;
        r.set_K = s->K;
    }
    return r;
}

KmssResult kmss(const BitString& x, const Dyadic& Delta, const Budget& b, ConditionMode mode) {
    if (x.empty()) throw std::invalid_argument("kmss needs l(x) >= 1");
    if (Delta.sign() < 0) throw std::invalid_argument("Delta must be >= 0");
    KmssResult r;
    r.x = x;
    r.Delta = Delta;
    r.k_x_given_n = K_given_length(x, mode, b);
    if (!r.k_x_given_n) return r;
    auto catalog = structure_catalog(x.size(), mode, b);
    std::vector<std::size_t> ks;
    for (const auto& s : *catalog)
        if (has_member(s, x)) ks.push_back(s.K);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    // H_k only changes at these k, and H_k + k grows between them, so the
    // minimal k is one of them.
    const Dyadic rhs = Dyadic(static_cast<long>(*r.k_x_given_n)) + Delta;
    for (std::size_t k : ks) {
        const QualifyingSet* s = best_set(*catalog, x, k);
        const Dyadic slack = rhs - Dyadic(static_cast<long>(k));
        if (slack.sign() < 0) break;
        if (!log2_at_most(mpz_class(static_cast<unsigned long>(s->members.size())), slack)) continue;
        r.k_delta = k;
        r.set = s->members;
        r.program = s->program;
        r.hk = log2_count(s->members.size(), b.precision);
        break;
    }
    return r;
}

std::optional<std::size_t> kmss_by_sets(const BitString& x, const Dyadic& Delta, const Budget& b, ConditionMode mode) {
    auto kxn = K_given_length(x, mode, b);
    if (!kxn) return std::nullopt;
    const Dyadic rhs = Dyadic(static_cast<long>(*kxn)) + Delta;
    std::optional<std::size_t> best;
    for (const auto& s : *structure_catalog(x.size(), mode, b)) {
        if (!has_member(s, x)) continue;
        const Dyadic slack = rhs - Dyadic(static_cast<long>(s.K));
        if (slack.sign() < 0) continue;
        if (!log2_at_most(mpz_class(static_cast<unsigned long>(s.members.size())), slack)) continue;
        if (!best || s.K < *best) best = s.K;
    }
    return best;
}

namespace {

std::size_t clip(long long v) { return v < 0 ? 0 : static_cast<std::size_t>(v); }

}  // namespace

std::optional<std::size_t> incompressibility(const BitString& x, const Budget& b) {
    auto kx = prefix_K(x, b);
    auto kl = integer_K(x.size(), b);
    if (!kx || !kl) return std::nullopt;
    return clip(static_cast<long long>(x.size() + *kl) - static_cast<long long>(*kx));
}

std::optional<std::size_t> randomness_deficiency(const BitString& x, const Budget& b) {
    auto cx = plain_C(x, b);
    if (!cx) return std::nullopt;
    return clip(static_cast<long long>(x.size()) - static_cast<long long>(*cx));
}

std::optional<std::size_t> well_behaved_slack(const BitString& x, const Budget& b) {
    auto cx = plain_C(x, b);
    auto kx = prefix_K(x, b);
    if (!cx || !kx) return std::nullopt;
    auto kc = integer_K(*cx, b);
    if (!kc) return std::nullopt;
    return clip(static_cast<long long>(*cx + *kc) - static_cast<long long>(*kx));
}

Census census(const CensusOptions& opts) {
    Census c;
    c.options = opts;
    const std::vector<BitString> xs = all_strings(opts.n);
    c.rows.resize(xs.size());
    const Budget& b = opts.budget;
    // Shared tables first, so the rows only read them.
    TableStore::global().table(MachineKind::prefix, {}, b);
    TableStore::global().table(MachineKind::plain, {}, b);
    TableStore::global().profile(MachineKind::plain, b);
    candidate_ensembles(b);
    const ConstraintSet none = unconstrained();
    parallel_for(xs.size(), opts.jobs, [&](std::size_t i) {
        CensusRow& row = c.rows[i];
        row.x = xs[i];
        row.cx = plain_C(row.x, b);
        row.kx = prefix_K(row.x, b);
        row.r = incompressibility(row.x, b);
        row.m = randomness_deficiency(row.x, b);
        row.wb = well_behaved_slack(row.x, b);
        if (row.kx) row.eff = effective_complexity(row.x, opts.delta, opts.Delta, b, none);
        if (row.cx) row.depth = logical_depth(row.x, opts.z, b);
    });
    std::optional<std::size_t> top;
    for (const auto& row : c.rows)
        if (row.eff && row.eff->value && (!top || *row.eff->value > *top)) top = *row.eff->value;
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        const auto& row = c.rows[i];
        if (top && row.eff && row.eff->value && *row.eff->value == *top) c.argmax_eff.push_back(i);
    }
    return c;
}

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string("undef");
}

}  // namespace

std::string census_csv(const Census& c) {
    std::ostringstream out;
    out << census_csv_header << '\n';
    for (const auto& row : c.rows) {
        out << row.x.display() << ',' << row.x.size() << ',' << cell(row.cx) << ',' << cell(row.kx) << ','
            << cell(row.r) << ',' << cell(row.m) << ',' << cell(row.wb) << ',';
        if (!row.eff)
            out << "undef,undef,";
        else
            out << (row.eff->value ? std::to_string(*row.eff->value) : std::string("inf")) << ','
                << row.eff->domain_size << ',';
        if (!row.depth || !row.depth->value)
            out << "undef,undef";
        else
            out << *row.depth->value << ',' << row.depth->witness.display();
        out << '\n';
    }
    return out.str();
}

}  // namespace aitlab
