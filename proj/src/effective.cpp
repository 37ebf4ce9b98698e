#include "aitlab/effective.hpp"

#include <algorithm>
#include <limits>

#include "aitlab/complexity.hpp"
#include "aitlab/depth.hpp"

namespace aitlab {

std::shared_ptr<const std::vector<CandidateEnsemble>> candidate_ensembles(const Budget& b) {
    return TableStore::global().memo<std::vector<CandidateEnsemble>>("candidates|" + budget_key(b), [&]() {
        auto table = TableStore::global().table(MachineKind::prefix, {}, b);
        std::vector<CandidateEnsemble> out;
        for (const auto& [bits, entry] : table->entries) {
            if (auto e = try_parse_ensemble(bits)) out.push_back({std::move(*e), entry.min_len, entry.witness});
        }
        return out;
    });
}

namespace {

enum class SigmaCheck { within, above, borderline };

// sigma.hi <= bound, refining the entropy up to 8x the starting precision.
SigmaCheck sigma_within(const CandidateEnsemble& c, const Dyadic& bound, unsigned precision, RealInterval& sigma) {
    const Dyadic k(static_cast<long>(c.K));
    for (unsigned p = precision; p <= 8 * precision; p *= 2) {
        sigma = RealInterval::point(k) + entropy(c.ensemble, p);
        if (sigma.hi <= bound) return SigmaCheck::within;
        if (sigma.lo > bound) return SigmaCheck::above;
    }
    return SigmaCheck::borderline;
}

}  // namespace

MinimizationDomain minimization_domain(const BitString& x, const Dyadic& delta, const Dyadic& Delta, const Budget& b,
                                       const ConstraintSet& c) {
    if (delta.sign() < 0 || Delta.sign() < 0) throw std::invalid_argument("delta and Delta must be >= 0");
    auto kx = prefix_K(x, b);
    if (!kx) throw KxUndefined(x);
    MinimizationDomain dom;
    dom.kx = *kx;
    const Dyadic bound = Dyadic(static_cast<long>(*kx)) + Delta;
    for (const CandidateEnsemble& cand : *candidate_ensembles(b)) {
        // Sigma >= K(E) >= 3 rules out most candidates before any logarithm.
        if (Dyadic(static_cast<long>(cand.K)) > bound) continue;
        if (!cand.ensemble.contains(x)) continue;
        if (!c.ensemble_member(cand.ensemble)) continue;
        TypicalDecision t = decide_typical(x, cand.ensemble, delta, b.precision);
        if (!t.typical) continue;
        RealInterval sigma;
        SigmaCheck s = sigma_within(cand, bound, b.precision, sigma);
        if (s == SigmaCheck::borderline) ++dom.borderline_excluded;
        if (s != SigmaCheck::within) continue;
        if (t.ambiguous) ++dom.ambiguous_typical;
        dom.members.push_back({&cand, sigma, t.ambiguous});
    }
    return dom;
}

EffectiveResult effective_complexity(const BitString& x, const Dyadic& delta, const Dyadic& Delta, const Budget& b,
                                     const ConstraintSet& c) {
    MinimizationDomain dom = minimization_domain(x, delta, Delta, b, c);
    EffectiveResult r;
    r.x = x;
    r.delta = delta;
    r.Delta = Delta;
    r.budget = b;
    r.constraint = c.id();
    r.kx = dom.kx;
    r.domain_size = dom.members.size();
    r.borderline_excluded = dom.borderline_excluded;
    r.ambiguous_typical = dom.ambiguous_typical;
    const DomainMember* best = nullptr;
    for (const DomainMember& m : dom.members)
        if (best == nullptr || m.candidate->K < best->candidate->K) best = &m;
    if (best != nullptr) {
        r.value = best->candidate->K;
        r.witness = best->candidate->ensemble;
        r.witness_program = best->candidate->program;
        r.witness_sigma = best->sigma;
    }
    return r;
}

std::string_view to_string(GrowthFamily f) {
    switch (f) {
        case GrowthFamily::identity: return "identity";
        case GrowthFamily::n_exp: return "n2n";
        case GrowthFamily::tower: return "tower";
    }
    return "?";
}

GrowthFamily parse_growth(std::string_view text) {
    if (text == "identity" || text == "id") return GrowthFamily::identity;
    if (text == "n2n" || text == "n*2^n") return GrowthFamily::n_exp;
    if (text == "tower") return GrowthFamily::tower;
    throw std::invalid_argument("growth family must be identity, n2n or tower");
}

std::optional<std::uint64_t> growth_value(GrowthFamily f, std::uint64_t y, std::uint64_t fuel_cap) {
    switch (f) {
        case GrowthFamily::identity:
            if (y > fuel_cap) return std::nullopt;
            return y;
        case GrowthFamily::n_exp: {
            if (y >= 58) return std::nullopt;
            const std::uint64_t v = y << y;
            if (v > fuel_cap) return std::nullopt;
            return v;
        }
        case GrowthFamily::tower: {
            std::uint64_t v = 1;
            for (std::uint64_t i = 0; i < y; ++i) {
                if (v >= 63 || (std::uint64_t{1} << v) > fuel_cap) return fuel_cap;
                v = std::uint64_t{1} << v;
            }
            return std::min(v, fuel_cap);
        }
    }
    return std::nullopt;
}

namespace {

std::uint64_t tau_fuel(std::uint64_t y, GrowthFamily f, const Budget& b) {
    if (y > b.max_len) throw std::invalid_argument("tau: y exceeds the program length budget");
    auto fy = growth_value(f, y, b.max_steps);
    if (!fy) throw std::invalid_argument("tau: f(y) exceeds the fuel budget");
    return *fy;
}

}  // namespace

TauResult tau_set(std::uint64_t y, GrowthFamily f, const Budget& b) {
    const std::uint64_t fy = tau_fuel(y, f, b);
    auto table = TableStore::global().table(MachineKind::plain, {}, Budget{static_cast<std::size_t>(y), fy, b.precision});
    std::vector<BitString> members;
    members.reserve(table->entries.size());
    for (const auto& kv : table->entries) members.push_back(kv.first);
    return {y, fy, UniformSet{std::move(members)}};
}

TauResult tau_set_constrained(std::uint64_t y, GrowthFamily f, const Budget& b, const ConstraintSet& c) {
    TauResult t = tau_set(y, f, b);
    std::vector<BitString> kept;
    for (auto& m : t.set.members)
        if (c.dirac_member(m)) kept.push_back(std::move(m));
    t.set.members = std::move(kept);
    return t;
}

DepthEdgeReport depth_edge_report(const BitString& x, std::uint64_t z, GrowthFamily f, const Budget& b) {
    DepthEdgeReport r;
    r.x = x;
    r.z = z;
    r.family = f;
    r.budget = b;
    r.cx = plain_C(x, b);
    if (!r.cx) {
        r.note = "C(x) undefined within budget";
        return r;
    }
    r.k_cx = integer_K(*r.cx, b);
    DepthResult d = logical_depth(x, z, b);
    r.depth = d.value;
    r.y = *r.cx + z;
    if (*r.y > b.max_len) {
        r.note = "C(x)+z exceeds the program length budget";
        return r;
    }
    r.fy = growth_value(f, *r.y, b.max_steps);
    if (!r.fy) {
        r.note = "f(C(x)+z) exceeds the fuel budget";
        return r;
    }
    if (!d.value || *d.value > *r.fy) {
        r.note = "no witness via tau";
        return r;
    }
    TauResult tau = tau_set(*r.y, f, b);
    TauWitness w;
    w.size = tau.set.size();
    w.K = tau.set.K(b);
    w.H = tau.set.entropy(b.precision);
    if (w.K) w.sigma = RealInterval::point(Dyadic(static_cast<long>(*w.K))) + w.H;
    w.contains_x = tau.set.contains(x);
    w.typical = tau.set.is_typical(x, Dyadic());
    r.witness = std::move(w);
    r.note = "witness via tau";
    return r;
}

}  // namespace aitlab
