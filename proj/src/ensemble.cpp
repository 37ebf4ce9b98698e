#include "aitlab/ensemble.hpp"

#include <algorithm>
#include <stdexcept>

#include "aitlab/complexity.hpp"
#include "aitlab/constraints.hpp"

namespace aitlab {

namespace {

constexpr std::int64_t kMaxExponent = 65536;

bool sorted_distinct(const std::vector<BitString>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1] < v[i])) return false;
    return true;
}

// exp - log2(num) for a positive dyadic num/2^exp, i.e. -log2 w.
RealInterval neg_log2(const Dyadic& w, unsigned bits) {
    RealInterval l = log2_interval(w.numerator(), bits);
    Dyadic e(static_cast<long>(w.exponent()));
    return {e - l.hi, e - l.lo};
}

}  // namespace

Ensemble Ensemble::make(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Dyadic sum;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && entries[i - 1].first == entries[i].first)
            throw std::invalid_argument("ensemble: duplicate string " + entries[i].first.display());
        const Dyadic& w = entries[i].second;
        if (w.sign() <= 0 || w > Dyadic(1)) throw std::invalid_argument("ensemble: weight outside (0,1]");
        sum += w;
    }
    if (sum != Dyadic(1)) throw std::invalid_argument("ensemble: weights sum to " + sum.to_string() + ", not 1");
    Ensemble e;
    e.entries_ = std::move(entries);
    return e;
}

Dyadic Ensemble::weight(const BitString& x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x, [](const Entry& a, const BitString& b) { return a.first < b; });
    if (it == entries_.end() || it->first != x) return Dyadic();
    return it->second;
}

bool Ensemble::contains(const BitString& x) const { return !weight(x).is_zero(); }

Ensemble dirac(const BitString& x) { return Ensemble::make({{x, Dyadic(1)}}); }

Ensemble uniform(std::vector<BitString> support) {
    const std::size_t m = support.size();
    if (m == 0 || (m & (m - 1)) != 0) throw std::invalid_argument("uniform: support size must be a power of two");
    std::int64_t e = 0;
    while ((std::size_t{1} << e) < m) ++e;
    std::vector<Ensemble::Entry> entries;
    for (auto& s : support) entries.emplace_back(std::move(s), Dyadic::pow2(-e));
    return Ensemble::make(std::move(entries));
}

Ensemble mix(const std::vector<std::pair<Ensemble, Dyadic>>& parts) {
    Dyadic total;
    std::vector<Ensemble::Entry> acc;
    for (const auto& [e, lambda] : parts) {
        if (lambda.sign() <= 0 || lambda > Dyadic(1)) throw std::invalid_argument("mix: coefficient outside (0,1]");
        total += lambda;
        for (const auto& [s, w] : e.entries()) acc.emplace_back(s, w * lambda);
    }
    if (total != Dyadic(1)) throw std::invalid_argument("mix: coefficients must sum to 1");
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Ensemble::Entry> merged;
    for (auto& entry : acc) {
        if (!merged.empty() && merged.back().first == entry.first)
            merged.back().second += entry.second;
        else
            merged.push_back(std::move(entry));
    }
    return Ensemble::make(std::move(merged));
}

BitString serialize_ensemble(const Ensemble& e) {
    BitString out = gamma_encode(static_cast<std::uint64_t>(e.size()));
    for (const auto& [s, w] : e.entries()) {
        out.append(encode_string(s));
        out.append(gamma_encode(static_cast<std::uint64_t>(w.exponent() + 1)));
        out.append(gamma_encode(w.numerator()));
    }
    return out;
}

std::string_view to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::not_canonical: return "NotCanonical";
        case ParseErrorKind::bad_sum: return "BadSum";
        case ParseErrorKind::truncated: return "Truncated";
    }
    return "?";
}

std::variant<Ensemble, ParseError> parse_ensemble(const BitString& bits) {
    auto fail = [](ParseErrorKind k, std::string d) { return ParseError{k, std::move(d)}; };
    BitReader r(bits);
    auto m = r.read_gamma();
    if (!m) return fail(ParseErrorKind::truncated, "entry count");
    std::vector<Ensemble::Entry> entries;
    Dyadic sum;
    for (mpz_class i = 0; i < *m; ++i) {
        auto s = r.read_string();
        if (!s) return fail(ParseErrorKind::truncated, "entry string");
        auto e1 = r.read_gamma();
        if (!e1) return fail(ParseErrorKind::truncated, "weight exponent");
        if (*e1 - 1 > kMaxExponent) return fail(ParseErrorKind::bad_sum, "weight exponent too large");
        auto k = r.read_gamma();
        if (!k) return fail(ParseErrorKind::truncated, "weight numerator");
        const std::int64_t e = e1->get_si() - 1;
        if (!entries.empty() && !(entries.back().first < *s))
            return fail(ParseErrorKind::not_canonical, "strings not strictly increasing");
        if (e > 0 && mpz_even_p(k->get_mpz_t())) return fail(ParseErrorKind::not_canonical, "weight not in lowest terms");
        if (e == 0 && *k != 1) return fail(ParseErrorKind::bad_sum, "weight above 1");
        Dyadic w = Dyadic::from_parts(*k, e);
        if (w > Dyadic(1)) return fail(ParseErrorKind::bad_sum, "weight above 1");
        sum += w;
        if (sum > Dyadic(1)) return fail(ParseErrorKind::bad_sum, "weights exceed 1");
        entries.emplace_back(std::move(*s), std::move(w));
    }
    if (sum != Dyadic(1)) return fail(ParseErrorKind::bad_sum, "weights sum to " + sum.to_string());
    if (!r.at_end()) return fail(ParseErrorKind::not_canonical, "trailing bits");
    return Ensemble::make(std::move(entries));
}

std::optional<Ensemble> try_parse_ensemble(const BitString& bits) {
    auto r = parse_ensemble(bits);
    if (auto* e = std::get_if<Ensemble>(&r)) return std::move(*e);
    return std::nullopt;
}

RealInterval weights_entropy(const std::vector<Dyadic>& weights, unsigned precision) {
    Dyadic irrational_mass;
    for (const Dyadic& w : weights) {
        if (w.sign() <= 0) throw std::invalid_argument("entropy: weights must be positive");
        if (!w.is_power_of_two()) irrational_mass += w;
    }
    // Per-term log widths are scaled by w, so widen the working precision by
    // the bit length of the mass that needs it.
    unsigned bits = precision + 1;
    if (irrational_mass > Dyadic(1)) bits += static_cast<unsigned>(mpz_sizeinbase(irrational_mass.ceil().get_mpz_t(), 2));
    RealInterval h{Dyadic(), Dyadic()};
    for (const Dyadic& w : weights) h = h + neg_log2(w, bits).scaled_by(w);
    return h;
}

RealInterval entropy(const Ensemble& e, unsigned precision) {
    std::vector<Dyadic> w;
    for (const auto& entry : e.entries()) w.push_back(entry.second);
    return weights_entropy(w, precision);
}

TypicalDecision decide_typical(const BitString& x, const Ensemble& e, const Dyadic& delta, unsigned precision) {
    if (delta.sign() < 0) throw std::invalid_argument("typicality: delta must be >= 0");
    const Dyadic w = e.weight(x);
    if (w.is_zero()) return {false, false, precision};
    const Dyadic factor = Dyadic(1) + delta;
    for (unsigned p = precision; p <= 8 * precision; p *= 2) {
        RealInterval lhs = neg_log2(w, p);
        RealInterval rhs = entropy(e, p).scaled_by(factor);
        if (lhs.hi <= rhs.lo) return {true, false, p};
        if (lhs.lo > rhs.hi) return {false, false, p};
    }
    return {true, true, 8 * precision};
}

bool is_typical(const BitString& x, const Ensemble& e, const Dyadic& delta, unsigned precision) {
    return decide_typical(x, e, delta, precision).typical;
}

std::optional<std::size_t> ensemble_K(const Ensemble& e, const Budget& b) { return prefix_K(serialize_ensemble(e), b); }

std::optional<RealInterval> total_information(const Ensemble& e, const Budget& b, unsigned precision) {
    auto k = ensemble_K(e, b);
    if (!k) return std::nullopt;
    return RealInterval::point(Dyadic(static_cast<long>(*k))) + entropy(e, precision);
}

BitString encode_set(const std::vector<BitString>& members) {
    if (!sorted_distinct(members)) throw std::invalid_argument("encode_set: members must be canonical and distinct");
    BitString out = gamma_encode(static_cast<std::uint64_t>(members.size() + 1));
    for (const auto& m : members) out.append(encode_string(m));
    return out;
}

std::optional<std::vector<BitString>> decode_set(const BitString& bits) {
    BitReader r(bits);
    auto m1 = r.read_gamma_u64();
    if (!m1) return std::nullopt;
    const std::uint64_t m = *m1 - 1;
    if (m > bits.size()) return std::nullopt;  // each member needs at least one bit
    std::vector<BitString> out;
    for (std::uint64_t i = 0; i < m; ++i) {
        auto s = r.read_string();
        if (!s) return std::nullopt;
        if (!out.empty() && !(out.back() < *s)) return std::nullopt;
        out.push_back(std::move(*s));
    }
    if (!r.at_end()) return std::nullopt;
    return out;
}

mpq_class Distribution::weight(const BitString& x) const {
    for (const auto& [s, w] : entries)
        if (s == x) return w;
    return 0;
}

Distribution to_distribution(const Ensemble& e) {
    Distribution d;
    for (const auto& [s, w] : e.entries()) d.entries.emplace_back(s, w.to_mpq());
    return d;
}

UniformSet UniformSet::of(std::vector<BitString> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return UniformSet{std::move(members)};
}

bool UniformSet::contains(const BitString& x) const { return std::binary_search(members.begin(), members.end(), x); }

RealInterval log2_count(std::size_t n, unsigned precision) {
    return log2_interval(mpz_class(static_cast<unsigned long>(n)), precision);
}

RealInterval UniformSet::entropy(unsigned precision) const {
    if (members.empty()) throw std::logic_error("uniform set is empty");
    return log2_count(members.size(), precision);
}

Distribution UniformSet::distribution() const {
    Distribution d;
    const mpq_class w(1, static_cast<unsigned long>(members.size()));
    for (const auto& m : members) d.entries.emplace_back(m, w);
    return d;
}

std::optional<Ensemble> UniformSet::as_ensemble() const {
    const std::size_t m = members.size();
    if (m == 0 || (m & (m - 1)) != 0) return std::nullopt;
    return uniform(members);
}

std::optional<std::size_t> UniformSet::K(const Budget& b) const { return prefix_K(encode_set(members), b); }

EnsembleToSet ensemble_to_set(const Ensemble& e, const Dyadic& delta, const Dyadic& eps, const ConstraintSet& c,
                              unsigned precision) {
    if (eps.sign() <= 0) throw std::invalid_argument("ensemble_to_set: epsilon must be > 0");
    if (delta.sign() < 0) throw std::invalid_argument("ensemble_to_set: delta must be >= 0");
    const Dyadic factor = Dyadic(1) + delta;
    const Dyadic half_eps = eps * Dyadic::pow2(-1);
    EnsembleToSet out;
    out.precision_used = precision;
    for (const auto& [y, w] : e.entries()) {
        if (!c.dirac_member(y)) continue;
        for (unsigned p = precision;; p *= 2) {
            RealInterval t = neg_log2(w, p) - entropy(e, p).scaled_by(factor);
            if (t.width() <= half_eps) {
                out.precision_used = std::max(out.precision_used, p);
                if (t.hi <= eps) out.members.push_back(y);
                break;
            }
        }
    }
    return out;
}

}  // namespace aitlab
