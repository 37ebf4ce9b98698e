#include "aitlab/constraints.hpp"

#include <stdexcept>

#include "aitlab/complexity.hpp"

namespace aitlab {

ConstraintSet::ConstraintSet(std::string id, BitString identifier, EnsemblePredicate ensemble_member,
                             DiracPredicate dirac_member, bool declared_convex)
    : id_(std::move(id)),
      identifier_(std::move(identifier)),
      ensemble_(std::move(ensemble_member)),
      dirac_(std::move(dirac_member)),
      convex_(declared_convex) {}

ConstraintSet unconstrained() {
    return ConstraintSet(
        "unconstrained", gamma_encode(1), [](const Distribution&) { return true; }, [](const BitString&) { return true; },
        true);
}

ConstraintSet fixed_length(std::size_t n) {
    return ConstraintSet(
        "fixed-length:" + std::to_string(n), gamma_encode(2) + gamma_encode(static_cast<std::uint64_t>(n + 1)),
        [n](const Distribution& d) {
            for (const auto& [s, w] : d.entries)
                if (s.size() != n && w != 0) return false;
            return true;
        },
        [n](const BitString& x) { return x.size() == n; }, true);
}

mpq_class expectation(const Distribution& d, const Observable& f) {
    mpq_class sum = 0;
    for (const auto& [s, w] : d.entries) sum += w * f(s).to_mpq();
    return sum;
}

ConstraintSet observable_interval(std::string name, Observable f, const Dyadic& half_width, const BitString& x) {
    if (half_width.sign() < 0) throw std::invalid_argument("observable interval: half width must be >= 0");
    const mpq_class target = f(x).to_mpq();
    const mpq_class w = half_width.to_mpq();
    BitString ident = gamma_encode(3) + encode_string(x) + encode_string(ascii_bits(name + ":" + half_width.to_string()));
    auto inside = [target, w](const mpq_class& mean) { return abs(mean - target) <= w; };
    return ConstraintSet(
        "observable:" + name + ":" + x.str() + ":" + half_width.to_string(), std::move(ident),
        [f, inside](const Distribution& d) { return inside(expectation(d, f)); },
        [f, inside](const BitString& y) { return inside(f(y).to_mpq()); }, true);
}

Observable length_indicator(std::size_t n) {
    return [n](const BitString& s) { return Dyadic(s.size() == n ? 1 : 0); };
}

std::optional<std::size_t> description_complexity(const ConstraintSet& c, const Budget& b) {
    return prefix_K(c.identifier(), b);
}

ConstraintSet parse_constraint(std::string_view spec, const BitString& x) {
    if (spec.empty() || spec == "none" || spec == "unconstrained") return unconstrained();
    if (spec == "fixed-length") return fixed_length(x.size());
    constexpr std::string_view prefix = "fixed-length:";
    if (spec.substr(0, prefix.size()) == prefix) {
        std::size_t n = 0;
        std::string_view digits = spec.substr(prefix.size());
        if (digits.empty()) throw std::invalid_argument("fixed-length needs a length");
        for (char c : digits) {
            if (c < '0' || c > '9') throw std::invalid_argument("bad length in constraint");
            n = n * 10 + static_cast<std::size_t>(c - '0');
        }
        return fixed_length(n);
    }
    throw std::invalid_argument("unknown constraint '" + std::string(spec) + "'");
}

}  // namespace aitlab
