#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "aitlab/ensemble.hpp"

namespace aitlab {

// A decidable set of ensembles together with its decision procedure for
// Dirac measures. The two predicates must agree on dirac(x).
class ConstraintSet {
public:
    using EnsemblePredicate = std::function<bool(const Distribution&)>;
    using DiracPredicate = std::function<bool(const BitString&)>;

    ConstraintSet(std::string id, BitString identifier, EnsemblePredicate ensemble_member, DiracPredicate dirac_member,
                  bool declared_convex);

    const std::string& id() const noexcept { return id_; }
    // Canonical serialized identifier, used only to measure K(C).
    const BitString& identifier() const noexcept { return identifier_; }
    bool declared_convex() const noexcept { return convex_; }

    bool ensemble_member(const Distribution& d) const { return ensemble_(d); }
    bool ensemble_member(const Ensemble& e) const { return ensemble_(to_distribution(e)); }
    bool dirac_member(const BitString& x) const { return dirac_(x); }

private:
    std::string id_;
    BitString identifier_;
    EnsemblePredicate ensemble_;
    DiracPredicate dirac_;
    bool convex_;
};

ConstraintSet unconstrained();
// Every support string has length n.
ConstraintSet fixed_length(std::size_t n);

using Observable = std::function<Dyadic(const BitString&)>;

mpq_class expectation(const Distribution& d, const Observable& f);

// Ensembles whose interval I(E) = [<f>_E - w, <f>_E + w] contains f(x).
// half_width = 0 gives the point interval {<f>_E}.
ConstraintSet observable_interval(std::string name, Observable f, const Dyadic& half_width, const BitString& x);

// Indicator of strings of length n.
Observable length_indicator(std::size_t n);

// Budgeted prefix K of identifier(); reported only.
std::optional<std::size_t> description_complexity(const ConstraintSet& c, const Budget& b);

// "none", "fixed-length" (length of x) or "fixed-length:N".
ConstraintSet parse_constraint(std::string_view spec, const BitString& x);

}  // namespace aitlab
