#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aitlab/constraints.hpp"
#include "aitlab/ensemble.hpp"

namespace aitlab {

class KxUndefined : public std::runtime_error {
public:
    explicit KxUndefined(const BitString& x)
        : std::runtime_error("K(" + x.display() + ") is undefined within the budget") {}
};

struct CandidateEnsemble {
    Ensemble ensemble;
    std::size_t K = 0;
    BitString program;  // canonical shortest program for the serialization
};

// Every canonical ensemble serialization produced by a halting prefix program
// within the budget, in canonical serialization order.
std::shared_ptr<const std::vector<CandidateEnsemble>> candidate_ensembles(const Budget& b);

struct DomainMember {
    const CandidateEnsemble* candidate = nullptr;
    RealInterval sigma;
    bool typical_ambiguous = false;
};

struct MinimizationDomain {
    std::size_t kx = 0;
    std::vector<DomainMember> members;  // candidate order
    // Candidates whose enclosure of sigma straddled K(x)+Delta after
    // refinement; they are excluded.
    std::size_t borderline_excluded = 0;
    std::size_t ambiguous_typical = 0;
};

// Throws KxUndefined.
MinimizationDomain minimization_domain(const BitString& x, const Dyadic& delta, const Dyadic& Delta, const Budget& b,
                                       const ConstraintSet& c);

struct EffectiveResult {
    BitString x;
    Dyadic delta;
    Dyadic Delta;
    Budget budget;
    std::string constraint;
    std::size_t kx = 0;
    std::optional<std::size_t> value;  // nullopt is Infinite
    std::optional<Ensemble> witness;
    BitString witness_program;
    std::optional<RealInterval> witness_sigma;
    std::size_t domain_size = 0;
    std::size_t borderline_excluded = 0;
    std::size_t ambiguous_typical = 0;
};

// min K(E) over the domain; the witness is the first minimizer in candidate
// order. Throws KxUndefined.
EffectiveResult effective_complexity(const BitString& x, const Dyadic& delta, const Dyadic& Delta, const Budget& b,
                                     const ConstraintSet& c);

enum class GrowthFamily { identity, n_exp, tower };

std::string_view to_string(GrowthFamily f);
GrowthFamily parse_growth(std::string_view text);

// identity: y; n_exp: y 2^y; tower: 2^2^...^2 of height y (1 at y = 0),
// capped at fuel_cap. Returns nullopt when an uncapped family exceeds the cap.
std::optional<std::uint64_t> growth_value(GrowthFamily f, std::uint64_t y, std::uint64_t fuel_cap);

struct TauResult {
    std::uint64_t y = 0;
    std::uint64_t fy = 0;
    UniformSet set;
};

// Outputs of plain programs of length <= y halting within f(y) steps.
// Requires y <= max_len and a defined f(y) <= max_steps.
TauResult tau_set(std::uint64_t y, GrowthFamily f, const Budget& b);
TauResult tau_set_constrained(std::uint64_t y, GrowthFamily f, const Budget& b, const ConstraintSet& c);

struct TauWitness {
    std::size_t size = 0;
    std::optional<std::size_t> K;
    RealInterval H;
    std::optional<RealInterval> sigma;
    bool contains_x = false;
    bool typical = false;
};

struct DepthEdgeReport {
    BitString x;
    std::uint64_t z = 0;
    GrowthFamily family = GrowthFamily::identity;
    Budget budget;
    std::optional<std::size_t> cx;
    std::optional<std::size_t> k_cx;
    std::optional<std::uint64_t> depth;
    std::optional<std::uint64_t> y;
    std::optional<std::uint64_t> fy;
    std::optional<TauWitness> witness;
    std::string note;
};

DepthEdgeReport depth_edge_report(const BitString& x, std::uint64_t z, GrowthFamily f, const Budget& b);

}  // namespace aitlab
