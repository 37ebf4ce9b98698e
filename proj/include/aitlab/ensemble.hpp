#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "aitlab/bitstring.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/vm.hpp"

namespace aitlab {

// Finite-support distribution with exact dyadic weights summing to 1, stored
// in canonical string order.
class Ensemble {
public:
    using Entry = std::pair<BitString, Dyadic>;

    // Sorts; throws std::invalid_argument on duplicates, weights outside
    // (0, 1], or a sum other than 1.
    static Ensemble make(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    // Zero outside the support.
    Dyadic weight(const BitString& x) const;
    bool contains(const BitString& x) const;

    friend bool operator==(const Ensemble&, const Ensemble&) = default;

private:
    std::vector<Entry> entries_;
};

Ensemble dirac(const BitString& x);
// Uniform on a set whose size is a power of two; throws otherwise.
Ensemble uniform(std::vector<BitString> support);
// Convex combination; the coefficients must lie in (0, 1] and sum to 1.
Ensemble mix(const std::vector<std::pair<Ensemble, Dyadic>>& parts);

// g(m) then per entry encode_string(x) g(e+1) g(k), weight k/2^e.
BitString serialize_ensemble(const Ensemble& e);

enum class ParseErrorKind { not_canonical, bad_sum, truncated };

struct ParseError {
    ParseErrorKind kind;
    std::string detail;
};

std::string_view to_string(ParseErrorKind k);

// Accepts only canonical encodings: strictly increasing strings, weights in
// lowest terms, no trailing bits. Exponents above 65536 are refused as BadSum.
std::variant<Ensemble, ParseError> parse_ensemble(const BitString& bits);
std::optional<Ensemble> try_parse_ensemble(const BitString& bits);

// -sum w log2 w for positive dyadic weights (any total), enclosed with width
// at most 2^-precision; a point when every weight is a power of two.
RealInterval weights_entropy(const std::vector<Dyadic>& weights, unsigned precision);
// H(E); width at most 2^(2-precision).
RealInterval entropy(const Ensemble& e, unsigned precision);

struct TypicalDecision {
    bool typical = false;
    // The test could not be separated within 8x the starting precision and
    // was decided inclusively.
    bool ambiguous = false;
    unsigned precision_used = 0;
};

// E(x) >= 2^(-H(E)(1+delta)), delta >= 0.
TypicalDecision decide_typical(const BitString& x, const Ensemble& e, const Dyadic& delta, unsigned precision);
bool is_typical(const BitString& x, const Ensemble& e, const Dyadic& delta, unsigned precision);

// prefix_K of the serialization, through the global table store.
std::optional<std::size_t> ensemble_K(const Ensemble& e, const Budget& b);
// K(E) + H(E).
std::optional<RealInterval> total_information(const Ensemble& e, const Budget& b, unsigned precision);

// Set wire format: g(m+1) then the members' encode_string in canonical order.
BitString encode_set(const std::vector<BitString>& members);
// Canonical encodings only: strictly increasing members, no trailing bits.
std::optional<std::vector<BitString>> decode_set(const BitString& bits);

// General finite distribution with rational weights, for ensembles that are
// not dyadic (uniform on a set of size other than a power of two).
struct Distribution {
    std::vector<std::pair<BitString, mpq_class>> entries;  // canonical order

    mpq_class weight(const BitString& x) const;
};

Distribution to_distribution(const Ensemble& e);

// Uniform distribution on a finite set. H = log2 #S exactly, and every member
// is delta-typical with equality at delta = 0.
struct UniformSet {
    std::vector<BitString> members;  // canonical order, distinct

    static UniformSet of(std::vector<BitString> members);
    bool contains(const BitString& x) const;
    std::size_t size() const noexcept { return members.size(); }
    RealInterval entropy(unsigned precision) const;
    Distribution distribution() const;
    // The dyadic ensemble, when #S is a power of two.
    std::optional<Ensemble> as_ensemble() const;
    // prefix_K of encode_set(members): the set determines the distribution.
    std::optional<std::size_t> K(const Budget& b) const;
    bool is_typical(const BitString& x, const Dyadic& delta) const { return contains(x) && delta.sign() >= 0; }
};

// [lo, hi] of log2 of a positive integer count; exact when a power of two.
RealInterval log2_count(std::size_t n, unsigned precision);

struct EnsembleToSet {
    std::vector<BitString> members;
    unsigned precision_used = 0;
};

class ConstraintSet;

// Keeps y in supp(E) with dirac_member(y) iff the enclosure t of
// -log2 E(y) - H(E)(1+delta), refined to width <= eps/2, has t.hi <= eps.
// Every member then meets the 2^(-H(1+delta)-eps) floor and every y meeting
// 2^(-H(1+delta)) is kept.
EnsembleToSet ensemble_to_set(const Ensemble& e, const Dyadic& delta, const Dyadic& eps, const ConstraintSet& c,
                              unsigned precision = 32);

}  // namespace aitlab
