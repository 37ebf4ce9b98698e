#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aitlab/effective.hpp"

namespace aitlab {

class CxUndefined : public std::runtime_error {
public:
    explicit CxUndefined(const BitString& x)
        : std::runtime_error("C(" + x.display() + ") is undefined within the budget") {}
};

struct DepthResult {
    BitString x;
    std::uint64_t z = 0;
    std::size_t cx = 0;
    Budget budget;
    std::optional<std::uint64_t> value;  // nullopt: nothing halts within fuel
    BitString witness;
};

// min T(p) over plain programs with l(p) <= C(x) + z producing x. Throws
// CxUndefined.
DepthResult logical_depth(const BitString& x, std::uint64_t z, const Budget& b);

// How "given n" is supplied to the conditional machine.
enum class ConditionMode {
    chaitin,  // prefix machine, aux = shortest prefix program for g(n)
    plain,    // plain machine, aux = g(n)
};

std::string_view to_string(ConditionMode m);
ConditionMode parse_condition_mode(std::string_view text);

// The aux string for length n >= 1; nullopt when n* is not found within the
// budget.
std::optional<BitString> length_condition(std::size_t n, ConditionMode mode, const Budget& b);

// K(x | n) under the given mode.
std::optional<std::size_t> K_given_length(const BitString& x, ConditionMode mode, const Budget& b);

struct QualifyingSet {
    std::vector<BitString> members;
    std::size_t K = 0;     // conditional on n
    BitString program;     // canonical shortest conditional program
    BitString encoding;    // encode_set(members)
};

// Every nonempty subset of {0,1}^n whose set encoding is output by the
// conditional machine within the budget, in canonical encoding order.
std::shared_ptr<const std::vector<QualifyingSet>> structure_catalog(std::size_t n, ConditionMode mode, const Budget& b);

struct StructureResult {
    BitString x;
    std::size_t k = 0;
    std::optional<std::size_t> cardinality;  // nullopt: Undefined
    std::optional<RealInterval> hk;          // log2 #A_k
    std::vector<BitString> witness_set;
    BitString witness_program;
    std::size_t set_K = 0;
};

// A_k: the smallest qualifying set containing x with K(A|n) <= k, ties to
// the first in canonical encoding order. Throws std::invalid_argument for x = λ.
StructureResult structure_function(const BitString& x, std::size_t k, const Budget& b,
                                   ConditionMode mode = ConditionMode::chaitin);

struct KmssResult {
    BitString x;
    Dyadic Delta;
    std::optional<std::size_t> k_x_given_n;
    std::optional<std::size_t> k_delta;  // nullopt: Undefined
    std::vector<BitString> set;
    BitString program;  // shortest conditional program for the set
    std::optional<RealInterval> hk;
};

// Minimal k with H_k(x|n) + k <= K(x|n) + Delta.
KmssResult kmss(const BitString& x, const Dyadic& Delta, const Budget& b, ConditionMode mode = ConditionMode::chaitin);

// The same quantity as min{K(A|n) : x in A, log2 #A + K(A|n) <= K(x|n) + Delta}.
std::optional<std::size_t> kmss_by_sets(const BitString& x, const Dyadic& Delta, const Budget& b,
                                        ConditionMode mode = ConditionMode::chaitin);

// r(x) = max(0, l(x) + K(l(x)) - K(x))
std::optional<std::size_t> incompressibility(const BitString& x, const Budget& b);
// m(x) = max(0, l(x) - C(x))
std::optional<std::size_t> randomness_deficiency(const BitString& x, const Budget& b);
// max(0, C(x) + K(C(x)) - K(x))
std::optional<std::size_t> well_behaved_slack(const BitString& x, const Budget& b);

struct CensusRow {
    BitString x;
    std::optional<std::size_t> cx;
    std::optional<std::size_t> kx;
    std::optional<std::size_t> r;
    std::optional<std::size_t> m;
    std::optional<std::size_t> wb;
    std::optional<EffectiveResult> eff;  // nullopt when K(x) is undefined
    std::optional<DepthResult> depth;    // nullopt when C(x) is undefined
};

struct CensusOptions {
    std::size_t n = 0;
    Dyadic delta;
    Dyadic Delta;
    std::uint64_t z = 0;
    Budget budget;
    unsigned jobs = 1;
};

struct Census {
    CensusOptions options;
    std::vector<CensusRow> rows;  // canonical order of x
    // Rows attaining the largest finite effective complexity.
    std::vector<std::size_t> argmax_eff;
};

Census census(const CensusOptions& opts);

inline constexpr std::string_view census_csv_header =
    "x,n,C,K,r,m,wb,eff,eff_domain,depth,depth_witness";

// One line per row after the fixed header; "undef" marks budget shortfall
// and "inf" an empty minimization domain.
std::string census_csv(const Census& c);

}  // namespace aitlab
