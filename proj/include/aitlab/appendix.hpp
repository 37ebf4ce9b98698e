#pragma once

// A computable ensemble whose entropy is 2 + Omega: block n of the partition
// A_n (strings with exactly n-1 leading zeros) carries weight 2^-n, split so
// that its entropy is n 2^-n + Omega_{n+1} - Omega_n.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "aitlab/ensemble.hpp"

namespace aitlab {

// n with x in A_n: one more than the number of leading zeros.
std::size_t partition_index(const BitString& x);

// The i-th string of A_n in canonical order: 0^(n-1) followed by binary(i),
// with binary(0) = λ.
BitString partition_member(std::size_t n, std::uint64_t i);

struct SplitResult {
    std::vector<Dyadic> parts;  // positive, summing to c exactly
    RealInterval entropy;       // encloses -sum r log2 r
};

// Parts of c whose entropy lies in [s, s + tol] (or the single part c when
// s <= -c log2 c). Uses the fewest equal parts K whose entropy reaches s, then
// bisects on one part a against K-1 equal parts. Parts live on a dyadic grid
// finer than tol. Throws std::invalid_argument when s < -c log2 c - tol or
// when more than 2^20 parts would be needed.
SplitResult split_weight(const Dyadic& c, const Dyadic& s, const Dyadic& tol);

struct OmegaSequence {
    std::vector<Dyadic> values;  // Omega_1 .. Omega_{N+1}
    std::vector<Budget> budgets; // budget behind Omega_{n+1}; empty for tables
    std::string source;
};

// Omega_1 = 0 and Omega_{n+1} = min(omega_lower(budget_n), Omega_n + 2^-n),
// with budget_1 = (3, 10), budget_2 = (5, 32) and then (min(2n+1, 20),
// min(2^(n+3), 512)). The cap keeps each block to at most two parts.
OmegaSequence machine_omega(std::size_t N, unsigned jobs = 1);

// One dyadic literal per line ("p/2^q"); blank lines and '#' comments are
// skipped. Needs at least N+1 values.
OmegaSequence omega_from_table(const std::filesystem::path& path, std::size_t N);

struct AppendixBlock {
    std::size_t n = 0;
    Dyadic mass;    // 2^-n
    Dyadic target;  // n 2^-n + Omega_{n+1} - Omega_n
    Dyadic tol;     // 2^-(n + precision)
    std::vector<BitString> strings;
    std::vector<Dyadic> weights;
    RealInterval entropy;
};

struct PartialAppendixEnsemble {
    std::size_t N = 0;
    unsigned precision = 0;
    std::vector<AppendixBlock> blocks;
    RealInterval partial_entropy;
    OmegaSequence omega;
};

// Throws std::invalid_argument when the sequence is shorter than N+1, does not
// start at 0, or decreases.
PartialAppendixEnsemble build_appendix_ensemble(std::size_t N, const OmegaSequence& omega, unsigned precision);

// The blocks carry 1 - 2^-N in total; the remaining 2^-N goes to 0^N, the
// first string of A_(N+1), giving an exact Ensemble.
Ensemble complete_to_ensemble(const PartialAppendixEnsemble& p);

// partial_entropy against 2 + Omega_{N+1}. The blocks past N carry
// sum_{n>N} n 2^-n = (N+2) 2^-N, so the gap is bounded by that tail plus the
// width of the enclosure.
struct OmegaComparison {
    Dyadic reference;         // 2 + Omega_{N+1}
    RealInterval difference;  // partial_entropy - reference
    Dyadic tail;              // (N+2) 2^-N
    Dyadic bound;             // tail + width(partial_entropy)
    bool within = false;      // |difference| <= bound at both ends
};

OmegaComparison compare_to_two_plus_omega(const PartialAppendixEnsemble& p);

}  // namespace aitlab
