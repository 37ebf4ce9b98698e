#pragma once

// Measured (never asserted) comparisons whose constants depend on the machine.

#include <cstddef>
#include <optional>
#include <vector>

#include "aitlab/depth.hpp"

namespace aitlab {

// K of a non-negative dyadic p/2^q (q >= 0, not necessarily reduced when the
// value is an even integer), taken as prefix_K(g(p+1) g(q+1)).
std::optional<std::size_t> dyadic_K(const Dyadic& d, const Budget& b);

struct ChainRuleRow {
    BitString x;
    BitString y;
    std::optional<std::size_t> k_pair;     // K(encode_pair(x, y))
    std::optional<std::size_t> k_y;
    std::optional<std::size_t> k_x_given_y;  // K_*(x | y)
    // K(x,y) - K(y) - K_*(x|y) when all three are defined.
    std::optional<long long> gap;
};

// Every pair with l(x), l(y) <= max_len_xy.
std::vector<ChainRuleRow> chain_rule_report(std::size_t max_len_xy, const Budget& b);

struct KmssGapRow {
    BitString x;
    Dyadic delta;
    Dyadic Delta;
    std::optional<std::size_t> eff;        // nullopt: infinite or K(x) undefined
    std::optional<std::size_t> k_delta;
    std::optional<std::size_t> set_K;      // l(k*) = K(encode_set(A_k))
    std::optional<std::size_t> k_n;        // K(n)
    std::optional<long long> upper_left;   // l(k*) - eff
    std::optional<long long> upper_right;  // k_Delta + K(n) - l(k*)
    std::optional<Dyadic> Delta_prime;     // K(n) + Delta + delta (K(x) + Delta) + K(delta)
    std::optional<std::size_t> k_delta_prime;
    std::optional<std::size_t> k_of_delta;
    std::optional<long long> lower;        // eff + K(delta) - k_Delta'
};

// H(E) against sum_s E(s) K(s | E), conditioning on serialize_ensemble(E).
struct EntropyKRow {
    Ensemble ensemble;
    RealInterval H;
    std::optional<Dyadic> expected_K;  // nullopt when some K(s|E) is undefined
    std::optional<RealInterval> gap;   // expected_K - H
};

EntropyKRow entropy_vs_conditional_K(const Ensemble& e, const Budget& b, unsigned precision);

KmssGapRow kmss_gap_row(const BitString& x, const Dyadic& delta, const Dyadic& Delta, const Budget& b);

}  // namespace aitlab
