#include "aitlab/reports.hpp"

#include "aitlab/complexity.hpp"

namespace aitlab {

std::optional<std::size_t> dyadic_K(const Dyadic& d, const Budget& b) {
    if (d.sign() < 0) throw std::invalid_argument("dyadic_K needs a non-negative value");
    mpz_class p = d.numerator();
    std::int64_t q = d.exponent();
    if (q < 0) {
        p <<= static_cast<mp_bitcnt_t>(-q);
        q = 0;
    }
    BitString code = gamma_encode(mpz_class(p + 1));
    code.append(gamma_encode(static_cast<std::uint64_t>(q + 1)));
    return prefix_K(code, b);
}

std::vector<ChainRuleRow> chain_rule_report(std::size_t max_len_xy, const Budget& b) {
    std::vector<BitString> xs;
    for (std::size_t n = 0; n <= max_len_xy; ++n)
        for (auto& s : all_strings(n)) xs.push_back(std::move(s));
    std::vector<ChainRuleRow> rows;
    for (const auto& y : xs) {
        const auto ky = prefix_K(y, b);
        for (const auto& x : xs) {
            ChainRuleRow r{x, y, prefix_K(encode_pair(x, y), b), ky, chaitin_K(x, y, b), std::nullopt};
            if (r.k_pair && r.k_y && r.k_x_given_y)
                r.gap = static_cast<long long>(*r.k_pair) - static_cast<long long>(*r.k_y + *r.k_x_given_y);
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

namespace {

long long diff(std::size_t a, std::size_t b) { return static_cast<long long>(a) - static_cast<long long>(b); }

}  // namespace

EntropyKRow entropy_vs_conditional_K(const Ensemble& e, const Budget& b, unsigned precision) {
    EntropyKRow r{e, entropy(e, precision), std::nullopt, std::nullopt};
    const BitString aux = serialize_ensemble(e);
    Dyadic sum;
    for (const auto& [s, w] : e.entries()) {
        const auto k = cond_K(s, aux, b);
        if (!k) return r;
        sum = sum + w * Dyadic(static_cast<long>(*k));
    }
    r.expected_K = sum;
    r.gap = RealInterval::point(sum) - r.H;
    return r;
}

KmssGapRow kmss_gap_row(const BitString& x, const Dyadic& delta, const Dyadic& Delta, const Budget& b) {
    KmssGapRow r;
    r.x = x;
    r.delta = delta;
    r.Delta = Delta;
    const auto kx = prefix_K(x, b);
    if (kx) r.eff = effective_complexity(x, delta, Delta, b, unconstrained()).value;
    r.k_n = integer_K(x.size(), b);
    const KmssResult k = kmss(x, Delta, b);
    r.k_delta = k.k_delta;
    if (k.k_delta) r.set_K = prefix_K(encode_set(k.set), b);
    if (r.set_K && r.eff) r.upper_left = diff(*r.set_K, *r.eff);
    if (r.set_K && r.k_delta && r.k_n) r.upper_right = diff(*r.k_delta + *r.k_n, *r.set_K);
    r.k_of_delta = dyadic_K(delta, b);
    if (kx && r.k_n && r.k_of_delta) {
        const Dyadic kxd(static_cast<long>(*kx));
        r.Delta_prime = Dyadic(static_cast<long>(*r.k_n)) + Delta + delta * (kxd + Delta) +
                        Dyadic(static_cast<long>(*r.k_of_delta));
        r.k_delta_prime = kmss(x, *r.Delta_prime, b).k_delta;
        if (r.eff && r.k_delta_prime) r.lower = diff(*r.eff + *r.k_of_delta, *r.k_delta_prime);
    }
    return r;
}

}  // namespace aitlab
