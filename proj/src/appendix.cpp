#include "aitlab/appendix.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "aitlab/enumerator.hpp"

namespace aitlab {

std::size_t partition_index(const BitString& x) {
    std::size_t zeros = 0;
    while (zeros < x.size() && !x[zeros]) ++zeros;
    return zeros + 1;
}

BitString partition_member(std::size_t n, std::uint64_t i) {
    if (n == 0) throw std::invalid_argument("partition blocks start at n = 1");
    BitString out;
    for (std::size_t k = 1; k < n; ++k) out.push_back(false);
    if (i > 0) {
        int top = 63;
        while (((i >> top) & 1U) == 0) --top;
        for (int b = top; b >= 0; --b) out.push_back((i >> b) & 1U);
    }
    return out;
}

namespace {

constexpr std::uint64_t kMaxParts = std::uint64_t{1} << 20;

class Splitter {
public:
    Splitter(const Dyadic& c, std::int64_t grid_bits, unsigned bits) : c_(c), g_(grid_bits), bits_(bits) {
        units_ = c.scaled(g_).floor();
    }

    RealInterval term(const Dyadic& w) const { return weights_entropy({w}, bits_); }

    // One part of a_units grid units, the rest split evenly over k-1 parts
    // with the rounding remainder on the last one.
    std::vector<Dyadic> parts(std::uint64_t k, const mpz_class& a_units) const {
        const Dyadic a = Dyadic::from_parts(a_units, g_);
        const Dyadic rest = c_ - a;
        if (k == 2) return {a, rest};
        const mpz_class rest_units = units_ - a_units;
        mpz_class b_units = rest_units / static_cast<unsigned long>(k - 1);
        const Dyadic b = Dyadic::from_parts(b_units, g_);
        const Dyadic last = rest - b * Dyadic(static_cast<long>(k - 2));
        std::vector<Dyadic> out{a};
        out.insert(out.end(), k - 2, b);
        out.push_back(last);
        return out;
    }

    RealInterval entropy(std::uint64_t k, const mpz_class& a_units) const {
        const Dyadic a = Dyadic::from_parts(a_units, g_);
        if (k == 2) return term(a) + term(c_ - a);
        const mpz_class b_units = (units_ - a_units) / static_cast<unsigned long>(k - 1);
        const Dyadic b = Dyadic::from_parts(b_units, g_);
        const Dyadic last = c_ - a - b * Dyadic(static_cast<long>(k - 2));
        return term(a) + term(b).scaled_by(Dyadic(static_cast<long>(k - 2))) + term(last);
    }

    mpz_class equal_units(std::uint64_t k) const { return units_ / static_cast<unsigned long>(k); }
    // Largest a that leaves one grid unit for each other part.
    mpz_class max_units(std::uint64_t k) const { return units_ - static_cast<unsigned long>(k - 1); }

private:
    Dyadic c_;
    std::int64_t g_;
    unsigned bits_;
    mpz_class units_;
};

}  // namespace

SplitResult split_weight(const Dyadic& c, const Dyadic& s, const Dyadic& tol) {
    if (c.sign() <= 0 || c > Dyadic(1)) throw std::invalid_argument("split_weight: c must lie in (0, 1]");
    if (tol.sign() <= 0) throw std::invalid_argument("split_weight: tol must be > 0");
    const std::int64_t grid = std::max(tol.exponent(), c.exponent()) + 16;
    const Splitter sp(c, grid, static_cast<unsigned>(grid + 8));
    const RealInterval h0 = sp.term(c);
    if (s + tol < h0.lo) throw std::invalid_argument("split_weight: target entropy below -c log c");
    if (s <= h0.hi) return {{c}, h0};

    const Dyadic ceiling = s + tol;
    auto reaches = [&](std::uint64_t k) { return sp.entropy(k, sp.equal_units(k)).lo >= s; };
    std::uint64_t hi_k = 2;
    while (!reaches(hi_k)) {
        hi_k *= 2;
        if (hi_k > kMaxParts) throw std::invalid_argument("split_weight: target needs more than 2^20 parts");
    }
    std::uint64_t lo_k = hi_k / 2;  // fails, or is 1
    while (hi_k - lo_k > 1) {
        const std::uint64_t mid = lo_k + (hi_k - lo_k) / 2;
        (reaches(mid) ? hi_k : lo_k) = mid;
    }
    const std::uint64_t k = hi_k;

    // Entropy falls as a grows from the equal split towards c.
    mpz_class lo = sp.equal_units(k);
    RealInterval at_lo = sp.entropy(k, lo);
    if (at_lo.hi <= ceiling) return {sp.parts(k, lo), at_lo};
    mpz_class hi = sp.max_units(k);
    RealInterval at_hi = sp.entropy(k, hi);
    if (at_hi.lo >= s) {
        if (at_hi.hi <= ceiling) return {sp.parts(k, hi), at_hi};
        throw std::logic_error("split_weight: target unreachable on the grid");
    }
    while (hi - lo > 1) {
        const mpz_class mid = (lo + hi) / 2;
        RealInterval h = sp.entropy(k, mid);
        if (h.lo >= s) {
            lo = mid;
            at_lo = h;
            if (h.hi <= ceiling) break;
        } else {
            hi = mid;
        }
    }
    if (at_lo.hi > ceiling) throw std::logic_error("split_weight: bisection did not reach the tolerance");
    return {sp.parts(k, lo), at_lo};
}

OmegaSequence machine_omega(std::size_t N, unsigned jobs) {
    OmegaSequence seq;
    seq.source = "machine";
    seq.values.push_back(Dyadic());
    for (std::size_t n = 1; n <= N; ++n) {
        Budget b;
        if (n == 1) {
            b = Budget{3, 10, 32};
        } else {
            b.max_len = std::min<std::size_t>(2 * n + 1, 20);
            b.max_steps = n >= 6 ? 512 : std::uint64_t{1} << (n + 3);
        }
        const Dyadic lower = omega_lower(b, jobs).value;
        const Dyadic capped = seq.values.back() + Dyadic::pow2(-static_cast<std::int64_t>(n));
        seq.values.push_back(std::min(lower, capped));
        seq.budgets.push_back(b);
    }
    return seq;
}

OmegaSequence omega_from_table(const std::filesystem::path& path, std::size_t N) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open omega table " + path.string());
    OmegaSequence seq;
    seq.source = "table:" + path.filename().string();
    std::string line;
    while (std::getline(in, line) && seq.values.size() < N + 1) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) continue;
        seq.values.push_back(Dyadic::parse(line));
    }
    if (seq.values.size() < N + 1) throw std::invalid_argument("omega table has fewer than N+1 values");
    return seq;
}

PartialAppendixEnsemble build_appendix_ensemble(std::size_t N, const OmegaSequence& omega, unsigned precision) {
    if (precision < 16) throw std::invalid_argument("precision must be >= 16");
    const auto& om = omega.values;
    if (om.size() < N + 1) throw std::invalid_argument("omega sequence shorter than N+1");
    if (!om.empty() && !om[0].is_zero()) throw std::invalid_argument("omega sequence must start at 0");
    for (std::size_t i = 1; i < om.size(); ++i)
        if (om[i] < om[i - 1]) throw std::invalid_argument("omega sequence decreases at index " + std::to_string(i + 1));
    PartialAppendixEnsemble p;
    p.N = N;
    p.precision = precision;
    p.omega = omega;
    p.omega.values.resize(N + 1);
    p.partial_entropy = RealInterval::point(Dyadic());
    for (std::size_t n = 1; n <= N; ++n) {
        AppendixBlock blk;
        blk.n = n;
        const auto e = static_cast<std::int64_t>(n);
        blk.mass = Dyadic::pow2(-e);
        blk.target = Dyadic(static_cast<long>(n)) * blk.mass + (om[n] - om[n - 1]);
        blk.tol = Dyadic::pow2(-(e + precision));
        SplitResult split = split_weight(blk.mass, blk.target, blk.tol);
        blk.weights = std::move(split.parts);
        blk.entropy = split.entropy;
        for (std::size_t i = 0; i < blk.weights.size(); ++i) blk.strings.push_back(partition_member(n, i));
        p.partial_entropy = p.partial_entropy + blk.entropy;
        p.blocks.push_back(std::move(blk));
    }
    return p;
}

Ensemble complete_to_ensemble(const PartialAppendixEnsemble& p) {
    std::vector<Ensemble::Entry> entries;
    for (const auto& blk : p.blocks)
        for (std::size_t i = 0; i < blk.weights.size(); ++i) entries.emplace_back(blk.strings[i], blk.weights[i]);
    entries.emplace_back(partition_member(p.N + 1, 0), Dyadic::pow2(-static_cast<std::int64_t>(p.N)));
    return Ensemble::make(std::move(entries));
}

OmegaComparison compare_to_two_plus_omega(const PartialAppendixEnsemble& p) {
    OmegaComparison c;
    c.reference = Dyadic(2) + p.omega.values.at(p.N);
    c.difference = p.partial_entropy - RealInterval::point(c.reference);
    c.tail = Dyadic(static_cast<long>(p.N + 2)) * Dyadic::pow2(-static_cast<std::int64_t>(p.N));
    c.bound = c.tail + p.partial_entropy.width();
    c.within = -c.bound <= c.difference.lo && c.difference.hi <= c.bound;
    return c;
}

}  // namespace aitlab
