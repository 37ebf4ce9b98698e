#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "aitlab/appendix.hpp"
#include "aitlab/enumerator.hpp"
#include "oracle.hpp"

using namespace aitlab;

namespace {

BitString B(const char* s) { return BitString::parse(s); }
Dyadic D(const char* s) { return Dyadic::parse(s); }

Dyadic sum(const std::vector<Dyadic>& v) {
    Dyadic t;
    for (const auto& d : v) t = t + d;
    return t;
}

void check_split(const Dyadic& c, const Dyadic& s, const Dyadic& tol) {
    const SplitResult r = split_weight(c, s, tol);
    CHECK(sum(r.parts) == c);
    for (const auto& p : r.parts) CHECK(p.sign() > 0);
    const oracle::Real h = oracle::entropy_of(r.parts);
    CHECK(oracle::to_real(r.entropy.lo) <= h);
    CHECK(h <= oracle::to_real(r.entropy.hi));
    const oracle::Real floor = -oracle::to_real(c) * oracle::log2r(oracle::to_real(c));
    if (oracle::to_real(s) <= floor) {
        CHECK(r.parts.size() == 1);
    } else {
        CHECK(h >= oracle::to_real(s) - oracle::to_real(tol));
        CHECK(h <= oracle::to_real(s) + oracle::to_real(tol));
    }
}

}  // namespace

TEST_CASE("partition index") {
    CHECK(partition_index(B("")) == 1);
    CHECK(partition_index(B("1")) == 1);
    CHECK(partition_index(B("10")) == 1);
    CHECK(partition_index(B("0")) == 2);
    CHECK(partition_index(B("011")) == 2);
    CHECK(partition_index(B("00")) == 3);
    CHECK(partition_index(B("001")) == 3);
    for (std::size_t len = 0; len <= 10; ++len)
        for (const auto& x : all_strings(len)) {
            std::size_t zeros = 0;
            while (zeros < x.size() && !x[zeros]) ++zeros;
            std::size_t hits = 0;
            for (std::size_t n = 1; n <= 11; ++n)
                if (zeros == n - 1) ++hits;
            CHECK(hits == 1);
            CHECK(partition_index(x) == zeros + 1);
        }
}

TEST_CASE("partition members") {
    CHECK(partition_member(1, 0) == B(""));
    CHECK(partition_member(1, 1) == B("1"));
    CHECK(partition_member(1, 2) == B("10"));
    CHECK(partition_member(2, 0) == B("0"));
    CHECK(partition_member(2, 1) == B("01"));
    CHECK(partition_member(3, 2) == B("0010"));
    CHECK_THROWS(partition_member(0, 0));
    for (std::size_t n = 1; n <= 6; ++n) {
        BitString prev;
        for (std::uint64_t i = 0; i < 40; ++i) {
            const BitString m = partition_member(n, i);
            CHECK(partition_index(m) == n);
            if (i > 0) CHECK(prev < m);
            prev = m;
        }
    }
}

TEST_CASE("split weight examples") {
    const Dyadic tol = Dyadic::pow2(-30);
    SplitResult r = split_weight(Dyadic(1), Dyadic(1), tol);
    CHECK(r.parts == std::vector{D("1/2^1"), D("1/2^1")});
    r = split_weight(D("1/2^1"), D("1/2^1"), tol);
    CHECK(r.parts == std::vector{D("1/2^1")});
    r = split_weight(D("1/2^1"), D("3/2^1"), tol);
    CHECK(r.parts == std::vector<Dyadic>(4, D("1/2^3")));
    CHECK_THROWS_AS(split_weight(D("1/2^1"), D("1/2^2"), tol), std::invalid_argument);
    check_split(D("1/2^2"), D("13/2^4"), tol);
}

TEST_CASE("split weight on random feasible targets") {
    std::mt19937_64 rng(2024);
    const Dyadic tol = Dyadic::pow2(-30);
    for (int i = 0; i < 100; ++i) {
        const unsigned ce = 1 + static_cast<unsigned>(rng() % 6);
        const Dyadic c = Dyadic::from_parts(mpz_class(static_cast<unsigned long>(1 + rng() % ((1UL << ce) - 1) + 0)), ce);
        const Dyadic cc = c > Dyadic(1) ? Dyadic(1) : c;
        // s = -c log2 c + c u with u < 10, on a 2^-20 grid; u bits per unit
        // of mass needs at most 2^u parts
        const oracle::Real floor = -oracle::to_real(cc) * oracle::log2r(oracle::to_real(cc));
        const double extra = cc.to_double() * static_cast<double>(rng() % (10U << 20)) / (1U << 20);
        const double target = static_cast<double>(floor) + extra;
        const Dyadic s = Dyadic::from_parts(mpz_class(static_cast<unsigned long>(std::ceil(target * (1 << 20)))), 20);
        CAPTURE(cc.to_string());
        CAPTURE(s.to_string());
        check_split(cc, s, tol);
    }
}

TEST_CASE("appendix ensemble from a table") {
    OmegaSequence flat;
    flat.values = {Dyadic(), Dyadic()};
    const PartialAppendixEnsemble one = build_appendix_ensemble(1, flat, 32);
    REQUIRE(one.blocks.size() == 1);
    CHECK(one.blocks[0].strings == std::vector{B("")});
    CHECK(one.blocks[0].weights == std::vector{D("1/2^1")});
    CHECK(one.blocks[0].entropy == RealInterval::point(D("1/2^1")));

    OmegaSequence down;
    down.values = {Dyadic(), D("1/2^2"), D("1/2^3")};
    CHECK_THROWS_AS(build_appendix_ensemble(2, down, 32), std::invalid_argument);
    OmegaSequence start;
    start.values = {D("1/2^4"), D("1/2^2")};
    CHECK_THROWS_AS(build_appendix_ensemble(1, start, 32), std::invalid_argument);
    CHECK_THROWS_AS(build_appendix_ensemble(3, flat, 32), std::invalid_argument);

    const auto path = std::filesystem::temp_directory_path() / ("omega_" + std::to_string(::getpid()) + ".txt");
    {
        std::ofstream out(path);
        out << "# a made-up increasing sequence\n0\n1/2^2\n\n3/2^3\n7/2^4 # trailing comment\n";
    }
    const OmegaSequence t = omega_from_table(path, 3);
    CHECK(t.values == std::vector{Dyadic(), D("1/2^2"), D("3/2^3"), D("7/2^4")});
    CHECK_THROWS(omega_from_table(path, 4));
    std::filesystem::remove(path);

    const PartialAppendixEnsemble p = build_appendix_ensemble(3, t, 32);
    for (const auto& blk : p.blocks) {
        CHECK(sum(blk.weights) == blk.mass);
        CHECK(blk.mass == Dyadic::pow2(-static_cast<std::int64_t>(blk.n)));
        CHECK(blk.entropy.lo >= Dyadic(static_cast<long>(blk.n)) * blk.mass - blk.tol);
        for (const auto& s : blk.strings) CHECK(partition_index(s) == blk.n);
        const oracle::Real h = oracle::entropy_of(blk.weights);
        CHECK(h >= oracle::to_real(blk.target) - oracle::to_real(blk.tol));
        CHECK(h <= oracle::to_real(blk.target) + oracle::to_real(blk.tol));
    }
    const Ensemble e = complete_to_ensemble(p);
    CHECK(e.weight(B("000")) == D("1/2^3"));
}

TEST_CASE("machine omega and the tail bound") {
    const OmegaSequence om = machine_omega(6);
    REQUIRE(om.values.size() == 7);
    CHECK(om.values[0] == Dyadic());
    CHECK(om.values[1] == D("1/2^3"));
    CHECK(om.values[2] == D("1/2^3") + D("2/2^5"));
    CHECK(om.values[1] == omega_lower(Budget{3, 10, 32}).value);
    CHECK(om.values[2] == omega_lower(Budget{5, 32, 32}).value);
    for (std::size_t n = 1; n < om.values.size(); ++n) {
        CHECK(om.values[n - 1] <= om.values[n]);
        CHECK(om.values[n] <= Dyadic(1));
    }
    for (std::size_t N : {1UL, 4UL, 8UL, 12UL}) {
        const OmegaSequence o = machine_omega(N);
        const PartialAppendixEnsemble p = build_appendix_ensemble(N, o, 48);
        const OmegaComparison c = compare_to_two_plus_omega(p);
        CAPTURE(N);
        CHECK(c.within);
        CHECK(c.tail == Dyadic(static_cast<long>(N + 2)) * Dyadic::pow2(-static_cast<std::int64_t>(N)));
        // the partial sum itself is exactly sum n 2^-n + Omega_(N+1) up to the block tolerances
        Dyadic head;
        Dyadic tols;
        for (const auto& blk : p.blocks) {
            head = head + Dyadic(static_cast<long>(blk.n)) * blk.mass;
            tols = tols + blk.tol;
        }
        head = head + o.values.at(N);
        CHECK(p.partial_entropy.lo >= head - tols - p.partial_entropy.width());
        CHECK(p.partial_entropy.hi <= head + tols + p.partial_entropy.width());
        const Ensemble full = complete_to_ensemble(p);
        Dyadic total;
        for (const auto& [s, w] : full.entries()) total = total + w;
        CHECK(total == Dyadic(1));
    }
}
