#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "aitlab/bitstring.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/vm.hpp"

namespace aitlab {

enum class MachineKind { plain, prefix };

std::string_view to_string(MachineKind k);
MachineKind parse_machine_kind(std::string_view text);

struct WalkOptions {
    MachineKind kind = MachineKind::prefix;
    BitString aux;
    Budget budget;
    unsigned jobs = 1;
    // Plain mode only: also report the programs that carry ignored bits after
    // an explicit HALT. They never improve a minimum (dropping the HALT gives a
    // shorter, faster program with the same output), so tables skip them.
    bool plain_trailing = false;
};

// Called once per halting program. `worker` is in [0, jobs) and identifies
// the thread; each worker only ever sees its own index.
using HaltVisitor = std::function<void(unsigned worker, const BitString& program, const BitString& output, std::uint64_t steps)>;

// Depth-first walk of the instruction tree. Invalid and out-of-fuel branches
// are pruned with all their extensions; prefix HALT closes a branch. Visit
// order is unspecified when jobs > 1.
void walk_halting(const WalkOptions& opts, const HaltVisitor& visit);

unsigned default_jobs();

struct HaltingRun {
    BitString program;
    BitString output;
    std::uint64_t steps = 0;
    friend bool operator==(const HaltingRun&, const HaltingRun&) = default;
};

// All halting programs within the budget in canonical program order.
std::vector<HaltingRun> enumerate_halting(MachineKind kind, const BitString& aux, const Budget& budget, unsigned jobs = 1);

struct TableEntry {
    std::size_t min_len = 0;
    BitString witness;  // canonical: shortest, then lexicographically least
    std::uint64_t min_steps_at_min_len = 0;
    std::uint64_t min_steps_any = 0;

    // Both require an already populated entry.
    void offer(const BitString& program, std::uint64_t steps);
    void merge(const TableEntry& other);
    friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

struct ComplexityTable {
    MachineKind kind = MachineKind::prefix;
    BitString aux;
    Budget budget;
    std::map<BitString, TableEntry> entries;

    const TableEntry* find(const BitString& x) const;
    friend bool operator==(const ComplexityTable&, const ComplexityTable&) = default;
};

ComplexityTable complexity_table(MachineKind kind, const BitString& aux, const Budget& budget, unsigned jobs = 1);

struct ProfilePoint {
    std::size_t len = 0;
    std::uint64_t steps = 0;
    BitString witness;  // canonical among programs of length <= len with these steps
    friend bool operator==(const ProfilePoint&, const ProfilePoint&) = default;
};

// Per output: minimal halting time among programs of length <= l, recorded at
// each l where that minimum drops. Lengths strictly increase, steps strictly
// decrease.
struct TimeProfile {
    std::vector<ProfilePoint> points;

    // The point in force for programs of length <= len, if any.
    const ProfilePoint* at(std::size_t len) const;
    friend bool operator==(const TimeProfile&, const TimeProfile&) = default;
};

struct TimeProfileTable {
    MachineKind kind = MachineKind::plain;
    BitString aux;
    Budget budget;
    std::map<BitString, TimeProfile> entries;

    const TimeProfile* find(const BitString& x) const;
};

TimeProfileTable time_profile_table(MachineKind kind, const BitString& aux, const Budget& budget, unsigned jobs = 1);

// (l, minimal steps over programs of length <= l producing x) for every l
// from the first producing length up to max_len.
std::vector<std::pair<std::size_t, std::uint64_t>> halting_time_profile(const BitString& x, MachineKind kind,
                                                                       const Budget& budget, unsigned jobs = 1);

struct OmegaApprox {
    Dyadic value;
    Budget budget;
};

// Exact Kraft sum over halting prefix programs within the budget.
OmegaApprox omega_lower(const Budget& budget, unsigned jobs = 1);

}  // namespace aitlab
