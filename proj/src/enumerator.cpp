#include "aitlab/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace aitlab {

std::string_view to_string(MachineKind k) { return k == MachineKind::plain ? "plain" : "prefix"; }

MachineKind parse_machine_kind(std::string_view text) {
    if (text == "plain") return MachineKind::plain;
    if (text == "prefix") return MachineKind::prefix;
    throw std::invalid_argument("machine kind must be plain or prefix");
}

unsigned default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

namespace {

struct Child {
    BitString code;
    Instruction ins;
};

// Every instruction whose encoding fits in max_len bits, shortest first.
std::vector<Child> instruction_set(std::size_t max_len) {
    std::vector<Child> out;
    for (const char* code : {"00", "01", "100", "110", "1110", "1111"}) {
        BitString b = BitString::parse(code);
        if (b.size() <= max_len) out.push_back({b, *decode(b, 0)});
    }
    for (std::uint64_t n = 1;; ++n) {
        BitString b = BitString::parse("101") + gamma_encode(n);
        if (b.size() > max_len) break;
        out.push_back({b, *decode(b, 0)});
    }
    std::stable_sort(out.begin(), out.end(), [](const Child& a, const Child& b) { return a.code.size() < b.code.size(); });
    return out;
}

struct Task {
    BitString program;
    MachineState state;
};

class Walker {
public:
    Walker(const WalkOptions& o, const HaltVisitor& visit, const std::vector<Child>& children, unsigned worker)
        : o_(o), visit_(visit), children_(children), worker_(worker) {}

    void start(BitString program, MachineState state) {
        program_ = std::move(program);
        st_ = std::move(state);
    }

    // Visits the current node and its subtree; nodes at split_depth are
    // handed to `frontier` instead of being expanded.
    void node(unsigned depth, std::vector<Task>* frontier, unsigned split_depth) {
        if (o_.kind == MachineKind::plain) visit_(worker_, program_, st_.output, st_.steps);
        if (frontier != nullptr && depth == split_depth) {
            frontier->push_back({program_, st_});
            return;
        }
        expand(depth, frontier, split_depth);
    }

    void expand(unsigned depth, std::vector<Task>* frontier, unsigned split_depth) {
        const std::size_t room = o_.budget.max_len - program_.size();
        for (const Child& c : children_) {
            if (c.code.size() > room) break;
            const std::size_t out_len = st_.output.size();
            const std::uint64_t reg = st_.reg, steps = st_.steps;
            const std::size_t aux_pos = st_.aux_pos;
            ExecOutcome r = execute(c.ins, st_, o_.aux, o_.budget.max_steps);
            if (r == ExecOutcome::next) {
                program_.append(c.code);
                node(depth + 1, frontier, split_depth);
                program_.truncate(program_.size() - c.code.size());
            } else if (r == ExecOutcome::halt) {
                on_halt(c.code, room - c.code.size());
            }
            st_.output.truncate(out_len);
            st_.reg = reg;
            st_.steps = steps;
            st_.aux_pos = aux_pos;
        }
    }

private:
    void on_halt(const BitString& code, std::size_t spare) {
        const std::size_t base = program_.size();
        program_.append(code);
        if (o_.kind == MachineKind::prefix) {
            visit_(worker_, program_, st_.output, st_.steps);
        } else if (o_.plain_trailing) {
            for (std::size_t k = 0; k <= spare; ++k) {
                for (const BitString& t : all_strings(k)) {
                    BitString p = program_ + t;
                    visit_(worker_, p, st_.output, st_.steps);
                }
            }
        }
        program_.truncate(base);
    }

    const WalkOptions& o_;
    const HaltVisitor& visit_;
    const std::vector<Child>& children_;
    unsigned worker_;
    BitString program_;
    MachineState st_;
};

}  // namespace

void walk_halting(const WalkOptions& opts, const HaltVisitor& visit) {
    const std::vector<Child> children = instruction_set(opts.budget.max_len);
    const unsigned jobs = std::max(1U, opts.jobs);
    Walker root(opts, visit, children, 0);
    if (jobs == 1) {
        root.node(0, nullptr, 0);
        return;
    }
    std::vector<Task> tasks;
    root.node(0, &tasks, 3);
    std::atomic<std::size_t> next{0};
    auto work = [&](unsigned w) {
        Walker walker(opts, visit, children, w);
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            walker.start(tasks[i].program, tasks[i].state);
            walker.expand(0, nullptr, 0);
        }
    };
    std::vector<std::thread> threads;
    for (unsigned w = 1; w < jobs; ++w) threads.emplace_back(work, w);
    work(0);
    for (auto& t : threads) t.join();
}

std::vector<HaltingRun> enumerate_halting(MachineKind kind, const BitString& aux, const Budget& budget, unsigned jobs) {
    WalkOptions o{kind, aux, budget, jobs, true};
    std::vector<std::vector<HaltingRun>> parts(std::max(1U, jobs));
    walk_halting(o, [&](unsigned w, const BitString& p, const BitString& out, std::uint64_t steps) {
        parts[w].push_back({p, out, steps});
    });
    std::vector<HaltingRun> all;
    for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(all));
    std::sort(all.begin(), all.end(), [](const HaltingRun& a, const HaltingRun& b) { return a.program < b.program; });
    return all;
}

void TableEntry::offer(const BitString& program, std::uint64_t steps) {
    merge(TableEntry{program.size(), program, steps, steps});
}

void TableEntry::merge(const TableEntry& o) {
    if (o.min_len < min_len) {
        min_len = o.min_len;
        witness = o.witness;
        min_steps_at_min_len = o.min_steps_at_min_len;
    } else if (o.min_len == min_len) {
        if (o.witness < witness) witness = o.witness;
        min_steps_at_min_len = std::min(min_steps_at_min_len, o.min_steps_at_min_len);
    }
    min_steps_any = std::min(min_steps_any, o.min_steps_any);
}

const TableEntry* ComplexityTable::find(const BitString& x) const {
    auto it = entries.find(x);
    return it == entries.end() ? nullptr : &it->second;
}

namespace {

using EntryMap = std::unordered_map<BitString, TableEntry, BitStringHash>;

void merge_into(EntryMap& acc, const BitString& out, const TableEntry& e) {
    auto [it, inserted] = acc.try_emplace(out, e);
    if (!inserted) it->second.merge(e);
}

}  // namespace

ComplexityTable complexity_table(MachineKind kind, const BitString& aux, const Budget& budget, unsigned jobs) {
    WalkOptions o{kind, aux, budget, jobs, false};
    std::vector<EntryMap> parts(std::max(1U, jobs));
    walk_halting(o, [&](unsigned w, const BitString& p, const BitString& out, std::uint64_t steps) {
        merge_into(parts[w], out, TableEntry{p.size(), p, steps, steps});
    });
    for (std::size_t i = 1; i < parts.size(); ++i) {
        for (auto& [out, e] : parts[i]) merge_into(parts[0], out, e);
        EntryMap().swap(parts[i]);
    }
    ComplexityTable t{kind, aux, budget, {}};
    for (auto& [out, e] : parts[0]) t.entries.emplace(out, std::move(e));
    return t;
}

const ProfilePoint* TimeProfile::at(std::size_t len) const {
    const ProfilePoint* best = nullptr;
    for (const auto& p : points) {
        if (p.len > len) break;
        best = &p;
    }
    return best;
}

const TimeProfile* TimeProfileTable::find(const BitString& x) const {
    auto it = entries.find(x);
    return it == entries.end() ? nullptr : &it->second;
}

namespace {

constexpr std::uint64_t kNoRun = std::numeric_limits<std::uint64_t>::max();

struct Slot {
    std::uint64_t steps = kNoRun;
    BitString program;

    void offer(std::uint64_t s, const BitString& p) {
        if (s < steps || (s == steps && p < program)) {
            steps = s;
            program = p;
        }
    }
};

// Exact-length minima -> prefix-minimum change points.
TimeProfile compress(std::vector<Slot>& by_len) {
    TimeProfile p;
    std::uint64_t best = kNoRun;
    for (std::size_t l = 0; l < by_len.size(); ++l) {
        if (by_len[l].steps < best) {
            best = by_len[l].steps;
            p.points.push_back({l, best, std::move(by_len[l].program)});
        }
    }
    return p;
}

}  // namespace

TimeProfileTable time_profile_table(MachineKind kind, const BitString& aux, const Budget& budget, unsigned jobs) {
    WalkOptions o{kind, aux, budget, jobs, false};
    using ByLen = std::unordered_map<BitString, std::vector<Slot>, BitStringHash>;
    std::vector<ByLen> parts(std::max(1U, jobs));
    const std::size_t width = budget.max_len + 1;
    walk_halting(o, [&](unsigned w, const BitString& p, const BitString& out, std::uint64_t steps) {
        auto [it, inserted] = parts[w].try_emplace(out);
        if (inserted) it->second.resize(width);
        it->second[p.size()].offer(steps, p);
    });
    for (std::size_t i = 1; i < parts.size(); ++i) {
        for (auto& [out, v] : parts[i]) {
            auto [it, inserted] = parts[0].try_emplace(out, v);
            if (inserted) continue;
            for (std::size_t l = 0; l < width; ++l)
                if (v[l].steps != kNoRun) it->second[l].offer(v[l].steps, v[l].program);
        }
        ByLen().swap(parts[i]);
    }
    TimeProfileTable t{kind, aux, budget, {}};
    for (auto& [out, v] : parts[0]) t.entries.emplace(out, compress(v));
    return t;
}

std::vector<std::pair<std::size_t, std::uint64_t>> halting_time_profile(const BitString& x, MachineKind kind,
                                                                       const Budget& budget, unsigned jobs) {
    WalkOptions o{kind, BitString{}, budget, jobs, false};
    std::vector<std::vector<std::uint64_t>> parts(std::max(1U, jobs), std::vector<std::uint64_t>(budget.max_len + 1, kNoRun));
    walk_halting(o, [&](unsigned w, const BitString& p, const BitString& out, std::uint64_t steps) {
        if (out == x) parts[w][p.size()] = std::min(parts[w][p.size()], steps);
    });
    std::vector<std::pair<std::size_t, std::uint64_t>> profile;
    std::uint64_t best = kNoRun;
    for (std::size_t l = 0; l <= budget.max_len; ++l) {
        for (const auto& part : parts) best = std::min(best, part[l]);
        if (best != kNoRun) profile.emplace_back(l, best);
    }
    return profile;
}

OmegaApprox omega_lower(const Budget& budget, unsigned jobs) {
    WalkOptions o{MachineKind::prefix, BitString{}, budget, jobs, false};
    std::vector<std::vector<std::uint64_t>> counts(std::max(1U, jobs), std::vector<std::uint64_t>(budget.max_len + 1, 0));
    walk_halting(o, [&](unsigned w, const BitString& p, const BitString&, std::uint64_t) { ++counts[w][p.size()]; });
    Dyadic sum;
    for (std::size_t l = 0; l <= budget.max_len; ++l) {
        mpz_class c = 0;
        for (const auto& part : counts) c += static_cast<unsigned long>(part[l]);
        sum += Dyadic::from_parts(c, static_cast<std::int64_t>(l));
    }
    return {sum, budget};
}

}  // namespace aitlab
