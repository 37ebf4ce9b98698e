#include "aitlab/vm.hpp"

#include <limits>
#include <stdexcept>

namespace aitlab {

void Budget::validate() const {
    if (precision < 16) throw std::invalid_argument("budget precision must be >= 16 bits");
}

std::string_view to_string(RunStatus s) {
    switch (s) {
        case RunStatus::halted: return "halted";
        case RunStatus::diverged: return "diverged";
        case RunStatus::invalid: return "invalid";
    }
    return "?";
}

std::optional<Instruction> decode(const BitString& p, std::size_t pos) {
    const std::size_t n = p.size();
    auto avail = [&](std::size_t k) { return pos + k <= n; };
    if (!avail(2)) return std::nullopt;
    if (!p[pos]) return Instruction{p[pos + 1] ? Opcode::out1 : Opcode::out0, 2};
    if (!avail(3)) return std::nullopt;
    if (!p[pos + 1]) {
        if (!p[pos + 2]) return Instruction{Opcode::halt, 3};
        // SETR: gamma code follows the opcode.
        std::size_t i = pos + 3, zeros = 0;
        while (i < n && !p[i]) {
            ++zeros;
            ++i;
        }
        if (i + zeros + 1 > n) return std::nullopt;
        std::uint64_t value = 0;
        bool saturated = zeros >= 64;
        for (std::size_t k = 0; k <= zeros && !saturated; ++k) value = (value << 1) | (p[i + k] ? 1U : 0U);
        if (saturated) value = std::numeric_limits<std::uint64_t>::max();
        return Instruction{Opcode::setr, 3 + 2 * zeros + 1, value};
    }
    if (!p[pos + 2]) return Instruction{Opcode::rpt, 3};
    if (!avail(4)) return std::nullopt;
    return Instruction{p[pos + 3] ? Opcode::dbl : Opcode::cpa, 4};
}

ExecOutcome execute(const Instruction& ins, MachineState& st, const BitString& aux, std::uint64_t fuel) {
    auto charge = [&](std::uint64_t cost) {
        if (cost > fuel || st.steps > fuel - cost) return false;
        st.steps += cost;
        return true;
    };
    switch (ins.op) {
        case Opcode::out0:
        case Opcode::out1:
            if (!charge(1)) return ExecOutcome::out_of_fuel;
            st.output.push_back(ins.op == Opcode::out1);
            return ExecOutcome::next;
        case Opcode::halt:
            if (!charge(1)) return ExecOutcome::out_of_fuel;
            return ExecOutcome::halt;
        case Opcode::setr: {
            std::uint64_t cost = 1 + (ins.length - 3);
            if (!charge(cost)) return ExecOutcome::out_of_fuel;
            st.reg = ins.operand;
            return ExecOutcome::next;
        }
        case Opcode::rpt: {
            if (st.output.empty()) return ExecOutcome::invalid;
            if (!charge(st.reg)) return ExecOutcome::out_of_fuel;
            bool last = st.output[st.output.size() - 1];
            for (std::uint64_t i = 0; i < st.reg; ++i) st.output.push_back(last);
            return ExecOutcome::next;
        }
        case Opcode::cpa:
            if (st.aux_pos >= aux.size()) return ExecOutcome::invalid;
            if (!charge(1)) return ExecOutcome::out_of_fuel;
            st.output.push_back(aux[st.aux_pos++]);
            return ExecOutcome::next;
        case Opcode::dbl:
            if (st.output.empty()) {
                if (!charge(1)) return ExecOutcome::out_of_fuel;
                return ExecOutcome::next;
            }
            if (!charge(st.output.size())) return ExecOutcome::out_of_fuel;
            st.output.append(BitString(st.output));
            return ExecOutcome::next;
    }
    return ExecOutcome::invalid;
}

namespace {

MachineResult finish(RunStatus status, MachineState& st, std::size_t consumed) {
    return MachineResult{status, std::move(st.output), st.steps, consumed};
}

}  // namespace

MachineResult run_plain(const BitString& program, std::uint64_t fuel, const BitString& aux) {
    MachineState st;
    std::size_t pos = 0;
    for (;;) {
        if (pos == program.size()) return finish(RunStatus::halted, st, pos);
        auto ins = decode(program, pos);
        if (!ins) return finish(RunStatus::invalid, st, pos);
        switch (execute(*ins, st, aux, fuel)) {
            case ExecOutcome::next: pos += ins->length; break;
            case ExecOutcome::halt: return finish(RunStatus::halted, st, pos + ins->length);
            case ExecOutcome::invalid: return finish(RunStatus::invalid, st, pos + ins->length);
            case ExecOutcome::out_of_fuel: return finish(RunStatus::diverged, st, pos + ins->length);
        }
    }
}

MachineResult run_prefix(const BitSource& stream, const BitString& aux, std::uint64_t fuel) {
    MachineState st;
    BitString buffer;
    std::size_t pos = 0;
    for (;;) {
        auto ins = decode(buffer, pos);
        if (!ins) {
            auto bit = stream();
            if (!bit) return finish(RunStatus::invalid, st, buffer.size());
            buffer.push_back(*bit);
            continue;
        }
        switch (execute(*ins, st, aux, fuel)) {
            case ExecOutcome::next: pos += ins->length; break;
            case ExecOutcome::halt: return finish(RunStatus::halted, st, pos + ins->length);
            case ExecOutcome::invalid: return finish(RunStatus::invalid, st, pos + ins->length);
            case ExecOutcome::out_of_fuel: return finish(RunStatus::diverged, st, pos + ins->length);
        }
    }
}

MachineResult run_prefix(const BitString& program, const BitString& aux, std::uint64_t fuel) {
    std::size_t i = 0;
    BitSource src = [&]() -> std::optional<bool> {
        if (i >= program.size()) return std::nullopt;
        return program[i++];
    };
    return run_prefix(src, aux, fuel);
}

bool prefix_halts_on(const BitString& program, const MachineResult& r) {
    return r.status == RunStatus::halted && r.consumed == program.size();
}

}  // namespace aitlab
