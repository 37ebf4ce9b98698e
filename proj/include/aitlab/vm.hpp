#pragma once

// TinyVM: the fixed reference machine. Programs are read left to right with
// prefix-free opcodes:
//
//   00        OUT0   append 0                          cost 1
//   01        OUT1   append 1                          cost 1
//   100       HALT                                     cost 1
//   101 g(n)  SETR   R := n (n Elias-gamma coded)      cost 1 + |g(n)|
//   110       RPT    append R copies of the last bit   cost R   (invalid on empty output)
//   1110      CPA    append the next unread aux bit    cost 1   (invalid when aux is exhausted)
//   1111      DBL    output := output ++ output        cost |output|, or 1 when empty
//
// R starts at 1. The plain machine halts implicitly at end of input (cost 0)
// or on HALT; the prefix machine halts only on HALT and its domain is the set
// of programs read exactly up to that HALT.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "aitlab/bitstring.hpp"

namespace aitlab {

inline constexpr std::string_view machine_version = "tinyvm-1";

struct Budget {
    std::size_t max_len = 0;       // program length bound, bits
    std::uint64_t max_steps = 0;   // fuel
    unsigned precision = 32;       // bits, for interval arithmetic

    // Throws std::invalid_argument when precision < 16.
    void validate() const;
    friend bool operator==(const Budget&, const Budget&) = default;
};

enum class RunStatus { halted, diverged, invalid };

std::string_view to_string(RunStatus s);

struct MachineResult {
    RunStatus status = RunStatus::invalid;
    BitString output;
    std::uint64_t steps = 0;
    std::size_t consumed = 0;  // program bits read
};

enum class Opcode { out0, out1, halt, setr, rpt, cpa, dbl };

struct Instruction {
    Opcode op;
    std::size_t length;          // bits occupied in the program
    std::uint64_t operand = 0;   // SETR value, saturated at UINT64_MAX
};

// Decodes the instruction starting at `pos`; nullopt when the program ends
// before the instruction is complete.
std::optional<Instruction> decode(const BitString& program, std::size_t pos);

struct MachineState {
    BitString output;
    std::uint64_t reg = 1;
    std::uint64_t steps = 0;
    std::size_t aux_pos = 0;
};

enum class ExecOutcome { next, halt, invalid, out_of_fuel };

// Applies one decoded instruction. The state is left untouched unless the
// outcome is `next` or `halt`.
ExecOutcome execute(const Instruction& ins, MachineState& state, const BitString& aux, std::uint64_t fuel);

MachineResult run_plain(const BitString& program, std::uint64_t fuel, const BitString& aux = {});

// Pulls one program bit per call; nullopt means the stream is exhausted.
using BitSource = std::function<std::optional<bool>()>;

// A stream that runs dry before HALT yields `invalid`.
MachineResult run_prefix(const BitSource& stream, const BitString& aux, std::uint64_t fuel);
MachineResult run_prefix(const BitString& program, const BitString& aux, std::uint64_t fuel);

// U(p) is defined: halted and read exactly all of p.
bool prefix_halts_on(const BitString& program, const MachineResult& r);

}  // namespace aitlab
