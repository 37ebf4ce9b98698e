#pragma once

// On-disk complexity tables. One file per (machine_version, kind, aux,
// max_len, max_steps):
//
//   bytes 0..7    "AITLTBL1"
//   bytes 8..15   payload length in bits, little endian
//   bytes 16..23  FNV-1a of the payload bytes, little endian
//   bytes 24..    payload bits, most significant bit first
//
// payload = encode_string(version) g(kind+1) encode_string(aux) g(max_len+1)
//           g(max_steps+1) g(count+1), then per entry in canonical output order
//           encode_string(output) g(min_len+1) g(min_steps_any+1)
//           encode_string(witness) g(min_steps_at_min_len+1)
// where g is Elias-gamma and version is the machine version as 8-bit ASCII.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "aitlab/enumerator.hpp"

namespace aitlab {

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string cache_file_name(MachineKind kind, const BitString& aux, const Budget& budget);

std::string encode_table(const ComplexityTable& t);
// Throws CacheError on any structural, checksum or version problem.
ComplexityTable decode_table(const std::string& bytes);

// Write to a temporary sibling, then rename into place.
void write_table_file(const std::filesystem::path& path, const ComplexityTable& t);
ComplexityTable read_table_file(const std::filesystem::path& path);

struct CacheListing {
    std::filesystem::path path;
    MachineKind kind;
    BitString aux;
    Budget budget;
    std::size_t entries = 0;
    std::uintmax_t bytes = 0;
};

std::vector<CacheListing> list_cache(const std::filesystem::path& dir);
std::size_t purge_cache(const std::filesystem::path& dir);

struct VerifyReport {
    std::size_t files = 0;
    std::size_t sampled_entries = 0;
    std::vector<std::string> problems;  // "<file>: <reason>"
};

// Checks every file's integrity, then recomputes each table and compares a
// seeded 1% sample of its entries (at least one) bit-exactly.
VerifyReport verify_cache(const std::filesystem::path& dir, unsigned jobs);

}  // namespace aitlab
