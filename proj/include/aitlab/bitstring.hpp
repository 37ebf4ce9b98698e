#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace aitlab {

// A finite binary string. Ordering is the canonical one used everywhere in
// the lab: shorter strings first, then lexicographic.
class BitString {
public:
    BitString() = default;

    // Accepts '0'/'1' characters only; "" and "-" both denote the empty string.
    static BitString parse(std::string_view text);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    bool operator[](std::size_t i) const noexcept { return bits_[i] == '1'; }

    void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
    void pop_back() { bits_.pop_back(); }
    void truncate(std::size_t n) { bits_.resize(n); }
    void append(const BitString& other) { bits_ += other.bits_; }
    void reserve(std::size_t n) { bits_.reserve(n); }
    BitString substr(std::size_t pos, std::size_t len = std::string::npos) const;

    // "0110"; empty string for λ.
    const std::string& str() const noexcept { return bits_; }
    // Human-facing form: "λ" for the empty string.
    std::string display() const { return bits_.empty() ? std::string("λ") : bits_; }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
        if (a.bits_.size() != b.bits_.size()) return a.bits_.size() <=> b.bits_.size();
        return a.bits_.compare(b.bits_) <=> 0;
    }

    friend BitString operator+(BitString a, const BitString& b) {
        a.append(b);
        return a;
    }

private:
    std::string bits_;
};

struct BitStringHash {
    std::size_t operator()(const BitString& b) const noexcept { return std::hash<std::string>{}(b.str()); }
};

// All strings of length n in canonical order.
std::vector<BitString> all_strings(std::size_t n);

// Sequential reader over a BitString used by every decoder.
class BitReader {
public:
    explicit BitReader(const BitString& bits, std::size_t pos = 0) : bits_(bits), pos_(pos) {}

    std::optional<bool> read_bit();
    // Elias-gamma; nullopt when the input ends inside the code.
    std::optional<mpz_class> read_gamma();
    std::optional<std::uint64_t> read_gamma_u64();
    // encode_string inverse.
    std::optional<BitString> read_string();

    std::size_t position() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ == bits_.size(); }
    BitString rest() const { return bits_.substr(pos_); }

private:
    const BitString& bits_;
    std::size_t pos_;
};

// Elias-gamma: floor(log2 n) zeros followed by binary(n). Requires n >= 1.
BitString gamma_encode(std::uint64_t n);
BitString gamma_encode(const mpz_class& n);
// Decodes a leading gamma code; returns the value and the unread remainder.
std::optional<std::pair<std::uint64_t, BitString>> gamma_decode(const BitString& b);

// gamma(len(x) + 1) ++ x
BitString encode_string(const BitString& x);
BitString encode_pair(const BitString& x, const BitString& y);

// 8 bits per character, most significant first, and back (a trailing partial
// byte is dropped).
BitString ascii_bits(std::string_view text);
std::string bits_ascii(const BitString& bits);

// Stable 64-bit FNV-1a, used for cache file names and checksums.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace aitlab
