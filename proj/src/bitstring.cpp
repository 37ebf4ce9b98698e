#include "aitlab/bitstring.hpp"

#include <stdexcept>
#include <vector>

namespace aitlab {

BitString BitString::parse(std::string_view text) {
    BitString out;
    if (text == "-" || text == "λ") return out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument("not a bit string: '" + std::string(text) + "'");
        out.bits_.push_back(c);
    }
    return out;
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
    BitString out;
    out.bits_ = bits_.substr(pos, len);
    return out;
}

std::vector<BitString> all_strings(std::size_t n) {
    if (n >= 63) throw std::invalid_argument("all_strings: length too large");
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitString s;
        for (std::size_t i = n; i-- > 0;) s.push_back((v >> i) & 1U);
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<bool> BitReader::read_bit() {
    if (pos_ >= bits_.size()) return std::nullopt;
    return bits_[pos_++];
}

std::optional<mpz_class> BitReader::read_gamma() {
    std::size_t start = pos_;
    std::size_t zeros = 0;
    while (pos_ < bits_.size() && !bits_[pos_]) {
        ++zeros;
        ++pos_;
    }
    if (pos_ + zeros + 1 > bits_.size()) {
        pos_ = start;
        return std::nullopt;
    }
    // Leading '1' plus `zeros` further bits of binary(n).
    std::string digits = bits_.str().substr(pos_, zeros + 1);
    pos_ += zeros + 1;
    return mpz_class(digits, 2);
}

std::optional<std::uint64_t> BitReader::read_gamma_u64() {
    std::size_t start = pos_;
    auto v = read_gamma();
    if (!v) return std::nullopt;
    if (mpz_sizeinbase(v->get_mpz_t(), 2) > 64) {
        pos_ = start;
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(mpz_get_ui(v->get_mpz_t()));
}

std::optional<BitString> BitReader::read_string() {
    std::size_t start = pos_;
    auto len = read_gamma_u64();
    if (!len || *len - 1 > bits_.size() - pos_) {
        pos_ = start;
        return std::nullopt;
    }
    BitString out = bits_.substr(pos_, *len - 1);
    pos_ += *len - 1;
    return out;
}

BitString gamma_encode(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("gamma_encode: n must be >= 1");
    int width = 64 - __builtin_clzll(n);
    BitString out;
    out.reserve(2 * width - 1);
    for (int i = 0; i < width - 1; ++i) out.push_back(false);
    for (int i = width; i-- > 0;) out.push_back((n >> i) & 1U);
    return out;
}

BitString gamma_encode(const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("gamma_encode: n must be >= 1");
    std::string digits = n.get_str(2);
    return BitString::parse(std::string(digits.size() - 1, '0') + digits);
}

std::optional<std::pair<std::uint64_t, BitString>> gamma_decode(const BitString& b) {
    BitReader r(b);
    auto v = r.read_gamma_u64();
    if (!v) return std::nullopt;
    return std::make_pair(*v, r.rest());
}

BitString encode_string(const BitString& x) { return gamma_encode(static_cast<std::uint64_t>(x.size()) + 1) + x; }

BitString encode_pair(const BitString& x, const BitString& y) { return encode_string(x) + encode_string(y); }

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

BitString ascii_bits(std::string_view text) {
    BitString b;
    for (unsigned char c : text)
        for (int i = 7; i >= 0; --i) b.push_back((c >> i) & 1U);
    return b;
}

std::string bits_ascii(const BitString& bits) {
    std::string out;
    for (std::size_t i = 0; i + 8 <= bits.size(); i += 8) {
        unsigned char c = 0;
        for (std::size_t k = 0; k < 8; ++k) c = static_cast<unsigned char>((c << 1) | (bits[i + k] ? 1 : 0));
        out.push_back(static_cast<char>(c));
    }
    return out;
}

}  // namespace aitlab
