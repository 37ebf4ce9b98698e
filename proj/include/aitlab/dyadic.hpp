#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace aitlab {

// Exact dyadic rational num / 2^exp, kept normalized (num odd, or num == 0
// with exp == 0). Negative exponents represent even integers.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(long value);  // NOLINT(google-explicit-constructor)

    static Dyadic from_parts(mpz_class num, std::int64_t exp);
    static Dyadic pow2(std::int64_t e) { return from_parts(1, -e); }

    // Accepts "p/2^q", "p", or "-p/2^q".
    static Dyadic parse(std::string_view text);

    const mpz_class& numerator() const noexcept { return num_; }
    std::int64_t exponent() const noexcept { return exp_; }

    int sign() const noexcept { return sgn(num_); }
    bool is_zero() const noexcept { return num_ == 0; }
    // True for +-2^e.
    bool is_power_of_two() const;

    Dyadic operator-() const { return from_parts(-num_, exp_); }
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    // this * 2^k
    Dyadic scaled(std::int64_t k) const { return num_ == 0 ? *this : from_parts(num_, exp_ - k); }

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.num_ == b.num_ && a.exp_ == b.exp_; }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    // floor and ceiling as integers
    mpz_class floor() const;
    mpz_class ceil() const;

    // Round down/up onto the grid 2^-bits.
    Dyadic round_down(std::int64_t bits) const;
    Dyadic round_up(std::int64_t bits) const;

    mpq_class to_mpq() const;
    long double to_long_double() const;
    double to_double() const { return static_cast<double>(to_long_double()); }
    // "p/2^q" or an integer literal.
    std::string to_string() const;

private:
    void normalize();

    mpz_class num_ = 0;
    std::int64_t exp_ = 0;
};

// Closed interval with dyadic endpoints enclosing a real quantity.
struct RealInterval {
    Dyadic lo;
    Dyadic hi;

    static RealInterval point(const Dyadic& v) { return {v, v}; }

    Dyadic width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(const Dyadic& v) const { return lo <= v && v <= hi; }

    friend RealInterval operator+(const RealInterval& a, const RealInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend RealInterval operator-(const RealInterval& a, const RealInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend bool operator==(const RealInterval&, const RealInterval&) = default;
    // Multiplication by a non-negative constant.
    RealInterval scaled_by(const Dyadic& nonneg) const { return {lo * nonneg, hi * nonneg}; }
};

// Directed-rounding enclosure of log2(n) for an integer n >= 1, with width at
// most 2^-bits. Exact when n is a power of two.
RealInterval log2_interval(const mpz_class& n, unsigned bits);

// Exact decision of log2(n) <= t for integer n >= 1 and dyadic t.
bool log2_at_most(const mpz_class& n, const Dyadic& t);

}  // namespace aitlab
