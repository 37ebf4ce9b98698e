#include "aitlab/dyadic.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include <mpfr.h>

namespace aitlab {

namespace {

// Owning handle for an mpfr_t.
class MpfrValue {
public:
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(value_, prec); }
    ~MpfrValue() { mpfr_clear(value_); }
    MpfrValue(const MpfrValue&) = delete;
    MpfrValue& operator=(const MpfrValue&) = delete;

    mpfr_ptr get() { return value_; }

    Dyadic to_dyadic() {
        mpz_class z;
        mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), value_);
        return Dyadic::from_parts(z, -static_cast<std::int64_t>(e));
    }

private:
    mpfr_t value_;
};

std::size_t bit_length(const mpz_class& n) { return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2); }

}  // namespace

Dyadic::Dyadic(long value) : num_(value), exp_(0) { normalize(); }

Dyadic Dyadic::from_parts(mpz_class num, std::int64_t exp) {
    Dyadic d;
    d.num_ = std::move(num);
    d.exp_ = exp;
    d.normalize();
    return d;
}

void Dyadic::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), tz);
        exp_ -= static_cast<std::int64_t>(tz);
    }
}

Dyadic Dyadic::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("not a dyadic literal (expected p/2^q): '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    auto slash = text.find('/');
    std::string num_text(text.substr(0, slash));
    mpz_class num;
    if (num_text.empty() || num.set_str(num_text, 10) != 0) throw fail();
    if (slash == std::string_view::npos) return from_parts(num, 0);
    std::string_view den = text.substr(slash + 1);
    if (den.size() < 3 || den.substr(0, 2) != "2^") throw fail();
    std::int64_t q = 0;
    for (char c : den.substr(2)) {
        if (c < '0' || c > '9') throw fail();
        q = q * 10 + (c - '0');
        if (q > (std::int64_t{1} << 40)) throw fail();
    }
    return from_parts(num, q);
}

bool Dyadic::is_power_of_two() const { return num_ == 1 || num_ == -1; }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::int64_t e = std::max(a.exp_, b.exp_);
    mpz_class x = a.num_, y = b.num_;
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(e - a.exp_));
    mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), static_cast<mp_bitcnt_t>(e - b.exp_));
    return Dyadic::from_parts(x + y, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic::from_parts(a.num_ * b.num_, a.exp_ + b.exp_); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    int s = (a - b).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

mpz_class Dyadic::floor() const {
    mpz_class out = num_;
    if (exp_ > 0)
        mpz_fdiv_q_2exp(out.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
    else
        mpz_mul_2exp(out.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
    return out;
}

mpz_class Dyadic::ceil() const {
    mpz_class out = num_;
    if (exp_ > 0)
        mpz_cdiv_q_2exp(out.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
    else
        mpz_mul_2exp(out.get_mpz_t(), num_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exp_));
    return out;
}

Dyadic Dyadic::round_down(std::int64_t bits) const {
    if (exp_ <= bits) return *this;
    return from_parts(scaled(bits).floor(), bits);
}

Dyadic Dyadic::round_up(std::int64_t bits) const {
    if (exp_ <= bits) return *this;
    return from_parts(scaled(bits).ceil(), bits);
}

mpq_class Dyadic::to_mpq() const {
    mpq_class q(num_);
    if (exp_ > 0)
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exp_));
    else
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp_));
    return q;
}

long double Dyadic::to_long_double() const {
    MpfrValue v(64);
    mpfr_set_z(v.get(), num_.get_mpz_t(), MPFR_RNDN);
    mpfr_mul_2si(v.get(), v.get(), static_cast<long>(-exp_), MPFR_RNDN);
    return mpfr_get_ld(v.get(), MPFR_RNDN);
}

std::string Dyadic::to_string() const {
    if (exp_ <= 0) return scaled(0).floor().get_str();
    return num_.get_str() + "/2^" + std::to_string(exp_);
}

RealInterval log2_interval(const mpz_class& n, unsigned bits) {
    if (n < 1) throw std::invalid_argument("log2_interval: n must be >= 1");
    std::size_t len = bit_length(n);
    if (mpz_popcount(n.get_mpz_t()) == 1) return RealInterval::point(Dyadic(static_cast<long>(len - 1)));
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits + bit_length(mpz_class(static_cast<unsigned long>(len))) + 8);
    const Dyadic limit = Dyadic::pow2(-static_cast<std::int64_t>(bits));
    for (;;) {
        MpfrValue lo(prec), hi(prec);
        mpfr_set_z(lo.get(), n.get_mpz_t(), MPFR_RNDD);
        mpfr_log2(lo.get(), lo.get(), MPFR_RNDD);
        mpfr_set_z(hi.get(), n.get_mpz_t(), MPFR_RNDU);
        mpfr_log2(hi.get(), hi.get(), MPFR_RNDU);
        RealInterval out{lo.to_dyadic(), hi.to_dyadic()};
        if (out.width() <= limit) return out;
        prec += 16;
    }
}

bool log2_at_most(const mpz_class& n, const Dyadic& t) {
    if (n < 1) throw std::invalid_argument("log2_at_most: n must be >= 1");
    if (t.sign() < 0) return false;
    std::size_t len = bit_length(n);
    if (mpz_popcount(n.get_mpz_t()) == 1) return Dyadic(static_cast<long>(len - 1)) <= t;
    // log2(n) is irrational here, so refinement always separates it from t.
    for (unsigned bits = 32;; bits *= 2) {
        RealInterval iv = log2_interval(n, bits);
        if (iv.hi <= t) return true;
        if (iv.lo > t) return false;
    }
}

}  // namespace aitlab
