#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace streamcalc {

// Exact rational number, always kept in canonical form (gcd(num, den) = 1,
// den > 0). Arithmetic never rounds; division by zero throws.
class rational {
public:
    rational() : q_(0) {}
    rational(long n) : q_(n) {}
    rational(long num, long den);
    explicit rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Parses a decimal integer literal (optionally signed).
    static rational from_decimal(const std::string& digits);

    rational operator+(const rational& o) const { return rational(mpq_class(q_ + o.q_)); }
    rational operator-(const rational& o) const { return rational(mpq_class(q_ - o.q_)); }
    rational operator*(const rational& o) const { return rational(mpq_class(q_ * o.q_)); }
    rational operator/(const rational& o) const;
    rational operator-() const { return rational(mpq_class(-q_)); }

    bool operator==(const rational& o) const { return q_ == o.q_; }
    bool operator!=(const rational& o) const { return q_ != o.q_; }
    bool operator<(const rational& o) const { return q_ < o.q_; }
    bool operator<=(const rational& o) const { return q_ <= o.q_; }
    bool operator>(const rational& o) const { return q_ > o.q_; }
    bool operator>=(const rational& o) const { return q_ >= o.q_; }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_natural() const { return is_integer() && q_ >= 0; }

    // Precondition: is_natural() and the value fits in 64 bits.
    std::uint64_t to_index() const;
    bool fits_index() const;

    // "p" when integral, "p/q" otherwise.
    std::string str() const;

private:
    mpq_class q_;
};

}  // namespace streamcalc
