#include "streamcalc/rational.hpp"

#include <limits>

#include "streamcalc/errors.hpp"

namespace streamcalc {

rational::rational(long num, long den) : q_(num, den) {
    if (den == 0) throw division_by_zero();
    q_.canonicalize();
}

rational rational::from_decimal(const std::string& digits) {
    return rational(mpq_class(digits, 10));
}

rational rational::operator/(const rational& o) const {
    if (o.is_zero()) throw division_by_zero();
    return rational(mpq_class(q_ / o.q_));
}

bool rational::fits_index() const {
    return is_natural() && q_.get_num().fits_ulong_p();
}

std::uint64_t rational::to_index() const {
    return q_.get_num().get_ui();
}

std::string rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

}  // namespace streamcalc
