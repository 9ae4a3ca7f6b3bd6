#include "fourcubes/numerics/constants.hpp"

#include <algorithm>

namespace fourcubes {

Interval zeta_enclosure(const BigRational& s, std::uint64_t terms) {
  if (s <= 1) throw DomainError("zeta_enclosure requires s > 1");
  if (terms == 0 || terms > (std::uint64_t{1} << 62)) {
    throw std::invalid_argument("zeta_enclosure: terms must lie in [1, 2^62]");
  }

  const BigRational minus_s = -s;
  Interval sum(0L);
  // Smallest terms first keeps the accumulated rounding small.
  for (std::uint64_t n = terms; n >= 1; --n) {
    sum += pow_rat(Interval(static_cast<long>(n)), minus_s);
  }

  const BigRational one_minus_s = 1 - s;
  const Interval s_minus_one(s - 1);
  const long n = static_cast<long>(terms);
  const Interval upper_tail = pow_rat(Interval(n), one_minus_s) / s_minus_one;
  const Interval lower_tail = pow_rat(Interval(n + 1), one_minus_s) / s_minus_one;

  return sum + hull(lower_tail, upper_tail);
}

Interval euler_gamma_enclosure() {
  Interval r(Interval::PrecTag{}, std::max<mpfr_prec_t>(working_precision(), 128));
  mpfr_const_euler(r.lo_, MPFR_RNDD);
  mpfr_const_euler(r.hi_, MPFR_RNDU);
  return r;
}

Interval pi_enclosure() {
  Interval r(Interval::PrecTag{}, working_precision());
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

}  // namespace fourcubes
