#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace fourcubes {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Raised when an interval operation leaves the domain of the function
/// (division by an interval containing zero, log of a non-positive interval).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Mantissa bits used for newly created intervals. Defaults to 128.
mpfr_prec_t working_precision();
void set_working_precision(mpfr_prec_t bits);

/// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
/// lower endpoint toward -inf and the upper endpoint toward +inf, so the
/// result contains the exact image of the operands.
class Interval {
 public:
  Interval();
  explicit Interval(long value);
  explicit Interval(const BigRational& value);
  Interval(const BigRational& lo, const BigRational& hi);

  /// Outward-rounded enclosure of a decimal literal such as "0.5772156649".
  static Interval from_decimal(std::string_view text);
  /// Enclosure of a double, exact when the precision is at least 53 bits.
  static Interval from_double(double lo, double hi);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up
  BigRational lo_exact() const;
  BigRational hi_exact() const;
  /// Upper bound on hi - lo.
  double width() const;

  /// Decimal rendering with `digits` significant digits, lo rounded down and
  /// hi rounded up, so the printed pair still encloses the value.
  std::string lo_string(int digits = 25) const;
  std::string hi_string(int digits = 25) const;

  bool contains(const BigRational& x) const;
  bool contains(const Interval& other) const;
  bool contains_zero() const;
  bool strictly_positive() const;

  bool hi_le(const BigRational& bound) const;
  bool lo_ge(const BigRational& bound) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend Interval operator+(Interval lhs, const Interval& rhs) { return lhs += rhs; }
  friend Interval operator-(Interval lhs, const Interval& rhs) { return lhs -= rhs; }
  friend Interval operator*(Interval lhs, const Interval& rhs) { return lhs *= rhs; }
  friend Interval operator/(Interval lhs, const Interval& rhs) { return lhs /= rhs; }

  friend std::ostream& operator<<(std::ostream& os, const Interval& x);

 private:
  struct PrecTag {};
  Interval(PrecTag, mpfr_prec_t prec);
  void set_endpoints(mpfr_srcptr lo, mpfr_srcptr hi);

  friend Interval pow_int(const Interval&, long);
  friend Interval pow_rat(const Interval&, const BigRational&);
  friend Interval pow_real_hi(const Interval&, const Interval&);
  friend Interval root(const Interval&, unsigned long);
  friend Interval exp(const Interval&);
  friend Interval log(const Interval&);
  friend Interval sqrt(const Interval&);
  friend Interval hull(const Interval&, const Interval&);
  friend Interval intersect(const Interval&, const Interval&);
  friend Interval euler_gamma_enclosure();
  friend Interval pi_enclosure();

  mpfr_t lo_;
  mpfr_t hi_;
};

/// x^n for integer n; n < 0 requires 0 not in x.
Interval pow_int(const Interval& x, long n);
/// x^(p/q). Non-integer exponents require x strictly positive; evaluated as
/// (x^(1/q))^p with a correctly rounded q-th root.
Interval pow_rat(const Interval& x, const BigRational& exponent);
/// q-th root of a non-negative interval.
Interval root(const Interval& x, unsigned long q);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
/// Requires x strictly positive.
Interval log(const Interval& x);
/// [1, hi] with hi >= base^e for every point of the operands. Requires
/// base >= 1 and e >= 0.
Interval pow_real_hi(const Interval& base, const Interval& exponent);

Interval hull(const Interval& a, const Interval& b);
/// Throws DomainError if the intervals are disjoint.
Interval intersect(const Interval& a, const Interval& b);

enum class IntervalOp { add, sub, mul, div, pow_rat, exp, log };

/// Dispatching entry point used by the bindings and the fuzz tests.
/// Binary ops read `lhs` and `rhs`; unary ops read `lhs` only; pow_rat
/// additionally reads `exponent`.
Interval iv_arith(IntervalOp op, const Interval& lhs, const Interval& rhs = Interval(),
                  const BigRational& exponent = BigRational(1));

}  // namespace fourcubes
