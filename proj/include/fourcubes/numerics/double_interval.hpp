#pragma once

#include <cmath>
#include <limits>

namespace fourcubes {

/// Interval with double endpoints. Arithmetic is performed in
/// round-to-nearest and each endpoint is then pushed one ulp outward, which
/// encloses the exact result because a correctly rounded IEEE operation is
/// within half an ulp. Used in the quadrature inner loop where MPFR would
/// dominate the running time.
struct DoubleInterval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr DoubleInterval() = default;
  constexpr DoubleInterval(double point) : lo(point), hi(point) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleInterval(double l, double h) : lo(l), hi(h) {}

  double width() const { return up(hi - lo); }
  double mid() const { return 0.5 * (lo + hi); }
  /// Largest absolute deviation from mid(), rounded up.
  double rad() const;
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const DoubleInterval& o) const { return lo <= o.lo && o.hi <= hi; }

  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
};

DoubleInterval operator+(const DoubleInterval& a, const DoubleInterval& b);
DoubleInterval operator-(const DoubleInterval& a, const DoubleInterval& b);
DoubleInterval operator-(const DoubleInterval& a);
DoubleInterval operator*(const DoubleInterval& a, const DoubleInterval& b);
/// Throws DomainError when b contains zero.
DoubleInterval operator/(const DoubleInterval& a, const DoubleInterval& b);

/// x^2, tighter than x * x when x straddles zero.
DoubleInterval square(const DoubleInterval& x);
DoubleInterval hull(const DoubleInterval& a, const DoubleInterval& b);

/// Certified cube root of a positive double, as an interval [r, s] with
/// r^3 <= x <= s^3 verified by outward-rounded cubing.
DoubleInterval certified_cbrt(double x);

/// t^(-2/3) for t > 0, computed as (t^(1/3))^(-2).
DoubleInterval inv_pow_two_thirds(const DoubleInterval& t);

}  // namespace fourcubes
