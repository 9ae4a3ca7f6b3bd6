#include "fourcubes/numerics/double_interval.hpp"

#include <algorithm>

#include "fourcubes/numerics/interval.hpp"

namespace fourcubes {

namespace {

double mul_down(double a, double b) { return DoubleInterval::down(a * b); }
double mul_up(double a, double b) { return DoubleInterval::up(a * b); }

}  // namespace

double DoubleInterval::rad() const {
  const double m = mid();
  return up(std::max(up(hi - m), up(m - lo)));
}

DoubleInterval operator+(const DoubleInterval& a, const DoubleInterval& b) {
  return {DoubleInterval::down(a.lo + b.lo), DoubleInterval::up(a.hi + b.hi)};
}

DoubleInterval operator-(const DoubleInterval& a, const DoubleInterval& b) {
  return {DoubleInterval::down(a.lo - b.hi), DoubleInterval::up(a.hi - b.lo)};
}

DoubleInterval operator-(const DoubleInterval& a) { return {-a.hi, -a.lo}; }

DoubleInterval operator*(const DoubleInterval& a, const DoubleInterval& b) {
  if (a.lo >= 0.0 && b.lo >= 0.0) {
    return {mul_down(a.lo, b.lo), mul_up(a.hi, b.hi)};
  }
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  const auto [mn, mx] = std::minmax_element(p, p + 4);
  return {DoubleInterval::down(*mn), DoubleInterval::up(*mx)};
}

DoubleInterval operator/(const DoubleInterval& a, const DoubleInterval& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) {
    throw DomainError("interval division by an interval containing zero");
  }
  const double p[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  const auto [mn, mx] = std::minmax_element(p, p + 4);
  return {DoubleInterval::down(*mn), DoubleInterval::up(*mx)};
}

DoubleInterval square(const DoubleInterval& x) {
  if (x.lo >= 0.0) return {mul_down(x.lo, x.lo), mul_up(x.hi, x.hi)};
  if (x.hi <= 0.0) return {mul_down(x.hi, x.hi), mul_up(x.lo, x.lo)};
  const double m = std::max(-x.lo, x.hi);
  return {0.0, mul_up(m, m)};
}

DoubleInterval hull(const DoubleInterval& a, const DoubleInterval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

DoubleInterval certified_cbrt(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("certified_cbrt expects a positive finite value");
  const double guess = std::cbrt(x);
  double lo = guess;
  while (mul_up(mul_up(lo, lo), lo) > x) lo = DoubleInterval::down(lo);
  double hi = guess;
  while (mul_down(mul_down(hi, hi), hi) < x) hi = DoubleInterval::up(hi);
  return {lo, hi};
}

DoubleInterval inv_pow_two_thirds(const DoubleInterval& t) {
  if (!(t.lo > 0.0)) throw DomainError("t^(-2/3) needs t > 0");
  // Decreasing in t: the lower bound comes from the upper endpoint.
  const double root_hi = certified_cbrt(t.hi).hi;
  const double root_lo = certified_cbrt(t.lo).lo;
  return {DoubleInterval::down(1.0 / mul_up(root_hi, root_hi)),
          DoubleInterval::up(1.0 / mul_down(root_lo, root_lo))};
}

}  // namespace fourcubes
