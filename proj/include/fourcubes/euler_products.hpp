#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourcubes/numerics/interval.hpp"

namespace fourcubes::products {

/// Which family of Weil majorants, and hence which zeta tail, is used.
///
///   omega      factor 1 + 2 (sqrt p + 2)(2 sqrt p + 1)^7 / (sqrt p (p-1)^7),
///              tail prod (1 + M / p^(7/2)) via zeta(7/2)/zeta(7)
///   sigma      factor 1 + 2 (2 sqrt p + 1)^7 / (sqrt p (p-1)^7),
///              tail prod (1 + M / p^4) via zeta(4)/zeta(8)
///   sigma_weil factor 1 + 2 (2 sqrt p + 1)^7 / (sqrt p (p-1)^6),
///              tail prod (1 + M / p^3) via zeta(3)/zeta(6)
///
/// `sigma` is the majorant quoted for the singular series. It is too small
/// by a factor p - 1: bounding each of the p - 1 terms of T_1(p) by
/// 2 sqrt p (2 sqrt p + 1)^7 and dividing by p (p-1)^7 gives
/// |T_1(p)| <= 2 (2 sqrt p + 1)^7 / (sqrt p (p-1)^6), which is `sigma_weil`.
/// Exact values exceed the `sigma` majorant (e.g. p = 13, 199, 499), so only
/// `sigma_weil` yields a certified bound.
enum class TailKind { omega, sigma, sigma_weil };

std::string to_string(TailKind kind);

/// e^(-gamma) * (180/11) * 2 * (3/2) * (5/4) * (7/6).
Interval mertens_small_prime_constant();

/// The exponent M(P) with M(p) / p^s majorising the Weil factor for all p >= P.
Interval tail_constant(std::uint64_t P, TailKind kind);

/// zeta(s)/zeta(2s) * prod_{p <= P} (1 + p^-s)^-1 = prod_{p > P} (1 + p^-s).
Interval tail_base(std::uint64_t P, TailKind kind, std::uint64_t zeta_terms = 100000);

/// Upper bound [1, base^M] for prod_{p > P} (1 + M / p^s).
Interval tail_product_bound(std::uint64_t P, TailKind kind, std::uint64_t zeta_terms = 100000);

/// Upper bound of one Weil factor at prime p.
Interval weil_factor(std::uint64_t p, TailKind kind);

/// Exact omega factor 1 - (T_p(p) - T_1(p)) / (p - 1).
BigRational omega_factor_exact(std::uint64_t p);

/// A three-segment certified bound: exact primes, Weil-bounded primes, tail.
struct ProductBound {
  std::string name;
  std::pair<std::uint64_t, std::uint64_t> explicit_range;  // inclusive
  std::pair<std::uint64_t, std::uint64_t> weil_range;      // (lo, hi]
  std::uint64_t tail_start = 0;                            // primes > tail_start
  TailKind kind = TailKind::omega;
  BigRational explicit_exact;
  Interval explicit_segment;
  Interval weil_segment;
  Interval tail_segment;
  Interval value;
  double paper_value = 0.0;
};

struct ProductPlan {
  std::uint64_t explicit_hi = 200;
  std::uint64_t weil_hi = 4000;
  TailKind kind = TailKind::omega;
  unsigned threads = 0;  // 0: hardware concurrency

  /// Exact primes 11..200, Weil primes (200, 4000], tail p > 4000.
  static ProductPlan baseline_omega();
  /// Exact primes 11..1000; tightens the bound below 1.02944.
  static ProductPlan certified_omega();
  /// Exact primes 5..500 and the quoted singular series majorant.
  static ProductPlan baseline_sigma();
  /// Exact primes 5..1000 and the corrected singular series majorant.
  static ProductPlan certified_sigma();
};

/// Bound for prod_{p >= 11} (1 - (T_p(p) - T_1(p)) / (p - 1)).
ProductBound omega_product_bound(const ProductPlan& plan = ProductPlan::certified_omega());

/// Bound for S_1 = (1 + T_1(3) + T_1(9)) prod_{p >= 5} (1 + T_1(p)).
ProductBound singular_series_S1(const ProductPlan& plan = ProductPlan::certified_sigma());

/// e^(-gamma)(180/11)(35/8) * omega bound.
Interval sieve_constant_W(const ProductBound& omega);
Interval sieve_constant_W();

class BoundFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws BoundFailure carrying the segment breakdown unless value.hi <= limit.
void require_upper_bound(const ProductBound& bound, const BigRational& limit);

std::string describe(const ProductBound& bound);

}  // namespace fourcubes::products
