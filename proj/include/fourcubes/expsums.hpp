#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourcubes/numerics/interval.hpp"

namespace fourcubes::expsums {

/// Residue counts of cubes modulo q. S(q, a) and C(q, a) are the discrete
/// Fourier transforms of counts_full and counts_unit respectively.
struct CubeHistogram {
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> counts_full;  // #{1 <= m <= q : m^3 = r mod q}
  std::vector<std::uint64_t> counts_unit;  // same, restricted to gcd(m, q) = 1
};

CubeHistogram cube_histograms(std::uint64_t q);

std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);

/// Ramanujan sum c_q(s) = sum_{d | gcd(q, s)} d * mu(q / d), with gcd(q, 0) = q.
std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t s);

/// T_d(q) as an exact rational number.
struct TValue {
  std::uint64_t d = 0;
  std::uint64_t q = 0;
  BigRational value;
};

/// Exact T_d(q) = sum_{(a,q)=1} S(q, a d^3) C(q,a)^3 conj(C(q,a))^4 / (q phi(q)^7).
///
/// The a-sum is collapsed with Ramanujan sums: with
///   H(x) = #{(m, m1..m7) : d^3 m^3 + m1^3 + m2^3 + m3^3 - m4^3 - ... - m7^3 = x mod q},
/// m free and m1..m7 units, the numerator equals sum_x H(x) c_q(x). H is built
/// by cyclic convolution of cube histograms in exact integer arithmetic.
/// Throws std::invalid_argument for q = 0 or d = 0.
TValue t_value_exact(std::uint64_t d, std::uint64_t q);

/// Direct floating-point double sum over a and m; independent of the
/// convolution route. Intended for q <= 200.
struct OracleValue {
  double real = 0.0;
  double imag = 0.0;
};
OracleValue t_value_oracle_complex(std::uint64_t d, std::uint64_t q);
/// Real part of the oracle; throws std::runtime_error if |imag| > 1e-9.
double t_value_oracle(std::uint64_t d, std::uint64_t q);

struct ExpSums {
  std::complex<double> full;  // S(q, a)
  std::complex<double> unit;  // C(q, a)
};

/// S(q, a) and C(q, a) through the cube histograms, O(q).
ExpSums exp_sums(std::uint64_t q, std::int64_t a);
/// Same quantities from the histogram of a precomputed modulus.
ExpSums exp_sums(const CubeHistogram& hist, std::int64_t a);

class WeilViolation : public std::runtime_error {
 public:
  WeilViolation(std::uint64_t p, std::uint64_t a, const std::string& what)
      : std::runtime_error(what), p_(p), a_(a) {}
  std::uint64_t p() const { return p_; }
  std::uint64_t a() const { return a_; }

 private:
  std::uint64_t p_;
  std::uint64_t a_;
};

struct WeilAudit {
  std::uint64_t p_max = 0;
  std::uint64_t primes_checked = 0;
  std::uint64_t pairs_checked = 0;
  double max_ratio_full = 0.0;  // max |S(p,a)| / (2 sqrt p) over p not dividing a
  double max_ratio_unit = 0.0;  // max |C(p,a)| / (2 sqrt p + 1)
  std::uint64_t worst_p = 0;
  std::uint64_t worst_a = 0;
  double max_divisible_error = 0.0;  // max |S(p, p) - p|
};

inline constexpr double kWeilTolerance = 1e-6;

/// Checks |S(p,a)| <= 2 sqrt(p) and |C(p,a)| <= 2 sqrt(p) + 1 for every prime
/// p <= p_max and 1 <= a < p, plus S(p, p) = p. Throws WeilViolation naming
/// the first offending pair.
WeilAudit weil_audit(std::uint64_t p_max);

}  // namespace fourcubes::expsums
