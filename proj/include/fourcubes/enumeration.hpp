#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fourcubes/numerics/interval.hpp"

namespace fourcubes::enumeration {

struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<bool> membership;     // membership[n] <=> n prime, 0 <= n <= limit
  std::vector<std::uint64_t> list;  // ascending

  bool is_prime(std::uint64_t n) const { return n <= limit && membership[n]; }
  /// Number of primes in [lo, hi] (hi clipped to limit).
  std::uint64_t count_between(std::uint64_t lo, std::uint64_t hi) const;
};

/// Sieve of Eratosthenes over [0, limit]; limit >= 2.
PrimeTable sieve_primes(std::uint64_t limit);

using Quadruple = std::array<std::uint32_t, 4>;

/// Integers in [0, X] that are sums of four prime cubes.
struct RepSet {
  std::uint64_t X = 0;
  std::vector<bool> representable;
  std::unordered_map<std::uint64_t, Quadruple> witness;  // one quadruple per n, p1 <= ... <= p4

  bool contains(std::uint64_t n) const { return n <= X && representable[n]; }
  std::uint64_t count() const;
  std::uint64_t count_up_to(std::uint64_t bound) const;
};

/// Exact representable set, built from all two-prime-cube sums <= X combined
/// in pairs. X >= 32.
RepSet four_cube_set(std::uint64_t X, bool keep_witnesses = true);

/// Little-endian packed bit array with a 64-byte header: "4PC1", then X as a
/// little-endian 64-bit integer, zero padding. Bit n lives in byte n / 8 at
/// position n % 8.
void write_dump(const RepSet& set, const std::filesystem::path& path);
RepSet read_dump(const std::filesystem::path& path);

class CongruenceViolation : public std::runtime_error {
 public:
  CongruenceViolation(const Quadruple& q, const std::string& what) : std::runtime_error(what), quadruple_(q) {}
  const Quadruple& quadruple() const { return quadruple_; }

 private:
  Quadruple quadruple_;
};

/// Residue classes mod 126 that are even, not +-1, +-3 mod 9 and not +-1 mod 7.
std::vector<unsigned> admissible_classes_mod126();
/// |admissible classes| / 126, by CRT enumeration.
BigRational admissible_density();

struct CongruenceAudit {
  std::uint64_t X = 0;
  std::uint64_t representations_checked = 0;
  std::uint64_t all_odd = 0;  // representations with four odd primes
  std::uint64_t without_3 = 0;
  std::uint64_t without_7 = 0;
  std::array<std::uint64_t, 126> class_counts{};  // representable n <= X per class mod 126
  std::uint64_t representable = 0;
  std::uint64_t representable_admissible = 0;
  BigRational admissible_density;
};

/// Checks every representation n = p1^3 + ... + p4^3 <= X (p1 <= ... <= p4):
///   all primes odd  => n even
///   no prime is 3   => n mod 9 in {0, 2, 4, 5, 7}
///   no prime is 7   => n mod 7 not in {1, 6}
/// Throws CongruenceViolation with the offending quadruple.
CongruenceAudit congruence_audit(std::uint64_t X);

struct RestrictedMoments {
  std::uint64_t N = 0;
  double delta = 0.0;
  double U = 0.0;  // (N / (16 + delta))^(1/3)
  double V = 0.0;  // U^(5/6)
  std::uint64_t primes_U = 0;  // pi(2U) - pi(U)
  std::uint64_t primes_V = 0;  // pi(2V) - pi(V)
  std::uint64_t sum_r = 0;
  std::uint64_t sum_r2 = 0;
  std::uint64_t distinct = 0;
  /// sum_r * L^4 / (U^2 V^2) with L = log N; tends to 3^4 6^2 / 5^2 = 116.64.
  double coefficient_estimate = 0.0;
};

/// Prime ranges U <= p <= 2U and V <= p <= 2V together with the counts r(n)
/// of ordered representations n = p1^3 + p2^3 + p3^3 + p4^3, p1, p2 in the
/// U-range and p3, p4 in the V-range.
class RestrictedRanges {
 public:
  RestrictedRanges(std::uint64_t N, double delta);

  std::uint64_t N() const { return N_; }
  double delta() const { return delta_; }
  double U() const { return U_; }
  double V() const { return V_; }
  const std::vector<std::uint64_t>& primes_U() const { return primes_U_; }
  const std::vector<std::uint64_t>& primes_V() const { return primes_V_; }
  /// r(n); zero when n has no restricted representation.
  std::uint64_t r(std::uint64_t n) const;
  const std::map<std::uint64_t, std::uint64_t>& r_table() const { return r_; }

 private:
  std::uint64_t N_;
  double delta_;
  double U_;
  double V_;
  std::vector<std::uint64_t> primes_U_;
  std::vector<std::uint64_t> primes_V_;
  std::map<std::uint64_t, std::uint64_t> r_;
};

/// Throws std::domain_error naming the range when either prime range is empty.
RestrictedMoments restricted_moments(std::uint64_t N, double delta);
RestrictedMoments restricted_moments(const RestrictedRanges& ranges);

/// R(m): solutions of m^3 + p2^3 + p3^3 + p4^3 = p5^3 + p6^3 + p7^3 + p8^3 with
/// p2, p5, p6 in the U-range and p3, p4, p7, p8 in the V-range.
std::uint64_t capital_R(std::uint64_t m, std::uint64_t N, double delta);
std::uint64_t capital_R(std::uint64_t m, const RestrictedRanges& ranges);

struct DensityReport {
  std::uint64_t X = 0;
  std::uint64_t representable = 0;
  std::uint64_t representable_admissible = 0;
  double density_all = 0.0;
  double density_admissible = 0.0;
  double target_lower_density = 0.009664;
  double admissible_upper_density = 25.0 / 126.0;
};

DensityReport empirical_density(std::uint64_t X);
DensityReport empirical_density(const RepSet& set);

}  // namespace fourcubes::enumeration
