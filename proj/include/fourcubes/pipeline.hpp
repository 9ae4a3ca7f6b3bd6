#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fourcubes/euler_products.hpp"
#include "fourcubes/quadrature.hpp"
#include "fourcubes/report.hpp"

namespace fourcubes::pipeline {

inline constexpr const char* kVersion = "0.1.0";

/// Module names accepted by Config::skip.
const std::vector<std::string>& module_names();

struct Config {
  long precision_bits = 128;
  unsigned threads = 0;  // 0: hardware concurrency
  quadrature::Options quadrature;
  std::uint64_t weil_pmax = 1000;
  std::uint64_t congruence_limit = 10'000'000;
  std::uint64_t moments_N = 1'000'000;
  double moments_delta = 0.1;
  std::uint64_t density_limit = 10'000'000;
  std::set<std::string> skip;

  /// Throws std::invalid_argument for unknown module names or bad limits.
  void validate() const;
  bool skipped(const std::string& module) const { return skip.count(module) != 0; }
};

using report::Entry;
using report::VerificationReport;

std::vector<Entry> expsums_entries(const Config& config);

struct ProductsResult {
  products::ProductBound omega_baseline;
  products::ProductBound omega_certified;
  products::ProductBound sigma_baseline;
  products::ProductBound sigma_certified;
  Interval mertens;
  Interval W;
  std::vector<Entry> entries;
};
ProductsResult products_run(const Config& config);

struct QuadratureResult {
  quadrature::Enclosure K;
  Interval j;
  std::vector<Entry> entries;
};
QuadratureResult quadrature_run(const Config& config);

/// Congruence audit and admissible density.
std::vector<Entry> congruence_entries(const Config& config);
/// Restricted moment identities at (moments_N, moments_delta).
std::vector<Entry> moments_entries(const Config& config);
/// Desk-scale share of representable integers (informational).
std::vector<Entry> density_entries(const Config& config);
std::vector<Entry> enumeration_entries(const Config& config);

/// Constant chain C = e^gamma * J * W * S_1 evaluated on hi endpoints with
/// upward rounding, followed by the density 3^12 / (5^4 C) and its 8/7 multiple.
struct ChainResult {
  Interval e_gamma;
  Interval C_certified;
  Interval C_literal;    // quoted factors 440.62, 41.3794, 3.0964
  Interval C_alternate;  // quoted factors with 41.3805
  bool confirmed = false;  // C_certified <= 100552
  BigInt C_prime;          // smallest integer >= C_certified
  BigRational density0;    // 3^12 / (5^4 * 100552)
  BigRational final_density;
  BigRational density_prime;  // 3^12 / (5^4 * C_prime) * 8 / 7
  std::vector<Entry> entries;
};
ChainResult constant_chain(const Interval& j, const Interval& W, const Interval& S1);
/// Computes J, W and S_1 with the given configuration first.
VerificationReport constant_chain(const Config& config);

/// Runs every module not listed in config.skip and collects the entries.
/// Failures inside a module become failing entries; nothing short-circuits.
VerificationReport run_all(const Config& config = {});

}  // namespace fourcubes::pipeline
