#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fourcubes/expsums.hpp"
#include "support/oracles.hpp"

using namespace fourcubes;
using namespace fourcubes::expsums;

TEST_SUITE("expsums") {
  TEST_CASE("exact values agree with the direct double sum for q <= 200") {
    for (std::uint64_t q = 2; q <= 200; ++q) {
      for (std::uint64_t d : {std::uint64_t{1}, q}) {
        const double exact = t_value_exact(d, q).value.get_d();
        const double oracle = t_value_oracle(d, q);
        INFO("q = " << q << ", d = " << d);
        REQUIRE(std::fabs(exact - oracle) <= 1e-9);
      }
    }
  }

  TEST_CASE("closed forms") {
    CHECK(t_value_exact(1, 2).value == 0);
    CHECK(t_value_exact(2, 2).value == -1);
    CHECK(t_value_exact(5, 5).value == BigRational(-1, 4096));
    CHECK(t_value_exact(1, 9).value == BigRational(41, 64));
    CHECK(t_value_exact(1, 27).value == 0);
    CHECK(t_value_exact(1, 1).value == 1);
    // p = 2 mod 3: cubing permutes residues, so C(p, a) = mu(p) and S(p, a) = 0.
    for (std::uint64_t p : {5, 11, 17, 23, 29}) CHECK(t_value_exact(1, p).value == 0);
  }

  TEST_CASE("T_1 is multiplicative on coprime moduli") {
    CHECK(t_value_exact(1, 63).value == t_value_exact(1, 7).value * t_value_exact(1, 9).value);
    CHECK(t_value_exact(1, 91).value == t_value_exact(1, 7).value * t_value_exact(1, 13).value);
  }

  TEST_CASE("Ramanujan sums match the cosine definition") {
    for (std::uint64_t q = 1; q <= 60; ++q) {
      for (std::int64_t s = -5; s <= 70; ++s) {
        double c = 0.0;
        for (std::uint64_t a = 1; a <= q; ++a) {
          if (std::gcd(a, q) == 1) c += std::cos(2 * std::numbers::pi * static_cast<double>(a) * static_cast<double>(s) / static_cast<double>(q));
        }
        REQUIRE(ramanujan_sum(q, s) == std::llround(c));
      }
    }
  }

  TEST_CASE("phi and mobius") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(36) == 12);
    CHECK(euler_phi(97) == 96);
    CHECK(mobius(1) == 1);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(35) == 1);
  }

  TEST_CASE("cube histograms count every residue") {
    const auto h = cube_histograms(27);
    std::uint64_t full = 0, unit = 0;
    for (auto c : h.counts_full) full += c;
    for (auto c : h.counts_unit) unit += c;
    CHECK(full == 27);
    CHECK(unit == 18);
  }

  TEST_CASE("exponential sums match the definition") {
    for (std::uint64_t q : {7, 9, 13, 27}) {
      for (std::int64_t a = 1; a < static_cast<std::int64_t>(q); ++a) {
        std::complex<double> s = 0.0, c = 0.0;
        for (std::uint64_t m = 1; m <= q; ++m) {
          const double phase = 2 * std::numbers::pi * static_cast<double>((a * static_cast<std::int64_t>(m * m * m % q)) % static_cast<std::int64_t>(q)) / static_cast<double>(q);
          const auto z = std::polar(1.0, phase);
          s += z;
          if (std::gcd(m, q) == 1) c += z;
        }
        const auto e = exp_sums(q, a);
        REQUIRE(std::abs(e.full - s) < 1e-9);
        REQUIRE(std::abs(e.unit - c) < 1e-9);
      }
    }
  }

  TEST_CASE("Weil audit up to 1000") {
    const auto a = weil_audit(1000);
    CHECK(a.primes_checked == 168);
    CHECK(a.max_ratio_full <= 1.0);
    CHECK(a.max_ratio_full > 0.99);
    CHECK(a.max_divisible_error < 1e-6);
  }

  TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(t_value_exact(0, 7), std::invalid_argument);
    CHECK_THROWS_AS(t_value_exact(1, 0), std::invalid_argument);
  }

  TEST_CASE("values at 7 and at primes 2 mod 3") {
    CHECK(t_value_exact(1, 7).value == BigRational(21, 32));
    CHECK(t_value_exact(7, 7).value == BigRational(-57, 64));
    for (auto p : oracles::primes_between(5, 200)) {
      if (p % 3 != 2) continue;
      BigRational expected = -1;
      for (int i = 0; i < 6; ++i) expected /= BigRational(p - 1);
      INFO("p = " << p);
      CHECK(t_value_exact(1, p).value == 0);
      CHECK(t_value_exact(p, p).value == expected);
    }
  }
}
