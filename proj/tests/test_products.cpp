#include <doctest.h>

#include <cmath>

#include "fourcubes/euler_products.hpp"
#include "fourcubes/expsums.hpp"
#include "support/oracles.hpp"

using namespace fourcubes;
using namespace fourcubes::products;

TEST_SUITE("products") {
  TEST_CASE("small-prime Mertens constant") {
    const Interval m = mertens_small_prime_constant();
    CHECK(m.lo_ge(BigRational(401953, 10000)));
    CHECK(m.hi_le(BigRational(401955, 10000)));
    const Interval base = m / Interval(BigRational(2 * 3 * 5 * 7, 2 * 4 * 6));
    CHECK(base.lo_ge(BigRational(91874, 10000)));
    CHECK(base.hi_le(BigRational(91876, 10000)));
  }

  TEST_CASE("tail constants decrease towards 256") {
    for (auto kind : {TailKind::omega, TailKind::sigma, TailKind::sigma_weil}) {
      const Interval m1 = tail_constant(1000, kind), m2 = tail_constant(2000, kind), m4 = tail_constant(4000, kind);
      INFO(to_string(kind));
      CHECK(m1.lo_ge(m2.hi_exact()));
      CHECK(m2.lo_ge(m4.hi_exact()));
      CHECK(m4.lo_ge(BigRational(256)));
    }
  }

  TEST_CASE("tail bases exceed one and the tail products are small") {
    for (auto kind : {TailKind::omega, TailKind::sigma, TailKind::sigma_weil}) {
      const Interval b = tail_base(4000, kind);
      CHECK(b.lo_ge(BigRational(1)));
      CHECK(b.contains(BigRational(1)) == false);
      const Interval t = tail_product_bound(4000, kind);
      CHECK(t.lo_exact() == 1);
      CHECK(t.hi_le(BigRational(1001, 1000)));
    }
  }

  TEST_CASE("tail base against a direct partial product") {
    // prod_{P < p <= Q} (1 + p^-4) is a lower bound for the whole tail; the
    // primes above Q contribute less than 1e-17.
    long double log_partial = 0.0L;
    for (auto p : oracles::primes_between(4001, 200000)) log_partial += std::log1p(std::pow(static_cast<long double>(p), -4.0L));
    const double excess = static_cast<double>(std::expm1(log_partial));
    const Interval b = tail_base(4000, TailKind::sigma);
    const double b_excess = (b - Interval(1L)).hi_double();
    CHECK(b_excess >= excess);
    CHECK(b_excess - excess < 1e-17);
  }

  TEST_CASE("omega factor at primes 2 mod 3") {
    for (std::uint64_t p : {11, 17, 23, 29, 41}) {
      BigRational expected = 1;
      BigRational step(1, p - 1);
      BigRational power = 1;
      for (int i = 0; i < 7; ++i) power *= step;
      expected += power;
      CHECK(omega_factor_exact(p) == expected);
    }
  }

  TEST_CASE("omega factor agrees with the exact T values") {
    for (std::uint64_t p : {13, 19, 31}) {
      const BigRational tp = expsums::t_value_exact(p, p).value;
      const BigRational t1 = expsums::t_value_exact(1, p).value;
      CHECK(omega_factor_exact(p) == 1 - (tp - t1) / BigRational(p - 1));
    }
  }

  TEST_CASE("exact segments") {
    const auto omega = omega_product_bound(ProductPlan::baseline_omega());
    CHECK(omega.explicit_exact.get_d() == doctest::Approx(1.029436728961989).epsilon(1e-14));
    const auto s1 = singular_series_S1(ProductPlan::baseline_sigma());
    CHECK(s1.explicit_exact.get_d() == doctest::Approx(3.0962831364741583).epsilon(1e-14));
  }

  TEST_CASE("certified bounds") {
    const auto omega = omega_product_bound();
    CHECK(omega.value.hi_le(BigRational(102944, 100000)));
    CHECK_NOTHROW(require_upper_bound(omega, BigRational(102944, 100000)));
    const Interval W = sieve_constant_W(omega);
    CHECK(W.hi_le(BigRational(413794, 10000)));
    const auto s1 = singular_series_S1();
    CHECK(s1.value.hi_le(BigRational(30964, 10000)));
    CHECK(s1.value.lo_ge(BigRational(30962, 10000)));
  }

  TEST_CASE("the baseline omega plan does not certify 1.02944") {
    const auto omega = omega_product_bound(ProductPlan::baseline_omega());
    CHECK_FALSE(omega.value.hi_le(BigRational(102944, 100000)));
    CHECK_THROWS_AS(require_upper_bound(omega, BigRational(102944, 100000)), BoundFailure);
  }

  TEST_CASE("quoted singular series majorant fails at p = 13") {
    const double t = std::fabs(expsums::t_value_exact(1, 13).value.get_d());
    CHECK(t > weil_factor(13, TailKind::sigma).hi_double() - 1.0);
    CHECK(t <= weil_factor(13, TailKind::sigma_weil).lo_double() - 1.0);
  }

  TEST_CASE("corrected and omega majorants dominate the exact values") {
    for (auto p : oracles::primes_between(7, 600)) {
      if (p % 3 != 1) continue;
      const BigRational t1 = expsums::t_value_exact(1, p).value;
      const BigRational f = omega_factor_exact(p);
      const BigRational abs_t1 = t1 < 0 ? BigRational(-t1) : t1;
      const BigRational dev = f < 1 ? BigRational(1 - f) : BigRational(f - 1);
      INFO("p = " << p);
      REQUIRE(BigRational(1 + abs_t1) <= weil_factor(p, TailKind::sigma_weil).lo_exact());
      REQUIRE(BigRational(1 + dev) <= weil_factor(p, TailKind::omega).lo_exact());
    }
  }

  TEST_CASE("results do not depend on the thread count") {
    auto one = ProductPlan::certified_omega();
    one.threads = 1;
    auto four = one;
    four.threads = 4;
    const auto a = omega_product_bound(one), b = omega_product_bound(four);
    CHECK(a.explicit_exact == b.explicit_exact);
    CHECK(a.value.hi_exact() == b.value.hi_exact());
  }

  TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(tail_base(1, TailKind::omega), std::invalid_argument);
  }
}
