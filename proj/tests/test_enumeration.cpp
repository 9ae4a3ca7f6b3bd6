#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fourcubes/enumeration.hpp"
#include "support/oracles.hpp"

using namespace fourcubes;
using namespace fourcubes::enumeration;

namespace {

std::uint64_t cube(std::uint64_t p) { return p * p * p; }

}  // namespace

TEST_SUITE("enumeration") {
  TEST_CASE("prime sieve") {
    const auto t = sieve_primes(1000);
    CHECK(t.list.size() == 168);
    CHECK(t.count_between(100, 200) == 21);
    CHECK(t.is_prime(997));
    CHECK_FALSE(t.is_prime(1));
    CHECK_FALSE(t.is_prime(1001));
  }

  TEST_CASE("four-cube set matches nested loops up to 10^5") {
    const std::uint64_t X = 100000;
    const auto set = four_cube_set(X);
    const auto oracle = oracles::four_cube_sums(X);
    CHECK(set.count() == oracle.size());
    for (std::uint64_t n = 0; n <= X; ++n) REQUIRE(set.contains(n) == (oracle.count(n) != 0));
    CHECK(set.count_up_to(32) == 1);
    for (const auto& [n, q] : set.witness) {
      REQUIRE(q[0] <= q[1]);
      REQUIRE(q[1] <= q[2]);
      REQUIRE(q[2] <= q[3]);
      REQUIRE(oracles::is_prime(q[0]));
      REQUIRE(oracles::is_prime(q[3]));
      REQUIRE(cube(q[0]) + cube(q[1]) + cube(q[2]) + cube(q[3]) == n);
    }
    CHECK(set.witness.size() == oracle.size());
    CHECK_THROWS_AS(four_cube_set(10), std::invalid_argument);
  }

  TEST_CASE("dump round trip") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "fourcubes_dump_test.bin";
    const auto set = four_cube_set(50000, false);
    write_dump(set, path);
    CHECK(std::filesystem::file_size(path) == 64 + (50000 + 8) / 8);
    const auto back = read_dump(path);
    CHECK(back.X == set.X);
    CHECK(back.representable == set.representable);

    const auto bad = dir / "fourcubes_dump_bad.bin";
    {
      std::ofstream out(bad, std::ios::binary);
      out << std::string(80, 'x');
    }
    CHECK_THROWS(read_dump(bad));
    std::filesystem::remove(path);
    std::filesystem::remove(bad);
  }

  TEST_CASE("admissible classes mod 126") {
    const auto classes = admissible_classes_mod126();
    CHECK(classes.size() == 25);
    for (unsigned c : classes) {
      CHECK(c % 2 == 0);
      CHECK(c % 9 != 1);
      CHECK(c % 9 != 8);
      CHECK(c % 9 != 3);
      CHECK(c % 9 != 6);
      CHECK(c % 7 != 1);
      CHECK(c % 7 != 6);
    }
    CHECK(admissible_density() == BigRational(25, 126));
  }

  TEST_CASE("congruence audit up to 10^6") {
    const auto a = congruence_audit(1'000'000);
    CHECK(a.representations_checked > 0);
    CHECK(a.all_odd > 0);
    std::uint64_t total = 0;
    for (auto c : a.class_counts) total += c;
    CHECK(total == a.representable);
    CHECK(a.representable_admissible <= a.representable);
    CHECK(a.admissible_density == BigRational(25, 126));
  }

  TEST_CASE("R(m) matches seven nested loops at N = 10^5") {
    const RestrictedRanges ranges(100000, 0.1);
    CHECK(ranges.primes_U() == oracles::primes_between(ranges.U(), 2 * ranges.U()));
    CHECK(ranges.primes_V() == oracles::primes_between(ranges.V(), 2 * ranges.V()));
    std::uint64_t total = 0;
    for (auto m : ranges.primes_U()) {
      const auto fast = capital_R(m, ranges);
      CHECK(fast == oracles::capital_R_brute(m, ranges.primes_U(), ranges.primes_V()));
      total += fast;
    }
    CHECK(capital_R(1, ranges) == oracles::capital_R_brute(1, ranges.primes_U(), ranges.primes_V()));
    const auto mom = restricted_moments(ranges);
    CHECK(total == mom.sum_r2);
    CHECK(mom.sum_r == mom.primes_U * mom.primes_U * mom.primes_V * mom.primes_V);
    CHECK(mom.distinct * mom.sum_r2 >= mom.sum_r * mom.sum_r);
  }

  TEST_CASE("restricted r(n) agrees with direct counting") {
    const RestrictedRanges ranges(1'000'000, 0.1);
    std::map<std::uint64_t, std::uint64_t> direct;
    for (auto a : ranges.primes_U())
      for (auto b : ranges.primes_U())
        for (auto c : ranges.primes_V())
          for (auto d : ranges.primes_V()) ++direct[cube(a) + cube(b) + cube(c) + cube(d)];
    CHECK(direct == ranges.r_table());
  }

  TEST_CASE("empty prime ranges are rejected") {
    CHECK_THROWS_AS(restricted_moments(10, 0.1), std::domain_error);
  }

  TEST_CASE("empirical density counts") {
    const auto d = empirical_density(100000);
    CHECK(d.representable == oracles::four_cube_sums(100000).size());
    CHECK(d.density_all == doctest::Approx(static_cast<double>(d.representable) / 100000.0));
    CHECK(d.representable_admissible <= d.representable);
  }
}
