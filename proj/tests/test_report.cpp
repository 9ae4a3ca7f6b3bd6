#include <doctest.h>

#include "fourcubes/pipeline.hpp"
#include "fourcubes/report.hpp"

using namespace fourcubes;
using namespace fourcubes::report;

namespace {

pipeline::Config light_config() {
  pipeline::Config c;
  c.threads = 1;
  c.skip = {"products", "quadrature", "enumeration"};
  c.weil_pmax = 100;
  return c;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("decimal parsing is exact") {
    CHECK(decimal("0.1") == BigRational(1, 10));
    CHECK(decimal("-41.3794") == BigRational(-206897, 5000));
    CHECK(decimal("1e-3") == BigRational(1, 1000));
    CHECK(decimal("2.5E2") == 250);
    CHECK(decimal("100552") == 100552);
    CHECK_THROWS_AS(decimal("abc"), std::invalid_argument);
    CHECK_THROWS_AS(decimal("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(decimal("1e"), std::invalid_argument);
  }

  TEST_CASE("entry builders use the right endpoint") {
    const Interval x(BigRational(1), BigRational(2));
    const auto le = interval_entry("x", "m", x, Relation::le, BigRational(2), "2");
    CHECK(le.pass);
    CHECK(le.endpoint == Endpoint::hi);
    CHECK_FALSE(interval_entry("x", "m", x, Relation::le, BigRational(3, 2), "").pass);
    const auto ge = interval_entry("x", "m", x, Relation::ge, BigRational(1), "1");
    CHECK(ge.pass);
    CHECK(ge.endpoint == Endpoint::lo);
    CHECK_FALSE(interval_entry("x", "m", x, Relation::ge, BigRational(3, 2), "").pass);
    CHECK(range_entry("x", "m", x, BigRational(0), BigRational(2), "").pass);
    CHECK_FALSE(range_entry("x", "m", x, BigRational(0), BigRational(19, 10), "").pass);
    const auto ex = exact_entry("q", "m", BigRational(1, 3), Relation::eq, BigRational(1, 3), "");
    CHECK(ex.pass);
    CHECK(*ex.exact == "1/3");
  }

  TEST_CASE("overall ignores non-blocking failures") {
    VerificationReport r;
    r.entries.push_back(flag_entry("a", "m", true, ""));
    r.entries.push_back(flag_entry("b", "m", false, "", false));
    r.recompute_overall();
    CHECK(r.overall);
    r.entries.push_back(flag_entry("c", "m", false, ""));
    r.recompute_overall();
    CHECK_FALSE(r.overall);
    CHECK(r.find("b") != nullptr);
    CHECK(r.find("zz") == nullptr);
  }

  TEST_CASE("JSON round trip") {
    const auto r = pipeline::run_all(light_config());
    CHECK_FALSE(r.entries.empty());
    const auto back = from_json(to_json(r));
    CHECK(back.entries == r.entries);
    CHECK(back.overall == r.overall);
    CHECK(back.provenance.version == r.provenance.version);
    CHECK(back.provenance.precision_bits == r.provenance.precision_bits);
    CHECK(back.provenance.skipped == r.provenance.skipped);
    CHECK(back.provenance.settings == r.provenance.settings);
    CHECK(to_json(back) == to_json(r));
  }

  TEST_CASE("malformed JSON") {
    CHECK_THROWS_AS(from_json("{"), ReportParseError);
    CHECK_THROWS_AS(from_json("{\"entries\": []}"), ReportParseError);
    CHECK_THROWS_AS(from_json("[1, 2]"), ReportParseError);
  }

  TEST_CASE("table rendering") {
    VerificationReport r;
    r.entries.push_back(flag_entry("check_one", "m", true, "a note"));
    r.recompute_overall();
    const auto t = to_table(r);
    CHECK(t.find("check_one") != std::string::npos);
    CHECK(t.find("note: a note") != std::string::npos);
    CHECK(t.find("overall: PASS") != std::string::npos);
  }
}

TEST_SUITE("pipeline") {
  TEST_CASE("skipped modules produce no entries and the chain is dropped") {
    const auto r = pipeline::run_all(light_config());
    for (const auto& e : r.entries) CHECK(e.module == "expsums");
    const auto& s = r.provenance.skipped;
    CHECK(std::find(s.begin(), s.end(), "chain") != s.end());
    CHECK(std::find(s.begin(), s.end(), "products") != s.end());
    CHECK(r.overall);
  }

  TEST_CASE("everything skipped") {
    pipeline::Config c;
    c.skip = {"expsums", "products", "quadrature", "enumeration", "chain"};
    const auto r = pipeline::run_all(c);
    CHECK(r.entries.empty());
    CHECK(r.overall);
  }

  TEST_CASE("unknown module names and bad limits are rejected") {
    pipeline::Config c;
    c.skip = {"nonsense"};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS_AS(pipeline::run_all(c), std::invalid_argument);
    pipeline::Config d;
    d.precision_bits = 20;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  }

  TEST_CASE("constant chain with the quoted factors confirms 100552") {
    const Interval j(decimal("440.2025"));
    const Interval W(decimal("41.3787"));
    const Interval S1(decimal("3.0964"));
    const auto c = pipeline::constant_chain(j, W, S1);
    CHECK(c.confirmed);
    CHECK(c.C_certified.hi_le(BigRational(100552)));
    CHECK(c.C_prime <= 100552);
    CHECK(c.final_density == c.density0 * BigRational(8, 7));
    CHECK(c.density0 == BigRational(531441, 625 * 100552));
    VerificationReport r;
    r.append(c.entries);
    CHECK(r.find("C")->blocking);
    CHECK(r.find("C")->pass);
    CHECK(r.find("C_fallback") == nullptr);
    CHECK(r.find("final_density")->pass);
  }

  TEST_CASE("unconfirmed constant falls back to the smallest certified integer") {
    const Interval j(decimal("440.70"));
    const Interval W(decimal("41.3805"));
    const Interval S1(decimal("3.0964"));
    const auto c = pipeline::constant_chain(j, W, S1);
    CHECK_FALSE(c.confirmed);
    CHECK(c.C_prime > 100552);
    CHECK(BigRational(c.C_prime) >= c.C_certified.hi_exact());
    CHECK(BigRational(c.C_prime - 1) < c.C_certified.hi_exact());
    VerificationReport r;
    r.append(c.entries);
    REQUIRE(r.find("C_fallback") != nullptr);
    CHECK_FALSE(r.find("C")->blocking);
    CHECK(r.find("final_density_with_C_prime") != nullptr);
    CHECK(c.density_prime < c.final_density);
  }
}
