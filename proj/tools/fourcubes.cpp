#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "fourcubes/enumeration.hpp"
#include "fourcubes/expsums.hpp"
#include "fourcubes/pipeline.hpp"

namespace {

using namespace fourcubes;

constexpr int kUsageError = 2;

int finish(report::VerificationReport r, unsigned threads, long precision) {
  r.provenance.version = pipeline::kVersion;
  r.provenance.precision_bits = precision;
  r.provenance.threads = threads;
  r.recompute_overall();
  std::cout << report::to_table(r);
  return r.overall ? 0 : 1;
}

report::VerificationReport from_entries(std::vector<report::Entry> entries) {
  report::VerificationReport r;
  r.entries = std::move(entries);
  return r;
}

void print_t_value(std::uint64_t d, std::uint64_t q) {
  const auto t = expsums::t_value_exact(d, q);
  std::cout << "T_" << d << "(" << q << ") = " << t.value.get_str() << " = "
            << report::decimal_string(t.value, 16) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified constants for sums of four prime cubes"};
  app.require_subcommand(1);

  pipeline::Config config;
  app.add_option("--precision", config.precision_bits, "Interval precision in bits")
      ->default_val(128)
      ->check(CLI::Range(53, 65536));
  app.add_option("--threads", config.threads, "Worker threads (0: all cores)")->default_val(0);

  auto* integral = app.add_subcommand("integral", "Certified enclosure of the triple integral and J");
  integral->add_option("--target-width", config.quadrature.target_width, "Stop when hi - lo <= W")
      ->default_val(0.005)
      ->check(CLI::PositiveNumber);
  integral->add_option("--max-boxes", config.quadrature.max_boxes, "Box evaluation budget")
      ->default_val(50'000'000)
      ->check(CLI::PositiveNumber);
  bool substituted = false;
  integral->add_flag("--substituted", substituted, "Integrate after t3 -> t1 + t2 - t3");

  auto* tvalues = app.add_subcommand("tvalues", "Exact local factors T_d(q)");
  std::uint64_t q = 0;
  std::uint64_t d = 1;
  tvalues->add_option("--q", q, "Modulus")->check(CLI::PositiveNumber);
  tvalues->add_option("--d", d, "Multiplier d")->default_val(1)->check(CLI::PositiveNumber);

  app.add_subcommand("products", "Euler products, tail bounds and the singular series");

  auto* weil = app.add_subcommand("weil", "Weil bound audit of the cubic exponential sums");
  weil->add_option("--pmax", config.weil_pmax, "Largest prime checked")->default_val(1000)->check(CLI::Range(2, 100000));

  auto* enumerate = app.add_subcommand("enumerate", "Sums of four prime cubes up to a limit");
  std::uint64_t limit = 10'000'000;
  std::string dump;
  enumerate->add_option("--limit", limit, "Upper limit X")->default_val(10'000'000)->check(CLI::Range(std::uint64_t{10000}, std::uint64_t{4'000'000'000}));
  enumerate->add_option("--dump", dump, "Write the representable set as a bit array");

  auto* moments = app.add_subcommand("moments", "Restricted representation counts r(n) and R(m)");
  moments->add_option("--n", config.moments_N, "N")->default_val(1'000'000)->check(CLI::PositiveNumber);
  moments->add_option("--delta", config.moments_delta, "delta")->default_val(0.1)->check(CLI::NonNegativeNumber);

  app.add_subcommand("chain", "Constant chain and density bounds");

  auto* full = app.add_subcommand("report", "Run every module and emit the verification report");
  std::string json_path;
  std::vector<std::string> skip;
  full->add_option("--json", json_path, "Write the report as JSON");
  full->add_option("--skip", skip, "Modules to skip")
      ->delimiter(',')
      ->check(CLI::IsMember(pipeline::module_names()));
  full->add_option("--target-width", config.quadrature.target_width, "Quadrature target width")
      ->default_val(0.005)
      ->check(CLI::PositiveNumber);
  full->add_option("--max-boxes", config.quadrature.max_boxes, "Quadrature box budget")
      ->default_val(50'000'000)
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    config.skip.insert(skip.begin(), skip.end());
    config.quadrature.substituted = substituted;
    config.density_limit = limit;
    config.congruence_limit = limit;
    config.validate();
    set_working_precision(config.precision_bits);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  const unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  const long precision = config.precision_bits;

  try {
    if (*integral) {
      const auto r = pipeline::quadrature_run(config);
      std::cout << "K in [" << report::decimal_string(BigRational(r.K.lo), 12) << ", "
                << report::decimal_string(BigRational(r.K.hi), 12) << "]\n"
                << "J in [" << r.j.lo_string(12) << ", " << r.j.hi_string(12) << "]\n";
      return finish(from_entries(r.entries), threads, precision);
    }
    if (*tvalues) {
      if (q != 0) {
        print_t_value(d, q);
        return 0;
      }
      for (std::uint64_t m : {2, 3, 5, 7, 9, 11, 13, 27}) {
        print_t_value(1, m);
        print_t_value(m, m);
      }
      return 0;
    }
    if (app.got_subcommand("products")) {
      const auto r = pipeline::products_run(config);
      for (const auto* b : {&r.omega_baseline, &r.omega_certified, &r.sigma_baseline, &r.sigma_certified}) {
        std::cout << products::describe(*b) << '\n';
      }
      return finish(from_entries(r.entries), threads, precision);
    }
    if (*weil) {
      const auto a = expsums::weil_audit(config.weil_pmax);
      std::cout << a.primes_checked << " primes, " << a.pairs_checked << " pairs checked\n"
                << "max |S(p,a)|/(2 sqrt p) = " << a.max_ratio_full << " (p = " << a.worst_p
                << ", a = " << a.worst_a << ")\n"
                << "max |C(p,a)|/(2 sqrt p + 1) = " << a.max_ratio_unit << '\n'
                << "max |S(p,p) - p| = " << a.max_divisible_error << '\n';
      return 0;
    }
    if (*enumerate) {
      const auto set = enumeration::four_cube_set(limit, false);
      const auto density = enumeration::empirical_density(set);
      std::cout << density.representable << " of the integers 1.." << limit
                << " are sums of four prime cubes (" << density.density_all << ")\n";
      if (!dump.empty()) {
        enumeration::write_dump(set, dump);
        std::cout << "wrote " << dump << '\n';
      }
      return finish(from_entries(pipeline::congruence_entries(config)), threads, precision);
    }
    if (*moments) {
      const auto m = enumeration::restricted_moments(config.moments_N, config.moments_delta);
      std::cout << "U = " << m.U << ", V = " << m.V << ", primes in [U,2U]: " << m.primes_U
                << ", primes in [V,2V]: " << m.primes_V << '\n'
                << "sum r = " << m.sum_r << ", sum r^2 = " << m.sum_r2 << ", distinct n = " << m.distinct << '\n';
      return finish(from_entries(pipeline::moments_entries(config)), threads, precision);
    }
    if (app.got_subcommand("chain")) {
      auto r = pipeline::constant_chain(config);
      return finish(std::move(r), threads, precision);
    }
    if (*full) {
      const auto r = pipeline::run_all(config);
      std::cout << report::to_table(r);
      if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) {
          std::cerr << "error: cannot write " << json_path << '\n';
          return kUsageError;
        }
        out << report::to_json(r) << '\n';
      }
      return r.overall ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}
