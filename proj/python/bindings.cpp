#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fourcubes/enumeration.hpp"
#include "fourcubes/euler_products.hpp"
#include "fourcubes/expsums.hpp"
#include "fourcubes/numerics/constants.hpp"
#include "fourcubes/pipeline.hpp"
#include "fourcubes/quadrature.hpp"

namespace py = pybind11;
using namespace fourcubes;

namespace {

// Exact rationals cross the boundary as (numerator, denominator) decimal
// strings; the Python layer turns them into fractions.Fraction.
py::tuple rational(const BigRational& q) { return py::make_tuple(q.get_num().get_str(), q.get_den().get_str()); }

py::dict interval(const Interval& x) {
  py::dict d;
  d["lo"] = rational(x.lo_exact());
  d["hi"] = rational(x.hi_exact());
  return d;
}

py::dict product(const products::ProductBound& b) {
  py::dict d;
  d["name"] = b.name;
  d["kind"] = products::to_string(b.kind);
  d["explicit_range"] = b.explicit_range;
  d["weil_range"] = b.weil_range;
  d["tail_start"] = b.tail_start;
  d["explicit_exact"] = rational(b.explicit_exact);
  d["weil_segment"] = interval(b.weil_segment);
  d["tail_segment"] = interval(b.tail_segment);
  d["value"] = interval(b.value);
  return d;
}

products::ProductPlan plan(const std::string& name, unsigned threads) {
  products::ProductPlan p;
  if (name == "baseline_omega") p = products::ProductPlan::baseline_omega();
  else if (name == "certified_omega") p = products::ProductPlan::certified_omega();
  else if (name == "baseline_sigma") p = products::ProductPlan::baseline_sigma();
  else if (name == "certified_sigma") p = products::ProductPlan::certified_sigma();
  else throw std::invalid_argument("unknown plan '" + name + "'");
  p.threads = threads;
  return p;
}

quadrature::Region region(const std::string& name) {
  if (name == "full") return quadrature::Region::full;
  if (name == "t1_le_t2") return quadrature::Region::t1_le_t2;
  if (name == "t1_ge_t2") return quadrature::Region::t1_ge_t2;
  throw std::invalid_argument("unknown region '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified constants for sums of four prime cubes";
  m.attr("version") = pipeline::kVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<products::BoundFailure>(m, "BoundFailure", PyExc_RuntimeError);
  py::register_exception<report::ReportParseError>(m, "ReportParseError", PyExc_ValueError);

  m.def("set_precision", [](long bits) { set_working_precision(bits); }, py::arg("bits"));
  m.def("precision", [] { return static_cast<long>(working_precision()); });

  m.def(
      "interval_op",
      [](const std::string& op, const std::string& a, const std::string& b, const std::string& exponent) {
        static const std::map<std::string, IntervalOp> ops = {
            {"add", IntervalOp::add}, {"sub", IntervalOp::sub},         {"mul", IntervalOp::mul},
            {"div", IntervalOp::div}, {"pow_rat", IntervalOp::pow_rat}, {"exp", IntervalOp::exp},
            {"log", IntervalOp::log}};
        const auto it = ops.find(op);
        if (it == ops.end()) throw std::invalid_argument("unknown operation '" + op + "'");
        return interval(iv_arith(it->second, Interval(BigRational(a)), Interval(BigRational(b)), BigRational(exponent)));
      },
      py::arg("op"), py::arg("a"), py::arg("b") = "0", py::arg("exponent") = "1",
      "Outward-rounded enclosure of op(a, b); operands are rationals such as '3/7'.");
  m.def(
      "zeta", [](const std::string& s, std::uint64_t terms) { return interval(zeta_enclosure(BigRational(s), terms)); },
      py::arg("s"), py::arg("terms") = 100000);

  m.def(
      "t_value", [](std::uint64_t d, std::uint64_t q) { return rational(expsums::t_value_exact(d, q).value); },
      py::arg("d"), py::arg("q"));
  m.def("t_value_oracle", &expsums::t_value_oracle, py::arg("d"), py::arg("q"));
  m.def(
      "weil_audit",
      [](std::uint64_t p_max) {
        const auto a = expsums::weil_audit(p_max);
        py::dict d;
        d["primes_checked"] = a.primes_checked;
        d["pairs_checked"] = a.pairs_checked;
        d["max_ratio_full"] = a.max_ratio_full;
        d["max_ratio_unit"] = a.max_ratio_unit;
        d["worst_p"] = a.worst_p;
        d["worst_a"] = a.worst_a;
        return d;
      },
      py::arg("p_max") = 1000);

  m.def(
      "omega_product",
      [](const std::string& name, unsigned threads) { return product(products::omega_product_bound(plan(name, threads))); },
      py::arg("plan") = "certified_omega", py::arg("threads") = 0);
  m.def(
      "singular_series",
      [](const std::string& name, unsigned threads) { return product(products::singular_series_S1(plan(name, threads))); },
      py::arg("plan") = "certified_sigma", py::arg("threads") = 0);
  m.def("sieve_constant_W", [] { return interval(products::sieve_constant_W()); });

  m.def(
      "triple_integral",
      [](double target_width, std::uint64_t max_boxes, unsigned threads, const std::string& reg, bool substituted) {
        quadrature::Options o;
        o.target_width = target_width;
        o.max_boxes = max_boxes;
        o.threads = threads;
        o.region = region(reg);
        o.substituted = substituted;
        quadrature::Enclosure k;
        {
          py::gil_scoped_release release;
          k = quadrature::triple_integral_enclosure(o);
        }
        py::dict d;
        d["lo"] = k.lo;
        d["hi"] = k.hi;
        d["boxes"] = k.boxes_processed;
        d["converged"] = k.converged;
        d["J"] = interval(quadrature::j_constant(k));
        return d;
      },
      py::arg("target_width") = 0.005, py::arg("max_boxes") = 50'000'000, py::arg("threads") = 0,
      py::arg("region") = "full", py::arg("substituted") = false);

  m.def(
      "four_cube_count",
      [](std::uint64_t X) { return enumeration::four_cube_set(X, false).count(); }, py::arg("X"));
  m.def("admissible_density", [] { return rational(enumeration::admissible_density()); });
  m.def(
      "congruence_audit",
      [](std::uint64_t X) {
        const auto a = enumeration::congruence_audit(X);
        py::dict d;
        d["representations_checked"] = a.representations_checked;
        d["representable"] = a.representable;
        d["representable_admissible"] = a.representable_admissible;
        return d;
      },
      py::arg("X"));
  m.def(
      "restricted_moments",
      [](std::uint64_t N, double delta) {
        const auto r = enumeration::restricted_moments(N, delta);
        py::dict d;
        d["U"] = r.U;
        d["V"] = r.V;
        d["primes_U"] = r.primes_U;
        d["primes_V"] = r.primes_V;
        d["sum_r"] = r.sum_r;
        d["sum_r2"] = r.sum_r2;
        d["distinct"] = r.distinct;
        return d;
      },
      py::arg("N"), py::arg("delta") = 0.1);
  m.def(
      "capital_R", [](std::uint64_t m_, std::uint64_t N, double delta) { return enumeration::capital_R(m_, N, delta); },
      py::arg("m"), py::arg("N"), py::arg("delta") = 0.1);

  m.def(
      "run_all",
      [](const std::vector<std::string>& skip, unsigned threads, double target_width) {
        pipeline::Config c;
        c.skip.insert(skip.begin(), skip.end());
        c.threads = threads;
        c.quadrature.target_width = target_width;
        py::gil_scoped_release release;
        return report::to_json(pipeline::run_all(c));
      },
      py::arg("skip") = std::vector<std::string>{}, py::arg("threads") = 0, py::arg("target_width") = 0.005,
      "Runs every module not skipped and returns the report as JSON text.");
  m.def("module_names", &pipeline::module_names);
}
