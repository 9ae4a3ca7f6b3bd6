#pragma once

#include <cstdint>

#include "fourcubes/numerics/double_interval.hpp"
#include "fourcubes/numerics/interval.hpp"

namespace fourcubes::quadrature {

/// Relation of a box to D = {t in [1,8]^3 : 1 <= t1 + t2 - t3 <= 8}.
enum class BoxStatus { inside, boundary, outside };

struct Box {
  DoubleInterval t1;
  DoubleInterval t2;
  DoubleInterval t3;
  BoxStatus status = BoxStatus::boundary;
};

/// Classifies a box inside [1,8]^3 from the range of t1 + t2 - t3.
BoxStatus box_status(const DoubleInterval& t1, const DoubleInterval& t2, const DoubleInterval& t3);
Box make_box(const DoubleInterval& t1, const DoubleInterval& t2, const DoubleInterval& t3);

/// Enclosure of g = (t1 t2 t3 t4)^(-2/3), t4 = t1 + t2 - t3, over box ∩ D.
/// t4 is clamped to [1, 8]. Throws DomainError for an outside box.
Interval integrand_bounds(const Box& box);

enum class Region {
  full,
  t1_le_t2,  // half domain t1 <= t2
  t1_ge_t2,  // half domain t1 >= t2
};

struct Options {
  double target_width = 0.005;
  std::uint64_t max_boxes = 50'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
  Region region = Region::full;
  /// Integrate h(t) = g(t1, t2, t1 + t2 - t3) instead of g. The change of
  /// variables preserves the integral but changes every interval evaluation.
  bool substituted = false;
};

struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t boxes_processed = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t leaves = 0;
  bool converged = false;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Certified enclosure of
///   K = int_1^8 int_1^8 int_{max(1, t1+t2-8)}^{min(8, t1+t2-1)} g dt3 dt2 dt1
/// by adaptive octasection of [1,8]^3. Inside boxes use a second-order Taylor
/// enclosure about the centre; boundary boxes use exact intersection volumes
/// and first moments with a second-order remainder, falling back to range
/// bounds. The box with the widest contribution is refined first, in fixed
/// batches so the result does not depend on the thread count. Stops when the
/// width reaches target_width (converged) or max_boxes boxes were evaluated.
/// Throws std::invalid_argument unless target_width > 0.
Enclosure triple_integral_enclosure(const Options& options = {});
Enclosure triple_integral_enclosure(double target_width, std::uint64_t max_boxes);

/// 18^4 / (3 * 5^4) = 104976 / 1875.
BigRational j_scale();

/// (104976 / 1875) * [K.lo, K.hi].
Interval j_constant(const Enclosure& K);

}  // namespace fourcubes::quadrature
