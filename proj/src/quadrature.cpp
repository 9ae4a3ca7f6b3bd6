#include "fourcubes/quadrature.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

namespace fourcubes::quadrature {

namespace {

using DI = DoubleInterval;

// Deepest octasection level; corners 1 + j * 7 / 2^k stay exact doubles and
// sums of three of them are exact as well.
constexpr unsigned kMaxDepth = 40;
constexpr std::size_t kBatch = 2048;

const DI kTwoThirds = DI(2.0) / DI(3.0);
const DI kFourNinths = DI(4.0) / DI(9.0);

DI clamp_to(const DI& x, double lo, double hi) {
  return {std::clamp(x.lo, lo, hi), std::clamp(x.hi, lo, hi)};
}

DI intersect(const DI& a, const DI& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

double mag(const DI& x) { return std::max(-x.lo, x.hi); }

DI product4(const DI& a, const DI& b, const DI& c, const DI& d) { return (a * b) * (c * d); }

// Range of g over box ∩ D. The fourth argument (and, for the substituted
// integrand, the third) is clamped to [1, 8], its range on D.
DI range_bound(const DI& t1, const DI& t2, const DI& t3, bool substituted) {
  DI x3 = t3;
  if (substituted) x3 = clamp_to(t1 + t2 - t3, 1.0, 8.0);
  const DI x4 = clamp_to(t1 + t2 - x3, 1.0, 8.0);
  return inv_pow_two_thirds(product4(t1, t2, x3, x4));
}

// True when the natural extension of g is smooth on the whole box.
bool extension_positive(const DI& t1, const DI& t2, const DI& t3, bool substituted) {
  const DI x3 = substituted ? t1 + t2 - t3 : t3;
  const DI x4 = t1 + t2 - x3;
  return x3.lo > 0.0 && x4.lo > 0.0;
}

struct Derivatives {
  DI g;
  std::array<DI, 3> grad;
  std::array<std::array<DI, 3>, 3> hess;
};

// Value, gradient and Hessian of the unclamped integrand over the given
// ranges. Requires every argument of g to be positive.
Derivatives derivatives(const DI& t1, const DI& t2, const DI& t3, bool substituted, bool need_hessian) {
  const DI x3 = substituted ? t1 + t2 - t3 : t3;
  const DI x4 = t1 + t2 - x3;
  Derivatives d;
  d.g = inv_pow_two_thirds(product4(t1, t2, x3, x4));

  const DI one(1.0);
  const DI r1 = one / t1, r2 = one / t2, r3 = one / x3, r4 = one / x4;
  const std::array<DI, 3> psi = {r1 + r4, r2 + r4, r3 - r4};
  const DI scale = -(kTwoThirds * d.g);
  std::array<DI, 3> grad;
  for (int i = 0; i < 3; ++i) grad[i] = scale * psi[i];
  if (substituted) {
    // h(t) = g(t1, t2, t1 + t2 - t3): grad h = J^T grad g.
    d.grad = {grad[0] + grad[2], grad[1] + grad[2], -grad[2]};
  } else {
    d.grad = grad;
  }
  if (!need_hessian) return d;

  const DI q1 = square(r1), q2 = square(r2), q3 = square(r3), q4 = square(r4);
  const std::array<std::array<DI, 3>, 3> kappa = {{
      {q1 + q4, q4, -q4},
      {q4, q2 + q4, -q4},
      {-q4, -q4, q3 + q4},
  }};
  std::array<std::array<DI, 3>, 3> h;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const DI outer = i == j ? square(psi[i]) : psi[i] * psi[j];
      h[i][j] = d.g * (kTwoThirds * kappa[i][j] + kFourNinths * outer);
      h[j][i] = h[i][j];
    }
  }
  if (!substituted) {
    d.hess = h;
    return d;
  }
  static constexpr int J[3][3] = {{1, 0, 0}, {0, 1, 0}, {1, 1, -1}};
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      DI acc(0.0);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const int c = J[i][a] * J[j][b];
          if (c == 0) continue;
          acc = acc + (c > 0 ? h[i][j] : -h[i][j]);
        }
      }
      d.hess[a][b] = acc;
      d.hess[b][a] = acc;
    }
  }
  return d;
}

// Irwin-Hall distribution of U1 + U2 + U3: F is the CDF and G(z) = E[S; S <= z].
// Both are increasing, so endpoint evaluation gives certified ranges.
DI irwin_hall_cdf(double z) {
  if (z <= 0.0) return DI(0.0);
  if (z >= 3.0) return DI(1.0);
  const DI x(z);
  const DI six(6.0);
  if (z <= 1.0) return x * square(x) / six;
  if (z <= 2.0) {
    const DI x2 = square(x);
    return (DI(3.0) - DI(9.0) * x + DI(9.0) * x2 - DI(2.0) * x2 * x) / six;
  }
  const DI y = DI(3.0) - x;
  return DI(1.0) - y * square(y) / six;
}

DI irwin_hall_partial_mean(double z) {
  if (z <= 0.0) return DI(0.0);
  if (z >= 3.0) return DI(1.5);
  const DI x(z);
  if (z <= 1.0) return square(square(x)) / DI(8.0);
  if (z <= 2.0) {
    const DI x2 = square(x);
    return DI(0.125) - square(x2) / DI(4.0) + x2 * x - DI(0.75) * x2;
  }
  const DI y = DI(3.0) - x;
  const DI y3 = y * square(y);
  return DI(1.5) - y3 / DI(2.0) + y3 * y / DI(8.0);
}

template <class F>
DI increasing_difference(F f, const DI& zlo, const DI& zhi) {
  return {DI::down(f(zhi.lo).lo - f(zlo.hi).hi), DI::up(f(zhi.hi).hi - f(zlo.lo).lo)};
}

struct Contribution {
  BoxStatus status;
  DI value;
};

// Certified enclosure of the integral over cube [a, a + w]^3 ∩ D.
Contribution contribution(double a1, double a2, double a3, double w, bool substituted) {
  const double b1 = a1 + w, b2 = a2 + w, b3 = a3 + w;
  const double s_lo = a1 + a2 - b3;
  const double s_hi = b1 + b2 - a3;
  if (s_hi <= 1.0 || s_lo >= 8.0) return {BoxStatus::outside, DI(0.0)};

  const DI t1(a1, b1), t2(a2, b2), t3(a3, b3);
  const DI c1(a1 + 0.5 * w), c2(a2 + 0.5 * w), c3(a3 + 0.5 * w);
  const double vol = w * w * w;  // exact: w = 7 / 2^k
  const DI w2(w * w);

  const bool smooth = extension_positive(t1, t2, t3, substituted);

  if (s_lo >= 1.0 && s_hi <= 8.0) {
    const DI range = range_bound(t1, t2, t3, substituted) * DI(vol);
    if (!smooth) return {BoxStatus::inside, range};
    const Derivatives centre = derivatives(c1, c2, c3, substituted, false);
    const Derivatives box = derivatives(t1, t2, t3, substituted, true);
    DI est = centre.g * DI(vol);
    const DI diag_w = DI(vol) * w2 / DI(24.0);
    const DI off_w = DI(vol) * w2 / DI(16.0);
    for (int i = 0; i < 3; ++i) est = est + box.hess[i][i] * diag_w;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double r = box.hess[i][j].rad();
        est = est + DI(-r, r) * off_w;
      }
    }
    const DI v = intersect(est, range);
    if (v.lo > v.hi) throw std::logic_error("quadrature: disjoint enclosures on an inside box");
    return {BoxStatus::inside, v};
  }

  // Boundary box: t1 + t2 - t3 = s_lo + w (U1 + U2 + U3) with U uniform on [0,1]^3
  // (U3 measured downward from b3), so the part inside D is {S in [zlo, zhi]}.
  const DI zlo = clamp_to((DI(1.0) - DI(s_lo)) / DI(w), 0.0, 3.0);
  const DI zhi = clamp_to((DI(8.0) - DI(s_lo)) / DI(w), 0.0, 3.0);
  const DI P = clamp_to(increasing_difference(irwin_hall_cdf, zlo, zhi), 0.0, 1.0);
  const DI vol_d = DI(vol) * P;
  const DI range = range_bound(t1, t2, t3, substituted) * vol_d;

  // Taylor expansion of the natural extension of g, valid when all of its
  // arguments stay positive on the box.
  if (!smooth) return {BoxStatus::boundary, range};

  const Derivatives centre = derivatives(c1, c2, c3, substituted, false);
  const Derivatives box = derivatives(t1, t2, t3, substituted, true);
  // First moments: by exchangeability E[U_i; S in I] = E[S; S in I] / 3, and
  // delta_3 carries the opposite sign.
  const DI M = increasing_difference(irwin_hall_partial_mean, zlo, zhi);
  const DI shift = M / DI(3.0) - P / DI(2.0);
  const DI linear = DI(vol) * DI(w) * shift * (centre.grad[0] + centre.grad[1] - centre.grad[2]);
  double hmax = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) hmax = DI::up(hmax + mag(box.hess[i][j]));
  }
  const double rem = (DI(hmax) * DI(vol_d.hi) * w2 / DI(8.0)).hi;
  const DI est = centre.g * vol_d + linear + DI(-rem, rem);
  const DI v = intersect(est, range);
  if (v.lo > v.hi) throw std::logic_error("quadrature: disjoint enclosures on a boundary box");
  return {BoxStatus::boundary, v};
}

struct Leaf {
  double a1, a2, a3;
  unsigned depth;
  double lo, hi;

  double width() const { return hi - lo; }
  auto key() const { return std::tie(depth, a1, a2, a3); }
};

// Max-heap on contribution width, ties broken by position.
bool heap_less(const Leaf& x, const Leaf& y) {
  if (x.width() != y.width()) return x.width() < y.width();
  return x.key() > y.key();
}

// Weight of a box for the requested region: boxes on the diagonal a1 = a2
// are symmetric in t1, t2 and contribute half.
double region_weight(Region region, double a1, double a2) {
  switch (region) {
    case Region::full: return 1.0;
    case Region::t1_le_t2: return a1 < a2 ? 1.0 : (a1 == a2 ? 0.5 : 0.0);
    case Region::t1_ge_t2: return a1 > a2 ? 1.0 : (a1 == a2 ? 0.5 : 0.0);
  }
  return 0.0;
}

std::optional<Leaf> make_leaf(double a1, double a2, double a3, unsigned depth, const Options& opt) {
  const double weight = region_weight(opt.region, a1, a2);
  if (weight == 0.0) return std::nullopt;
  const double w = 7.0 * std::ldexp(1.0, -static_cast<int>(depth));
  const Contribution c = contribution(a1, a2, a3, w, opt.substituted);
  if (c.status == BoxStatus::outside) return std::nullopt;
  return Leaf{a1, a2, a3, depth, weight * c.value.lo, weight * c.value.hi};
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F f) {
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n / 64, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  }
}

}  // namespace

BoxStatus box_status(const DoubleInterval& t1, const DoubleInterval& t2, const DoubleInterval& t3) {
  const DI s = t1 + t2 - t3;
  if (s.hi <= 1.0 || s.lo >= 8.0) return BoxStatus::outside;
  if (s.lo >= 1.0 && s.hi <= 8.0) return BoxStatus::inside;
  return BoxStatus::boundary;
}

Box make_box(const DoubleInterval& t1, const DoubleInterval& t2, const DoubleInterval& t3) {
  for (const auto* t : {&t1, &t2, &t3}) {
    if (!(t->lo >= 1.0 && t->lo <= t->hi && t->hi <= 8.0)) {
      throw std::invalid_argument("box must lie in [1,8]^3");
    }
  }
  return {t1, t2, t3, box_status(t1, t2, t3)};
}

Interval integrand_bounds(const Box& box) {
  if (box.status == BoxStatus::outside) throw DomainError("integrand_bounds: box lies outside the domain");
  const DI g = range_bound(box.t1, box.t2, box.t3, false);
  return Interval::from_double(g.lo, g.hi);
}

Enclosure triple_integral_enclosure(const Options& opt) {
  if (!(opt.target_width > 0.0)) throw std::invalid_argument("target_width must be positive");
  if (opt.max_boxes == 0) throw std::invalid_argument("max_boxes must be positive");
  const unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());

  Enclosure out;
  std::vector<Leaf> heap;
  std::vector<Leaf> frozen;  // reached kMaxDepth
  double approx_width = 0.0;
  if (auto root = make_leaf(1.0, 1.0, 1.0, 0, opt)) {
    heap.push_back(*root);
    approx_width = root->width();
  }
  out.boxes_processed = 1;

  std::vector<Leaf> parents;
  std::vector<std::optional<Leaf>> children;
  double goal = opt.target_width;
  for (;;) {
    while (approx_width > goal && !heap.empty() && out.boxes_processed < opt.max_boxes) {
      parents.clear();
      while (parents.size() < kBatch && !heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), heap_less);
        const Leaf leaf = heap.back();
        heap.pop_back();
        if (leaf.depth >= kMaxDepth) {
          frozen.push_back(leaf);
          continue;
        }
        approx_width -= leaf.width();
        parents.push_back(leaf);
      }
      children.assign(parents.size() * 8, std::nullopt);
      parallel_for(children.size(), threads, [&](std::size_t idx) {
        const Leaf& p = parents[idx / 8];
        const unsigned octant = static_cast<unsigned>(idx % 8);
        const double h = 3.5 * std::ldexp(1.0, -static_cast<int>(p.depth));
        children[idx] = make_leaf(p.a1 + ((octant & 1u) ? h : 0.0), p.a2 + ((octant & 2u) ? h : 0.0),
                                  p.a3 + ((octant & 4u) ? h : 0.0), p.depth + 1, opt);
      });
      for (const auto& child : children) {
        if (!child) continue;
        heap.push_back(*child);
        std::push_heap(heap.begin(), heap.end(), heap_less);
        approx_width += child->width();
        out.max_depth = std::max<std::uint64_t>(out.max_depth, child->depth);
      }
      out.boxes_processed += children.size();
    }

    // Certified total in a fixed order with outward rounding.
    std::vector<Leaf> all = heap;
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const Leaf& x, const Leaf& y) { return x.key() < y.key(); });
    DI total(0.0);
    for (const auto& leaf : all) total = total + DI(leaf.lo, leaf.hi);
    out.lo = total.lo;
    out.hi = total.hi;
    out.leaves = all.size();
    out.converged = total.hi - total.lo <= opt.target_width;
    const bool exhausted = heap.empty() || out.boxes_processed >= opt.max_boxes;
    if (out.converged || exhausted) break;
    goal = std::min(goal, approx_width) * 0.9;
  }
  return out;
}

Enclosure triple_integral_enclosure(double target_width, std::uint64_t max_boxes) {
  Options opt;
  opt.target_width = target_width;
  opt.max_boxes = max_boxes;
  return triple_integral_enclosure(opt);
}

BigRational j_scale() { return BigRational(104976, 1875); }

Interval j_constant(const Enclosure& K) {
  return Interval(j_scale()) * Interval::from_double(K.lo, K.hi);
}

}  // namespace fourcubes::quadrature
