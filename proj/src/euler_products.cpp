#include "fourcubes/euler_products.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "fourcubes/enumeration.hpp"
#include "fourcubes/expsums.hpp"
#include "fourcubes/numerics/constants.hpp"

namespace fourcubes::products {

namespace {

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2) return out;
  for (auto p : enumeration::sieve_primes(hi).list) {
    if (p >= lo) out.push_back(p);
  }
  return out;
}

BigRational exponent_of(TailKind kind) {
  switch (kind) {
    case TailKind::omega: return BigRational(7, 2);
    case TailKind::sigma: return BigRational(4);
    case TailKind::sigma_weil: return BigRational(3);
  }
  throw std::invalid_argument("unknown tail kind");
}

Interval iv(std::uint64_t n) { return Interval(static_cast<long>(n)); }

// Evaluates f over `items` on `threads` workers; results keep input order.
template <class T>
std::vector<T> parallel_map(const std::vector<std::uint64_t>& items, unsigned threads,
                            const std::function<T(std::uint64_t)>& f) {
  std::vector<T> out(items.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(items.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) out[i] = f(items[i]);
  };
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  return out;
}

// Upper and lower bounds for a product of factors 1 + x_p with |x_p| <= t_p,
// where weil_factor returns an enclosure of 1 + t_p.
Interval weil_segment(std::uint64_t lo_exclusive, std::uint64_t hi_inclusive, TailKind kind) {
  Interval upper(1L);
  Interval lower(1L);
  for (auto p : primes_in(lo_exclusive + 1, hi_inclusive)) {
    const Interval f = weil_factor(p, kind);
    upper *= f;
    lower *= Interval(2L) - f;
  }
  return Interval(lower.lo_exact(), upper.hi_exact());
}

// prod_{p > P}(1 + x_p) with |x_p| <= M p^-s lies in [1 - 2 M (base - 1), base^M]:
// the upper end by Bernoulli, the lower end from sum p^-s <= 2 log(base).
Interval tail_segment(std::uint64_t P, TailKind kind) {
  const Interval M = tail_constant(P, kind);
  const Interval base = tail_base(P, kind);
  const Interval upper = pow_real_hi(base, M);
  const Interval lower = Interval(1L) - Interval(2L) * M * (base - Interval(1L));
  return Interval(lower.lo_exact(), upper.hi_exact());
}

}  // namespace

std::string to_string(TailKind kind) {
  switch (kind) {
    case TailKind::omega: return "omega";
    case TailKind::sigma: return "sigma";
    case TailKind::sigma_weil: return "sigma_weil";
  }
  return "unknown";
}

Interval mertens_small_prime_constant() {
  const Interval exp_minus_gamma = exp(-euler_gamma_enclosure());
  const BigRational small_primes = BigRational(2) * BigRational(3, 2) * BigRational(5, 4) * BigRational(7, 6);
  return exp_minus_gamma * Interval(BigRational(180, 11) * small_primes);
}

Interval tail_constant(std::uint64_t P, TailKind kind) {
  if (P < 2) throw std::invalid_argument("tail_constant: P must be at least 2");
  const Interval one(1L);
  const Interval inv_sqrt = one / sqrt(iv(P));
  const Interval shrink = one - one / iv(P);  // 1 - 1/P
  const Interval two_plus = pow_int(Interval(2L) + inv_sqrt, 7);
  switch (kind) {
    case TailKind::omega:
      return Interval(2L) * pow_int(shrink, -7) * (one + Interval(2L) * inv_sqrt) * two_plus;
    case TailKind::sigma:
      return Interval(2L) * pow_int(shrink, -7) * two_plus;
    case TailKind::sigma_weil:
      return Interval(2L) * pow_int(shrink, -6) * two_plus;
  }
  throw std::invalid_argument("unknown tail kind");
}

Interval tail_base(std::uint64_t P, TailKind kind, std::uint64_t zeta_terms) {
  if (P < 2) throw std::invalid_argument("tail_base: P must be at least 2");
  const BigRational s = exponent_of(kind);
  Interval base = zeta_enclosure(s, zeta_terms) / zeta_enclosure(2 * s, zeta_terms);
  const BigRational minus_s = -s;
  for (auto p : primes_in(2, P)) base /= Interval(1L) + pow_rat(iv(p), minus_s);
  return base;
}

Interval tail_product_bound(std::uint64_t P, TailKind kind, std::uint64_t zeta_terms) {
  return pow_real_hi(tail_base(P, kind, zeta_terms), tail_constant(P, kind));
}

Interval weil_factor(std::uint64_t p, TailKind kind) {
  if (p < 2) throw std::invalid_argument("weil_factor: p must be at least 2");
  const Interval one(1L);
  const Interval sp = sqrt(iv(p));
  const Interval pm1 = iv(p - 1);
  const Interval core = pow_int(Interval(2L) * sp + one, 7);
  switch (kind) {
    case TailKind::omega:
      return one + Interval(2L) * (sp + Interval(2L)) * core / (sp * pow_int(pm1, 7));
    case TailKind::sigma:
      return one + Interval(2L) * core / (sp * pow_int(pm1, 7));
    case TailKind::sigma_weil:
      return one + Interval(2L) * core / (sp * pow_int(pm1, 6));
  }
  throw std::invalid_argument("unknown tail kind");
}

BigRational omega_factor_exact(std::uint64_t p) {
  const BigRational tp = expsums::t_value_exact(p, p).value;
  const BigRational t1 = expsums::t_value_exact(1, p).value;
  BigRational f = 1 - (tp - t1) / BigRational(static_cast<long>(p - 1));
  f.canonicalize();
  return f;
}

ProductPlan ProductPlan::baseline_omega() { return {200, 4000, TailKind::omega, 0}; }
ProductPlan ProductPlan::certified_omega() { return {1000, 4000, TailKind::omega, 0}; }
ProductPlan ProductPlan::baseline_sigma() { return {500, 4000, TailKind::sigma, 0}; }
ProductPlan ProductPlan::certified_sigma() { return {1000, 4000, TailKind::sigma_weil, 0}; }

ProductBound omega_product_bound(const ProductPlan& plan) {
  if (plan.explicit_hi < 11 || plan.weil_hi < plan.explicit_hi) {
    throw std::invalid_argument("omega_product_bound: need 11 <= explicit_hi <= weil_hi");
  }
  ProductBound b;
  b.name = "omega_product";
  b.explicit_range = {11, plan.explicit_hi};
  b.weil_range = {plan.explicit_hi, plan.weil_hi};
  b.tail_start = plan.weil_hi;
  b.kind = plan.kind;
  b.paper_value = 1.02944;

  const auto primes = primes_in(11, plan.explicit_hi);
  const auto factors = parallel_map<BigRational>(primes, plan.threads, omega_factor_exact);
  b.explicit_exact = 1;
  for (const auto& f : factors) b.explicit_exact *= f;  // fixed prime order

  b.explicit_segment = Interval(b.explicit_exact);
  b.weil_segment = weil_segment(plan.explicit_hi, plan.weil_hi, plan.kind);
  b.tail_segment = tail_segment(plan.weil_hi, plan.kind);
  b.value = b.explicit_segment * b.weil_segment * b.tail_segment;
  return b;
}

ProductBound singular_series_S1(const ProductPlan& plan) {
  if (plan.explicit_hi < 5 || plan.weil_hi < plan.explicit_hi) {
    throw std::invalid_argument("singular_series_S1: need 5 <= explicit_hi <= weil_hi");
  }
  ProductBound b;
  b.name = "singular_series_S1";
  b.explicit_range = {5, plan.explicit_hi};
  b.weil_range = {plan.explicit_hi, plan.weil_hi};
  b.tail_start = plan.weil_hi;
  b.kind = plan.kind;
  b.paper_value = 3.0964;

  const auto primes = primes_in(5, plan.explicit_hi);
  const auto t1 = parallel_map<BigRational>(primes, plan.threads,
                                            [](std::uint64_t p) { return expsums::t_value_exact(1, p).value; });
  b.explicit_exact = 1 + expsums::t_value_exact(1, 3).value + expsums::t_value_exact(1, 9).value;
  for (const auto& t : t1) b.explicit_exact *= 1 + t;

  b.explicit_segment = Interval(b.explicit_exact);
  b.weil_segment = weil_segment(plan.explicit_hi, plan.weil_hi, plan.kind);
  b.tail_segment = tail_segment(plan.weil_hi, plan.kind);
  b.value = b.explicit_segment * b.weil_segment * b.tail_segment;
  return b;
}

Interval sieve_constant_W(const ProductBound& omega) { return mertens_small_prime_constant() * omega.value; }

Interval sieve_constant_W() { return sieve_constant_W(omega_product_bound()); }

std::string describe(const ProductBound& b) {
  std::ostringstream os;
  os << b.name << " [" << to_string(b.kind) << "]\n"
     << "  exact primes " << b.explicit_range.first << ".." << b.explicit_range.second << ": "
     << b.explicit_segment << '\n'
     << "  Weil primes (" << b.weil_range.first << ", " << b.weil_range.second << "]: " << b.weil_segment << '\n'
     << "  tail p > " << b.tail_start << ": " << b.tail_segment << '\n'
     << "  total: " << b.value;
  return os.str();
}

void require_upper_bound(const ProductBound& bound, const BigRational& limit) {
  if (!bound.value.hi_le(limit)) {
    throw BoundFailure("certified upper bound exceeds " + limit.get_str() + "\n" + describe(bound));
  }
}

}  // namespace fourcubes::products
