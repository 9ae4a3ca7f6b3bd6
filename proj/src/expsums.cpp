#include "fourcubes/expsums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

namespace fourcubes::expsums {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t cube_mod(std::uint64_t m, std::uint64_t q) {
  const std::uint64_t r = m % q;
  return mulmod(mulmod(r, r, q), r, q);
}

std::uint64_t reduce(std::int64_t a, std::uint64_t q) {
  const auto sq = static_cast<std::int64_t>(q);
  std::int64_t r = a % sq;
  if (r < 0) r += sq;
  return static_cast<std::uint64_t>(r);
}

struct Factor {
  std::uint64_t prime;
  unsigned exponent;
};

std::vector<Factor> factorize(std::uint64_t n) {
  std::vector<Factor> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t existing = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

void add_product(u128& acc, const u128& x, const u128& y) { acc += x * y; }
void add_product(BigInt& acc, const BigInt& x, const BigInt& y) {
  mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
}

bool is_zero(const u128& x) { return x == 0; }
bool is_zero(const BigInt& x) { return sgn(x) == 0; }

BigInt to_big(const u128& x) {
  const auto high = static_cast<std::uint64_t>(x >> 64);
  const auto low = static_cast<std::uint64_t>(x);
  BigInt r(static_cast<unsigned long>(high));
  r <<= 64;
  r += BigInt(static_cast<unsigned long>(low));
  return r;
}
const BigInt& to_big(const BigInt& x) { return x; }

// Cyclic convolution mod q, skipping zero entries of either operand.
template <class Count>
std::vector<Count> convolve(const std::vector<Count>& a, const std::vector<Count>& b) {
  const std::size_t q = a.size();
  std::vector<std::pair<std::size_t, Count>> support;
  for (std::size_t j = 0; j < q; ++j) {
    if (!is_zero(b[j])) support.emplace_back(j, b[j]);
  }
  std::vector<Count> out(q, Count(0));
  for (std::size_t i = 0; i < q; ++i) {
    if (is_zero(a[i])) continue;
    for (const auto& [j, bj] : support) {
      std::size_t k = i + j;
      if (k >= q) k -= q;
      add_product(out[k], a[i], bj);
    }
  }
  return out;
}

template <class Count>
std::vector<Count> to_counts(const std::vector<std::uint64_t>& v) {
  std::vector<Count> out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<unsigned long>(x));
  return out;
}

// Numerator sum_x H(x) c_q(x) of T_d(q).
template <class Count>
BigInt t_numerator(std::uint64_t d, std::uint64_t q, const CubeHistogram& hist) {
  std::vector<std::uint64_t> twisted(q, 0);
  const std::uint64_t d3 = cube_mod(d, q);
  for (std::uint64_t m = 1; m <= q; ++m) ++twisted[mulmod(d3, cube_mod(m, q), q)];

  const auto unit = to_counts<Count>(hist.counts_unit);
  const auto u2 = convolve(unit, unit);
  const auto u3 = convolve(u2, unit);
  const auto u4 = convolve(u2, u2);
  std::vector<Count> reflected(q, Count(0));
  for (std::uint64_t x = 0; x < q; ++x) reflected[(q - x) % q] = u4[x];
  const auto h = convolve(convolve(to_counts<Count>(twisted), u3), reflected);

  // c_q(x) depends on x only through gcd(x, q).
  std::vector<std::int64_t> ramanujan_by_gcd(q + 1, 0);
  for (auto g : divisors(q)) ramanujan_by_gcd[g] = ramanujan_sum(q, static_cast<std::int64_t>(g));

  BigInt numerator = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    if (is_zero(h[x])) continue;
    const std::uint64_t g = std::gcd(x, q);
    numerator += to_big(h[x]) * BigInt(static_cast<long>(ramanujan_by_gcd[g == 0 ? q : g]));
  }
  return numerator;
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t result = n;
  for (const auto& f : factorize(n)) result = result / f.prime * (f.prime - 1);
  return result;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mobius(0) is undefined");
  int sign = 1;
  for (const auto& f : factorize(n)) {
    if (f.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

CubeHistogram cube_histograms(std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("cube_histograms: modulus must be positive");
  CubeHistogram h;
  h.modulus = q;
  h.counts_full.assign(q, 0);
  h.counts_unit.assign(q, 0);
  for (std::uint64_t m = 1; m <= q; ++m) {
    const std::uint64_t r = cube_mod(m, q);
    ++h.counts_full[r];
    if (std::gcd(m, q) == 1) ++h.counts_unit[r];
  }
  return h;
}

std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t s) {
  if (q == 0) throw std::invalid_argument("ramanujan_sum: modulus must be positive");
  const std::uint64_t g = std::gcd(q, reduce(s, q));  // gcd(q, 0) = q
  std::int64_t total = 0;
  for (auto d : divisors(g)) total += static_cast<std::int64_t>(d) * mobius(q / d);
  return total;
}

TValue t_value_exact(std::uint64_t d, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("t_value_exact: q must be positive");
  if (d == 0) throw std::invalid_argument("t_value_exact: d must be positive");

  const auto hist = cube_histograms(q);
  BigInt phi7 = 1;
  for (int i = 0; i < 7; ++i) phi7 *= BigInt(static_cast<unsigned long>(euler_phi(q)));
  const BigInt denominator = BigInt(static_cast<unsigned long>(q)) * phi7;

  // Every partial histogram has total mass at most q * phi(q)^7, so 128-bit
  // counters are exact whenever that mass fits; otherwise use GMP integers.
  const bool fits_u128 = mpz_sizeinbase(denominator.get_mpz_t(), 2) <= 126;
  const BigInt numerator = fits_u128 ? t_numerator<u128>(d, q, hist) : t_numerator<BigInt>(d, q, hist);

  TValue t{d, q, BigRational(numerator, denominator)};
  t.value.canonicalize();
  return t;
}

OracleValue t_value_oracle_complex(std::uint64_t d, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("t_value_oracle: q must be positive");
  const double two_pi_over_q = 2.0 * std::numbers::pi / static_cast<double>(q);
  const std::uint64_t d3 = cube_mod(d, q);
  std::complex<double> total = 0.0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    std::complex<double> s = 0.0;
    std::complex<double> c = 0.0;
    for (std::uint64_t m = 1; m <= q; ++m) {
      const std::uint64_t m3 = cube_mod(m, q);
      const std::uint64_t k_full = mulmod(mulmod(a, d3, q), m3, q);
      s += std::polar(1.0, two_pi_over_q * static_cast<double>(k_full));
      if (std::gcd(m, q) == 1) {
        c += std::polar(1.0, two_pi_over_q * static_cast<double>(mulmod(a, m3, q)));
      }
    }
    const std::complex<double> c3 = c * c * c;
    const std::complex<double> cc = std::conj(c);
    total += s * c3 * (cc * cc) * (cc * cc);
  }
  const double phi = static_cast<double>(euler_phi(q));
  total /= static_cast<double>(q) * std::pow(phi, 7);
  return {total.real(), total.imag()};
}

double t_value_oracle(std::uint64_t d, std::uint64_t q) {
  const auto v = t_value_oracle_complex(d, q);
  if (std::abs(v.imag) > 1e-9) {
    throw std::runtime_error("t_value_oracle: imaginary part " + std::to_string(v.imag) +
                             " for d=" + std::to_string(d) + ", q=" + std::to_string(q));
  }
  return v.real;
}

ExpSums exp_sums(const CubeHistogram& hist, std::int64_t a) {
  const std::uint64_t q = hist.modulus;
  const std::uint64_t ar = reduce(a, q);
  const double two_pi_over_q = 2.0 * std::numbers::pi / static_cast<double>(q);
  ExpSums out{0.0, 0.0};
  for (std::uint64_t r = 0; r < q; ++r) {
    if (hist.counts_full[r] == 0) continue;
    const auto phase = std::polar(1.0, two_pi_over_q * static_cast<double>(mulmod(ar, r, q)));
    out.full += static_cast<double>(hist.counts_full[r]) * phase;
    out.unit += static_cast<double>(hist.counts_unit[r]) * phase;
  }
  return out;
}

ExpSums exp_sums(std::uint64_t q, std::int64_t a) { return exp_sums(cube_histograms(q), a); }

WeilAudit weil_audit(std::uint64_t p_max) {
  if (p_max < 2) throw std::invalid_argument("weil_audit: p_max must be at least 2");
  WeilAudit audit;
  audit.p_max = p_max;

  std::vector<bool> composite(p_max + 1, false);
  for (std::uint64_t p = 2; p <= p_max; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t k = p * p; k <= p_max; k += p) composite[k] = true;

    const auto hist = cube_histograms(p);
    std::vector<std::pair<std::uint64_t, double>> support;
    for (std::uint64_t r = 0; r < p; ++r) {
      if (hist.counts_full[r] != 0) support.emplace_back(r, static_cast<double>(hist.counts_full[r]));
    }
    std::vector<std::complex<double>> roots(p);
    for (std::uint64_t k = 0; k < p; ++k) {
      roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p));
    }

    const double sqrt_p = std::sqrt(static_cast<double>(p));
    const double bound_full = 2.0 * sqrt_p;
    const double bound_unit = 2.0 * sqrt_p + 1.0;
    for (std::uint64_t a = 1; a < p; ++a) {
      std::complex<double> s = 0.0;
      for (const auto& [r, count] : support) s += count * roots[mulmod(a, r, p)];
      // The only non-unit residue mod p is m = p, contributing e(0) = 1.
      const std::complex<double> c = s - 1.0;
      const double abs_s = std::abs(s);
      const double abs_c = std::abs(c);
      if (abs_s > bound_full + kWeilTolerance) {
        throw WeilViolation(p, a, "Weil bound violated: |S(" + std::to_string(p) + "," + std::to_string(a) +
                                      ")| = " + std::to_string(abs_s));
      }
      if (abs_c > bound_unit + kWeilTolerance) {
        throw WeilViolation(p, a, "Weil bound violated: |C(" + std::to_string(p) + "," + std::to_string(a) +
                                      ")| = " + std::to_string(abs_c));
      }
      const double ratio = abs_s / bound_full;
      if (ratio > audit.max_ratio_full) {
        audit.max_ratio_full = ratio;
        audit.worst_p = p;
        audit.worst_a = a;
      }
      audit.max_ratio_unit = std::max(audit.max_ratio_unit, abs_c / bound_unit);
      ++audit.pairs_checked;
    }

    const auto divisible = exp_sums(hist, static_cast<std::int64_t>(p));
    const double err = std::abs(divisible.full - std::complex<double>(static_cast<double>(p), 0.0));
    audit.max_divisible_error = std::max(audit.max_divisible_error, err);
    if (err > kWeilTolerance) {
      throw WeilViolation(p, p, "S(p, p) != p for p = " + std::to_string(p));
    }
    ++audit.primes_checked;
  }
  return audit;
}

}  // namespace fourcubes::expsums
