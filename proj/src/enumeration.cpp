#include "fourcubes/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fourcubes::enumeration {

namespace {

constexpr char kMagic[4] = {'4', 'P', 'C', '1'};
constexpr std::size_t kHeaderBytes = 64;

std::uint64_t cube(std::uint64_t p) { return p * p * p; }

std::vector<std::uint64_t> prime_cubes_up_to(std::uint64_t X) {
  std::uint64_t bound = 2;
  while (cube(bound + 1) <= X) ++bound;
  std::vector<std::uint64_t> primes;
  for (auto p : sieve_primes(bound).list) {
    if (cube(p) <= X) primes.push_back(p);
  }
  return primes;
}

std::string quad_string(const Quadruple& q) {
  std::ostringstream os;
  os << '(' << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << ')';
  return os.str();
}

bool in_admissible_class(std::uint64_t n) {
  const auto m9 = n % 9;
  const auto m7 = n % 7;
  return n % 2 == 0 && m9 != 1 && m9 != 8 && m9 != 3 && m9 != 6 && m7 != 1 && m7 != 6;
}

std::vector<std::uint64_t> primes_in_closed(const PrimeTable& table, long double lo, long double hi) {
  std::vector<std::uint64_t> out;
  for (auto p : table.list) {
    const auto lp = static_cast<long double>(p);
    if (lp >= lo && lp <= hi) out.push_back(p);
  }
  return out;
}

std::string range_string(long double lo, long double hi) {
  std::ostringstream os;
  os.precision(10);
  os << '[' << static_cast<double>(lo) << ", " << static_cast<double>(hi) << ']';
  return os.str();
}

}  // namespace

std::uint64_t PrimeTable::count_between(std::uint64_t lo, std::uint64_t hi) const {
  hi = std::min(hi, limit);
  const auto first = std::lower_bound(list.begin(), list.end(), lo);
  const auto last = std::upper_bound(list.begin(), list.end(), hi);
  return last > first ? static_cast<std::uint64_t>(last - first) : 0;
}

PrimeTable sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw std::invalid_argument("sieve_primes: limit must be at least 2");
  PrimeTable t;
  t.limit = limit;
  t.membership.assign(limit + 1, true);
  t.membership[0] = false;
  t.membership[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (!t.membership[i]) continue;
    for (std::uint64_t k = i * i; k <= limit; k += i) t.membership[k] = false;
  }
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (t.membership[n]) t.list.push_back(n);
  }
  return t;
}

std::uint64_t RepSet::count() const { return count_up_to(X); }

std::uint64_t RepSet::count_up_to(std::uint64_t bound) const {
  bound = std::min(bound, X);
  std::uint64_t c = 0;
  for (std::uint64_t n = 0; n <= bound; ++n) c += representable[n] ? 1 : 0;
  return c;
}

RepSet four_cube_set(std::uint64_t X, bool keep_witnesses) {
  if (X < 32) throw std::invalid_argument("four_cube_set: X must be at least 32");
  RepSet set;
  set.X = X;
  set.representable.assign(X + 1, false);

  struct Pair {
    std::uint64_t sum;
    std::uint32_t p;
    std::uint32_t q;
  };
  const auto primes = prime_cubes_up_to(X);
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i; j < primes.size(); ++j) {
      const std::uint64_t s = cube(primes[i]) + cube(primes[j]);
      if (s > X) break;
      pairs.push_back({s, static_cast<std::uint32_t>(primes[i]), static_cast<std::uint32_t>(primes[j])});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.sum < b.sum; });

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i; j < pairs.size(); ++j) {
      const std::uint64_t n = pairs[i].sum + pairs[j].sum;
      if (n > X) break;
      if (set.representable[n]) continue;
      set.representable[n] = true;
      if (keep_witnesses) {
        Quadruple w{pairs[i].p, pairs[i].q, pairs[j].p, pairs[j].q};
        std::sort(w.begin(), w.end());
        set.witness.emplace(n, w);
      }
    }
  }
  return set;
}

void write_dump(const RepSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  std::array<unsigned char, kHeaderBytes> header{};
  std::copy(std::begin(kMagic), std::end(kMagic), header.begin());
  for (int i = 0; i < 8; ++i) header[4 + i] = static_cast<unsigned char>((set.X >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(header.data()), header.size());

  std::vector<unsigned char> bits((set.X + 1 + 7) / 8, 0);
  for (std::uint64_t n = 0; n <= set.X; ++n) {
    if (set.representable[n]) bits[n / 8] |= static_cast<unsigned char>(1u << (n % 8));
  }
  out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

RepSet read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::array<unsigned char, kHeaderBytes> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (!in || !std::equal(std::begin(kMagic), std::end(kMagic), header.begin())) {
    throw std::runtime_error(path.string() + ": not a four-cube dump (bad magic)");
  }
  RepSet set;
  for (int i = 0; i < 8; ++i) set.X |= static_cast<std::uint64_t>(header[4 + i]) << (8 * i);
  std::vector<unsigned char> bits((set.X + 1 + 7) / 8, 0);
  in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
  if (!in) throw std::runtime_error(path.string() + ": truncated bit array");
  set.representable.assign(set.X + 1, false);
  for (std::uint64_t n = 0; n <= set.X; ++n) set.representable[n] = (bits[n / 8] >> (n % 8)) & 1u;
  return set;
}

std::vector<unsigned> admissible_classes_mod126() {
  std::vector<unsigned> out;
  for (unsigned r = 0; r < 126; ++r) {
    if (in_admissible_class(r)) out.push_back(r);
  }
  return out;
}

BigRational admissible_density() {
  BigRational d(static_cast<long>(admissible_classes_mod126().size()), 126);
  d.canonicalize();
  return d;
}

CongruenceAudit congruence_audit(std::uint64_t X) {
  CongruenceAudit audit;
  audit.X = X;
  audit.admissible_density = admissible_density();

  const auto primes = prime_cubes_up_to(X);
  const std::size_t k = primes.size();
  std::vector<std::uint64_t> cubes(k);
  for (std::size_t i = 0; i < k; ++i) cubes[i] = cube(primes[i]);

  auto check = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d, std::uint64_t n) {
    const Quadruple q{static_cast<std::uint32_t>(primes[a]), static_cast<std::uint32_t>(primes[b]),
                      static_cast<std::uint32_t>(primes[c]), static_cast<std::uint32_t>(primes[d])};
    const bool odd = q[0] != 2;  // sorted ascending
    const bool has3 = std::find(q.begin(), q.end(), 3u) != q.end();
    const bool has7 = std::find(q.begin(), q.end(), 7u) != q.end();
    ++audit.representations_checked;
    if (odd) {
      ++audit.all_odd;
      if (n % 2 != 0) throw CongruenceViolation(q, "four odd primes with odd sum " + std::to_string(n) + " " + quad_string(q));
    }
    if (!has3) {
      ++audit.without_3;
      const auto m = n % 9;
      if (m == 1 || m == 8 || m == 3 || m == 6) {
        throw CongruenceViolation(q, "no prime 3 but n = " + std::to_string(n) + " = " + std::to_string(m) +
                                         " mod 9 " + quad_string(q));
      }
    }
    if (!has7) {
      ++audit.without_7;
      const auto m = n % 7;
      if (m == 1 || m == 6) {
        throw CongruenceViolation(q, "no prime 7 but n = " + std::to_string(n) + " = " + std::to_string(m) +
                                         " mod 7 " + quad_string(q));
      }
    }
  };

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k && cubes[a] + cubes[b] <= X; ++b) {
      for (std::size_t c = b; c < k && cubes[a] + cubes[b] + cubes[c] <= X; ++c) {
        for (std::size_t d = c; d < k; ++d) {
          const std::uint64_t n = cubes[a] + cubes[b] + cubes[c] + cubes[d];
          if (n > X) break;
          check(a, b, c, d, n);
        }
      }
    }
  }

  const auto set = four_cube_set(X, false);
  for (std::uint64_t n = 0; n <= X; ++n) {
    if (!set.representable[n]) continue;
    ++audit.representable;
    ++audit.class_counts[n % 126];
    if (in_admissible_class(n)) ++audit.representable_admissible;
  }
  return audit;
}

RestrictedRanges::RestrictedRanges(std::uint64_t N, double delta) : N_(N), delta_(delta) {
  if (N == 0 || !(delta >= 0.0)) throw std::invalid_argument("restricted ranges need N > 0 and delta >= 0");
  const long double u = std::cbrt(static_cast<long double>(N) / (16.0L + static_cast<long double>(delta)));
  const long double v = std::pow(u, 5.0L / 6.0L);
  U_ = static_cast<double>(u);
  V_ = static_cast<double>(v);

  const auto limit = static_cast<std::uint64_t>(std::floor(2.0L * std::max(u, v))) + 2;
  const auto table = sieve_primes(std::max<std::uint64_t>(limit, 2));
  primes_U_ = primes_in_closed(table, u, 2.0L * u);
  primes_V_ = primes_in_closed(table, v, 2.0L * v);
  if (primes_U_.empty()) throw std::domain_error("no prime in the U-range " + range_string(u, 2.0L * u));
  if (primes_V_.empty()) throw std::domain_error("no prime in the V-range " + range_string(v, 2.0L * v));

  std::vector<std::uint64_t> sums;
  sums.reserve(primes_U_.size() * primes_U_.size() * primes_V_.size() * primes_V_.size());
  for (auto p1 : primes_U_) {
    for (auto p2 : primes_U_) {
      for (auto p3 : primes_V_) {
        for (auto p4 : primes_V_) sums.push_back(cube(p1) + cube(p2) + cube(p3) + cube(p4));
      }
    }
  }
  for (auto n : sums) ++r_[n];
}

std::uint64_t RestrictedRanges::r(std::uint64_t n) const {
  const auto it = r_.find(n);
  return it == r_.end() ? 0 : it->second;
}

RestrictedMoments restricted_moments(const RestrictedRanges& ranges) {
  RestrictedMoments m;
  m.N = ranges.N();
  m.delta = ranges.delta();
  m.U = ranges.U();
  m.V = ranges.V();
  m.primes_U = ranges.primes_U().size();
  m.primes_V = ranges.primes_V().size();
  for (const auto& [n, count] : ranges.r_table()) {
    m.sum_r += count;
    m.sum_r2 += count * count;
    ++m.distinct;
  }
  const double L = std::log(static_cast<double>(m.N));
  m.coefficient_estimate = static_cast<double>(m.sum_r) * std::pow(L, 4) / (m.U * m.U * m.V * m.V);
  return m;
}

RestrictedMoments restricted_moments(std::uint64_t N, double delta) {
  return restricted_moments(RestrictedRanges(N, delta));
}

std::uint64_t capital_R(std::uint64_t m, const RestrictedRanges& ranges) {
  if (m == 0) throw std::invalid_argument("capital_R: m must be positive");
  std::uint64_t total = 0;
  const std::uint64_t m3 = cube(m);
  for (auto p2 : ranges.primes_U()) {
    for (auto p3 : ranges.primes_V()) {
      for (auto p4 : ranges.primes_V()) total += ranges.r(m3 + cube(p2) + cube(p3) + cube(p4));
    }
  }
  return total;
}

std::uint64_t capital_R(std::uint64_t m, std::uint64_t N, double delta) {
  return capital_R(m, RestrictedRanges(N, delta));
}

DensityReport empirical_density(const RepSet& set) {
  DensityReport d;
  d.X = set.X;
  for (std::uint64_t n = 1; n <= set.X; ++n) {
    if (!set.representable[n]) continue;
    ++d.representable;
    if (in_admissible_class(n)) ++d.representable_admissible;
  }
  d.density_all = static_cast<double>(d.representable) / static_cast<double>(set.X);
  d.density_admissible = static_cast<double>(d.representable_admissible) / static_cast<double>(set.X);
  return d;
}

DensityReport empirical_density(std::uint64_t X) {
  if (X < 10000) throw std::invalid_argument("empirical_density: X must be at least 10^4");
  return empirical_density(four_cube_set(X, false));
}

}  // namespace fourcubes::enumeration
