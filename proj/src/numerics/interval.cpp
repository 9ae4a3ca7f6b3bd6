#include "fourcubes/numerics/interval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>

namespace fourcubes {

namespace {

std::atomic<mpfr_prec_t> g_precision{128};

struct MpfrFree {
  void operator()(char* p) const { mpfr_free_str(p); }
};

std::string format_endpoint(mpfr_srcptr x, int digits, bool upward) {
  char* raw = nullptr;
  const char* fmt = upward ? "%.*RUe" : "%.*RDe";
  if (mpfr_asprintf(&raw, fmt, std::max(digits - 1, 0), x) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::unique_ptr<char, MpfrFree> holder(raw);
  return std::string(raw);
}

// Scratch value with RAII cleanup.
class Scratch {
 public:
  explicit Scratch(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Scratch() { mpfr_clear(v_); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_ptr get() { return v_; }
  operator mpfr_ptr() { return v_; }

 private:
  mpfr_t v_;
};

mpfr_prec_t joint_precision(const Interval& a, const Interval& b) {
  return std::max({a.precision(), b.precision(), working_precision()});
}

}  // namespace

mpfr_prec_t working_precision() { return g_precision.load(std::memory_order_relaxed); }

void set_working_precision(mpfr_prec_t bits) {
  if (bits < 53 || bits > 1 << 16) {
    throw std::invalid_argument("precision must lie in [53, 65536] bits");
  }
  g_precision.store(bits, std::memory_order_relaxed);
}

Interval::Interval(PrecTag, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval() : Interval(PrecTag{}, working_precision()) {}

Interval::Interval(long value) : Interval(PrecTag{}, working_precision()) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const BigRational& value) : Interval(PrecTag{}, working_precision()) {
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const BigRational& lo, const BigRational& hi) : Interval(PrecTag{}, working_precision()) {
  if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::from_decimal(std::string_view text) {
  Interval r(Interval::PrecTag{}, working_precision());
  const std::string s(text);
  if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU) != 0) {
    throw std::invalid_argument("not a decimal literal: " + s);
  }
  return r;
}

Interval Interval::from_double(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi or NaN");
  Interval r(Interval::PrecTag{}, working_precision());
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& other) : Interval(PrecTag{}, other.precision()) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(PrecTag{}, other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::set_endpoints(mpfr_srcptr lo, mpfr_srcptr hi) {
  mpfr_set(lo_, lo, MPFR_RNDD);
  mpfr_set(hi_, hi, MPFR_RNDU);
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

BigRational Interval::lo_exact() const {
  BigRational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

BigRational Interval::hi_exact() const {
  BigRational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double Interval::width() const {
  Scratch w(precision());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w, MPFR_RNDU);
}

std::string Interval::lo_string(int digits) const { return format_endpoint(lo_, digits, false); }
std::string Interval::hi_string(int digits) const { return format_endpoint(hi_, digits, true); }

bool Interval::contains(const BigRational& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::strictly_positive() const { return mpfr_sgn(lo_) > 0; }

bool Interval::hi_le(const BigRational& bound) const {
  return mpfr_cmp_q(hi_, bound.get_mpq_t()) <= 0;
}

bool Interval::lo_ge(const BigRational& bound) const {
  return mpfr_cmp_q(lo_, bound.get_mpq_t()) >= 0;
}

Interval Interval::operator-() const {
  Interval r(Interval::PrecTag{}, precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval& Interval::operator+=(const Interval& rhs) {
  const mpfr_prec_t prec = joint_precision(*this, rhs);
  Scratch lo(prec), hi(prec);
  mpfr_add(lo, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(hi, hi_, rhs.hi_, MPFR_RNDU);
  mpfr_set_prec(lo_, prec);
  mpfr_set_prec(hi_, prec);
  set_endpoints(lo, hi);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  const mpfr_prec_t prec = joint_precision(*this, rhs);
  Scratch lo(prec), hi(prec);
  mpfr_sub(lo, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(hi, hi_, rhs.lo_, MPFR_RNDU);
  mpfr_set_prec(lo_, prec);
  mpfr_set_prec(hi_, prec);
  set_endpoints(lo, hi);
  return *this;
}

Interval& Interval::operator*=(const Interval& rhs) {
  const mpfr_prec_t prec = joint_precision(*this, rhs);
  Scratch lo(prec), hi(prec), t(prec);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_set_inf(lo, 1);
  mpfr_set_inf(hi, -1);
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      mpfr_min(lo, lo, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      mpfr_max(hi, hi, t, MPFR_RNDU);
    }
  }
  mpfr_set_prec(lo_, prec);
  mpfr_set_prec(hi_, prec);
  set_endpoints(lo, hi);
  return *this;
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (rhs.contains_zero()) {
    throw DomainError("interval division by an interval containing zero");
  }
  const mpfr_prec_t prec = joint_precision(*this, rhs);
  Scratch lo(prec), hi(prec), t(prec);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_set_inf(lo, 1);
  mpfr_set_inf(hi, -1);
  for (auto x : a) {
    for (auto y : b) {
      mpfr_div(t, x, y, MPFR_RNDD);
      mpfr_min(lo, lo, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      mpfr_max(hi, hi, t, MPFR_RNDU);
    }
  }
  mpfr_set_prec(lo_, prec);
  mpfr_set_prec(hi_, prec);
  set_endpoints(lo, hi);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo_string(20) << ", " << x.hi_string(20) << ']';
}

Interval pow_int(const Interval& x, long n) {
  const mpfr_prec_t prec = std::max(x.precision(), working_precision());
  if (n == 0) return Interval(1L);
  if (n < 0 && x.contains_zero()) {
    throw DomainError("negative power of an interval containing zero");
  }
  Interval r(Interval::PrecTag{}, prec);
  Scratch a(prec), b(prec);
  const bool even = (n % 2) == 0;
  if (mpfr_sgn(x.lo_) >= 0) {
    // Non-negative: monotone increasing for n > 0, decreasing for n < 0.
    if (n > 0) {
      mpfr_pow_si(a, x.lo_, n, MPFR_RNDD);
      mpfr_pow_si(b, x.hi_, n, MPFR_RNDU);
    } else {
      mpfr_pow_si(a, x.hi_, n, MPFR_RNDD);
      mpfr_pow_si(b, x.lo_, n, MPFR_RNDU);
    }
  } else if (mpfr_sgn(x.hi_) <= 0) {
    // Non-positive: reflect and fix the sign.
    Interval reflected = pow_int(-x, n);
    return even ? reflected : -reflected;
  } else {
    // Straddles zero, n > 0.
    if (even) {
      Scratch m(prec);
      mpfr_neg(m, x.lo_, MPFR_RNDU);
      mpfr_max(m, m, x.hi_, MPFR_RNDU);
      mpfr_set_zero(a, 1);
      mpfr_pow_si(b, m, n, MPFR_RNDU);
    } else {
      mpfr_pow_si(a, x.lo_, n, MPFR_RNDD);
      mpfr_pow_si(b, x.hi_, n, MPFR_RNDU);
    }
  }
  r.set_endpoints(a, b);
  return r;
}

Interval root(const Interval& x, unsigned long q) {
  if (q == 0) throw std::invalid_argument("root of order zero");
  if (mpfr_sgn(x.lo_) < 0) throw DomainError("root of an interval with negative points");
  const mpfr_prec_t prec = std::max(x.precision(), working_precision());
  Interval r(Interval::PrecTag{}, prec);
  Scratch a(prec), b(prec);
  mpfr_rootn_ui(a, x.lo_, q, MPFR_RNDD);
  mpfr_rootn_ui(b, x.hi_, q, MPFR_RNDU);
  r.set_endpoints(a, b);
  return r;
}

Interval sqrt(const Interval& x) { return root(x, 2); }

Interval pow_rat(const Interval& x, const BigRational& exponent) {
  BigRational e = exponent;
  e.canonicalize();
  const BigInt& num = e.get_num();
  const BigInt& den = e.get_den();
  if (!num.fits_slong_p() || !den.fits_ulong_p()) {
    throw std::invalid_argument("pow_rat: exponent too large");
  }
  if (den == 1) return pow_int(x, num.get_si());
  if (!x.strictly_positive()) {
    throw DomainError("non-integer power of an interval that is not strictly positive");
  }
  return pow_int(root(x, den.get_ui()), num.get_si());
}

Interval exp(const Interval& x) {
  const mpfr_prec_t prec = std::max(x.precision(), working_precision());
  Interval r(Interval::PrecTag{}, prec);
  Scratch a(prec), b(prec);
  mpfr_exp(a, x.lo_, MPFR_RNDD);
  mpfr_exp(b, x.hi_, MPFR_RNDU);
  r.set_endpoints(a, b);
  return r;
}

Interval log(const Interval& x) {
  if (!x.strictly_positive()) throw DomainError("log of an interval that is not strictly positive");
  const mpfr_prec_t prec = std::max(x.precision(), working_precision());
  Interval r(Interval::PrecTag{}, prec);
  Scratch a(prec), b(prec);
  mpfr_log(a, x.lo_, MPFR_RNDD);
  mpfr_log(b, x.hi_, MPFR_RNDU);
  r.set_endpoints(a, b);
  return r;
}

Interval pow_real_hi(const Interval& base, const Interval& exponent) {
  if (mpfr_cmp_ui(base.lo_, 1) < 0 || mpfr_sgn(exponent.lo_) < 0) {
    throw DomainError("pow_real_hi expects base >= 1 and a non-negative exponent");
  }
  const mpfr_prec_t prec = joint_precision(base, exponent);
  Interval r(Interval::PrecTag{}, prec);
  Scratch one(prec), b(prec);
  mpfr_set_ui(one, 1, MPFR_RNDD);
  mpfr_pow(b, base.hi_, exponent.hi_, MPFR_RNDU);
  r.set_endpoints(one, b);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(Interval::PrecTag{}, joint_precision(a, b));
  Scratch lo(r.precision()), hi(r.precision());
  mpfr_min(lo, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(hi, a.hi_, b.hi_, MPFR_RNDU);
  r.set_endpoints(lo, hi);
  return r;
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval r(Interval::PrecTag{}, joint_precision(a, b));
  Scratch lo(r.precision()), hi(r.precision());
  mpfr_max(lo, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(hi, a.hi_, b.hi_, MPFR_RNDU);
  if (mpfr_greater_p(lo, hi)) throw DomainError("intersection of disjoint intervals");
  r.set_endpoints(lo, hi);
  return r;
}

Interval iv_arith(IntervalOp op, const Interval& lhs, const Interval& rhs,
                  const BigRational& exponent) {
  switch (op) {
    case IntervalOp::add: return lhs + rhs;
    case IntervalOp::sub: return lhs - rhs;
    case IntervalOp::mul: return lhs * rhs;
    case IntervalOp::div: return lhs / rhs;
    case IntervalOp::pow_rat: return pow_rat(lhs, exponent);
    case IntervalOp::exp: return exp(lhs);
    case IntervalOp::log: return log(lhs);
  }
  throw std::invalid_argument("unknown interval op");
}

}  // namespace fourcubes
