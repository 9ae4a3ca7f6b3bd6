#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourcubes/numerics/interval.hpp"

namespace fourcubes::report {

enum class Relation { le, ge, in, eq };

std::string to_string(Relation r);
Relation relation_from_string(const std::string& text);

/// Which endpoint of the certified value the check used.
enum class Endpoint { hi, lo, both, exact };

std::string to_string(Endpoint e);
Endpoint endpoint_from_string(const std::string& text);

/// One checked quantity. Numbers are decimal strings so that no precision is
/// lost in serialization; `exact` holds "p/q" when the value is rational.
struct Entry {
  std::string name;
  std::string module;
  std::string paper_value;
  std::string certified_lo;
  std::string certified_hi;
  std::optional<std::string> exact;
  Relation relation = Relation::le;
  std::string bound;  // right-hand side; "lo,hi" for Relation::in
  bool pass = false;
  bool blocking = true;
  Endpoint endpoint = Endpoint::hi;
  std::string note;

  bool operator==(const Entry&) const = default;
};

struct Provenance {
  std::string version;
  long precision_bits = 0;
  unsigned threads = 0;
  std::vector<std::string> skipped;
  std::map<std::string, std::string> settings;

  bool operator==(const Provenance&) const = default;
};

struct VerificationReport {
  std::vector<Entry> entries;
  bool overall = true;
  Provenance provenance;

  /// overall = conjunction of the pass flags of blocking entries.
  void recompute_overall();
  void append(const std::vector<Entry>& more);
  const Entry* find(const std::string& name) const;

  bool operator==(const VerificationReport&) const = default;
};

/// Entry builders. The certified interval is printed with directed rounding.
Entry interval_entry(std::string name, std::string module, const Interval& value, Relation relation,
                     const BigRational& bound, std::string paper_value, bool blocking = true);
Entry range_entry(std::string name, std::string module, const Interval& value, const BigRational& lo,
                  const BigRational& hi, std::string paper_value, bool blocking = true);
Entry exact_entry(std::string name, std::string module, const BigRational& value, Relation relation,
                  const BigRational& bound, std::string paper_value, bool blocking = true);
Entry flag_entry(std::string name, std::string module, bool pass, std::string note, bool blocking = true);

/// Decimal text of a rational, e.g. "1.02944", parsed exactly.
BigRational decimal(const std::string& text);
/// Decimal rendering of an exact rational to `digits` significant digits.
std::string decimal_string(const BigRational& q, int digits = 20);

class ReportParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_json(const VerificationReport& report, int indent = 2);
/// Throws ReportParseError on malformed input.
VerificationReport from_json(const std::string& text);

/// Fixed-width human-readable table.
std::string to_table(const VerificationReport& report);

}  // namespace fourcubes::report
