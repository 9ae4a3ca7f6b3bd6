#include "fourcubes/report.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace fourcubes::report {

using nlohmann::json;

std::string to_string(Relation r) {
  switch (r) {
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
    case Relation::in: return "in";
    case Relation::eq: return "=";
  }
  return "?";
}

Relation relation_from_string(const std::string& text) {
  if (text == "<=") return Relation::le;
  if (text == ">=") return Relation::ge;
  if (text == "in") return Relation::in;
  if (text == "=") return Relation::eq;
  throw ReportParseError("unknown relation '" + text + "'");
}

std::string to_string(Endpoint e) {
  switch (e) {
    case Endpoint::hi: return "hi";
    case Endpoint::lo: return "lo";
    case Endpoint::both: return "both";
    case Endpoint::exact: return "exact";
  }
  return "?";
}

Endpoint endpoint_from_string(const std::string& text) {
  if (text == "hi") return Endpoint::hi;
  if (text == "lo") return Endpoint::lo;
  if (text == "both") return Endpoint::both;
  if (text == "exact") return Endpoint::exact;
  throw ReportParseError("unknown endpoint '" + text + "'");
}

void VerificationReport::recompute_overall() {
  overall = std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return !e.blocking || e.pass; });
}

void VerificationReport::append(const std::vector<Entry>& more) {
  entries.insert(entries.end(), more.begin(), more.end());
}

const Entry* VerificationReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

BigRational decimal(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  BigInt digits = 0;
  long scale = 0;
  bool any = false;
  bool point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (point) --scale;
      any = true;
    } else if (c == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("not a decimal number: '" + text + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    std::size_t used = 0;
    try {
      scale += std::stol(text.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a decimal number: '" + text + "'");
    }
    i += 1 + used;
  }
  if (i != text.size()) throw std::invalid_argument("not a decimal number: '" + text + "'");
  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  BigRational q = scale >= 0 ? BigRational(digits * pow10) : BigRational(digits, pow10);
  q.canonicalize();
  return negative ? BigRational(-q) : q;
}

std::string decimal_string(const BigRational& q, int digits) {
  mpf_class f(q, 512);
  char* out = nullptr;
  gmp_asprintf(&out, "%.*Fg", digits, f.get_mpf_t());
  std::string s(out);
  void (*free_fn)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(out, s.size() + 1);
  return s;
}

Entry interval_entry(std::string name, std::string module, const Interval& value, Relation relation,
                     const BigRational& bound, std::string paper_value, bool blocking) {
  Entry e;
  e.name = std::move(name);
  e.module = std::move(module);
  e.paper_value = std::move(paper_value);
  e.certified_lo = value.lo_string();
  e.certified_hi = value.hi_string();
  e.relation = relation;
  e.bound = decimal_string(bound);
  e.blocking = blocking;
  switch (relation) {
    case Relation::le:
      e.pass = value.hi_le(bound);
      e.endpoint = Endpoint::hi;
      break;
    case Relation::ge:
      e.pass = value.lo_ge(bound);
      e.endpoint = Endpoint::lo;
      break;
    default: throw std::invalid_argument("interval_entry expects <= or >=");
  }
  return e;
}

Entry range_entry(std::string name, std::string module, const Interval& value, const BigRational& lo,
                  const BigRational& hi, std::string paper_value, bool blocking) {
  Entry e;
  e.name = std::move(name);
  e.module = std::move(module);
  e.paper_value = std::move(paper_value);
  e.certified_lo = value.lo_string();
  e.certified_hi = value.hi_string();
  e.relation = Relation::in;
  e.bound = decimal_string(lo) + "," + decimal_string(hi);
  e.pass = value.lo_ge(lo) && value.hi_le(hi);
  e.blocking = blocking;
  e.endpoint = Endpoint::both;
  return e;
}

Entry exact_entry(std::string name, std::string module, const BigRational& value, Relation relation,
                  const BigRational& bound, std::string paper_value, bool blocking) {
  Entry e;
  e.name = std::move(name);
  e.module = std::move(module);
  e.paper_value = std::move(paper_value);
  e.certified_lo = decimal_string(value);
  e.certified_hi = e.certified_lo;
  e.exact = value.get_str();
  e.relation = relation;
  e.bound = decimal_string(bound);
  e.blocking = blocking;
  e.endpoint = Endpoint::exact;
  switch (relation) {
    case Relation::le: e.pass = value <= bound; break;
    case Relation::ge: e.pass = value >= bound; break;
    case Relation::eq: e.pass = value == bound; break;
    case Relation::in: throw std::invalid_argument("exact_entry does not take a range");
  }
  return e;
}

Entry flag_entry(std::string name, std::string module, bool pass, std::string note, bool blocking) {
  Entry e;
  e.name = std::move(name);
  e.module = std::move(module);
  e.relation = Relation::eq;
  e.bound = "true";
  e.pass = pass;
  e.blocking = blocking;
  e.endpoint = Endpoint::exact;
  e.note = std::move(note);
  return e;
}

std::string to_json(const VerificationReport& report, int indent) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json j = {
        {"name", e.name},
        {"module", e.module},
        {"paper_value", e.paper_value},
        {"certified", {{"lo", e.certified_lo}, {"hi", e.certified_hi}}},
        {"relation", to_string(e.relation)},
        {"bound", e.bound},
        {"pass", e.pass},
        {"blocking", e.blocking},
        {"endpoint", to_string(e.endpoint)},
        {"note", e.note},
    };
    if (e.exact) j["certified"]["exact"] = *e.exact;
    entries.push_back(std::move(j));
  }
  const auto& p = report.provenance;
  json doc = {
      {"entries", entries},
      {"overall", report.overall},
      {"provenance",
       {{"version", p.version},
        {"precision_bits", std::to_string(p.precision_bits)},
        {"threads", std::to_string(p.threads)},
        {"skipped", p.skipped},
        {"settings", p.settings}}},
  };
  return doc.dump(indent);
}

VerificationReport from_json(const std::string& text) {
  VerificationReport r;
  try {
    const json doc = json::parse(text);
    for (const auto& j : doc.at("entries")) {
      Entry e;
      e.name = j.at("name").get<std::string>();
      e.module = j.at("module").get<std::string>();
      e.paper_value = j.at("paper_value").get<std::string>();
      const auto& c = j.at("certified");
      e.certified_lo = c.at("lo").get<std::string>();
      e.certified_hi = c.at("hi").get<std::string>();
      if (c.contains("exact")) e.exact = c.at("exact").get<std::string>();
      e.relation = relation_from_string(j.at("relation").get<std::string>());
      e.bound = j.at("bound").get<std::string>();
      e.pass = j.at("pass").get<bool>();
      e.blocking = j.at("blocking").get<bool>();
      e.endpoint = endpoint_from_string(j.at("endpoint").get<std::string>());
      e.note = j.at("note").get<std::string>();
      r.entries.push_back(std::move(e));
    }
    r.overall = doc.at("overall").get<bool>();
    const auto& p = doc.at("provenance");
    r.provenance.version = p.at("version").get<std::string>();
    r.provenance.precision_bits = std::stol(p.at("precision_bits").get<std::string>());
    r.provenance.threads = static_cast<unsigned>(std::stoul(p.at("threads").get<std::string>()));
    r.provenance.skipped = p.at("skipped").get<std::vector<std::string>>();
    r.provenance.settings = p.at("settings").get<std::map<std::string, std::string>>();
  } catch (const ReportParseError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ReportParseError(std::string("malformed report: ") + ex.what());
  }
  return r;
}

std::string to_table(const VerificationReport& report) {
  auto shorten = [](const std::string& s) {
    // Directed-rounding output carries 25 digits; 12 are enough on screen.
    const auto e = s.find('e');
    if (e == std::string::npos) return s.size() > 20 ? s.substr(0, 20) : s;
    if (e <= 14) return s;
    return s.substr(0, 14) + s.substr(e);
  };
  std::ostringstream os;
  os << std::left << std::setw(36) << "check" << std::setw(6) << "pass" << std::setw(5) << "blk"
     << std::setw(22) << "certified lo" << std::setw(22) << "certified hi" << std::setw(4) << "rel"
     << "bound\n";
  for (const auto& e : report.entries) {
    os << std::setw(36) << e.name << std::setw(6) << (e.pass ? "PASS" : "FAIL") << std::setw(5)
       << (e.blocking ? "yes" : "no") << std::setw(22) << shorten(e.certified_lo) << std::setw(22)
       << shorten(e.certified_hi) << std::setw(4) << to_string(e.relation) << e.bound << '\n';
    if (!e.note.empty()) os << "    note: " << e.note << '\n';
  }
  os << "overall: " << (report.overall ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace fourcubes::report
