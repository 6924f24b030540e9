#pragma once

// Input parsing, tolerance overrides and report serialization for
// whitney_cli. Kept apart from main() so the tests can drive them.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>
#include <rapidjson/prettywriter.h>
#include <rapidjson/stringbuffer.h>

#include "whitney/whitney.hpp"
#include "whitney/testing/criteria.hpp"

namespace whitney::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // selftest ran but some criterion failed
  kParse = 2,
  kInsufficientData = 3,
  kInvalidConfig = 4,
  kNumericalFailure = 5,
};

/// Unreadable or malformed input data.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line values or tolerance file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kToleranceEnv = "WHITNEY_TOLERANCES";
inline constexpr const char* kSchema = "trace-report/1";

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Strict decimal parse of a whole field (surrounding blanks allowed).
inline std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  const std::string owned(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(owned.c_str(), &end);
  if (end != owned.c_str() + owned.size() || errno == ERANGE || !std::isfinite(v)) return std::nullopt;
  return v;
}

/// p as a decimal > 1 or the token "inf".
inline double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return std::numeric_limits<double>::infinity();
  const auto v = parse_number(s);
  if (!v || !(*v > 1.0)) throw ConfigError("p must be a number > 1 or \"inf\", got \"" + s + "\"");
  return *v;
}

inline std::string exponent_label(double p) { return std::isinf(p) ? "inf" : fmt17(p); }

struct RawData {
  std::vector<double> x, f;
};

/// Two columns x,f; '#' starts a comment; a first line with no numeric
/// field is taken as a header.
inline RawData parse_csv(std::istream& in) {
  RawData d;
  std::string line;
  std::size_t row = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++row;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string_view lv(line);
    const auto comma = lv.find(',');
    const bool two_fields = comma != std::string_view::npos && lv.find(',', comma + 1) == std::string_view::npos;
    const auto x = two_fields ? parse_number(lv.substr(0, comma)) : std::nullopt;
    const auto f = two_fields ? parse_number(lv.substr(comma + 1)) : std::nullopt;
    const bool header = first && two_fields && !x && !f;
    first = false;
    if (header) continue;
    if (!x || !f)
      throw ParseError("row " + std::to_string(row) + ": expected two numeric columns x,f, got \"" + line + "\"");
    d.x.push_back(*x);
    d.f.push_back(*f);
  }
  return d;
}

/// {"points": [...], "values": [...]}
inline RawData parse_json(const std::string& text) {
  rapidjson::Document doc;
  doc.Parse(text.c_str());
  if (doc.HasParseError())
    throw ParseError(std::string("JSON input, offset ") + std::to_string(doc.GetErrorOffset()) + ": " +
                     rapidjson::GetParseError_En(doc.GetParseError()));
  if (!doc.IsObject() || !doc.HasMember("points") || !doc.HasMember("values") || !doc["points"].IsArray() ||
      !doc["values"].IsArray())
    throw ParseError("JSON input needs arrays \"points\" and \"values\"");
  RawData d;
  for (const char* key : {"points", "values"}) {
    auto& out = key[0] == 'p' ? d.x : d.f;
    std::size_t i = 0;
    for (const auto& v : doc[key].GetArray()) {
      if (!v.IsNumber()) throw ParseError(std::string("JSON input: ") + key + "[" + std::to_string(i) + "] is not a number");
      out.push_back(v.GetDouble());
      ++i;
    }
  }
  if (d.x.size() != d.f.size()) throw ParseError("JSON input: points and values differ in length");
  return d;
}

inline RawData read_data(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  std::istringstream lines(text);
  return parse_csv(lines);
}

/// Sorted SampledFunction; duplicate abscissae are a parse failure.
inline SampledFunction to_sampled(const RawData& d, const Tolerances& tol) {
  if (d.x.empty()) throw InsufficientData("input has no data rows");
  try {
    return SampledFunction::from_unsorted(d.x, d.f, tol);
  } catch (const DuplicatePoints& e) {
    throw ParseError(e.what());
  }
}

/// Overrides from a JSON object whose keys are Tolerances field names.
inline Tolerances load_tolerances(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tolerance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  rapidjson::Document doc;
  doc.Parse(ss.str().c_str());
  if (doc.HasParseError() || !doc.IsObject()) throw ConfigError("tolerance file " + path + " is not a JSON object");
  Tolerances t;
  for (auto it = doc.MemberBegin(); it != doc.MemberEnd(); ++it) {
    const std::string key = it->name.GetString();
    if (!it->value.IsNumber() || !(it->value.GetDouble() > 0.0))
      throw ConfigError("tolerance \"" + key + "\" must be a positive number");
    const double v = it->value.GetDouble();
    if (key == "continuity_rel") t.continuity_rel = v;
    else if (key == "quadrature_rel") t.quadrature_rel = v;
    else if (key == "root") t.root = v;
    else if (key == "min_gap_rel") t.min_gap_rel = v;
    else if (key == "tail_rel") t.tail_rel = v;
    else if (key == "series_rel") t.series_rel = v;
    else throw ConfigError("unknown tolerance \"" + key + "\"");
  }
  return t;
}

/// Tolerances from the file named by WHITNEY_TOLERANCES, or the defaults.
inline Tolerances tolerances_from_env() {
  const char* path = std::getenv(kToleranceEnv);
  if (path == nullptr || *path == '\0') return Tolerances{};
  return load_tolerances(path);
}

// RapidJSON prints the shortest round-trip form; the report pins every
// number to 17 significant digits instead, written as raw tokens.
class JsonOut {
 public:
  JsonOut() : w_(buf_) { w_.SetIndent(' ', 2); }

  void begin_object() { w_.StartObject(); }
  void end_object() { w_.EndObject(); }
  void begin_array() { w_.StartArray(); }
  void end_array() { w_.EndArray(); }
  void key(const std::string& k) { w_.Key(k.c_str(), static_cast<rapidjson::SizeType>(k.size())); }
  void number(double v) {
    if (!std::isfinite(v)) {
      w_.Null();
      return;
    }
    const std::string s = fmt17(v);
    w_.RawValue(s.c_str(), s.size(), rapidjson::kNumberType);
  }
  void integer(long long v) { w_.Int64(v); }
  void boolean(bool v) { w_.Bool(v); }
  void string(const std::string& s) { w_.String(s.c_str(), static_cast<rapidjson::SizeType>(s.size())); }
  void null() { w_.Null(); }
  void optional(const std::optional<double>& v) {
    if (v) number(*v);
    else null();
  }

  void field(const std::string& k, double v) { key(k), number(v); }
  void field(const std::string& k, const std::optional<double>& v) { key(k), optional(v); }
  void field(const std::string& k, const std::string& v) { key(k), string(v); }
  void field(const std::string& k, const char* v) { key(k), string(v); }
  void field(const std::string& k, bool v) { key(k), boolean(v); }
  void field_int(const std::string& k, long long v) { key(k), integer(v); }

  std::string str() const { return std::string(buf_.GetString(), buf_.GetSize()) + "\n"; }

 private:
  rapidjson::StringBuffer buf_;
  rapidjson::PrettyWriter<rapidjson::StringBuffer> w_;
};

inline void write_tolerances(JsonOut& j, const Tolerances& t) {
  j.begin_object();
  j.field("continuity_rel", t.continuity_rel);
  j.field("quadrature_rel", t.quadrature_rel);
  j.field("root", t.root);
  j.field("min_gap_rel", t.min_gap_rel);
  j.field("tail_rel", t.tail_rel);
  j.field("series_rel", t.series_rel);
  j.end_object();
}

inline void write_constants(JsonOut& j, const ConstantsTable& c) {
  j.begin_object();
  j.field_int("m", c.m);
  j.field("theta", c.theta);
  j.field("theta_exact", c.theta_exact);
  j.field("C_mm", c.c_mm);
  j.field("gamma_sharp_lower", c.gamma_lower);
  j.field("gamma_sharp_upper", c.gamma_upper);
  j.field("gamma_bounds_apply", c.bounds_apply);
  j.field("gamma_sharp_exact", c.gamma_sharp_exact);
  j.field("K_exact", c.k_exact);
  j.field("euler_spline_norm", c.euler_spline_norm);
  j.end_object();
}

inline std::string constants_json(const ConstantsTable& c) {
  JsonOut j;
  write_constants(j, c);
  return j.str();
}

inline std::string report_json(const TraceReport& r) {
  JsonOut j;
  j.begin_object();
  j.field("schema", kSchema);
  j.key("input");
  j.begin_object();
  j.field_int("n", static_cast<long long>(r.n));
  j.field_int("m", r.m);
  if (std::isinf(r.p)) j.field("p", "inf");
  else j.field("p", r.p);
  j.end_object();

  j.key("functionals");
  j.begin_object();
  j.field("N_mp", r.N_mp);
  j.field("N_mode", to_string(r.N_mode));
  j.field("N_full_sequence", r.N_full_sequence);
  j.field("N_modes_differ", r.N_modes_differ);
  j.field("T_mp", r.T_mp);
  j.field("sharp_lp", r.sharp_lp);
  j.field("jet_value", r.jet_value);
  j.field("whitney_seminorm", r.whitney_seminorm);
  j.field("oracle_seminorm", r.oracle_seminorm);
  if (r.linfty_bracket) {
    j.key("linfty_trace_bracket");
    j.begin_object();
    j.field("lower", r.linfty_bracket->lower);
    j.field("upper", r.linfty_bracket->upper);
    j.end_object();
  }
  j.end_object();

  j.key("ratios");
  j.begin_object();
  for (const auto& [k, v] : r.ratios) j.field(k, v);
  j.end_object();

  j.key("constants");
  write_constants(j, r.constants);
  j.key("tolerances");
  write_tolerances(j, r.tolerances);
  j.end_object();
  return j.str();
}

/// Report for n = m points: f is the trace of one polynomial of degree
/// m-1, every window functional is an empty sum and F has seminorm 0.
inline std::string polynomial_trace_report_json(int m, double p, std::size_t n, const Tolerances& tol) {
  TraceReport r;
  r.m = m;
  r.p = p;
  r.n = n;
  r.whitney_seminorm = 0.0;
  r.tolerances = tol;
  r.constants = constants_table(m, tol);
  return report_json(r);
}

/// Abscissae for the sample table: `count` equispaced points over E
/// widened by pad * span on each side, merged with E itself.
inline std::vector<double> sample_grid(const SampledFunction& f, std::size_t count, double pad) {
  const double span = f.size() > 1 ? f.span() : 1.0;
  const double lo = f.point(0) - pad * span, hi = f.point(f.size() - 1) + pad * span;
  std::vector<double> xs(f.points());
  for (std::size_t i = 0; i < count; ++i)
    xs.push_back(count == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

/// Columns x, F, F1..Fm.
inline std::string samples_csv(const PiecewisePolynomial& F, int m, const std::vector<double>& xs) {
  std::string out = "x,F";
  for (int k = 1; k <= m; ++k) out += ",F" + std::to_string(k);
  out += "\n";
  for (double x : xs) {
    out += fmt17(x);
    for (int k = 0; k <= m; ++k) out += "," + fmt17(F.derivative_at(x, k));
    out += "\n";
  }
  return out;
}

inline std::string criteria_json(const std::vector<testing::CriterionResult>& results, std::uint64_t seed,
                                 std::uint64_t second_seed) {
  JsonOut j;
  j.begin_object();
  j.field("schema", "selftest/1");
  j.field_int("seed", static_cast<long long>(seed));
  j.field_int("second_seed", static_cast<long long>(second_seed));
  j.key("criteria");
  j.begin_array();
  for (const auto& r : results) {
    j.begin_object();
    j.field_int("id", r.id);
    j.field("title", r.title);
    j.field("pass", r.pass);
    j.key("metrics");
    j.begin_object();
    for (const auto& [k, v] : r.metrics)
      if (k != "seconds") j.field(k, v);
    j.end_object();
    j.end_object();
  }
  j.end_array();
  j.end_object();
  return j.str();
}

}  // namespace whitney::cli
