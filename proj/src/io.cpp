#include "blowup/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "blowup/errors.hpp"
#include "json.hpp"

namespace blowup {
namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(line);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool parse_double(std::string_view s, double& v) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

std::string line_error(const std::string& what, int line, const std::string& detail) {
  return what + " line " + std::to_string(line) + ": " + detail;
}

// JSON output with every number at 17 significant digits; non-finite
// values become null.
void dump(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump(it.value(), out, indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(j[i], out, indent + 2);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

void write_json(const fs::path& path, const json& j) {
  std::string text;
  dump(j, text, 0);
  text += "\n";
  auto out = open_out(path);
  out << text;
  close_checked(out, path);
}

json read_json(const fs::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

double get_number(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_null()) return kNaN;
  if (!v.is_number()) throw FormatError(std::string("field '") + key + "' is not a number");
  return v.get<double>();
}

std::optional<double> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_number(j, key);
}

template <typename T>
T get_as(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

json fit_json(const ScalingFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept},       {"r", f.r},
          {"n_points", f.n_points}, {"slope_stderr", f.slope_stderr}, {"degenerate", f.degenerate}};
}

ScalingFit fit_from(const json& j) {
  ScalingFit f;
  f.slope = get_number(j, "slope");
  f.intercept = get_number(j, "intercept");
  f.r = get_number(j, "r");
  f.n_points = get_as<int>(j, "n_points");
  f.slope_stderr = get_number(j, "slope_stderr");
  f.degenerate = get_as<bool>(j, "degenerate");
  return f;
}

json moments_json(const Moments& m) { return {{"E1", m.e1}, {"E2", m.e2}}; }
Moments moments_from(const json& j) { return {get_number(j, "E1"), get_number(j, "E2")}; }

FixedPointClass class_from(const std::string& s) {
  if (s == "unstable") return FixedPointClass::unstable;
  if (s == "stable") return FixedPointClass::stable;
  if (s == "marginal") return FixedPointClass::marginal;
  throw FormatError("unknown fixed point classification '" + s + "'");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_events_csv(const fs::path& path, std::span<const RefinementEvent> events) {
  auto out = open_out(path);
  out << kEventsHeader << '\n';
  for (const auto& e : events) {
    out << e.n << ',' << format_number(e.T) << ',' << e.N << ',' << format_number(e.l) << ','
        << format_number(e.xi) << ',' << format_number(e.a1(0)) << ',' << format_number(e.a1(1)) << ','
        << format_number(e.detB) << ',' << format_number(e.detA) << ',' << format_number(e.E1) << ','
        << format_number(e.E2) << '\n';
  }
  close_checked(out, path);
}

std::vector<RefinementEvent> parse_events_csv(const std::string& text) {
  std::vector<RefinementEvent> events;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(ss, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header) {
      if (line != kEventsHeader)
        throw FormatError(line_error("events.csv", lineno, std::string("expected header '") + kEventsHeader + "'"));
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 11)
      throw FormatError(line_error("events.csv", lineno, "expected 11 fields, found " + std::to_string(fields.size())));
    double v[11];
    for (std::size_t i = 0; i < 11; ++i)
      if (!parse_double(fields[i], v[i]))
        throw FormatError(line_error("events.csv", lineno, "field " + std::to_string(i + 1) + " ('" + fields[i] +
                                                                 "') is not a number"));
    for (int i : {0, 2})
      if (v[i] != std::floor(v[i]) || !(std::abs(v[i]) < 2e9))
        throw FormatError(line_error("events.csv", lineno, "field " + std::to_string(i + 1) + " must be an integer"));
    RefinementEvent e;
    e.n = static_cast<int>(v[0]);
    e.T = v[1];
    e.N = static_cast<int>(v[2]);
    e.l = v[3];
    e.xi = v[4];
    e.a1 = Vector2(v[5], v[6]);
    e.a1_status = SolveStatus::solved;
    e.detB = v[7];
    e.detA = v[8];
    e.E1 = v[9];
    e.E2 = v[10];
    events.push_back(e);
  }
  if (!header) throw FormatError(line_error("events.csv", 1, "file is empty"));
  return events;
}

std::vector<RefinementEvent> read_events_csv(const fs::path& path) {
  try {
    return parse_events_csv(slurp(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

OutcomeRecord summarize(const RunOutcome& outcome) {
  OutcomeRecord r;
  r.final_time = outcome.final_time;
  r.termination = outcome.termination;
  r.wall_clock = outcome.wall_clock;
  r.T_B_first = outcome.T_B_first;
  r.T_A_first = outcome.T_A_first;
  r.steps = outcome.steps;
  r.final_resolution = outcome.final_field.size();
  r.refinements = static_cast<int>(outcome.events.size());
  r.singularity_detected = outcome.termination != Termination::t_end_reached;
  return r;
}

void write_outcome_json(const fs::path& path, const OutcomeRecord& o) {
  json j;
  j["final_time"] = o.final_time;
  j["termination"] = to_string(o.termination);
  j["wall_clock"] = o.wall_clock;
  j["T_B_first"] = number_or_null(o.T_B_first);
  j["T_A_first"] = number_or_null(o.T_A_first);
  j["steps"] = o.steps;
  j["final_resolution"] = o.final_resolution;
  j["refinements"] = o.refinements;
  j["singularity_detected"] = o.singularity_detected;
  write_json(path, j);
}

OutcomeRecord read_outcome_json(const fs::path& path) {
  const json j = read_json(path);
  OutcomeRecord o;
  o.final_time = get_number(j, "final_time");
  try {
    o.termination = termination_from_string(get_as<std::string>(j, "termination"));
  } catch (const ConfigError& e) {
    throw FormatError(e.what());
  }
  o.wall_clock = get_number(j, "wall_clock");
  o.T_B_first = get_optional(j, "T_B_first");
  o.T_A_first = get_optional(j, "T_A_first");
  o.steps = get_as<long>(j, "steps");
  o.final_resolution = get_as<int>(j, "final_resolution");
  o.refinements = get_as<int>(j, "refinements");
  o.singularity_detected = get_as<bool>(j, "singularity_detected");
  return o;
}

void write_snapshot(const fs::path& path, const SpectralField& u) {
  auto out = open_out(path);
  out << "# t = " << format_number(u.time()) << '\n';
  for (int k = u.range().lo; k <= u.range().hi; ++k)
    out << k << ' ' << format_number(u[k].real()) << ' ' << format_number(u[k].imag()) << '\n';
  close_checked(out, path);
}

SpectralField read_snapshot(const fs::path& path) {
  const std::string text = slurp(path);
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  double time = 0.0;
  std::vector<std::pair<int, Complex>> rows;
  while (std::getline(ss, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos && line.find("t =") != std::string::npos &&
          !parse_double(std::string_view(line).substr(eq + 1), time))
        throw FormatError(line_error(path.string(), lineno, "bad time stamp"));
      continue;
    }
    std::istringstream ls(line);
    std::string ks, re, im, extra;
    double k = 0.0, a = 0.0, b = 0.0;
    if (!(ls >> ks >> re >> im) || (ls >> extra) || !parse_double(ks, k) || !parse_double(re, a) ||
        !parse_double(im, b) || k != std::floor(k))
      throw FormatError(line_error(path.string(), lineno, "expected 'k Re Im'"));
    if (!rows.empty() && static_cast<int>(k) != rows.back().first + 1)
      throw FormatError(line_error(path.string(), lineno, "wavenumbers must be consecutive"));
    rows.emplace_back(static_cast<int>(k), Complex(a, b));
  }
  if (rows.empty()) throw FormatError(path.string() + ": no coefficients");
  SpectralField u(ModeRange{rows.front().first, rows.back().first}, time);
  for (const auto& [k, c] : rows) u[k] = c;
  return u;
}

void write_columns(const fs::path& path, std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("write_columns: column lengths differ");
  auto out = open_out(path);
  for (std::size_t i = 0; i < xs.size(); ++i) out << format_number(xs[i]) << ' ' << format_number(ys[i]) << '\n';
  close_checked(out, path);
}

std::pair<std::vector<double>, std::vector<double>> read_columns(const fs::path& path) {
  const std::string text = slurp(path);
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  std::pair<std::vector<double>, std::vector<double>> cols;
  while (std::getline(ss, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    double x = 0.0, y = 0.0;
    if (!(ls >> a >> b) || (ls >> extra) || !parse_double(a, x) || !parse_double(b, y))
      throw FormatError(line_error(path.string(), lineno, "expected two numbers"));
    cols.first.push_back(x);
    cols.second.push_back(y);
  }
  return cols;
}

void write_exponents_json(const fs::path& path, const ExponentReport& r) {
  json j;
  j["Tc_hat"] = r.tc_hat;
  j["Tc_r"] = r.tc_r;
  j["Tc_at_boundary"] = r.tc_at_boundary;
  j["gamma_direct"] = r.gamma_direct;
  j["beta1"] = r.beta1;
  j["beta2"] = r.beta2;
  j["delta"] = r.delta;
  j["gamma_scaling"] = r.gamma_scaling;
  j["fixed_point_stable"] = r.fixed_point_stable;
  j["classification"] = to_string(r.classification);
  j["excluded"] = r.excluded;
  j["scaling_available"] = r.scaling_available;
  j["fits"] = {{"direct", fit_json(r.direct_fit)},
               {"xi_vs_scale", fit_json(r.xi_scale_fit)},
               {"alpha_vs_scale", fit_json(r.alpha_scale_fit)},
               {"alpha_vs_time", fit_json(r.alpha_time_fit)}};
  write_json(path, j);
}

ExponentReport read_exponents_json(const fs::path& path) {
  const json j = read_json(path);
  ExponentReport r;
  r.tc_hat = get_number(j, "Tc_hat");
  r.tc_r = get_number(j, "Tc_r");
  r.tc_at_boundary = get_as<bool>(j, "Tc_at_boundary");
  r.gamma_direct = get_number(j, "gamma_direct");
  r.beta1 = get_number(j, "beta1");
  r.beta2 = get_number(j, "beta2");
  r.delta = get_number(j, "delta");
  r.gamma_scaling = get_number(j, "gamma_scaling");
  r.fixed_point_stable = get_as<bool>(j, "fixed_point_stable");
  r.classification = class_from(get_as<std::string>(j, "classification"));
  r.excluded = get_as<int>(j, "excluded");
  r.scaling_available = get_as<bool>(j, "scaling_available");
  if (!j.contains("fits")) throw FormatError("missing field 'fits'");
  const json& f = j.at("fits");
  r.direct_fit = fit_from(f.at("direct"));
  r.xi_scale_fit = fit_from(f.at("xi_vs_scale"));
  r.alpha_scale_fit = fit_from(f.at("alpha_vs_scale"));
  r.alpha_time_fit = fit_from(f.at("alpha_vs_time"));
  return r;
}

CompareRecord summarize(const TwinComparison& c) {
  CompareRecord r;
  r.adaptive_wall_clock = c.adaptive.wall_clock;
  r.fixed_wall_clock = c.fixed.wall_clock;
  r.speedup = c.adaptive.wall_clock > 0.0 ? c.fixed.wall_clock / c.adaptive.wall_clock : kNaN;
  r.adaptive_final_time = c.adaptive.final_time;
  r.fixed_final_time = c.fixed.final_time;
  r.common_time = c.common_time;
  r.field_max_diff = c.field_max_diff;
  r.adaptive_moments = c.adaptive_moments;
  r.fixed_moments = c.fixed_moments;
  r.digits_E1 = matching_digits(c.adaptive_moments.e1, c.fixed_moments.e1);
  r.digits_E2 = matching_digits(c.adaptive_moments.e2, c.fixed_moments.e2);
  r.digits = c.digits;
  return r;
}

void write_compare_json(const fs::path& path, const CompareRecord& r) {
  json j;
  j["speedup"] = r.speedup;
  j["adaptive_wall_clock"] = r.adaptive_wall_clock;
  j["fixed_wall_clock"] = r.fixed_wall_clock;
  j["adaptive_final_time"] = r.adaptive_final_time;
  j["fixed_final_time"] = r.fixed_final_time;
  j["common_time"] = r.common_time;
  j["field_max_diff"] = r.field_max_diff;
  j["adaptive_moments"] = moments_json(r.adaptive_moments);
  j["fixed_moments"] = moments_json(r.fixed_moments);
  j["digits"] = {{"E1", r.digits_E1}, {"E2", r.digits_E2}, {"min", r.digits}};
  write_json(path, j);
}

CompareRecord read_compare_json(const fs::path& path) {
  const json j = read_json(path);
  CompareRecord r;
  r.speedup = get_number(j, "speedup");
  r.adaptive_wall_clock = get_number(j, "adaptive_wall_clock");
  r.fixed_wall_clock = get_number(j, "fixed_wall_clock");
  r.adaptive_final_time = get_number(j, "adaptive_final_time");
  r.fixed_final_time = get_number(j, "fixed_final_time");
  r.common_time = get_number(j, "common_time");
  r.field_max_diff = get_number(j, "field_max_diff");
  r.adaptive_moments = moments_from(get_as<json>(j, "adaptive_moments"));
  r.fixed_moments = moments_from(get_as<json>(j, "fixed_moments"));
  const json d = get_as<json>(j, "digits");
  r.digits_E1 = get_as<int>(d, "E1");
  r.digits_E2 = get_as<int>(d, "E2");
  r.digits = get_as<int>(d, "min");
  return r;
}

void write_calibration_json(const fs::path& path, const CalibrationRecord& rec) {
  json table = json::array();
  for (const auto& row : rec.result.table)
    table.push_back({{"tol", row.tol},
                     {"digits", row.digits},
                     {"time", row.time},
                     {"adaptive_moments", moments_json(row.adaptive)},
                     {"fixed_moments", moments_json(row.fixed)}});
  json j;
  j["target_digits"] = rec.target_digits;
  j["schedule"] = rec.schedule;
  j["table"] = table;
  j["selected_tol"] = number_or_null(rec.result.selected_tol);
  write_json(path, j);
}

CalibrationRecord read_calibration_json(const fs::path& path) {
  const json j = read_json(path);
  CalibrationRecord rec;
  rec.target_digits = get_as<int>(j, "target_digits");
  rec.schedule = get_as<std::vector<double>>(j, "schedule");
  for (const auto& row : get_as<json>(j, "table")) {
    CalibrationRow r;
    r.tol = get_number(row, "tol");
    r.digits = get_as<int>(row, "digits");
    r.time = get_number(row, "time");
    r.adaptive = moments_from(get_as<json>(row, "adaptive_moments"));
    r.fixed = moments_from(get_as<json>(row, "fixed_moments"));
    rec.result.table.push_back(r);
  }
  rec.result.selected_tol = get_optional(j, "selected_tol");
  return rec;
}

}  // namespace blowup
