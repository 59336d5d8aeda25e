#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "blowup/errors.hpp"
#include "blowup/io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace blowup;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("blowup_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// awkward doubles: every bit must survive the text round trip
std::vector<RefinementEvent> sample_events() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<RefinementEvent> ev;
  for (int i = 0; i < 5; ++i) {
    RefinementEvent e;
    e.n = i + 1;
    e.T = 0.9 + 0.01 * i + 1e-13 * d(rng);
    e.N = 32 << i;
    e.l = 4.0 * M_PI / e.N;
    e.xi = std::exp(10.0 * d(rng));
    e.a1 = Vector2(1.0 / 3.0 + d(rng), d(rng) * 1e-300);
    e.a1_status = SolveStatus::solved;
    e.detB = d(rng) * 1e-17;
    e.detA = -d(rng) * 1e-12;
    e.E1 = M_PI * d(rng);
    e.E2 = std::nextafter(1.0, 2.0);
    ev.push_back(e);
  }
  return ev;
}

const char* kGoodRow = "1,0.5,32,0.39269908169872414,1,1,0,1e-10,0,1,1\n";

std::string csv_error(const std::string& text) {
  try {
    parse_events_csv(text);
  } catch (const FormatError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_number keeps 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-1.0 / 3.0) == "-0.33333333333333331");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(std::uniform_real_distribution<double>(-1, 1)(rng), int(rng() % 2000) - 1000);
    CHECK(std::stod(format_number(v)) == v);
  }
}

TEST_CASE("events.csv round trip is exact") {
  TempDir dir;
  const auto ev = sample_events();
  write_events_csv(dir.path / "events.csv", ev);
  const std::string text = slurp(dir.path / "events.csv");
  CHECK(text.substr(0, text.find('\n')) == kEventsHeader);
  const auto back = read_events_csv(dir.path / "events.csv");
  REQUIRE(back.size() == ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    CHECK(back[i].n == ev[i].n);
    CHECK(back[i].T == ev[i].T);
    CHECK(back[i].N == ev[i].N);
    CHECK(back[i].l == ev[i].l);
    CHECK(back[i].xi == ev[i].xi);
    CHECK(back[i].a1 == ev[i].a1);
    CHECK(back[i].detB == ev[i].detB);
    CHECK(back[i].detA == ev[i].detA);
    CHECK(back[i].E1 == ev[i].E1);
    CHECK(back[i].E2 == ev[i].E2);
  }
  // rewriting what was read gives the same bytes
  write_events_csv(dir.path / "again.csv", back);
  CHECK(slurp(dir.path / "again.csv") == text);

  write_events_csv(dir.path / "empty.csv", {});
  CHECK(read_events_csv(dir.path / "empty.csv").empty());
}

TEST_CASE("malformed events.csv names the line") {
  const std::string header = std::string(kEventsHeader) + "\n";
  CHECK(csv_error("").find("line 1") != std::string::npos);
  CHECK(csv_error("n,T,N\n").find("line 1") != std::string::npos);
  CHECK(csv_error(header + kGoodRow + "2,0.6,64\n").find("line 3") != std::string::npos);
  CHECK(csv_error(header + kGoodRow + kGoodRow + "3,abc,64,0.1,1,1,0,1,0,1,1\n").find("line 4") != std::string::npos);
  CHECK(csv_error(header + "1.5,0.5,32,0.1,1,1,0,1,0,1,1\n").find("line 2") != std::string::npos);
  CHECK(csv_error(header + kGoodRow).empty());
  CHECK_THROWS_AS(read_events_csv("/nonexistent/events.csv"), FormatError);
}

TEST_CASE("outcome.json round trip") {
  TempDir dir;
  OutcomeRecord o;
  o.final_time = 0.97427123456789012;
  o.termination = Termination::resolution_exhausted;
  o.wall_clock = 0.8125;
  o.T_B_first = 0.123;
  o.steps = 12345;
  o.final_resolution = 8192;
  o.refinements = 9;
  o.singularity_detected = true;
  write_outcome_json(dir.path / "outcome.json", o);
  const std::string text = slurp(dir.path / "outcome.json");
  for (const char* key : {"final_time", "termination", "wall_clock", "T_B_first", "T_A_first"})
    CHECK(text.find(std::string("\"") + key + "\"") != std::string::npos);
  CHECK(text.find("\"resolution_exhausted\"") != std::string::npos);
  const OutcomeRecord b = read_outcome_json(dir.path / "outcome.json");
  CHECK(b.final_time == o.final_time);
  CHECK(b.termination == o.termination);
  CHECK(b.wall_clock == o.wall_clock);
  CHECK(b.T_B_first == o.T_B_first);
  CHECK_FALSE(b.T_A_first.has_value());
  CHECK(b.steps == o.steps);
  CHECK(b.final_resolution == o.final_resolution);
  CHECK(b.refinements == o.refinements);
  CHECK(b.singularity_detected);

  spit(dir.path / "bad.json", "{\"final_time\": 1}");
  CHECK_THROWS_AS(read_outcome_json(dir.path / "bad.json"), FormatError);
  spit(dir.path / "worse.json", "{not json");
  CHECK_THROWS_AS(read_outcome_json(dir.path / "worse.json"), FormatError);
}

TEST_CASE("summarize a run outcome") {
  RunOutcome r;
  r.final_time = 0.5;
  r.termination = Termination::t_end_reached;
  r.final_field = SpectralField(ModeRange::symmetric(64));
  r.events.resize(2);
  const OutcomeRecord o = summarize(r);
  CHECK(o.final_resolution == 64);
  CHECK(o.refinements == 2);
  CHECK_FALSE(o.singularity_detected);
  r.termination = Termination::overflow;
  CHECK(summarize(r).singularity_detected);
}

TEST_CASE("snapshot round trip") {
  TempDir dir;
  SpectralField u = oracle::random_field(ModeRange::symmetric(16), 9, false);
  u.set_time(0.123456789012345678);
  write_snapshot(dir.path / "f.txt", u);
  const std::string text = slurp(dir.path / "f.txt");
  CHECK(text.rfind("# t = ", 0) == 0);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  std::istringstream first(line);
  int k;
  double re, im;
  first >> k >> re >> im;
  CHECK(k == -8);
  CHECK(re == u[-8].real());
  CHECK(im == u[-8].imag());

  const SpectralField v = read_snapshot(dir.path / "f.txt");
  CHECK(v.range().lo == u.range().lo);
  CHECK(v.range().hi == u.range().hi);
  CHECK(v.time() == u.time());
  CHECK(oracle::max_diff(u, v) == 0.0);

  spit(dir.path / "gap.txt", "# t = 0\n0 1 0\n2 1 0\n");
  CHECK_THROWS_AS(read_snapshot(dir.path / "gap.txt"), FormatError);
  spit(dir.path / "short.txt", "# t = 0\n0 1\n");
  CHECK_THROWS_AS(read_snapshot(dir.path / "short.txt"), FormatError);
}

TEST_CASE("two-column files") {
  TempDir dir;
  const std::vector<double> xs{1e-3, 2.0, 1e300}, ys{0.1, 1.0 / 3.0, 5e-324};
  write_columns(dir.path / "c.dat", xs, ys);
  const auto [a, b] = read_columns(dir.path / "c.dat");
  CHECK(a == xs);
  CHECK(b == ys);
  CHECK_THROWS(write_columns(dir.path / "d.dat", xs, std::vector<double>{1.0}));
  spit(dir.path / "bad.dat", "1 2\n3\n");
  try {
    read_columns(dir.path / "bad.dat");
    FAIL("expected a FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("exponents.json round trip") {
  TempDir dir;
  ExponentReport r;
  r.tc_hat = 1.0000000123;
  r.tc_r = 0.99999999912;
  r.tc_at_boundary = true;
  r.gamma_direct = 0.99999;
  r.beta1 = 0.8427;
  r.beta2 = 0.6309;
  r.delta = 1.33;
  r.gamma_scaling = r.delta * r.beta2 / r.beta1;
  r.fixed_point_stable = false;
  r.classification = FixedPointClass::unstable;
  r.excluded = 2;
  r.direct_fit = {1.0, 0.5, 0.999, 9, 1e-4, false};
  r.xi_scale_fit = {-0.63, 0.1, -0.99, 9, 1e-3, false};
  r.alpha_scale_fit = {0.84, 0.2, 0.98, 7, 2e-2, false};
  r.alpha_time_fit = {1.33, 0.3, 0.97, 7, 3e-2, false};
  write_exponents_json(dir.path / "e.json", r);
  const ExponentReport b = read_exponents_json(dir.path / "e.json");
  CHECK(b.tc_hat == r.tc_hat);
  CHECK(b.tc_r == r.tc_r);
  CHECK(b.tc_at_boundary);
  CHECK(b.gamma_direct == r.gamma_direct);
  CHECK(b.beta1 == r.beta1);
  CHECK(b.beta2 == r.beta2);
  CHECK(b.delta == r.delta);
  CHECK(b.gamma_scaling == r.gamma_scaling);
  CHECK(b.classification == r.classification);
  CHECK(b.excluded == 2);
  CHECK(b.scaling_available);
  CHECK(b.alpha_time_fit.slope == r.alpha_time_fit.slope);
  CHECK(b.alpha_scale_fit.n_points == 7);
  CHECK(b.xi_scale_fit.r == r.xi_scale_fit.r);
  CHECK(b.direct_fit.slope_stderr == r.direct_fit.slope_stderr);

  // unavailable scaling exponents are written as null and read back as NaN
  r.scaling_available = false;
  r.beta1 = r.delta = r.gamma_scaling = std::numeric_limits<double>::quiet_NaN();
  write_exponents_json(dir.path / "n.json", r);
  CHECK(slurp(dir.path / "n.json").find("null") != std::string::npos);
  const ExponentReport n = read_exponents_json(dir.path / "n.json");
  CHECK_FALSE(n.scaling_available);
  CHECK(std::isnan(n.gamma_scaling));
}

TEST_CASE("compare.json round trip") {
  TempDir dir;
  CompareRecord c;
  c.adaptive_wall_clock = 1.09;
  c.fixed_wall_clock = 26.8;
  c.speedup = c.fixed_wall_clock / c.adaptive_wall_clock;
  c.adaptive_final_time = 0.97;
  c.fixed_final_time = 0.975;
  c.common_time = 0.975;
  c.field_max_diff = 3.8e-11;
  c.adaptive_moments = {1.2345678901234567, 0.1};
  c.fixed_moments = {1.2345678901234, 0.1000000000001};
  c.digits_E1 = 13;
  c.digits_E2 = 12;
  c.digits = 12;
  write_compare_json(dir.path / "c.json", c);
  const CompareRecord b = read_compare_json(dir.path / "c.json");
  CHECK(b.speedup == c.speedup);
  CHECK(b.adaptive_wall_clock == c.adaptive_wall_clock);
  CHECK(b.fixed_wall_clock == c.fixed_wall_clock);
  CHECK(b.common_time == c.common_time);
  CHECK(b.field_max_diff == c.field_max_diff);
  CHECK(b.adaptive_moments.e1 == c.adaptive_moments.e1);
  CHECK(b.fixed_moments.e2 == c.fixed_moments.e2);
  CHECK(b.digits_E1 == 13);
  CHECK(b.digits_E2 == 12);
  CHECK(b.digits == 12);
}

TEST_CASE("calibration.json round trip") {
  TempDir dir;
  CalibrationRecord c;
  c.target_digits = 5;
  c.schedule = {1e-6, 1e-10, 1e-16};
  c.result.table.push_back({1e-6, 3, 0.9, {1.0, 0.5}, {1.001, 0.5004}});
  c.result.table.push_back({1e-10, 7, 0.95, {1.1, 0.6}, {1.1000001, 0.6000001}});
  c.result.selected_tol = 1e-10;
  write_calibration_json(dir.path / "c.json", c);
  const CalibrationRecord b = read_calibration_json(dir.path / "c.json");
  CHECK(b.target_digits == 5);
  CHECK(b.schedule == c.schedule);
  REQUIRE(b.result.table.size() == 2);
  CHECK(b.result.table[1].tol == 1e-10);
  CHECK(b.result.table[1].digits == 7);
  CHECK(b.result.table[1].time == 0.95);
  CHECK(b.result.table[0].fixed.e1 == 1.001);
  CHECK(b.result.selected_tol == 1e-10);

  c.result.selected_tol.reset();
  write_calibration_json(dir.path / "f.json", c);
  CHECK(slurp(dir.path / "f.json").find("\"selected_tol\": null") != std::string::npos);
  CHECK_FALSE(read_calibration_json(dir.path / "f.json").result.selected_tol.has_value());
}

}
