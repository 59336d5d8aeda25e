#include "blowup/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "blowup/errors.hpp"
#include "blowup/fft.hpp"

namespace blowup {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"name", "sigma", "amplitude", "initial_condition"}},
      {"resolution", {"n_start", "n_final", "refine_factor", "ladder"}},
      {"criterion", {"tol", "cond_max"}},
      {"integrator", {"scheme", "cfl_safety", "dt_max", "check_every"}},
      {"run", {"t_end", "output_dir", "seed"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError(key + ": expected a finite number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

int to_int(const std::string& text, const std::string& key) {
  const long long v = to_integer(text, key);
  if (v < 1 || v > (1LL << 30)) throw ConfigError(key + ": value " + text + " out of range");
  return static_cast<int>(v);
}

int to_resolution(const std::string& text, const std::string& key) {
  const int n = to_int(text, key);
  if (n % 4 != 0 || !is_smooth_size(n))
    throw ConfigError(key + ": resolution " + std::to_string(n) + " must be a multiple of 4 of the form 2^a 3^b");
  return n;
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> get(const std::string& key) const {
    if (!tree_) return std::nullopt;
    const auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }
  std::string key(const std::string& k) const { return name_ + "." + k; }

 private:
  const pt::ptree* tree_;
  std::string name_;
};

}  // namespace

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(item, what));
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
  }

  for (const auto& [section, body] : tree) {
    const auto it = allowed_keys().find(section);
    if (it == allowed_keys().end()) {
      if (body.empty()) throw ConfigError(section + ": key outside any section");
      throw ConfigError(section + ": unknown section");
    }
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw ConfigError(section + "." + key + ": unknown key");
  }
  const auto section = [&](const std::string& name) {
    const auto child = tree.get_child_optional(name);
    return Section(child ? &*child : nullptr, name);
  };

  ExperimentConfig cfg;
  RunConfig& run = cfg.run;

  const Section model = section("model");
  const std::string name = model.get("name").value_or("burgers");
  if (name == "burgers") {
    run.model = ModelSpec::burgers();
    run.initial = {InitialKind::sine, 1.0};
    run.integrator.scheme = Scheme::rk4;
    if (model.get("sigma")) throw ConfigError(model.key("sigma") + ": only valid for the nls model");
  } else if (name == "nls") {
    const double sigma = to_double(model.get("sigma").value_or("3"), model.key("sigma"));
    if (sigma <= 0.0 || sigma != std::floor(sigma))
      throw ConfigError(model.key("sigma") + ": must be a positive integer, got " + *model.get("sigma"));
    run.model = ModelSpec::nls(sigma);
    run.initial = {InitialKind::gaussian_nls, 1.35};
    run.integrator.scheme = Scheme::ifrk4;
  } else {
    throw ConfigError(model.key("name") + ": unknown model '" + name + "' (burgers or nls)");
  }
  if (auto ic = model.get("initial_condition")) {
    if (*ic == "sin") run.initial.kind = InitialKind::sine;
    else if (*ic == "gaussian_nls") run.initial.kind = InitialKind::gaussian_nls;
    else throw ConfigError(model.key("initial_condition") + ": unknown initial condition '" + *ic + "'");
  }
  if (run.model.kind == ModelKind::burgers && run.initial.kind != InitialKind::sine)
    throw ConfigError(model.key("initial_condition") + ": the burgers model needs a real initial condition (sin)");
  run.initial.amplitude = run.initial.kind == InitialKind::sine ? 1.0 : 1.35;
  if (auto a = model.get("amplitude")) {
    run.initial.amplitude = to_double(*a, model.key("amplitude"));
    if (!(run.initial.amplitude > 0.0)) throw ConfigError(model.key("amplitude") + ": must be positive");
  }

  const Section res = section("resolution");
  const auto n_start = res.get("n_start");
  const auto n_final = res.get("n_final");
  if (auto ladder = res.get("ladder")) {
    if (res.get("refine_factor"))
      throw ConfigError(res.key("ladder") + ": give either ladder or refine_factor, not both");
    run.ladder.clear();
    std::stringstream ss(*ladder);
    std::string item;
    while (std::getline(ss, item, ',')) run.ladder.push_back(to_resolution(item, res.key("ladder")));
    if (run.ladder.empty()) throw ConfigError(res.key("ladder") + ": empty list");
    if (n_start && to_int(*n_start, res.key("n_start")) != run.ladder.front())
      throw ConfigError(res.key("n_start") + ": does not match the first ladder entry");
    if (n_final && to_int(*n_final, res.key("n_final")) != run.ladder.back())
      throw ConfigError(res.key("n_final") + ": does not match the last ladder entry");
  } else {
    const int start = n_start ? to_resolution(*n_start, res.key("n_start")) : run.n_start();
    const int final_n = n_final ? to_resolution(*n_final, res.key("n_final")) : run.n_final();
    const int factor = res.get("refine_factor") ? to_int(*res.get("refine_factor"), res.key("refine_factor")) : 2;
    run.ladder = RunConfig::geometric_ladder(start, final_n, factor);
  }

  const Section crit = section("criterion");
  if (auto v = crit.get("tol")) run.tol = to_double(*v, crit.key("tol"));
  if (auto v = crit.get("cond_max")) run.cond_max = to_double(*v, crit.key("cond_max"));

  const Section integ = section("integrator");
  if (auto v = integ.get("scheme")) {
    if (*v == "rk4") run.integrator.scheme = Scheme::rk4;
    else if (*v == "ifrk4") run.integrator.scheme = Scheme::ifrk4;
    else throw ConfigError(integ.key("scheme") + ": unknown scheme '" + *v + "' (rk4 or ifrk4)");
  }
  if (auto v = integ.get("cfl_safety")) run.integrator.cfl_safety = to_double(*v, integ.key("cfl_safety"));
  if (auto v = integ.get("dt_max")) run.integrator.dt_max = to_double(*v, integ.key("dt_max"));
  if (auto v = integ.get("check_every")) run.integrator.check_every = to_int(*v, integ.key("check_every"));

  const Section r = section("run");
  if (auto v = r.get("t_end")) run.t_end = to_double(*v, r.key("t_end"));
  if (auto v = r.get("output_dir")) cfg.output_dir = *v;
  if (auto v = r.get("seed")) {
    const long long s = to_integer(*v, r.key("seed"));
    if (s < 0) throw ConfigError(r.key("seed") + ": must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }

  run.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace blowup
