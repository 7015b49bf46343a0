#include "stratshear/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace stratshear {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("field '" + key + "': expected a number, got '" + v + "'", line, key);
}

int to_int(const std::string& v, int line, const std::string& key) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("field '" + key + "': expected an integer, got '" + v + "'", line, key);
  return x;
}

bool to_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("field '" + key + "': expected true/false, got '" + v + "'", line, key);
}

std::vector<int> to_int_list(const std::string& v, int line, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_int(item, line, key));
  }
  return out;
}

void set_datum(GaussianDatum& d, const std::string& field, const std::string& v, int line, const std::string& key) {
  if (field == "amplitude") d.amplitude = to_double(v, line, key);
  else if (field == "center") d.center = to_double(v, line, key);
  else if (field == "sigma") d.sigma = to_double(v, line, key);
  else throw ConfigError("unknown field '" + key + "'", line, key);
}

const std::set<std::string> kExpectable = {"exponent_q", "exponent_vx", "exponent_vy", "exponent_growth"};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + body + "'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string v = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line);
    if (v.empty()) throw ConfigError("field '" + key + "': missing value", line, key);
    if (!seen.insert(key).second) throw ConfigError("field '" + key + "' given twice", line, key);

    if (key == "mode") {
      if (v == "couette") c.mode = RunMode::couette;
      else if (v == "near_couette") c.mode = RunMode::near_couette;
      else throw ConfigError("field 'mode': expected couette or near_couette, got '" + v + "'", line, key);
    } else if (key == "R") c.R = to_double(v, line, key);
    else if (key == "beta") c.beta = to_double(v, line, key);
    else if (key == "k_list") c.k_list = to_int_list(v, line, key);
    else if (key == "s") c.s = to_double(v, line, key);
    else if (key == "exploratory") c.exploratory = to_bool(v, line, key);
    else if (key == "grid.eta_max") c.eta_max = to_double(v, line, key);
    else if (key == "grid.N") c.N = to_int(v, line, key);
    else if (key == "profile.kind") {
      if (v == "couette") c.profile_kind = ProfileKind::couette;
      else if (v == "perturbed") c.profile_kind = ProfileKind::perturbed;
      else throw ConfigError("field 'profile.kind': expected couette or perturbed, got '" + v + "'", line, key);
    } else if (key == "profile.amplitude") c.profile_amplitude = to_double(v, line, key);
    else if (key == "profile.width") c.profile_width = to_double(v, line, key);
    else if (key == "profile.center") c.profile_center = to_double(v, line, key);
    else if (key == "time.t_max") c.t_max = to_double(v, line, key);
    else if (key == "time.dt") c.dt = to_double(v, line, key);
    else if (key == "time.record_every") c.record_every = to_int(v, line, key);
    else if (key == "weights.C0") c.C0 = to_double(v, line, key);
    else if (key == "solver.tol") c.solver.tol = to_double(v, line, key);
    else if (key == "solver.max_iter") c.solver.max_iter = to_int(v, line, key);
    else if (key.rfind("init.theta.", 0) == 0) set_datum(c.init_theta, key.substr(11), v, line, key);
    else if (key.rfind("init.q.", 0) == 0) set_datum(c.init_q, key.substr(7), v, line, key);
    else if (key == "fit.t_lo") c.fit_t_lo = to_double(v, line, key);
    else if (key == "fit.t_hi") c.fit_t_hi = to_double(v, line, key);
    else if (key == "output.dir") c.output_dir = v;
    else if (key.rfind("expect.", 0) == 0) {
      const std::string rest = key.substr(7);
      const auto dot = rest.rfind('.');
      const std::string name = dot == std::string::npos ? rest : rest.substr(0, dot);
      const std::string bound = dot == std::string::npos ? "" : rest.substr(dot + 1);
      if (!kExpectable.contains(name) || (bound != "min" && bound != "max"))
        throw ConfigError("unknown field '" + key + "' (expect.<exponent_q|exponent_vx|exponent_vy|exponent_growth>.<min|max>)",
                          line, key);
      (bound == "min" ? c.expect[name].min : c.expect[name].max) = to_double(v, line, key);
    } else {
      throw ConfigError("unknown field '" + key + "'", line, key);
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& c, bool acceptance) {
  if (c.k_list.empty()) throw ConfigError("k_list is empty: give at least one nonzero wavenumber", 0, "k_list");
  for (int k : c.k_list)
    if (k == 0) throw ConfigError("k_list contains 0; the k = 0 mode is conserved and not simulated", 0, "k_list");
  if (!(c.R > 0)) throw ConfigError("R must be positive", 0, "R");
  if (!(c.R > 0.25) && (!c.exploratory || acceptance))
    throw ConfigError("R = " + std::to_string(c.R) + " <= 1/4 requires exploratory = true (not allowed with --assert)",
                      0, "R");
  if (c.beta < 0) throw ConfigError("beta must be nonnegative", 0, "beta");
  if (c.s < 0) throw ConfigError("s must be nonnegative", 0, "s");
  if (!(c.eta_max > 0)) throw ConfigError("grid.eta_max must be positive", 0, "grid.eta_max");
  if (c.N < 2 || c.N % 2 != 0) throw ConfigError("grid.N must be a positive even integer", 0, "grid.N");
  if (acceptance && c.N < 128) throw ConfigError("grid.N must be at least 128 for acceptance runs", 0, "grid.N");
  if (!(c.t_max > 0)) throw ConfigError("time.t_max must be positive", 0, "time.t_max");
  if (!(c.dt > 0)) throw ConfigError("time.dt must be positive", 0, "time.dt");
  if (c.record_every < 1) throw ConfigError("time.record_every must be at least 1", 0, "time.record_every");
  if (!(c.C0 > 0)) throw ConfigError("weights.C0 must be positive", 0, "weights.C0");
  if (!(c.solver.tol > 0) || c.solver.max_iter < 1) throw ConfigError("solver.tol / solver.max_iter invalid", 0, "solver");
  if (!(c.init_theta.sigma > 0) || !(c.init_q.sigma > 0)) throw ConfigError("init sigma must be positive", 0, "init");
}

}  // namespace stratshear
