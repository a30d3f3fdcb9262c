#include "seqclass/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace seqclass {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(v);
  while (std::getline(ss, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a real number, got '" + v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<double> parse_reals(const std::string& key, const std::string& v) {
  std::string s = v;
  s.erase(std::remove(s.begin(), s.end(), '['), s.end());
  s.erase(std::remove(s.begin(), s.end(), ']'), s.end());
  std::vector<double> out;
  for (const auto& t : split_list(s)) out.push_back(parse_real(key, t));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

SweepSpec& sweep_of(RunConfig& c) {
  if (!c.sweep) c.sweep = SweepSpec{};
  return *c.sweep;
}

using Setter = void (*)(RunConfig&, const std::string&, const std::string&);

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      {"schema", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.schema = static_cast<int>(parse_int(k, v));
       }},
      {"preset", [](RunConfig& c, const std::string&, const std::string& v) { c.preset = v; }},
      {"d", [](RunConfig& c, const std::string& k, const std::string& v) { c.d = static_cast<int>(parse_int(k, v)); }},
      {"P0", [](RunConfig& c, const std::string& k, const std::string& v) { c.P0 = parse_reals(k, v); }},
      {"P1", [](RunConfig& c, const std::string& k, const std::string& v) { c.P1 = parse_reals(k, v); }},
      {"alpha", [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha = parse_real(k, v); }},
      {"beta", [](RunConfig& c, const std::string& k, const std::string& v) { c.beta = parse_real(k, v); }},
      {"epsilon", [](RunConfig& c, const std::string& k, const std::string& v) { c.epsilon = parse_real(k, v); }},
      {"lambda", [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v != "constant" && v != "scaled_renyi")
           throw ConfigError("key '" + k + "': expected constant or scaled_renyi, got '" + v + "'");
         c.lambda_family = v;
       }},
      {"lambda0", [](RunConfig& c, const std::string& k, const std::string& v) { c.lambda0 = parse_real(k, v); }},
      {"xi", [](RunConfig& c, const std::string& k, const std::string& v) { c.xi = parse_real(k, v); }},
      {"offset", [](RunConfig& c, const std::string& k, const std::string& v) { c.offset = parse_real(k, v); }},
      {"sweep.parameter", [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v != "lambda0" && v != "xi" && v != "beta")
           throw ConfigError("key '" + k + "': expected lambda0, xi or beta, got '" + v + "'");
         sweep_of(c).parameter = v;
       }},
      {"sweep.from", [](RunConfig& c, const std::string& k, const std::string& v) { sweep_of(c).from = parse_real(k, v); }},
      {"sweep.to", [](RunConfig& c, const std::string& k, const std::string& v) {
         auto& s = sweep_of(c);
         if (v == "gjs") {
           s.to_gjs = true;
         } else {
           s.to_gjs = false;
           s.to = parse_real(k, v);
         }
       }},
      {"sweep.points", [](RunConfig& c, const std::string& k, const std::string& v) {
         sweep_of(c).points = static_cast<int>(parse_int(k, v));
       }},
      {"sweep.scale", [](RunConfig& c, const std::string& k, const std::string& v) {
         if (v != "linear" && v != "log") throw ConfigError("key '" + k + "': expected linear or log");
         sweep_of(c).log_scale = v == "log";
       }},
      {"solver.coarse_m", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.coarse_m = static_cast<int>(parse_int(k, v));
       }},
      {"solver.refine_rounds", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.refine_rounds = static_cast<int>(parse_int(k, v));
       }},
      {"solver.refine_factor", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.refine_factor = static_cast<int>(parse_int(k, v));
       }},
      {"sim.setups", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.sim.setups.clear();
         for (const auto& t : split_list(v)) {
           try {
             c.sim.setups.push_back(setup_from_string(t));
           } catch (const std::invalid_argument& e) {
             throw ConfigError("key '" + k + "': " + e.what());
           }
         }
         if (c.sim.setups.empty()) throw ConfigError("key '" + k + "': empty list");
       }},
      {"sim.n_grid", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.sim.n_grid.clear();
         for (const auto& t : split_list(v)) c.sim.n_grid.push_back(parse_int(k, t));
         if (c.sim.n_grid.empty()) throw ConfigError("key '" + k + "': empty list");
       }},
      {"sim.trials", [](RunConfig& c, const std::string& k, const std::string& v) { c.sim.trials = parse_int(k, v); }},
      {"sim.seed", [](RunConfig& c, const std::string& k, const std::string& v) {
         const long s = parse_int(k, v);
         if (s < 0) throw ConfigError("key '" + k + "': seed must be >= 0");
         c.sim.seed = static_cast<std::uint64_t>(s);
       }},
      {"sim.late_phase_cap", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.sim.late_phase_cap = parse_int(k, v);
       }},
      {"sim.thetas", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.sim.thetas.clear();
         for (const auto& t : split_list(v)) {
           const long th = parse_int(k, t);
           if (th != 0 && th != 1) throw ConfigError("key '" + k + "': theta must be 0 or 1");
           c.sim.thetas.push_back(static_cast<int>(th));
         }
       }},
      {"output.svg", [](RunConfig& c, const std::string& k, const std::string& v) { c.svg = parse_bool(k, v); }},
      {"output.svg_log_x", [](RunConfig& c, const std::string& k, const std::string& v) {
         c.svg_log_x = parse_bool(k, v);
       }},
  };
  return m;
}

void apply_preset_into(RunConfig& c, const std::string& name) {
  const std::vector<double> P0{0.6, 0.4}, P1{0.1, 0.9};
  c.P0 = P0;
  c.P1 = P1;
  c.epsilon = 0.01;
  c.preset = name;
  if (name == "fig1") {
    c.alpha = 0.38;
    c.beta = 0.6;
    c.lambda_family = "scaled_renyi";
    c.xi = 0.5;
    c.offset = 0.003;
    c.sweep = SweepSpec{"xi", 0.001, 1.0, false, 50, false};
  } else if (name == "fig2") {
    c.alpha = 2.0;
    c.beta = 0.5;
    c.lambda_family = "constant";
    c.lambda0 = 0.05;
    c.sweep = SweepSpec{"lambda0", 0.001, 0.0, true, 50, false};
  } else if (name == "fig3") {
    c.alpha = 0.7;
    c.beta = 0.7;
    c.lambda_family = "scaled_renyi";
    c.xi = 0.5;
    c.offset = 0.0;
    c.sweep = SweepSpec{"xi", 0.001, 0.999, false, 50, false};
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected fig1, fig2 or fig3)");
  }
}

}  // namespace

std::vector<std::string> known_config_keys() {
  std::vector<std::string> k;
  for (const auto& [name, _] : setters()) k.push_back(name);
  return k;
}

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  apply_preset_into(c, name);
  return c;
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  bool saw_schema = false;
  std::vector<std::pair<std::string, std::string>> entries;
  std::map<std::string, int> first_seen;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!setters().count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (first_seen.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    first_seen[key] = lineno;
    if (key == "schema") {
      if (value != "1") throw ConfigError(where + ": unsupported schema '" + value + "' (expected 1)");
      saw_schema = true;
    }
    entries.emplace_back(key, value);
  }
  if (!saw_schema) throw ConfigError(origin + ": missing 'schema = 1'");
  // a preset line applies first so that the remaining keys override it
  for (const auto& [k, v] : entries)
    if (k == "preset") apply_preset_into(cfg, v);
  for (const auto& [k, v] : entries)
    if (k != "preset") setters().at(k)(cfg, k, v);
}

RunConfig load_config(const std::optional<std::string>& path, const std::optional<std::string>& preset) {
  RunConfig c;
  if (preset) apply_preset_into(c, *preset);
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot read config file '" + *path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(c, buf.str(), *path);
  }
  if (!path && !preset) throw ConfigError("either --config or --preset is required");
  return c;
}

ProblemInstance RunConfig::instance() const {
  if (d && (*d != static_cast<int>(P0.size()) || *d != static_cast<int>(P1.size())))
    throw ConfigError("alphabet size d does not match P0/P1");
  if (P0.size() != P1.size()) throw ConfigError("P0 and P1 must have the same length");
  try {
    const Dist p0(P0), p1(P1);
    const EpsilonFloor eps(epsilon);
    LambdaSpec lam = lambda_family == "constant" ? LambdaSpec::constant(lambda0) : LambdaSpec::scaled_renyi(xi, offset);
    ProblemInstance inst{p0, p1, alpha, beta, eps, lam};
    inst.validate();
    return inst;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SearchConfig RunConfig::search_config() const {
  SearchConfig s = SearchConfig::defaults(P0.size(), EpsilonFloor(epsilon));
  if (coarse_m > 0) s.coarse_m = coarse_m;
  s.refine_rounds = refine_rounds;
  s.refine_factor = refine_factor;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

std::vector<double> RunConfig::sweep_values() const {
  if (!sweep) throw ConfigError("this command needs a sweep (sweep.parameter, sweep.from, sweep.to, sweep.points)");
  const SweepSpec& s = *sweep;
  if (s.parameter.empty()) throw ConfigError("sweep.parameter missing");
  double to = s.to;
  if (s.to_gjs) {
    const ProblemInstance inst = instance();
    to = gjs(inst.P0, inst.P1, inst.alpha).value;
  }
  if (!(s.from > 0.0) || !(to > 0.0)) throw ConfigError("sweep range must be positive");
  if (!(to > s.from)) throw ConfigError("sweep.to must exceed sweep.from");
  if (s.points < 2) throw ConfigError("sweep.points must be >= 2");
  std::vector<double> v(static_cast<std::size_t>(s.points));
  for (int i = 0; i < s.points; ++i) {
    const double t = static_cast<double>(i) / (s.points - 1);
    v[static_cast<std::size_t>(i)] =
        s.log_scale ? std::exp(std::log(s.from) + t * (std::log(to) - std::log(s.from))) : s.from + t * (to - s.from);
  }
  v.back() = to;
  return v;
}

ProblemInstance RunConfig::instance_at(double v) const {
  RunConfig c = *this;
  const std::string& p = sweep->parameter;
  if (p == "lambda0") {
    if (lambda_family != "constant") throw ConfigError("sweep over lambda0 needs lambda = constant");
    c.lambda0 = v;
  } else if (p == "xi") {
    if (lambda_family != "scaled_renyi") throw ConfigError("sweep over xi needs lambda = scaled_renyi");
    c.xi = v;
  } else {
    c.beta = v;
  }
  return c.instance();
}

}  // namespace seqclass
