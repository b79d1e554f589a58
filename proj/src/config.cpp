#include "hjcrit/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "hjcrit/gaussian.hpp"

namespace hjcrit {

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::similarity_run: return "similarity_run";
    case Experiment::physical_run: return "physical_run";
    case Experiment::reduced_ode: return "reduced_ode";
    case Experiment::dichotomy_probe: return "dichotomy_probe";
    case Experiment::spectral_probe: return "spectral_probe";
    case Experiment::verify: return "verify";
  }
  return "?";
}

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::scaled_gaussian: return "scaled_gaussian";
    case InitialKind::gaussian_plus_moment: return "gaussian_plus_moment";
    case InitialKind::from_file: return "from_file";
  }
  return "?";
}

double ExperimentConfig::exponent() const { return q.value_or(q_star(dim)); }

double ExperimentConfig::weight() const { return weight_m.value_or(0.5 * (dim + 1)); }

SolverConfig ExperimentConfig::solver() const {
  SolverConfig s;
  s.dt = dt;
  s.tau_end = tau_end;
  s.scheme = scheme;
  s.record_every = record_every;
  s.nonlinearity = truncation_enabled ? Nonlinearity::truncated : nonlinearity;
  s.exponent_q = exponent();
  s.weight_m = weight();
  return s;
}

namespace {

using Value = std::variant<double, bool, std::string, std::vector<std::string>>;

std::string type_name(const Value& v) {
  switch (v.index()) {
    case 0: return "number";
    case 1: return "boolean";
    case 2: return "string";
    default: return "array";
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

struct Located {
  std::string source;
  int line;
  std::string key;

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << source << ":" << line << ": ";
    if (!key.empty()) msg << "key '" << key << "': ";
    msg << what;
    throw ConfigError(msg.str());
  }
};

std::string parse_string(const std::string& raw, const Located& at) {
  if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"') at.fail("malformed string " + raw);
  const std::string inner = raw.substr(1, raw.size() - 2);
  if (inner.find('"') != std::string::npos) at.fail("embedded quotes are not supported");
  return inner;
}

Value parse_value(const std::string& raw, const Located& at) {
  if (raw.empty()) at.fail("missing value");
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.front() == '"') return parse_string(raw, at);
  if (raw.front() == '[') {
    if (raw.back() != ']') at.fail("unterminated array");
    std::vector<std::string> items;
    std::stringstream body(raw.substr(1, raw.size() - 2));
    std::string item;
    while (std::getline(body, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      items.push_back(parse_string(item, at));
    }
    return items;
  }
  std::size_t used = 0;
  double number = 0.0;
  try {
    number = std::stod(raw, &used);
  } catch (const std::exception&) {
    at.fail("cannot parse value " + raw);
  }
  if (used != raw.size()) at.fail("cannot parse value " + raw);
  return number;
}

double as_number(const Value& v, const Located& at) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  at.fail("expected number, got " + type_name(v));
}

int as_integer(const Value& v, const Located& at) {
  const double d = as_number(v, at);
  if (d != std::floor(d) || std::abs(d) > 1e9) at.fail("expected integer");
  return static_cast<int>(d);
}

bool as_bool(const Value& v, const Located& at) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  at.fail("expected boolean, got " + type_name(v));
}

std::string as_string(const Value& v, const Located& at) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  at.fail("expected string, got " + type_name(v));
}

std::vector<std::string> as_list(const Value& v, const Located& at) {
  if (const auto* l = std::get_if<std::vector<std::string>>(&v)) return *l;
  if (const auto* s = std::get_if<std::string>(&v)) return {*s};
  at.fail("expected array of strings, got " + type_name(v));
}

template <class E>
E as_enum(const Value& v, const Located& at, std::initializer_list<E> options) {
  const std::string s = as_string(v, at);
  std::string allowed;
  for (E e : options) {
    if (to_string(e) == s) return e;
    allowed += (allowed.empty() ? "" : ", ") + to_string(e);
  }
  at.fail("unknown value \"" + s + "\" (expected one of " + allowed + ")");
}

using Setter = std::function<void(ExperimentConfig&, const Value&, const Located&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"experiment",
       [](auto& c, const Value& v, const Located& at) {
         c.experiment = as_enum(v, at, {Experiment::similarity_run, Experiment::physical_run,
                                        Experiment::reduced_ode, Experiment::dichotomy_probe,
                                        Experiment::spectral_probe, Experiment::verify});
       }},
      {"dim", [](auto& c, const Value& v, const Located& at) { c.dim = as_integer(v, at); }},
      {"q", [](auto& c, const Value& v, const Located& at) { c.q = as_number(v, at); }},
      {"use_q_star", [](auto& c, const Value& v, const Located& at) { c.use_q_star = as_bool(v, at); }},
      {"grid.L", [](auto& c, const Value& v, const Located& at) { c.half_width = as_number(v, at); }},
      {"grid.n", [](auto& c, const Value& v, const Located& at) { c.points = as_integer(v, at); }},
      {"solver.scheme",
       [](auto& c, const Value& v, const Located& at) {
         c.scheme = as_enum(v, at, {Scheme::explicit_rk4, Scheme::imex_euler});
       }},
      {"solver.dt", [](auto& c, const Value& v, const Located& at) { c.dt = as_number(v, at); }},
      {"solver.tau_end", [](auto& c, const Value& v, const Located& at) { c.tau_end = as_number(v, at); }},
      {"solver.t_end", [](auto& c, const Value& v, const Located& at) { c.t_end = as_number(v, at); }},
      {"solver.record_every",
       [](auto& c, const Value& v, const Located& at) { c.record_every = as_integer(v, at); }},
      {"solver.nonlinearity",
       [](auto& c, const Value& v, const Located& at) {
         c.nonlinearity = as_enum(v, at, {Nonlinearity::full, Nonlinearity::off});
       }},
      {"truncation.enabled",
       [](auto& c, const Value& v, const Located& at) { c.truncation_enabled = as_bool(v, at); }},
      {"truncation.rho", [](auto& c, const Value& v, const Located& at) { c.rho = as_number(v, at); }},
      {"truncation.m", [](auto& c, const Value& v, const Located& at) { c.weight_m = as_number(v, at); }},
      {"initial_data.kind",
       [](auto& c, const Value& v, const Located& at) {
         c.initial.kind = as_enum(v, at, {InitialKind::gaussian, InitialKind::scaled_gaussian,
                                          InitialKind::gaussian_plus_moment, InitialKind::from_file});
       }},
      {"initial_data.alpha",
       [](auto& c, const Value& v, const Located& at) { c.initial.alpha = as_number(v, at); }},
      {"initial_data.epsilon",
       [](auto& c, const Value& v, const Located& at) { c.initial.epsilon = as_number(v, at); }},
      {"initial_data.path",
       [](auto& c, const Value& v, const Located& at) { c.initial.path = as_string(v, at); }},
      {"reduced.M0", [](auto& c, const Value& v, const Located& at) { c.reduced_m0 = as_number(v, at); }},
      {"reduced.c", [](auto& c, const Value& v, const Located& at) { c.reduced_c = as_number(v, at); }},
      {"reduced.dt", [](auto& c, const Value& v, const Located& at) { c.reduced_dt = as_number(v, at); }},
      {"probe.t_physical",
       [](auto& c, const Value& v, const Located& at) { c.probe_t_physical = as_number(v, at); }},
      {"probe.tau_end", [](auto& c, const Value& v, const Located& at) { c.probe_tau_end = as_number(v, at); }},
      {"probe.n", [](auto& c, const Value& v, const Located& at) { c.probe_points = as_integer(v, at); }},
      {"probe.L", [](auto& c, const Value& v, const Located& at) { c.probe_half_width = as_number(v, at); }},
      {"spectral.mode",
       [](auto& c, const Value& v, const Located& at) { c.spectral_mode = as_integer(v, at); }},
      {"spectral.tau_begin",
       [](auto& c, const Value& v, const Located& at) { c.spectral_tau_begin = as_number(v, at); }},
      {"spectral.tau_end",
       [](auto& c, const Value& v, const Located& at) { c.spectral_tau_end = as_number(v, at); }},
      {"verify.fast", [](auto& c, const Value& v, const Located& at) { c.verify_fast = as_bool(v, at); }},
      {"output.csv", [](auto& c, const Value& v, const Located& at) { c.csv_path = as_string(v, at); }},
      {"output.svg", [](auto& c, const Value& v, const Located& at) { c.svg_path = as_string(v, at); }},
      {"output.manifest",
       [](auto& c, const Value& v, const Located& at) { c.manifest_path = as_string(v, at); }},
      {"output.columns",
       [](auto& c, const Value& v, const Located& at) { c.plot_columns = as_list(v, at); }},
      {"output.log", [](auto& c, const Value& v, const Located& at) { c.plot_log = as_bool(v, at); }},
  };
  return table;
}

void require_writable(const std::string& path, const Located& at) {
  namespace fs = std::filesystem;
  const fs::path parent = fs::absolute(fs::path(path)).parent_path();
  std::error_code ec;
  if (!fs::is_directory(parent, ec)) at.fail("directory " + parent.string() + " does not exist");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& source) {
  ExperimentConfig cfg;
  std::map<std::string, int> seen;  // key -> line
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      const Located at{source, line_no, ""};
      if (line.back() != ']') at.fail("malformed section header " + line);
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const auto& [key, setter] : setters()) known |= key.rfind(section + ".", 0) == 0;
      if (!known) at.fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) Located{source, line_no, ""}.fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string full = section.empty() ? key : section + "." + key;
    const Located at{source, line_no, full};
    const auto it = setters().find(full);
    if (it == setters().end()) at.fail("unknown key");
    if (const auto prev = seen.find(full); prev != seen.end()) {
      at.fail("duplicate key (first set on line " + std::to_string(prev->second) + ")");
    }
    seen[full] = line_no;
    it->second(cfg, parse_value(trim(line.substr(eq + 1)), at), at);
  }

  const auto where = [&](const std::string& key) {
    const auto it = seen.find(key);
    return Located{source, it == seen.end() ? 0 : it->second, key};
  };

  // Exponent: q and use_q_star are mutually exclusive.
  const bool has_q = seen.count("q") > 0;
  const bool has_flag = seen.count("use_q_star") > 0;
  if (has_q && has_flag) {
    where("q").fail("both 'q' (line " + std::to_string(seen["q"]) + ") and 'use_q_star' (line " +
                    std::to_string(seen["use_q_star"]) + ") are set; give exactly one");
  }
  if (has_flag && !cfg.use_q_star) where("use_q_star").fail("use_q_star = false requires q instead");
  if (has_q) {
    cfg.use_q_star = false;
    if (!(*cfg.q > 1.0)) where("q").fail("q must exceed 1");
  }

  if (cfg.dim != 1 && cfg.dim != 2) where("dim").fail("dimension must be 1 or 2");
  try {
    (void)build_grid(cfg.dim, cfg.half_width, cfg.points);
  } catch (const InvalidArgument& e) {
    where(seen.count("grid.n") ? "grid.n" : "grid.L").fail(e.what());
  }
  if (cfg.record_every < 1) where("solver.record_every").fail("must be >= 1");
  if (cfg.dt && !(*cfg.dt > 0.0)) where("solver.dt").fail("must be positive");
  if (!(cfg.tau_end > 0.0)) where("solver.tau_end").fail("must be positive");
  if (!(cfg.t_end > 0.0)) where("solver.t_end").fail("must be positive");
  if (cfg.dt && cfg.scheme == Scheme::explicit_rk4) {
    const double h = 2.0 * cfg.half_width / (cfg.points - 1);
    if (*cfg.dt > h * h / (4.0 * cfg.dim)) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "dt = " << *cfg.dt << " exceeds the explicit stability bound h^2/(4N) = " << h * h / (4.0 * cfg.dim);
      where("solver.dt").fail(msg.str());
    }
  }
  if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) where("truncation.rho").fail("rho must lie in (0, 1)");
  if (!(cfg.weight() > 0.5 * cfg.dim)) where("truncation.m").fail("m must exceed N/2");
  if (cfg.initial.kind == InitialKind::scaled_gaussian && !(cfg.initial.alpha > 0.0)) {
    where("initial_data.alpha").fail("alpha must be positive");
  }
  if (cfg.initial.kind == InitialKind::gaussian_plus_moment && !(std::abs(cfg.initial.epsilon) <= 1.0)) {
    where("initial_data.epsilon").fail("|epsilon| must be <= 1 to keep the data nonnegative");
  }
  if (cfg.initial.kind == InitialKind::from_file) {
    if (cfg.initial.path.empty()) where("initial_data.kind").fail("from_file needs initial_data.path");
    if (!std::ifstream(cfg.initial.path)) where("initial_data.path").fail("cannot read " + cfg.initial.path);
  }
  if (cfg.reduced_m0 && !(*cfg.reduced_m0 >= 0.0)) where("reduced.M0").fail("must be >= 0");
  if (cfg.reduced_c && !(*cfg.reduced_c > 0.0)) where("reduced.c").fail("must be positive");
  if (!(cfg.reduced_dt > 0.0 && cfg.reduced_dt <= 1e-2)) where("reduced.dt").fail("must lie in (0, 1e-2]");
  if (cfg.spectral_mode < 0 || cfg.spectral_mode > 2) where("spectral.mode").fail("must be 0, 1 or 2");
  if (!(cfg.spectral_tau_end >= cfg.spectral_tau_begin + 2.0)) {
    where("spectral.tau_end").fail("window must span at least two units of tau");
  }
  if (cfg.plot_columns.empty()) where("output.columns").fail("needs at least one column");
  require_writable(cfg.csv_path, where("output.csv"));
  if (cfg.svg_path) require_writable(*cfg.svg_path, where("output.svg"));
  require_writable(cfg.manifest(), where("output.manifest"));
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string describe(const ExperimentConfig& c) {
  std::ostringstream o;
  const double h = 2.0 * c.half_width / (c.points - 1);
  const Grid grid(c.dim, c.half_width, c.points);
  o << "experiment: " << to_string(c.experiment) << "\n"
    << "dim: " << c.dim << "\n"
    << "grid.L: " << num(c.half_width) << "\n"
    << "grid.n: " << c.points << "\n"
    << "grid.h: " << num(h) << "\n"
    << "solver.scheme: " << to_string(c.scheme) << "\n"
    << "solver.dt: " << num(c.dt.value_or(default_dt(grid))) << (c.dt ? "" : " (default h^2/(6N))") << "\n"
    << "solver.tau_end: " << num(c.tau_end) << "\n"
    << "solver.t_end: " << num(c.t_end) << "\n"
    << "solver.record_every: " << c.record_every << "\n"
    << "solver.nonlinearity: " << to_string(c.nonlinearity) << "\n"
    << "use_q_star: " << (c.use_q_star ? "true" : "false") << "\n"
    << "q: " << num(c.exponent()) << "\n"
    << "truncation.enabled: " << (c.truncation_enabled ? "true" : "false") << "\n"
    << "truncation.rho: " << num(c.rho) << "\n"
    << "truncation.m: " << num(c.weight()) << "\n"
    << "initial_data.kind: " << to_string(c.initial.kind) << "\n";
  if (c.initial.kind == InitialKind::scaled_gaussian) o << "initial_data.alpha: " << num(c.initial.alpha) << "\n";
  if (c.initial.kind == InitialKind::gaussian_plus_moment) {
    o << "initial_data.epsilon: " << num(c.initial.epsilon) << "\n";
  }
  if (c.initial.kind == InitialKind::from_file) o << "initial_data.path: " << c.initial.path << "\n";
  switch (c.experiment) {
    case Experiment::reduced_ode:
      o << "reduced.M0: " << (c.reduced_m0 ? num(*c.reduced_m0) : "mass of initial data") << "\n"
        << "reduced.c: " << num(c.reduced_c.value_or(critical_data(c.dim).c_mass)) << "\n"
        << "reduced.dt: " << num(c.reduced_dt) << "\n";
      break;
    case Experiment::dichotomy_probe:
      o << "probe.t_physical: " << num(c.probe_t_physical) << "\n"
        << "probe.tau_end: " << num(c.probe_tau_end) << "\n"
        << "probe.n: " << c.probe_points << "\n"
        << "probe.L: " << num(c.probe_half_width) << "\n";
      break;
    case Experiment::spectral_probe:
      o << "spectral.mode: " << c.spectral_mode << "\n"
        << "spectral.tau_begin: " << num(c.spectral_tau_begin) << "\n"
        << "spectral.tau_end: " << num(c.spectral_tau_end) << "\n";
      break;
    case Experiment::verify: o << "verify.fast: " << (c.verify_fast ? "true" : "false") << "\n"; break;
    default: break;
  }
  o << "output.csv: " << c.csv_path << "\n"
    << "output.manifest: " << c.manifest() << "\n";
  if (c.svg_path) {
    o << "output.svg: " << *c.svg_path << "\n" << "output.columns: ";
    for (std::size_t i = 0; i < c.plot_columns.size(); ++i) o << (i ? "," : "") << c.plot_columns[i];
    o << "\n" << "output.log: " << (c.plot_log ? "true" : "false") << "\n";
  }
  return o.str();
}

}  // namespace hjcrit
