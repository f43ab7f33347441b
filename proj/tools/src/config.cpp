#include "thinfilm_cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "thinfilm/error.hpp"
#include "thinfilm/geometry.hpp"

namespace thinfilm::cli {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double rates_t_end(double n) { return 0.008 * std::pow(100.0, n - 1.2); }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& v) {
  if (v == "inf" || v == "+inf") return INFINITY;
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE || std::isnan(x)) throw ConfigError("expected a number, got '" + v + "'");
  return x;
}

long to_long(const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE) throw ConfigError("expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

FaceMean to_face_mean(const std::string& v) {
  if (v == "arithmetic") return FaceMean::arithmetic;
  if (v == "entropic") return FaceMean::entropic;
  if (v == "harmonic") return FaceMean::harmonic;
  throw ConfigError("face_mean must be arithmetic, entropic or harmonic, got '" + v + "'");
}

const char* face_mean_name(FaceMean m) {
  switch (m) {
    case FaceMean::arithmetic: return "arithmetic";
    case FaceMean::entropic: return "entropic";
    case FaceMean::harmonic: return "harmonic";
  }
  return "arithmetic";
}

struct Key {
  const char* section;
  const char* name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define REAL_KEY(sec, key, field)                                                             \
  Key { sec, key, [](RunConfig& c, const std::string& v) { c.field = to_double(v); },          \
        [](const RunConfig& c) { return format_double(c.field); } }
#define INT_KEY(sec, key, field, type)                                                        \
  Key { sec, key, [](RunConfig& c, const std::string& v) { c.field = static_cast<type>(to_long(v)); }, \
        [](const RunConfig& c) { return std::to_string(c.field); } }
#define BOOL_KEY(sec, key, field)                                                             \
  Key { sec, key, [](RunConfig& c, const std::string& v) { c.field = to_bool(v); },            \
        [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); } }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      Key{"", "id", [](RunConfig& c, const std::string& v) { c.id = v; }, [](const RunConfig& c) { return c.id; }},
      REAL_KEY("model", "n", model.n),
      REAL_KEY("model", "eps", model.eps),
      Key{"model", "theta_lift",
          [](RunConfig& c, const std::string& v) {
            if (v == "auto") {
              c.theta_auto = true;
            } else {
              c.theta_auto = false;
              c.model.theta_lift = to_double(v);
            }
          },
          [](const RunConfig& c) { return c.theta_auto ? std::string("auto") : format_double(c.model.theta_lift); }},
      BOOL_KEY("model", "fsp_mode", model.fsp_mode),
      Key{"model", "face_mean", [](RunConfig& c, const std::string& v) { c.model.face_mean = to_face_mean(v); },
          [](const RunConfig& c) { return std::string(face_mean_name(c.model.face_mean)); }},
      INT_KEY("grid", "cells", cells, std::size_t),
      REAL_KEY("grid", "delta", delta),
      REAL_KEY("scenario", "r0", scenario.r0),
      REAL_KEY("scenario", "bump_center", scenario.bump_center),
      REAL_KEY("scenario", "bump_width", scenario.bump_width),
      REAL_KEY("scenario", "amplitude", scenario.amplitude),
      INT_KEY("scenario", "bump_power", scenario.bump_power, int),
      REAL_KEY("scenario", "t_end", scenario.t_end),
      INT_KEY("scenario", "output_cadence", scenario.output_cadence, int),
      BOOL_KEY("scenario", "geometric_output", scenario.geometric_output),
      REAL_KEY("scenario", "output_decades", scenario.output_decades),
      REAL_KEY("scenario", "margin", scenario.margin),
      REAL_KEY("scenario", "stop_halfwidth", scenario.stop_halfwidth),
      REAL_KEY("stepper", "dt_init", stepper.dt_init),
      REAL_KEY("stepper", "dt_min", stepper.dt_min),
      REAL_KEY("stepper", "dt_max", stepper.dt_max),
      REAL_KEY("stepper", "newton_tol", stepper.newton_tol),
      INT_KEY("stepper", "newton_max_iter", stepper.newton_max_iter, int),
      INT_KEY("stepper", "fast_iters", stepper.fast_iters, int),
      REAL_KEY("stepper", "growth", stepper.growth),
      REAL_KEY("stepper", "shrink", stepper.shrink),
      REAL_KEY("stepper", "negativity_reject_tol", stepper.negativity_reject_tol),
      INT_KEY("stepper", "max_steps", stepper.max_steps, long),
      REAL_KEY("fronts", "threshold", threshold),
      BOOL_KEY("fronts", "lift", lift),
  };
  return table;
}

#undef REAL_KEY
#undef INT_KEY
#undef BOOL_KEY

void set_sweep(SweepAxes& s, const std::string& key, const std::string& value) {
  const auto reals = [&] {
    std::vector<double> out;
    for (const auto& item : split(value, ',')) out.push_back(to_double(item));
    if (out.empty()) throw ConfigError("sweep axis '" + key + "' is empty");
    return out;
  };
  if (key == "n") {
    s.n = reals();
  } else if (key == "cells") {
    s.cells.clear();
    for (const auto& item : split(value, ',')) {
      const long c = to_long(item);
      if (c < 2) throw ConfigError("sweep cells must be positive");
      s.cells.push_back(static_cast<std::size_t>(c));
    }
  } else if (key == "eps") {
    s.eps = reals();
  } else if (key == "delta") {
    s.delta = reals();
  } else if (key == "threshold") {
    s.threshold = reals();
  } else if (key == "t_end_by_n") {
    s.t_end_by_n.clear();
    for (const auto& item : split(value, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError("t_end_by_n entries are N_VALUE:T_END, got '" + item + "'");
      s.t_end_by_n.emplace_back(to_double(trim(item.substr(0, colon))), to_double(trim(item.substr(colon + 1))));
    }
  } else if (key == "jobs") {
    s.jobs = static_cast<int>(to_long(value));
    if (s.jobs < 0) throw ConfigError("sweep jobs must be >= 0");
  } else {
    throw ConfigError("unknown key '" + key + "' in [sweep]");
  }
}

}  // namespace

ModelParams RunConfig::resolved_model() const {
  ModelParams p = model;
  if (theta_auto) p.theta_lift = ModelParams::default_theta(p.n);
  return p;
}

void RunConfig::validate() const {
  if (id.empty() || id.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("id must be a nonempty name without path separators");
  }
  resolved_model().validate();
  stepper.validate();
  scenario.validate();
  if (cells < 16 || cells % 2 != 0) throw ConfigError("grid: cells must be even and at least 16");
  if (!(delta > 0.0)) throw ConfigError("grid: delta must be positive");
  if (std::isnan(threshold)) throw ConfigError("fronts: threshold must be a number");
}

std::vector<std::string> preset_names() { return {"two_bumps", "contrast", "rates"}; }

void apply_preset(const std::string& name, ConfigFile& cfg) {
  ConfigFile out;
  RunConfig& r = out.run;
  r.preset = name;
  r.model.n = 1.5;
  r.model.eps = 1e-8;
  r.model.fsp_mode = true;
  r.model.face_mean = FaceMean::harmonic;
  r.theta_auto = true;
  r.cells = 256;
  r.delta = 1e-6;
  r.scenario.r0 = 0.3;
  r.scenario.bump_center = 0.36;
  r.scenario.bump_width = 0.06;
  r.scenario.amplitude = 1.0;
  r.scenario.bump_power = 2;
  r.scenario.t_end = 1e-4;
  r.scenario.output_cadence = 100;
  r.scenario.geometric_output = false;
  r.scenario.stop_halfwidth = 0.25;  // front motion 0.05 into the core
  if (name == "two_bumps") {
    r.id = "two_bumps";
  } else if (name == "contrast") {
    r.id = "contrast";
    r.model.n = 0.0;
    r.model.fsp_mode = false;
    r.stepper.negativity_reject_tol = INFINITY;
    r.scenario.stop_halfwidth = 0.0;
  } else if (name == "rates") {
    r.id = "rates";
    r.cells = 512;
    r.theta_auto = false;
    r.model.theta_lift = 0.5;
    r.scenario.bump_center = 0.304;
    r.scenario.bump_width = 0.004;
    r.scenario.amplitude = 2.0;
    r.scenario.t_end = rates_t_end(1.5);
    r.scenario.output_cadence = 60;
    r.scenario.geometric_output = true;
    r.scenario.output_decades = 2.5;
    r.scenario.stop_halfwidth = 0.06;
    out.sweep.n = {1.2, 1.5, 1.8};
    for (double n : out.sweep.n) out.sweep.t_end_by_n.emplace_back(n, rates_t_end(n));
  } else {
    std::string known;
    for (const auto& p : preset_names()) known += (known.empty() ? "" : ", ") + p;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
  }
  cfg = std::move(out);
}

void set_value(ConfigFile& cfg, const std::string& section, const std::string& key, const std::string& value) {
  if (section == "sweep") {
    set_sweep(cfg.sweep, key, value);
    return;
  }
  for (const auto& k : keys()) {
    if (section == k.section && key == k.name) {
      k.set(cfg.run, value);
      return;
    }
  }
  throw ConfigError("unknown key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]"));
}

ConfigFile parse_config(const std::string& text, const std::string& source, const std::string& base_preset) {
  ConfigFile cfg;
  if (!base_preset.empty()) apply_preset(base_preset, cfg);
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  const auto fail = [&](const std::string& msg) -> void {
    throw ConfigError(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"model", "grid", "scenario", "stepper", "fronts", "sweep"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("empty key");
    try {
      if (section.empty() && key == "preset") {
        apply_preset(value, cfg);
      } else {
        set_value(cfg, section, key, value);
      }
    } catch (const ConfigError& e) {
      fail(e.what());
    }
  }
  try {
    cfg.run.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

ConfigFile load_config(const std::string& path, const std::string& base_preset) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) throw ConfigError(path + ": no \"config\" object");
    ConfigFile cfg;
    for (const auto& [section, entries] : j["config"].items()) {
      for (const auto& [key, value] : entries.items()) {
        if (!value.is_string()) throw ConfigError(path + ": config." + section + "." + key + " must be a string");
        try {
          if (section.empty() && key == "preset") {
            cfg.run.preset = value.get<std::string>();
          } else {
            set_value(cfg, section, key, value.get<std::string>());
          }
        } catch (const ConfigError& e) {
          throw ConfigError(path + ": config." + section + "." + key + ": " + e.what());
        }
      }
    }
    cfg.run.validate();
    return cfg;
  }
  return parse_config(text, path, base_preset);
}

Sections to_sections(const RunConfig& cfg) {
  Sections out;
  for (const auto& k : keys()) out[k.section][k.name] = k.get(cfg);
  if (!cfg.preset.empty()) out[""]["preset"] = cfg.preset;
  return out;
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  const auto sections = to_sections(cfg);
  if (auto it = sections.find(""); it != sections.end()) {
    for (const auto& [k, v] : it->second) {
      if (k != "preset") os << k << " = " << v << "\n";
    }
  }
  for (const auto& [sec, entries] : sections) {
    if (sec.empty()) continue;
    os << "\n[" << sec << "]\n";
    for (const auto& [k, v] : entries) os << k << " = " << v << "\n";
  }
  return os.str();
}

}  // namespace thinfilm::cli
