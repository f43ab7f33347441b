#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thinfilm/model.hpp"
#include "thinfilm/stepper.hpp"

namespace thinfilm::cli {

/// Everything needed to reproduce one run.
struct RunConfig {
  std::string id = "run";
  std::string preset;
  ModelParams model;
  /// theta_lift follows ModelParams::default_theta(n) unless set explicitly.
  bool theta_auto = true;
  StepperConfig stepper;
  ScenarioSpec scenario;
  std::size_t cells = 256;
  double delta = 1e-6;
  /// <= 0 selects the default support threshold.
  double threshold = 0.0;
  bool lift = true;

  /// Model parameters with an automatic theta resolved.
  ModelParams resolved_model() const;

  void validate() const;
};

/// Axes of a sweep; empty axes keep the base value.
struct SweepAxes {
  std::vector<double> n;
  std::vector<std::size_t> cells;
  std::vector<double> eps;
  std::vector<double> delta;
  std::vector<double> threshold;
  /// t_end override per n (exact match on the listed n values).
  std::vector<std::pair<double, double>> t_end_by_n;
  int jobs = 0;  ///< 0 = hardware concurrency

  bool empty() const { return n.empty() && cells.empty() && eps.empty() && delta.empty() && threshold.empty(); }
};

struct ConfigFile {
  RunConfig run;
  SweepAxes sweep;
};

/// Names accepted by apply_preset.
std::vector<std::string> preset_names();

/// Resets `cfg` to a named preset, or throws ConfigError.
void apply_preset(const std::string& name, ConfigFile& cfg);

/// Sets "section.key" from its textual value. Throws ConfigError.
void set_value(ConfigFile& cfg, const std::string& section, const std::string& key, const std::string& value);

/// Parses the key = value format. A `preset = NAME` line in the leading
/// (unnamed) section is applied before any later line. Errors are reported
/// as "<source>:<line>: message".
ConfigFile parse_config(const std::string& text, const std::string& source = "<config>",
                        const std::string& base_preset = "");

/// Loads a config file, or the "config" object of a manifest.json.
ConfigFile load_config(const std::string& path, const std::string& base_preset = "");

/// section -> key -> value, values printed with 17 significant digits.
using Sections = std::map<std::string, std::map<std::string, std::string>>;
Sections to_sections(const RunConfig& cfg);

/// Renders `to_sections` in the config file format.
std::string to_config_text(const RunConfig& cfg);

std::string format_double(double v);

/// Rates scenario end time for a given n: 0.008 * 100^(n - 1.2).
double rates_t_end(double n);

}  // namespace thinfilm::cli
