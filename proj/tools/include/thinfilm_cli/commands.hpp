#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "thinfilm/fronts.hpp"
#include "thinfilm/trajectory.hpp"
#include "thinfilm_cli/config.hpp"

namespace thinfilm::cli {

struct RunResult {
  std::filesystem::path dir;
  Trajectory trajectory;
  FrontTrace trace;
  double mass_drift = 0.0;  ///< max_k |M_k - M_0| / M_0
  double dx = 0.0;
};

/// Integrates one configuration and writes manifest.json, series.csv and
/// snapshots/t_<index>.csv under `dir`. On a numerical abort the frames
/// reached so far are still written before the exception propagates.
RunResult cmd_run(const RunConfig& cfg, const std::filesystem::path& dir);

struct Window {
  std::optional<double> t_lo;
  std::optional<double> t_hi;
};

/// Parses "T_LO:T_HI"; either side may be empty.
Window parse_window(const std::string& text);

/// Power-law fit of a front series, as emitted by `rates`.
nlohmann::json rates_report(const FrontTrace& trace, double dx, double n, const Window& window = {});

/// Reads series.csv and manifest.json from a run directory.
nlohmann::json cmd_rates(const std::filesystem::path& run_dir, const Window& window = {});

struct SweepRow {
  double n = 0.0;
  std::size_t cells = 0;
  double eps = 0.0;
  double delta = 0.0;
  double threshold = 0.0;
  double exponent = 0.0;
  double predicted = 0.0;
  double r_squared = 0.0;
  double mass_drift = 0.0;
  std::string status = "ok";
  std::filesystem::path dir;
};

/// Expands the sweep axes into run configurations (Cartesian product in
/// the order n, cells, eps, delta, threshold).
std::vector<RunConfig> expand_sweep(const ConfigFile& cfg);

/// Runs every point (concurrently), continuing past failures, and writes
/// sweep_summary.csv once all points are done.
std::vector<SweepRow> cmd_sweep(const ConfigFile& cfg, const std::filesystem::path& out_dir);

/// Runs the lemma suites, printing one line per check. True when all pass.
bool cmd_lemmas(std::ostream& os);

/// Writes `text` to `path`, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace thinfilm::cli
