#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thinfilm/error.hpp"
#include "thinfilm_cli/commands.hpp"
#include "thinfilm_cli/config.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kNumerical = 3;
constexpr int kIo = 4;

using thinfilm::cli::ConfigFile;

ConfigFile resolve_config(const std::string& path, const std::string& preset, const std::vector<std::string>& sets,
                          double threshold) {
  ConfigFile cfg;
  if (!path.empty()) {
    cfg = thinfilm::cli::load_config(path, preset);
  } else {
    thinfilm::cli::apply_preset(preset.empty() ? "two_bumps" : preset, cfg);
  }
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    const auto dot = s.find('.');
    if (eq == std::string::npos) throw thinfilm::ConfigError("--set expects section.key=value, got '" + s + "'");
    std::string section;
    std::string key = s.substr(0, eq);
    if (dot != std::string::npos && dot < eq) {
      section = s.substr(0, dot);
      key = s.substr(dot + 1, eq - dot - 1);
    }
    thinfilm::cli::set_value(cfg, section, key, s.substr(eq + 1));
  }
  if (threshold > 0.0) cfg.run.threshold = threshold;
  cfg.run.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-film solver on a spherical cap: runs, sweeps, front-rate fits and lemma checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir = "out";
  std::string window_text;
  std::vector<std::string> sets;
  double threshold = 0.0;

  auto* run = app.add_subcommand("run", "Integrate one configuration and write a run directory");
  auto* sweep = app.add_subcommand("sweep", "Run every point of the [sweep] axes and summarize");
  for (auto* sub : {run, sweep}) {
    sub->add_option("--config", config_path, "Config file (key = value with sections) or manifest.json");
    sub->add_option("--preset", preset, "Start from a named preset (two_bumps, contrast, rates)");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--threshold", threshold, "Support threshold (overrides the config)");
    sub->add_option("--set", sets, "Override section.key=value (repeatable)");
  }
  std::string rates_dir;
  auto* rates = app.add_subcommand("rates", "Fit the front penetration of a finished run");
  rates->add_option("run_dir", rates_dir, "Run directory")->required();
  rates->add_option("--window", window_text, "Fit window T_LO:T_HI (either side may be empty)");
  auto* lemmas = app.add_subcommand("lemmas", "Run the lemma suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*run) {
      const auto cfg = resolve_config(config_path, preset, sets, threshold);
      const auto res = thinfilm::cli::cmd_run(cfg.run, out_dir);
      std::printf("%s: %s, %zu frames, mass drift %.3g, gamma %.6g -> %s\n", cfg.run.id.c_str(),
                  res.trajectory.termination.c_str(), res.trajectory.frames.size(), res.mass_drift,
                  res.trace.gamma.back(), res.dir.string().c_str());
    } else if (*sweep) {
      const auto cfg = resolve_config(config_path, preset, sets, threshold);
      const auto rows = thinfilm::cli::cmd_sweep(cfg, out_dir);
      int failures = 0;
      for (const auto& r : rows) {
        std::printf("n=%-5g N=%-5zu eps=%-8.3g delta=%-8.3g exponent=%-9.5g predicted=%-9.5g R2=%-8.5g %s\n", r.n,
                    r.cells, r.eps, r.delta, r.exponent, r.predicted, r.r_squared, r.status.c_str());
        failures += r.status != "ok";
      }
      std::printf("summary: %s/sweep_summary.csv (%d of %zu points failed)\n", out_dir.c_str(), failures, rows.size());
    } else if (*rates) {
      thinfilm::cli::Window w;
      if (!window_text.empty()) w = thinfilm::cli::parse_window(window_text);
      std::cout << thinfilm::cli::cmd_rates(rates_dir, w).dump(2) << '\n';
    } else if (*lemmas) {
      return thinfilm::cli::cmd_lemmas(std::cout) ? kOk : 1;
    }
  } catch (const thinfilm::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  } catch (const thinfilm::NumericalAbort& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return kNumerical;
  } catch (const thinfilm::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfig;
  }
  return kOk;
}
