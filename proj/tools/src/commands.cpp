#include "thinfilm_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "thinfilm/diagnostics.hpp"
#include "thinfilm/error.hpp"
#include "thinfilm/geometry.hpp"
#include "thinfilm/stepper.hpp"
#include "thinfilm_cli/lemma_suites.hpp"

#ifndef THINFILM_VERSION
#define THINFILM_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace thinfilm::cli {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

json sections_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [sec, entries] : to_sections(cfg)) {
    json& s = j[sec];
    for (const auto& [k, v] : entries) s[k] = v;
  }
  return j;
}

std::string series_csv(const Trajectory& traj, const FrontTrace& trace) {
  std::string out = "t,mass,energy,entropy,min_u,dead_core_halfwidth,gamma,dt,newton_iters\n";
  for (std::size_t k = 0; k < traj.records.size(); ++k) {
    const auto& r = traj.records[k];
    out += format_double(r.t) + ',' + format_double(r.mass) + ',' + format_double(r.energy) + ',' +
           format_double(r.entropy) + ',' + format_double(r.min_u) + ',' + format_double(r.dead_core_halfwidth) + ',' +
           format_double(trace.gamma[k]) + ',' + format_double(r.dt_used) + ',' + std::to_string(r.newton_iters) +
           '\n';
  }
  return out;
}

std::string snapshot_csv(const Grid& grid, const State& s) {
  std::string out = "x,u\n";
  const auto& xc = grid.x_centers();
  for (std::size_t i = 0; i < s.u.size(); ++i) out += format_double(xc[i]) + ',' + format_double(s.u[i]) + '\n';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

RunResult cmd_run(const RunConfig& cfg, const fs::path& dir) {
  cfg.validate();
  const ModelParams model = cfg.resolved_model();
  const Grid grid(cfg.cells, cfg.delta);
  make_dirs(dir / "snapshots");

  RunOptions opts;
  opts.threshold = cfg.threshold;
  opts.lift = cfg.lift;
  Trajectory partial;
  opts.on_frame = [&](const State& s, const DiagnosticsRecord& r) {
    partial.frames.push_back(s);
    partial.records.push_back(r);
    return true;
  };

  const std::string started = utc_now();
  RunResult res;
  res.dir = dir;
  res.dx = grid.dx();
  std::string abort_message;
  try {
    res.trajectory = run_scenario(cfg.scenario, grid, model, cfg.stepper, opts);
  } catch (const NumericalAbort& e) {
    abort_message = e.what();
    res.trajectory = std::move(partial);
    res.trajectory.termination = "aborted";
    res.trajectory.u0_max = 0.0;
    for (double v : res.trajectory.frames.front().u) res.trajectory.u0_max = std::max(res.trajectory.u0_max, std::abs(v));
    res.trajectory.threshold = cfg.threshold > 0.0 ? cfg.threshold : default_threshold(model, res.trajectory.u0_max);
  }
  Trajectory& traj = res.trajectory;
  res.trace = penetration_series(grid, traj, cfg.scenario.r0, traj.threshold);
  const double m0 = traj.records.front().mass;
  for (const auto& r : traj.records) res.mass_drift = std::max(res.mass_drift, std::abs(r.mass - m0) / std::abs(m0));

  write_file(dir / "series.csv", series_csv(traj, res.trace));
  for (std::size_t k = 0; k < traj.frames.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "t_%04zu.csv", k);
    write_file(dir / "snapshots" / name, snapshot_csv(grid, traj.frames[k]));
  }

  json m;
  m["run_id"] = cfg.id;
  m["code_version"] = THINFILM_VERSION;
  m["config"] = sections_json(cfg);
  m["resolved"] = {{"theta_lift", model.theta_lift},
                   {"threshold", traj.threshold},
                   {"u0_max", traj.u0_max},
                   {"dx", grid.dx()},
                   {"exact_mass", cfg.scenario.exact_mass()}};
  m["start_time"] = started;
  m["end_time"] = utc_now();
  m["termination"] = traj.termination;
  if (!abort_message.empty()) m["abort_message"] = abort_message;
  const auto& last = traj.records.back();
  m["steps"] = last.steps;
  m["rejected"] = last.rejected;
  m["rejections"] = {{"diverged", traj.rejections[1]}, {"negativity", traj.rejections[2]}, {"non_finite", traj.rejections[3]}};
  m["frames"] = traj.frames.size();
  m["mass_drift"] = res.mass_drift;
  write_file(dir / "manifest.json", m.dump(2) + "\n");

  if (!abort_message.empty()) throw NumericalAbort(abort_message);
  return res;
}

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("--window expects T_LO:T_HI, got '" + text + "'");
  Window w;
  const auto part = [&](const std::string& s) -> std::optional<double> {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (*end != '\0' || !std::isfinite(v)) throw ConfigError("--window: bad number '" + s + "'");
    return v;
  };
  w.t_lo = part(text.substr(0, colon));
  w.t_hi = part(text.substr(colon + 1));
  if (w.t_lo && w.t_hi && !(*w.t_lo < *w.t_hi)) throw ConfigError("--window: need T_LO < T_HI");
  return w;
}

json rates_report(const FrontTrace& trace, double dx, double n, const Window& window) {
  const bool any = std::any_of(trace.gamma.begin(), trace.gamma.end(), [](double g) { return g > 0.0; });
  if (!any) throw ConfigError("rates: front never detected (gamma = 0 throughout)");
  const bool resolved =
      std::any_of(trace.gamma.begin(), trace.gamma.end(), [&](double g) { return g > 2.0 * dx; });
  if (!resolved) throw ConfigError("rates: unresolved front, every gamma <= 2 dx");
  FitWindow w = default_window(trace, dx);
  if (window.t_lo) w.t_lo = *window.t_lo;
  if (window.t_hi) w.t_hi = *window.t_hi;
  const RateFit fit = fit_power_law(trace, w);
  json j;
  j["exponent"] = fit.exponent;
  j["prefactor"] = fit.prefactor;
  j["r_squared"] = fit.r_squared;
  j["window"] = {fit.window.first, fit.window.second};
  j["samples"] = fit.samples;
  const double pred = 1.0 / (n + 4.0);
  j["predicted"] = pred;
  j["relative_deviation"] = (fit.exponent - pred) / pred;
  return j;
}

json cmd_rates(const fs::path& run_dir, const Window& window) {
  const ConfigFile cfg = load_config((run_dir / "manifest.json").string());
  std::ifstream f(run_dir / "series.csv");
  if (!f) throw IoError("cannot read '" + (run_dir / "series.csv").string() + "'");
  std::string line;
  std::getline(f, line);
  const auto header = split_csv_line(line);
  const auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("series.csv: missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ct = col("t");
  const std::size_t cg = col("gamma");
  FrontTrace trace;
  trace.r0 = cfg.run.scenario.r0;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ConfigError("series.csv:" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                        " columns");
    }
    trace.times.push_back(std::strtod(cells[ct].c_str(), nullptr));
    trace.gamma.push_back(std::strtod(cells[cg].c_str(), nullptr));
  }
  const double dx = 2.0 / static_cast<double>(cfg.run.cells);
  json j = rates_report(trace, dx, cfg.run.model.n, window);
  j["run_id"] = cfg.run.id;
  j["n"] = cfg.run.model.n;
  return j;
}

std::vector<RunConfig> expand_sweep(const ConfigFile& cfg) {
  const RunConfig& base = cfg.run;
  const SweepAxes& ax = cfg.sweep;
  const auto or_base = [](const auto& axis, auto value) {
    using T = decltype(value);
    return axis.empty() ? std::vector<T>{value} : std::vector<T>(axis.begin(), axis.end());
  };
  std::vector<RunConfig> out;
  std::size_t index = 0;
  for (double n : or_base(ax.n, base.model.n)) {
    for (std::size_t cells : or_base(ax.cells, base.cells)) {
      for (double eps : or_base(ax.eps, base.model.eps)) {
        for (double delta : or_base(ax.delta, base.delta)) {
          for (double thr : or_base(ax.threshold, base.threshold)) {
            RunConfig r = base;
            r.model.n = n;
            r.cells = cells;
            r.model.eps = eps;
            r.delta = delta;
            r.threshold = thr;
            for (const auto& [key, t_end] : ax.t_end_by_n) {
              if (std::abs(key - n) < 1e-12) r.scenario.t_end = t_end;
            }
            char suffix[16];
            std::snprintf(suffix, sizeof suffix, "_%03zu", index++);
            r.id = base.id + suffix;
            out.push_back(std::move(r));
          }
        }
      }
    }
  }
  return out;
}

std::vector<SweepRow> cmd_sweep(const ConfigFile& cfg, const fs::path& out_dir) {
  const auto points = expand_sweep(cfg);
  make_dirs(out_dir);
  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      const RunConfig& p = points[k];
      SweepRow& row = rows[k];
      row.n = p.model.n;
      row.cells = p.cells;
      row.eps = p.model.eps;
      row.delta = p.delta;
      row.threshold = p.threshold;
      row.predicted = 1.0 / (p.model.n + 4.0);
      row.dir = out_dir / p.id;
      try {
        const RunResult res = cmd_run(p, row.dir);
        row.threshold = res.trajectory.threshold;
        row.mass_drift = res.mass_drift;
        const json fit = rates_report(res.trace, res.dx, p.model.n);
        row.exponent = fit["exponent"].get<double>();
        row.r_squared = fit["r_squared"].get<double>();
      } catch (const std::exception& e) {
        row.status = e.what();
        std::replace(row.status.begin(), row.status.end(), ',', ';');
        std::replace(row.status.begin(), row.status.end(), '\n', ' ');
        row.exponent = std::nan("");
        row.r_squared = std::nan("");
      }
    }
  };
  unsigned jobs = cfg.sweep.jobs > 0 ? static_cast<unsigned>(cfg.sweep.jobs) : std::thread::hardware_concurrency();
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = "n,N,eps,delta,threshold,exponent,predicted,r_squared,mass_drift,status\n";
  for (const auto& r : rows) {
    csv += format_double(r.n) + ',' + std::to_string(r.cells) + ',' + format_double(r.eps) + ',' +
           format_double(r.delta) + ',' + format_double(r.threshold) + ',' + format_double(r.exponent) + ',' +
           format_double(r.predicted) + ',' + format_double(r.r_squared) + ',' + format_double(r.mass_drift) + ',' +
           r.status + '\n';
  }
  write_file(out_dir / "sweep_summary.csv", csv);
  return rows;
}

bool cmd_lemmas(std::ostream& os) {
  bool all = true;
  for (const auto& c : run_lemma_suites()) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.pass;
  }
  return all;
}

}  // namespace thinfilm::cli
