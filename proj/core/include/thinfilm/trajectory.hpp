#pragma once

#include <array>
#include <string>
#include <vector>

namespace thinfilm {

/// Cell-averaged film thickness at time t.
struct State {
  double t = 0.0;
  std::vector<double> u;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double min_u = 0.0;
  double dead_core_halfwidth = 0.0;
  double dt_used = 0.0;
  int newton_iters = 0;
  /// Accepted and rejected steps since t = 0.
  long steps = 0;
  long rejected = 0;
};

/// Output frames of one run: frames[k] and records[k] belong to the same time.
struct Trajectory {
  std::vector<State> frames;
  std::vector<DiagnosticsRecord> records;
  double threshold = 0.0;
  double u0_max = 0.0;
  std::string termination = "completed";
  /// Rejected steps indexed by StepReason (diverged, negativity, non_finite).
  std::array<long, 4> rejections{0, 0, 0, 0};
};

}  // namespace thinfilm
