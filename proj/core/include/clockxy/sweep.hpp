#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "clockxy/constructions.hpp"

namespace clockxy {

struct ThetaRule {
  enum class Kind { proportional, loglaw, fixed };
  Kind kind = Kind::proportional;
  double value = 8.0;  // c, p or the fixed theta

  double theta_for(double eps) const;
  std::string tag() const;
};

struct Scenario {
  enum class Kind { vortex, interface_jump, combined };
  Kind kind = Kind::vortex;
  int M = 1;                  // vortex count; combined forces the +1/-1 dipole
  std::vector<int> signs;     // per vortex, defaults to +1,-1,+1,...
  double jump = kPi / 2.0;    // interface phase jump
  double length = 1.0;        // interface length (= domain side)
};

struct SweepConfig {
  std::vector<double> epsilon_list;  // strictly decreasing
  ThetaRule theta_rule;
  Scenario scenario;
  // Construction overrides; 0 selects the scenario defaults (c0 = 0 picks
  // the largest plateau constant feasible across the sweep).
  double lambda = 0.0;
  double eta = 0.0;
  double c0 = 0.0;
  double delta = 2.0;
  bool suppress_timing = false;  // write 0.000 in the seconds column
  std::string out_path;          // CSV written here when nonempty
  int threads = 1;
  std::uint64_t seed = 0;
};

struct SweepRecord {
  double epsilon = 0.0;
  double theta = 0.0;
  std::string regime_tag;
  double rescaled_energy = 0.0;
  double excess_energy = 0.0;
  int M = 0;
  double total_vorticity = 0.0;
  double flat_distance_to_target = 0.0;
  double wall_seconds = 0.0;
  bool ok = false;
  std::string error;
};

// One record per epsilon, in list order; per-row construction failures are
// recorded (ok = false), not thrown. Deterministic in every physics field
// for a fixed config.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

std::string sweep_csv_header();
// Data rows carry the fixed 9-column schema; failed rows are emitted as
// '# error ...' comment lines.
void write_sweep_csv(const std::vector<SweepRecord>& records, std::ostream& out,
                     bool suppress_timing);

}  // namespace clockxy
