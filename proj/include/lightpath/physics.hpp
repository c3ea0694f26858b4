#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lightpath/errors.hpp"
#include "lightpath/labeling.hpp"
#include "lightpath/simulate.hpp"

namespace lightpath {

/// Measurement and propagation parameters of a physical build.
struct PhysicalConfig {
  double rise_time = 1e-12;      // seconds; oscilloscope resolution
  double vacuum_speed = 3e8;     // m/s
  double speed_fraction = 1.0;   // 0.6 for commercial fiber; ~1e-7 for slow light

  double effective_speed() const { return vacuum_speed * speed_fraction; }

  void validate() const {
    if (!(rise_time > 0)) throw DomainError("rise_time must be positive");
    if (!(vacuum_speed > 0)) throw DomainError("vacuum_speed must be positive");
    if (!(speed_fraction > 0 && speed_fraction <= 1))
      throw DomainError("speed_fraction must be in (0,1]");
  }
};

/// Fiber lengths and feasibility figures for one delaying system.
struct DesignReport {
  double unit_length_m = 0.0; // fiber producing one delay unit
  std::vector<double> node_cable_lengths_m;
  double arc_cable_length_m = 0.0;
  double longest_cable_m = 0.0;
  double total_fiber_m = 0.0;
  double target_time_s = 0.0;
  double worst_case_intensity = 0.0; // (1/max outdegree)^(n-1) lower bound
  bool detectable = false;
};

/// Length of fiber that delays a ray by one rise time. Defaults give the
/// 0.0003 m minimum delay unit.
inline double min_delay_unit(const PhysicalConfig& cfg) {
  cfg.validate();
  return cfg.effective_speed() * cfg.rise_time;
}

/// Converts a delaying system into cable lengths. One delay unit equals one
/// rise time. `max_outdegree` bounds the per-node split for the worst-case
/// intensity figure; defaults to n-1 (complete-graph worst case).
inline DesignReport cable_lengths(const DelaySystem& system, const PhysicalConfig& cfg,
                                  int max_outdegree = -1,
                                  const DetectorModel& detector = {}) {
  cfg.validate();
  const int n = static_cast<int>(system.node_delays.size());
  DesignReport report;
  report.unit_length_m = min_delay_unit(cfg);
  report.node_cable_lengths_m.reserve(system.node_delays.size());
  std::int64_t total_units = 0;
  std::int64_t longest_units = 0;
  for (auto d : system.node_delays) {
    if (d < 0) throw DomainError("node delays must be nonnegative");
    report.node_cable_lengths_m.push_back(static_cast<double>(d) * report.unit_length_m);
    total_units = detail::checked_add(total_units, d, "cable_lengths");
    longest_units = std::max(longest_units, d);
  }
  report.arc_cable_length_m = static_cast<double>(system.arc_delay) * report.unit_length_m;
  longest_units = std::max(longest_units, system.arc_delay);
  report.longest_cable_m = static_cast<double>(longest_units) * report.unit_length_m;

  // T units = sum of node delays + (n-1) arc delays; that is also the fiber
  // a Hamiltonian ray traverses.
  std::int64_t arc_count = n > 0 ? n - 1 : 0;
  std::int64_t target_units = detail::checked_add(
      total_units, detail::checked_mul(arc_count, system.arc_delay, "cable_lengths"),
      "cable_lengths");
  report.total_fiber_m = static_cast<double>(target_units) * report.unit_length_m;
  report.target_time_s = static_cast<double>(target_units) * cfg.rise_time;

  if (max_outdegree < 0) max_outdegree = n > 1 ? n - 1 : 1;
  if (max_outdegree < 1) max_outdegree = 1;
  report.worst_case_intensity =
      n > 1 ? std::pow(1.0 / max_outdegree, n - 1) : 1.0;
  report.detectable = report.worst_case_intensity * detector.gain >= detector.min_signal;
  return report;
}

/// Largest instance solvable within a time budget: the integer solution of
/// 2^n * rise_time = budget, rounded to nearest (the largest delay label is
/// 2^n - 1 ~ 2^n units). Defaults and a 1 s budget give 40 nodes.
inline int max_nodes_for_time_budget(double budget_seconds, const PhysicalConfig& cfg) {
  cfg.validate();
  if (!(budget_seconds > 0)) throw DomainError("time budget must be positive");
  double n = std::log2(budget_seconds / cfg.rise_time);
  long long rounded = std::llround(n);
  return rounded > 0 ? static_cast<int>(rounded) : 0;
}

/// Largest instance whose longest node cable (2^n - 1 units) fits the given
/// length.
inline int max_nodes_for_cable_budget(double longest_cable_m, const PhysicalConfig& cfg) {
  cfg.validate();
  if (!(longest_cable_m > 0)) throw DomainError("cable budget must be positive");
  const double unit = min_delay_unit(cfg);
  int n = 0;
  while (n < 1024) {
    // largest label of an (n+1)-node system is 2^(n+1) - 1 units
    double needed = (std::ldexp(1.0, n + 1) - 1.0) * unit;
    if (needed > longest_cable_m) break;
    ++n;
  }
  return n;
}

} // namespace lightpath
