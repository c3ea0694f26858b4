#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "lightpath/errors.hpp"
#include "lightpath/graph.hpp"
#include "lightpath/labeling.hpp"

namespace lightpath {

inline constexpr std::int64_t kDefaultTargetCeiling = 100'000'000;

/// Photomultiplier + threshold at the stop node.
struct DetectorModel {
  double gain = 1e8;
  double min_signal = 1.0;
};

struct SpectrumEntry {
  BigCount walk_count;
  double intensity = 0.0;
};

/// Exact arrival-time histogram at the stop node, up to the target time T.
struct ArrivalSpectrum {
  std::map<std::int64_t, SpectrumEntry> entries;
  std::int64_t cutoff = 0;      // maximum time simulated (= T)
  std::int64_t target_time = 0; // T
};

struct Ray {
  std::vector<int> path; // from start, ending at stop
  std::int64_t arrival_time = 0;
  double intensity = 1.0;
};

/// Explicit ray expansion; rays are recorded when they complete the stop
/// node's delay. Small-n oracle for the spectrum DP.
struct RayTrace {
  std::vector<Ray> rays;
  bool truncated = false;
};

struct Verdict {
  bool answer = false; // YES iff a ray arrives exactly at target_time
  std::int64_t target_time = 0;
  BigCount arrivals_at_target;
  bool detectable = false;
  std::optional<std::vector<int>> witness;
};

/// Raised when decide_hp is asked to run with a delaying system that does
/// not have the uniqueness property.
class NonUniqueSystemError : public DomainError {
public:
  NonUniqueSystemError(std::string msg, UniquenessReport report)
      : DomainError(std::move(msg)), report_(std::move(report)) {}
  const UniquenessReport& report() const { return report_; }

private:
  UniquenessReport report_;
};

namespace detail {

// Per-visit delay of entering node v (node delay + connecting cable).
inline std::vector<std::int64_t> effective_delays(const DirectedGraph& g,
                                                  const DelaySystem& system) {
  if (static_cast<int>(system.node_delays.size()) != g.node_count)
    throw DomainError("delay system size does not match graph");
  if (system.arc_delay < 0) throw DomainError("arc delay must be nonnegative");
  std::vector<std::int64_t> eff(g.node_count + 1, 0);
  for (int v = 1; v <= g.node_count; ++v) {
    std::int64_t d = system.node_delays[static_cast<std::size_t>(v - 1)];
    if (d < 0) throw DomainError("node delays must be nonnegative");
    eff[v] = checked_add(d, system.arc_delay, "effective delay");
  }
  return eff;
}

// Topological order of the subgraph of arcs whose head has zero effective
// delay. A cycle there would let rays circulate without advancing time.
inline std::vector<int> zero_delay_topo_order(const DirectedGraph& g,
                                              const std::vector<std::int64_t>& eff) {
  const int n = g.node_count;
  std::vector<std::vector<int>> zsucc(n + 1);
  std::vector<int> indeg(n + 1, 0);
  for (const auto& [u, v] : g.arcs) {
    if (eff[v] != 0) continue;
    zsucc[u].push_back(v);
    ++indeg[v];
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<int> stack;
  for (int v = 1; v <= n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int w : zsucc[u])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  if (static_cast<int>(order.size()) != n)
    throw DomainError("unbounded ray density: cycle with zero total effective delay");
  return order;
}

} // namespace detail

/// Exact arrival-time DP: count[v][t] += count[u][t - eff(v)] over arcs
/// (u,v), seeded with the ray entering the start node at time 0 and
/// completing its delay at delay(start). Intensity propagates alongside,
/// splitting 1/outdegree at every non-stop node.
inline ArrivalSpectrum arrival_spectrum(const DirectedGraph& g, const DelaySystem& system,
                                        std::int64_t target_ceiling = kDefaultTargetCeiling) {
  const int n = g.node_count;
  auto eff = detail::effective_delays(g, system);
  const std::int64_t T = total_target_time(g, system);
  if (T > target_ceiling)
    throw ResourceError("target time " + std::to_string(T) + " exceeds ceiling " +
                        std::to_string(target_ceiling));
  auto order = detail::zero_delay_topo_order(g, eff);
  auto pred = predecessors(g);
  auto deg = outdegrees(g);

  const std::size_t width = static_cast<std::size_t>(T) + 1;
  std::vector<std::vector<BigCount>> count(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<double>> inten(static_cast<std::size_t>(n) + 1,
                                         std::vector<double>(width, 0.0));
  for (int v = 1; v <= n; ++v) count[static_cast<std::size_t>(v)].assign(width, BigCount{0});

  const std::int64_t seed_time = system.node_delays[static_cast<std::size_t>(g.start - 1)];
  if (seed_time <= T) {
    count[static_cast<std::size_t>(g.start)][static_cast<std::size_t>(seed_time)] = 1;
    inten[static_cast<std::size_t>(g.start)][static_cast<std::size_t>(seed_time)] = 1.0;
  }

  for (std::int64_t t = 0; t <= T; ++t) {
    for (int v : order) {
      const std::int64_t src = t - eff[v];
      if (src < 0) continue;
      auto& cv = count[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)];
      auto& iv = inten[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)];
      for (int u : pred[v]) {
        const auto& cu = count[static_cast<std::size_t>(u)][static_cast<std::size_t>(src)];
        if (cu == 0) continue;
        cv += cu;
        double split = (u == g.stop) ? 1.0 : 1.0 / deg[u];
        iv += inten[static_cast<std::size_t>(u)][static_cast<std::size_t>(src)] * split;
      }
    }
  }

  ArrivalSpectrum spectrum;
  spectrum.cutoff = T;
  spectrum.target_time = T;
  const auto& cstop = count[static_cast<std::size_t>(g.stop)];
  const auto& istop = inten[static_cast<std::size_t>(g.stop)];
  for (std::int64_t t = 0; t <= T; ++t) {
    if (cstop[static_cast<std::size_t>(t)] != 0)
      spectrum.entries.emplace(t, SpectrumEntry{cstop[static_cast<std::size_t>(t)],
                                                istop[static_cast<std::size_t>(t)]});
  }
  return spectrum;
}

/// Event-queue ray expansion, deterministic by (arrival time, path). Each
/// event is a ray completing a node's delay; rays reaching the stop node are
/// recorded and keep propagating through its outgoing arcs.
inline RayTrace ray_trace(const DirectedGraph& g, const DelaySystem& system,
                          std::size_t max_rays) {
  auto eff = detail::effective_delays(g, system);
  detail::zero_delay_topo_order(g, eff); // reject zero-delay cycles
  const std::int64_t T = total_target_time(g, system);
  auto succ = successors(g);
  auto deg = outdegrees(g);

  struct Event {
    std::int64_t time;
    std::vector<int> path;
    double intensity;
    bool operator>(const Event& other) const {
      if (time != other.time) return time > other.time;
      return path > other.path;
    }
  };
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue;

  RayTrace trace;
  const std::int64_t seed_time = system.node_delays[static_cast<std::size_t>(g.start - 1)];
  if (seed_time <= T) queue.push({seed_time, {g.start}, 1.0});

  std::size_t processed = 0;
  while (!queue.empty()) {
    if (++processed > max_rays) {
      trace.truncated = true;
      break;
    }
    Event ev = queue.top();
    queue.pop();
    int v = ev.path.back();
    if (v == g.stop) trace.rays.push_back({ev.path, ev.time, ev.intensity});
    double split = (v == g.stop) ? 1.0 : 1.0 / deg[v];
    for (int w : succ[v]) {
      std::int64_t t = ev.time + eff[w];
      if (t > T) continue;
      Event child{t, ev.path, ev.intensity * split};
      child.path.push_back(w);
      queue.push(std::move(child));
    }
  }
  return trace;
}

/// Intensity of a ray that traverses `path`: product of 1/outdegree over
/// every node except the final one.
inline double path_intensity(const DirectedGraph& g, const std::vector<int>& path) {
  if (path.empty()) throw DomainError("path_intensity: empty path");
  auto deg = outdegrees(g);
  std::vector<std::vector<int>> succ = successors(g);
  for (int v : path)
    if (!g.valid_node(v)) throw DomainError("path_intensity: node out of range");
  double intensity = 1.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    int u = path[i], w = path[i + 1];
    if (!std::binary_search(succ[u].begin(), succ[u].end(), w))
      throw DomainError("path_intensity: (" + std::to_string(u) + "," + std::to_string(w) +
                        ") is not an arc");
    intensity /= deg[u];
  }
  return intensity;
}

/// Runs the optical decision: verifies the delaying system, computes the
/// spectrum, and reads off arrival at T. Refuses non-unique systems, since
/// an arrival at T would then be meaningless.
inline Verdict decide_hp(const DirectedGraph& g, const DelaySystem& system,
                         const DetectorModel& detector = {},
                         std::int64_t target_ceiling = kDefaultTargetCeiling) {
  auto report = verify_uniqueness(system);
  if (!report.is_unique) {
    std::ostringstream msg;
    msg << "delaying system is not unique; counterexample a=(";
    const auto& cx = *report.counterexample;
    for (std::size_t i = 0; i < cx.size(); ++i) msg << (i ? "," : "") << cx[i];
    msg << ")";
    throw NonUniqueSystemError(msg.str(), std::move(report));
  }

  auto spectrum = arrival_spectrum(g, system, target_ceiling);
  Verdict verdict;
  verdict.target_time = spectrum.target_time;
  auto it = spectrum.entries.find(spectrum.target_time);
  if (it != spectrum.entries.end()) {
    verdict.answer = true;
    verdict.arrivals_at_target = it->second.walk_count;
    verdict.detectable = it->second.intensity * detector.gain >= detector.min_signal;
    if (g.node_count <= 12) {
      auto hp = enumerate_hamiltonian_paths(g, 1);
      if (!hp.paths.empty()) verdict.witness = hp.paths.front();
    }
  }
  return verdict;
}

} // namespace lightpath
