#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lightpath/errors.hpp"

namespace lightpath {

/// A directed graph with designated start and stop nodes. Node ids are
/// dense 1..n. Self-loops and duplicate arcs are allowed and preserved;
/// duplicates multiply walk counts in the simulator.
struct DirectedGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> arcs; // (from, to), file order
  int start = 0;
  int stop = 0;

  bool valid_node(int v) const { return v >= 1 && v <= node_count; }
};

/// Result of the classical Hamiltonian-path decision.
struct HpAnswer {
  bool exists = false;
  std::optional<std::vector<int>> witness; // length n, start..stop, when exists
};

struct HpEnumeration {
  std::vector<std::vector<int>> paths; // lexicographic order
  bool truncated = false;
};

/// Out-degree per node (index 1..n; slot 0 unused). Duplicate arcs count.
inline std::vector<int> outdegrees(const DirectedGraph& g) {
  std::vector<int> deg(g.node_count + 1, 0);
  for (const auto& [u, v] : g.arcs) ++deg[u];
  return deg;
}

/// Successor lists with duplicate arcs preserved, each list sorted ascending.
inline std::vector<std::vector<int>> successors(const DirectedGraph& g) {
  std::vector<std::vector<int>> succ(g.node_count + 1);
  for (const auto& [u, v] : g.arcs) succ[u].push_back(v);
  for (auto& s : succ) std::sort(s.begin(), s.end());
  return succ;
}

/// Predecessor lists with duplicate arcs preserved.
inline std::vector<std::vector<int>> predecessors(const DirectedGraph& g) {
  std::vector<std::vector<int>> pred(g.node_count + 1);
  for (const auto& [u, v] : g.arcs) pred[v].push_back(u);
  return pred;
}

namespace detail {

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
    line.remove_suffix(1);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
  return line;
}

inline bool parse_int(std::string_view tok, long long& out) {
  if (tok.empty()) return false;
  std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (tok[i] < '0' || tok[i] > '9') return false;
  try {
    out = std::stoll(std::string(tok));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) toks.push_back(s.substr(i, j - i));
    i = j;
  }
  return toks;
}

} // namespace detail

/// Parses the line-oriented instance format:
///   nodes <n>
///   start <id>
///   stop <id>
///   <from> <to>    (one arc per line)
/// '#' starts a comment; blank lines are ignored.
inline DirectedGraph parse_graph(const std::string& text) {
  DirectedGraph g;
  bool have_nodes = false, have_start = false, have_stop = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto toks = detail::split_ws(line);
    if (!have_nodes) {
      long long n;
      if (toks.size() != 2 || toks[0] != "nodes" || !detail::parse_int(toks[1], n) || n < 1)
        throw ParseError("expected \"nodes <n>\" with n >= 1", lineno);
      g.node_count = static_cast<int>(n);
      have_nodes = true;
    } else if (!have_start) {
      long long s;
      if (toks.size() != 2 || toks[0] != "start" || !detail::parse_int(toks[1], s))
        throw ParseError("expected \"start <id>\"", lineno);
      if (s < 1 || s > g.node_count)
        throw ParseError("start node " + std::to_string(s) + " out of range 1.." +
                             std::to_string(g.node_count),
                         lineno);
      g.start = static_cast<int>(s);
      have_start = true;
    } else if (!have_stop) {
      long long s;
      if (toks.size() != 2 || toks[0] != "stop" || !detail::parse_int(toks[1], s))
        throw ParseError("expected \"stop <id>\"", lineno);
      if (s < 1 || s > g.node_count)
        throw ParseError("stop node " + std::to_string(s) + " out of range 1.." +
                             std::to_string(g.node_count),
                         lineno);
      g.stop = static_cast<int>(s);
      have_stop = true;
    } else {
      long long u, v;
      if (toks.size() != 2 || !detail::parse_int(toks[0], u) || !detail::parse_int(toks[1], v))
        throw ParseError("expected arc \"<from> <to>\"", lineno);
      if (u < 1 || u > g.node_count || v < 1 || v > g.node_count)
        throw ParseError("arc endpoint out of range 1.." + std::to_string(g.node_count), lineno);
      g.arcs.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }
  if (!have_nodes) throw ParseError("missing \"nodes <n>\" header", lineno);
  if (!have_start) throw ParseError("missing \"start <id>\" header", lineno);
  if (!have_stop) throw ParseError("missing \"stop <id>\" header", lineno);
  return g;
}

/// Classical Hamiltonian-path decision by subset DP: reach[mask] holds the
/// set of end nodes v such that some simple path start->v visits exactly
/// the nodes of mask. Ground truth for the optical simulator.
inline HpAnswer hamiltonian_oracle(const DirectedGraph& g) {
  const int n = g.node_count;
  if (n == 1) {
    if (g.start == g.stop) return {true, std::vector<int>{g.start}};
    return {false, std::nullopt};
  }
  if (g.start == g.stop) return {false, std::nullopt}; // simple path cannot revisit its origin
  if (n > 26) throw ResourceError("hamiltonian_oracle: subset DP infeasible beyond 26 nodes");

  // pred_mask/succ_mask collapse duplicate arcs and drop self-loops.
  std::vector<std::uint64_t> pred_mask(n + 1, 0), succ_mask(n + 1, 0);
  for (const auto& [u, v] : g.arcs) {
    if (u == v) continue;
    pred_mask[v] |= std::uint64_t{1} << (u - 1);
    succ_mask[u] |= std::uint64_t{1} << (v - 1);
  }

  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> reach(std::size_t{1} << n, 0);
  const std::uint64_t start_bit = std::uint64_t{1} << (g.start - 1);
  reach[start_bit] = start_bit;
  for (std::uint64_t mask = start_bit; mask <= full; ++mask) {
    std::uint64_t ends = reach[mask];
    if (!ends || !(mask & start_bit)) continue;
    while (ends) {
      int v = std::countr_zero(ends) + 1;
      ends &= ends - 1;
      std::uint64_t fresh = succ_mask[v] & ~mask;
      while (fresh) {
        std::uint64_t bbit = fresh & (~fresh + 1);
        fresh &= fresh - 1;
        reach[mask | bbit] |= bbit;
      }
    }
  }

  const std::uint64_t stop_bit = std::uint64_t{1} << (g.stop - 1);
  if (!(reach[full] & stop_bit)) return {false, std::nullopt};

  // Reconstruct one path by walking the table backwards.
  std::vector<int> path;
  std::uint64_t mask = full;
  int v = g.stop;
  path.push_back(v);
  while (mask != start_bit) {
    std::uint64_t prev_mask = mask & ~(std::uint64_t{1} << (v - 1));
    std::uint64_t cands = reach[prev_mask] & pred_mask[v];
    int u = std::countr_zero(cands) + 1;
    path.push_back(u);
    mask = prev_mask;
    v = u;
  }
  std::reverse(path.begin(), path.end());
  return {true, std::move(path)};
}

/// All distinct Hamiltonian paths start->stop in lexicographic order, up to
/// `limit`; sets `truncated` when more exist.
inline HpEnumeration enumerate_hamiltonian_paths(const DirectedGraph& g, std::size_t limit) {
  HpEnumeration out;
  const int n = g.node_count;
  if (n == 1) {
    if (g.start == g.stop) {
      if (limit >= 1)
        out.paths.push_back({g.start});
      else
        out.truncated = true;
    }
    return out;
  }
  if (g.start == g.stop) return out;

  auto succ = successors(g);
  for (auto& s : succ) s.erase(std::unique(s.begin(), s.end()), s.end());

  std::vector<char> visited(n + 1, false);
  std::vector<int> path{g.start};
  visited[g.start] = true;

  auto dfs = [&](auto&& self, int u) -> bool { // returns false to abort (limit hit)
    if (static_cast<int>(path.size()) == n) {
      if (u == g.stop) {
        if (out.paths.size() == limit) {
          out.truncated = true;
          return false;
        }
        out.paths.push_back(path);
      }
      return true;
    }
    for (int w : succ[u]) {
      if (visited[w]) continue;
      // stop may only appear as the final node
      if (w == g.stop && static_cast<int>(path.size()) != n - 1) continue;
      visited[w] = true;
      path.push_back(w);
      bool cont = self(self, w);
      path.pop_back();
      visited[w] = false;
      if (!cont) return false;
    }
    return true;
  };
  dfs(dfs, g.start);
  return out;
}

} // namespace lightpath
