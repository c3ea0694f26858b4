#pragma once

// Test-only helpers: small fixed instances, a seeded random digraph
// generator, and brute-force oracles kept independent of the library's
// implementation paths.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "lightpath/graph.hpp"

namespace testsupport {

inline lightpath::DirectedGraph fig1() {
  lightpath::DirectedGraph g;
  g.node_count = 5;
  g.start = 1;
  g.stop = 4;
  g.arcs = {{1, 3}, {1, 5}, {2, 1}, {2, 3}, {2, 4}, {3, 4}, {5, 2}};
  return g;
}

inline const char* fig1_text() {
  return "nodes 5\nstart 1\nstop 4\n1 3\n1 5\n2 1\n2 3\n2 4\n3 4\n5 2\n";
}

/// Random digraph: each ordered pair (u,v), u != v, becomes an arc with
/// probability `density`; start and stop are drawn uniformly (may coincide).
inline lightpath::DirectedGraph random_digraph(std::mt19937& rng, int n, double density) {
  lightpath::DirectedGraph g;
  g.node_count = n;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v && coin(rng) < density) g.arcs.emplace_back(u, v);
  std::uniform_int_distribution<int> node(1, n);
  g.start = node(rng);
  g.stop = node(rng);
  return g;
}

/// Exhaustive permutation check: is there an ordering of 1..n starting at
/// start, ending at stop, whose consecutive pairs are all arcs?
inline std::vector<std::vector<int>> brute_force_hamiltonian_paths(
    const lightpath::DirectedGraph& g) {
  std::vector<std::vector<int>> found;
  const int n = g.node_count;
  if (n == 1) {
    if (g.start == g.stop) found.push_back({g.start});
    return found;
  }
  if (g.start == g.stop) return found;

  std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
  for (const auto& [u, v] : g.arcs) adj[u][v] = 1;

  std::vector<int> middle;
  for (int v = 1; v <= n; ++v)
    if (v != g.start && v != g.stop) middle.push_back(v);
  std::sort(middle.begin(), middle.end());
  do {
    std::vector<int> perm;
    perm.push_back(g.start);
    perm.insert(perm.end(), middle.begin(), middle.end());
    perm.push_back(g.stop);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < perm.size(); ++i)
      if (!adj[perm[i]][perm[i + 1]]) {
        ok = false;
        break;
      }
    if (ok) found.push_back(perm);
  } while (std::next_permutation(middle.begin(), middle.end()));
  std::sort(found.begin(), found.end());
  return found;
}

/// Brute-force representation counter: DFS over bounded coefficients,
/// independent of the counting DP.
inline std::uint64_t brute_force_representations(const std::vector<std::int64_t>& labels,
                                                 std::int64_t target) {
  std::uint64_t count = 0;
  auto dfs = [&](auto&& self, std::size_t i, std::int64_t rem) -> void {
    if (i == labels.size()) {
      if (rem == 0) ++count;
      return;
    }
    for (std::int64_t a = 0; a * labels[i] <= rem; ++a) self(self, i + 1, rem - a * labels[i]);
  };
  dfs(dfs, 0, target);
  return count;
}

} // namespace testsupport
