#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lightpath/errors.hpp"
#include "lightpath/graph.hpp"

namespace lightpath {

using BigCount = mpz_class;

/// Per-node delays plus a uniform per-arc delay, all in abstract integer
/// time units. node_delays[i] belongs to node i+1.
struct DelaySystem {
  std::vector<std::int64_t> node_delays;
  std::int64_t arc_delay = 0;
};

/// Outcome of checking that the sum of all effective delays has exactly one
/// representation as a nonnegative integer combination of those delays
/// (the all-ones vector).
struct UniquenessReport {
  bool is_unique = false;
  BigCount representation_count = 0;
  std::optional<std::vector<std::int64_t>> counterexample; // coefficients, when not unique
};

struct LabelSearchResult {
  bool found = false;
  std::vector<std::int64_t> labels;
  // number of valid sequences sharing the minimal maximum (1 = no tie)
  std::uint64_t tie_count = 0;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError(std::string(what) + ": integer overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError(std::string(what) + ": integer overflow");
  return r;
}

} // namespace detail

/// The general delay labeling for an n-node graph:
/// 2^n - 2^(n-1), 2^n - 2^(n-2), ..., 2^n - 2^0 (strictly increasing).
inline std::vector<std::int64_t> closed_form_labels(int n) {
  if (n < 1 || n > 62)
    throw DomainError("closed_form_labels: n must be in 1..62, got " + std::to_string(n));
  std::vector<std::int64_t> labels(n);
  const std::int64_t top = std::int64_t{1} << n;
  for (int i = 0; i < n; ++i) labels[i] = top - (std::int64_t{1} << (n - 1 - i));
  return labels;
}

/// Exact sum of a label list. For closed-form labels this equals
/// (n-1)*2^n + 1, which already leaves 63-bit range near n = 58.
inline BigCount label_sum(const std::vector<std::int64_t>& labels) {
  BigCount sum = 0;
  for (auto d : labels) sum += d;
  return sum;
}

namespace detail {

inline std::int64_t label_sum_i64(const std::vector<std::int64_t>& labels, const char* what) {
  std::int64_t sum = 0;
  for (auto d : labels) sum = checked_add(sum, d, what);
  return sum;
}

} // namespace detail

/// Exact number of coefficient vectors (a_1,...,a_n), a_i in {0,1,2,...},
/// with sum a_i * labels[i] = target. Unbounded-knapsack counting DP,
/// O(n*target) time, O(target) space.
inline BigCount count_representations(const std::vector<std::int64_t>& labels,
                                      std::int64_t target) {
  for (auto d : labels)
    if (d <= 0)
      throw DomainError("count_representations: labels must be positive (zero label admits "
                        "infinitely many representations)");
  if (target < 0) throw DomainError("count_representations: target must be nonnegative");
  std::vector<BigCount> ways(static_cast<std::size_t>(target) + 1);
  ways[0] = 1;
  for (auto d : labels)
    for (std::int64_t t = d; t <= target; ++t)
      ways[static_cast<std::size_t>(t)] += ways[static_cast<std::size_t>(t - d)];
  return ways[static_cast<std::size_t>(target)];
}

namespace detail {

// Finds a coefficient vector over `labels` summing to `target` that differs
// from `excluded` (lexicographically first such vector). Requires one to exist.
inline std::vector<std::int64_t> find_other_representation(
    const std::vector<std::int64_t>& labels, std::int64_t target,
    const std::vector<std::int64_t>& excluded) {
  const std::size_t n = labels.size();
  const std::size_t width = static_cast<std::size_t>(target) + 1;
  // reach[i][t]: labels[i..] can represent t
  std::vector<std::vector<char>> reach(n + 1, std::vector<char>(width, 0));
  reach[n][0] = 1;
  for (std::size_t i = n; i-- > 0;) {
    for (std::int64_t t = 0; t <= target; ++t) {
      char r = reach[i + 1][static_cast<std::size_t>(t)];
      if (!r && t >= labels[i]) r = reach[i][static_cast<std::size_t>(t - labels[i])];
      reach[i][static_cast<std::size_t>(t)] = r;
    }
  }

  std::vector<std::int64_t> coeff(n, 0);
  auto dfs = [&](auto&& self, std::size_t i, std::int64_t rem, bool matches_excluded) -> bool {
    if (i == n) return rem == 0 && !matches_excluded;
    for (std::int64_t a = 0; a * labels[i] <= rem; ++a) {
      std::int64_t next = rem - a * labels[i];
      if (!reach[i + 1][static_cast<std::size_t>(next)]) continue;
      coeff[i] = a;
      if (self(self, i + 1, next, matches_excluded && a == excluded[i])) return true;
    }
    coeff[i] = 0;
    return false;
  };
  if (!dfs(dfs, 0, target, true))
    throw DomainError("find_other_representation: no alternative representation exists");
  return coeff;
}

} // namespace detail

/// Verifies the delaying-system property on the effective (shifted) labels
/// e_i = node_delays[i] + arc_delay: the total sum e_1+...+e_n must admit
/// only the all-ones combination. Walk arrival times equal
/// sum a_i*(d_i + c) - c, so uniqueness of the shifted system is exactly
/// uniqueness of detection times.
inline UniquenessReport verify_uniqueness(const DelaySystem& system) {
  std::vector<std::int64_t> shifted;
  shifted.reserve(system.node_delays.size());
  for (auto d : system.node_delays) {
    std::int64_t e = detail::checked_add(d, system.arc_delay, "verify_uniqueness");
    if (e <= 0) throw DomainError("zero effective delay admits unbounded cycling");
    shifted.push_back(e);
  }
  std::int64_t target = detail::label_sum_i64(shifted, "verify_uniqueness");
  UniquenessReport report;
  report.representation_count = count_representations(shifted, target);
  report.is_unique = (report.representation_count == 1);
  if (!report.is_unique) {
    std::vector<std::int64_t> all_ones(shifted.size(), 1);
    report.counterexample = detail::find_other_representation(shifted, target, all_ones);
  }
  return report;
}

namespace detail {

// Uniqueness check used by the backtracking search. A violation of the
// property in a subset persists in every superset (the same alternative
// combination still works), so every prefix of a valid system is valid.
// Saturating 64-bit counts suffice here; we only compare against 1.
inline bool set_is_unique(const std::vector<std::int64_t>& labels) {
  const std::int64_t target = label_sum_i64(labels, "search_minimal_system");
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(target) + 1, 0);
  ways[0] = 1;
  for (auto d : labels) {
    for (std::int64_t t = d; t <= target; ++t) {
      std::uint64_t& w = ways[static_cast<std::size_t>(t)];
      std::uint64_t add = ways[static_cast<std::size_t>(t - d)];
      w = (w > ~add) ? ~std::uint64_t{0} : w + add;
    }
  }
  return ways[static_cast<std::size_t>(target)] == 1;
}

} // namespace detail

/// Backtracking search for an n-element delaying system whose maximum label
/// is minimal (ties broken lexicographically). Prefixes that already violate
/// the uniqueness property are pruned. Bound caps the maximum label.
inline LabelSearchResult search_minimal_system(int n, std::int64_t max_label_bound) {
  if (n < 1) throw DomainError("search_minimal_system: n must be positive");
  if (max_label_bound < 1) throw DomainError("search_minimal_system: bound must be positive");

  LabelSearchResult result;
  for (std::int64_t maxval = n; maxval <= max_label_bound; ++maxval) {
    std::vector<std::int64_t> prefix;
    prefix.reserve(static_cast<std::size_t>(n));
    // Enumerate increasing prefixes d_1 < ... < d_{n-1} < maxval in
    // lexicographic order; the full candidate is prefix + [maxval].
    auto dfs = [&](auto&& self, std::int64_t lo) -> void {
      if (static_cast<int>(prefix.size()) == n - 1) {
        prefix.push_back(maxval);
        if (detail::set_is_unique(prefix)) {
          if (!result.found) {
            result.found = true;
            result.labels = prefix;
          }
          ++result.tie_count;
        }
        prefix.pop_back();
        return;
      }
      std::int64_t slots_left = n - 1 - static_cast<std::int64_t>(prefix.size());
      for (std::int64_t v = lo; v + slots_left <= maxval; ++v) {
        prefix.push_back(v);
        if (detail::set_is_unique(prefix)) self(self, v + 1);
        prefix.pop_back();
      }
    };
    dfs(dfs, 1);
    if (result.found) return result;
  }
  return result; // not found within bound
}

inline LabelSearchResult search_minimal_system(int n) {
  if (n < 1 || n > 62) throw DomainError("search_minimal_system: n must be in 1..62");
  return search_minimal_system(n, std::int64_t{1} << n);
}

/// Arrival time of a Hamiltonian-path ray: sum of all node delays plus
/// (n-1) arc delays.
inline std::int64_t total_target_time(const DirectedGraph& g, const DelaySystem& system) {
  if (static_cast<int>(system.node_delays.size()) != g.node_count)
    throw DomainError("total_target_time: delay system size does not match graph");
  std::int64_t t = detail::label_sum_i64(system.node_delays, "total_target_time");
  std::int64_t arc_total =
      detail::checked_mul(g.node_count - 1, system.arc_delay, "total_target_time");
  return detail::checked_add(t, arc_total, "total_target_time");
}

/// Binds closed-form labels to a graph, ascending by node id unless a
/// permutation is given (perm[i] = label index for node i+1).
inline DelaySystem closed_form_system(int n, std::int64_t arc_delay,
                                      const std::vector<int>* perm = nullptr) {
  DelaySystem sys;
  auto labels = closed_form_labels(n);
  if (perm) {
    if (static_cast<int>(perm->size()) != n)
      throw DomainError("closed_form_system: permutation size mismatch");
    sys.node_delays.resize(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      int j = (*perm)[static_cast<std::size_t>(i)];
      if (j < 0 || j >= n || seen[static_cast<std::size_t>(j)])
        throw DomainError("closed_form_system: invalid permutation");
      seen[static_cast<std::size_t>(j)] = 1;
      sys.node_delays[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(j)];
    }
  } else {
    sys.node_delays = std::move(labels);
  }
  sys.arc_delay = arc_delay;
  return sys;
}

} // namespace lightpath
