#include <doctest.h>

#include <random>

#include "lightpath/labeling.hpp"
#include "support.hpp"

using namespace lightpath;

TEST_CASE("closed_form_labels matches the reference rows") {
  CHECK(closed_form_labels(1) == std::vector<std::int64_t>{1});
  CHECK(closed_form_labels(2) == std::vector<std::int64_t>{2, 3});
  CHECK(closed_form_labels(3) == std::vector<std::int64_t>{4, 6, 7});
  CHECK(closed_form_labels(4) == std::vector<std::int64_t>{8, 12, 14, 15});
  CHECK(closed_form_labels(5) == std::vector<std::int64_t>{16, 24, 28, 30, 31});
  CHECK(closed_form_labels(6) == std::vector<std::int64_t>{32, 48, 56, 60, 62, 63});
}

TEST_CASE("closed_form_labels rejects out-of-range n") {
  CHECK_THROWS_AS(closed_form_labels(0), DomainError);
  CHECK_THROWS_AS(closed_form_labels(63), DomainError);
}

TEST_CASE("label_sum basics and the (n-1)*2^n + 1 identity") {
  CHECK(label_sum({16, 24, 28, 30, 31}) == 129);
  CHECK(label_sum({4, 6, 7}) == 17);
  CHECK(label_sum({}) == 0);
  for (int n = 1; n <= 62; ++n) {
    BigCount expected = (BigCount(n - 1) << n) + 1;
    CHECK(label_sum(closed_form_labels(n)) == expected);
  }
}

TEST_CASE("count_representations matches brute-force enumeration") {
  CHECK(count_representations({4, 6, 7}, 17) == 1);
  CHECK(count_representations({1, 2, 3}, 6) == 7);
  CHECK(count_representations({5}, 0) == 1);

  CHECK(testsupport::brute_force_representations({4, 6, 7}, 17) == 1);
  CHECK(testsupport::brute_force_representations({1, 2, 3}, 6) == 7);

  std::mt19937 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    int k = 1 + static_cast<int>(rng() % 4);
    std::vector<std::int64_t> labels;
    for (int i = 0; i < k; ++i) labels.push_back(1 + static_cast<std::int64_t>(rng() % 12));
    std::int64_t target = static_cast<std::int64_t>(rng() % 40);
    auto expected = testsupport::brute_force_representations(labels, target);
    CHECK(count_representations(labels, target) == expected);
  }
}

TEST_CASE("count_representations rejects nonpositive labels") {
  CHECK_THROWS_AS(count_representations({0, 2}, 4), DomainError);
  CHECK_THROWS_AS(count_representations({-3}, 4), DomainError);
}

TEST_CASE("count_representations always finds the all-ones vector") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 1 + static_cast<int>(rng() % 5);
    std::vector<std::int64_t> labels;
    for (int i = 0; i < k; ++i) labels.push_back(1 + static_cast<std::int64_t>(rng() % 30));
    CHECK(count_representations(labels, label_sum(labels).get_si()) >= 1);
  }
}

TEST_CASE("verify_uniqueness accepts [4,6,7] and rejects [1,2,3]") {
  auto good = verify_uniqueness({{4, 6, 7}, 0});
  CHECK(good.is_unique);
  CHECK(good.representation_count == 1);
  CHECK_FALSE(good.counterexample.has_value());

  auto bad = verify_uniqueness({{1, 2, 3}, 0});
  CHECK_FALSE(bad.is_unique);
  CHECK(bad.representation_count == 7);
  REQUIRE(bad.counterexample.has_value());
  const auto& cx = *bad.counterexample;
  // counterexample satisfies the equation exactly and is not all-ones
  std::int64_t sum = 0;
  std::vector<std::int64_t> labels{1, 2, 3};
  bool all_ones = true;
  for (std::size_t i = 0; i < 3; ++i) {
    sum += cx[i] * labels[i];
    if (cx[i] != 1) all_ones = false;
  }
  CHECK(sum == 6);
  CHECK_FALSE(all_ones);
}

TEST_CASE("verify_uniqueness folds the arc delay into shifted labels") {
  auto report = verify_uniqueness({{24, 28, 30, 31}, 16});
  CHECK(report.is_unique);
  CHECK(report.representation_count == 1);
  // same check against the independent enumerator on the shifted labels
  CHECK(testsupport::brute_force_representations({40, 44, 46, 47}, 177) == 1);
}

TEST_CASE("verify_uniqueness rejects zero effective delays") {
  CHECK_THROWS_AS(verify_uniqueness({{0, 2, 3}, 0}), DomainError);
}

TEST_CASE("closed-form labels stay unique up to n=16") {
  for (int n = 1; n <= 16; ++n) {
    auto report = verify_uniqueness({closed_form_labels(n), 0});
    CHECK(report.is_unique);
  }
}

TEST_CASE("search_minimal_system reproduces the reference minimal systems") {
  CHECK(search_minimal_system(1).labels == std::vector<std::int64_t>{1});
  CHECK(search_minimal_system(2).labels == std::vector<std::int64_t>{2, 3});
  auto r3 = search_minimal_system(3);
  CHECK(r3.labels == std::vector<std::int64_t>{4, 6, 7});
  CHECK(r3.tie_count >= 1);
}

TEST_CASE("search_minimal_system returns not-found inside a too-small bound") {
  auto r = search_minimal_system(3, 5);
  CHECK_FALSE(r.found);
}

TEST_CASE("search_minimal_system result is minimal (exhaustive cross-check, n <= 4)") {
  for (int n = 1; n <= 4; ++n) {
    auto r = search_minimal_system(n);
    REQUIRE(r.found);
    CHECK(detail::set_is_unique(r.labels));
    std::int64_t best_max = r.labels.back();
    // no strictly increasing unique sequence has a smaller maximum
    std::vector<std::int64_t> seq(static_cast<std::size_t>(n));
    auto dfs = [&](auto&& self, int i, std::int64_t lo, std::int64_t cap) -> bool {
      if (i == n) return detail::set_is_unique(seq);
      for (std::int64_t v = lo; v <= cap - (n - 1 - i); ++v) {
        seq[static_cast<std::size_t>(i)] = v;
        std::vector<std::int64_t> prefix(seq.begin(), seq.begin() + i + 1);
        if (!detail::set_is_unique(prefix)) continue;
        if (self(self, i + 1, v + 1, cap)) return true;
      }
      return false;
    };
    CHECK_FALSE(dfs(dfs, 0, 1, best_max - 1));
  }
}

TEST_CASE("total_target_time sums node delays plus (n-1) arc delays") {
  auto g = testsupport::fig1();
  CHECK(total_target_time(g, {{16, 24, 28, 30, 31}, 0}) == 129);

  lightpath::DirectedGraph four{4, {{1, 2}, {2, 3}, {3, 4}}, 1, 4};
  CHECK(total_target_time(four, {{24, 28, 30, 31}, 16}) == 161);

  lightpath::DirectedGraph single{1, {}, 1, 1};
  CHECK(total_target_time(single, {{7}, 5}) == 7);
}

TEST_CASE("total_target_time rejects a mismatched system") {
  auto g = testsupport::fig1();
  CHECK_THROWS_AS(total_target_time(g, {{1, 2}, 0}), DomainError);
}

TEST_CASE("closed_form_system supports a label permutation") {
  std::vector<int> perm{4, 3, 2, 1, 0};
  auto sys = closed_form_system(5, 0, &perm);
  CHECK(sys.node_delays == std::vector<std::int64_t>{31, 30, 28, 24, 16});
  CHECK(verify_uniqueness(sys).is_unique); // uniqueness is assignment-invariant
  CHECK_THROWS_AS(closed_form_system(3, 0, &perm), DomainError);
}
