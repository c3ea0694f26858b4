#include <doctest.h>

#include <cmath>

#include "lightpath/physics.hpp"

using namespace lightpath;

TEST_CASE("min_delay_unit defaults give the 0.0003 m unit") {
  PhysicalConfig cfg;
  CHECK(min_delay_unit(cfg) == doctest::Approx(0.0003).epsilon(1e-12));

  cfg.speed_fraction = 0.6;
  CHECK(min_delay_unit(cfg) == doctest::Approx(0.00018).epsilon(1e-12));
}

TEST_CASE("min_delay_unit rejects invalid configs") {
  PhysicalConfig cfg;
  cfg.rise_time = 0;
  CHECK_THROWS_AS(min_delay_unit(cfg), DomainError);
  cfg = {};
  cfg.speed_fraction = 0;
  CHECK_THROWS_AS(min_delay_unit(cfg), DomainError);
  cfg = {};
  cfg.speed_fraction = 1.5;
  CHECK_THROWS_AS(min_delay_unit(cfg), DomainError);
}

TEST_CASE("cable_lengths for the 5-node closed-form system") {
  PhysicalConfig cfg;
  auto report = cable_lengths({closed_form_labels(5), 0}, cfg);
  // delays 16,24,28,30,31 units at 0.0003 m per unit
  const std::vector<double> expected{0.0048, 0.0072, 0.0084, 0.009, 0.0093};
  REQUIRE(report.node_cable_lengths_m.size() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(report.node_cable_lengths_m[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  CHECK(report.longest_cable_m == doctest::Approx(0.0093).epsilon(1e-12));
  CHECK(report.arc_cable_length_m == 0.0);
  CHECK(report.target_time_s == doctest::Approx(129e-12).epsilon(1e-12));
  CHECK(report.worst_case_intensity == doctest::Approx(std::pow(0.25, 4)).epsilon(1e-12));
  CHECK(report.detectable); // 1/256 against gain 1e8
}

TEST_CASE("cable_lengths of an empty system") {
  auto report = cable_lengths({{}, 0}, PhysicalConfig{});
  CHECK(report.node_cable_lengths_m.empty());
  CHECK(report.total_fiber_m == 0.0);
  CHECK(report.longest_cable_m == 0.0);
}

TEST_CASE("cable lengths divide back to exact delay units") {
  PhysicalConfig cfg;
  auto sys = DelaySystem{closed_form_labels(10), 7};
  auto report = cable_lengths(sys, cfg);
  for (std::size_t i = 0; i < sys.node_delays.size(); ++i) {
    double units = report.node_cable_lengths_m[i] / report.unit_length_m;
    CHECK(units == doctest::Approx(static_cast<double>(sys.node_delays[i])).epsilon(1e-15));
  }
}

TEST_CASE("max_nodes_for_time_budget reproduces the one-second figure") {
  PhysicalConfig cfg;
  CHECK(max_nodes_for_time_budget(1.0, cfg) == 40);
  CHECK(max_nodes_for_time_budget(1e-6, cfg) == 20);
  CHECK(max_nodes_for_time_budget(cfg.rise_time, cfg) == 0);
  CHECK_THROWS_AS(max_nodes_for_time_budget(0.0, cfg), DomainError);
}

TEST_CASE("max_nodes_for_cable_budget boundary cases") {
  PhysicalConfig cfg;
  CHECK(max_nodes_for_cable_budget(8e8, cfg) == 41);
  CHECK(max_nodes_for_cable_budget(0.00093, cfg) == 2);
  CHECK(max_nodes_for_cable_budget(3e5, cfg) == 29);
  CHECK_THROWS_AS(max_nodes_for_cable_budget(0.0, cfg), DomainError);
}

TEST_CASE("dimensional consistency: scaling rise_time rescales lengths, not node limits") {
  PhysicalConfig cfg, scaled;
  scaled.rise_time = cfg.rise_time * 64;
  CHECK(min_delay_unit(scaled) == doctest::Approx(min_delay_unit(cfg) * 64).epsilon(1e-12));
  for (double budget : {1.0, 1e-3, 1e-6})
    CHECK(max_nodes_for_time_budget(budget * 64, scaled) == max_nodes_for_time_budget(budget, cfg));
}

TEST_CASE("slow light scaling: speed fraction rescales every cable exactly") {
  auto sys = DelaySystem{closed_form_labels(8), 5};
  PhysicalConfig fast;
  PhysicalConfig slow;
  slow.speed_fraction = 0.5;
  auto a = cable_lengths(sys, fast);
  auto b = cable_lengths(sys, slow);
  CHECK(b.unit_length_m == a.unit_length_m * 0.5);
  for (std::size_t i = 0; i < a.node_cable_lengths_m.size(); ++i)
    CHECK(b.node_cable_lengths_m[i] == a.node_cable_lengths_m[i] * 0.5);
  CHECK(b.arc_cable_length_m == a.arc_cable_length_m * 0.5);
  CHECK(b.longest_cable_m == a.longest_cable_m * 0.5);
  CHECK(b.total_fiber_m == a.total_fiber_m * 0.5);
  // unit-domain outputs do not move
  CHECK(b.target_time_s == a.target_time_s);
  CHECK(b.worst_case_intensity == a.worst_case_intensity);
}

TEST_CASE("max_nodes_* are nondecreasing in their budgets") {
  PhysicalConfig cfg;
  int prev_t = 0, prev_c = 0;
  for (double scale = 1e-9; scale <= 1e3; scale *= 10) {
    int nt = max_nodes_for_time_budget(scale, cfg);
    int nc = max_nodes_for_cable_budget(scale, cfg);
    CHECK(nt >= prev_t);
    CHECK(nc >= prev_c);
    prev_t = nt;
    prev_c = nc;
  }
}
