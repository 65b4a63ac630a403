#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>

#include "jrc/coordinator.hpp"
#include "jrc/generators.hpp"
#include "jrc/subproblem.hpp"
#include "jrc/verify_oracle.hpp"
#include "support/toys.hpp"

namespace jrc {
namespace {

std::vector<double> random_multipliers(const Instance& inst, std::mt19937_64& rng, double range) {
  const CouplingLayout layout(inst);
  std::uniform_real_distribution<double> u(-range, range);
  std::vector<double> lambda(static_cast<std::size_t>(layout.size()));
  for (auto& x : lambda) x = u(rng);
  return lambda;
}

// Minimum of schedule_value over the enumerated schedule set; nullopt when
// the enumeration budget runs out.
std::optional<double> enumerated_minimum(const Instance& inst, int truck, const Pricing& pricing) {
  double best = schedule_value(inst, truck, TruckSchedule{}, pricing);
  const bool complete = for_each_schedule(inst, truck, 5'000'000, [&](const TruckSchedule& s) {
    best = std::min(best, schedule_value(inst, truck, s, pricing));
  });
  if (!complete) return std::nullopt;
  return best;
}

TEST(ArrivalSoc, LoadedLegDrainsPerPeriod) {
  const Instance inst = test::two_node();
  TruckSchedule s;
  s.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {}});
  s.trips.push_back({false, {test::leg(inst, 1, 0, 3)}, {}});
  EXPECT_EQ(arrival_soc(inst, 0, s), (std::vector<int>{9000, 8500}));
}

TEST(ArrivalSoc, ChargingClipsAtCeiling) {
  test::TwoNodeOptions o;
  o.drain_loaded = 50;
  o.charge_rate = 1700;
  const Instance inst = test::two_node(o);
  TruckSchedule s;
  s.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {{1, 3, 3}}});
  s.trips.push_back({false, {test::leg(inst, 1, 0, 4)}, {}});
  EXPECT_EQ(arrival_soc(inst, 0, s), (std::vector<int>{9900, 9500}));
  EXPECT_TRUE(verify_truck(inst, 0, s).empty());
}

TEST(SolveExact, IdleIsOptimalWithoutIncentive) {
  const Instance inst = test::two_node();
  const CouplingLayout layout(inst);
  const std::vector<double> zero(static_cast<std::size_t>(layout.size()), 0.0);
  const auto r = solve_exact(inst, 0, exact_pricing(inst, zero, 0.0, make_context(inst, {}, 0)));
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.schedule.idle());
  EXPECT_EQ(r.flag, SubproblemFlag::exact_optimal);
}

TEST(SolveExact, ProfitableLoadIsTakenAndStaysInsideHorizon) {
  test::TwoNodeOptions o;
  o.horizon = 5;
  const Instance inst = test::two_node(o);
  const CouplingLayout layout(inst);
  std::vector<double> lambda(static_cast<std::size_t>(layout.size()), 0.0);
  lambda[static_cast<std::size_t>(layout.component_of[0])] = -10.0;
  lambda[static_cast<std::size_t>(layout.component_of[1])] = -10.0;
  const Pricing pricing = dual_pricing(inst, 0, lambda);
  const auto r = solve_exact(inst, 0, pricing);
  ASSERT_EQ(r.schedule.trips.size(), 2u);
  EXPECT_TRUE(r.schedule.trips[0].loaded);
  EXPECT_TRUE(r.schedule.trips[1].loaded);
  // Labor 1 * (4 - 1) and two loads at -10.
  EXPECT_DOUBLE_EQ(r.value, 3.0 - 20.0);
  EXPECT_LE(r.schedule.trips.back().legs.back().arrive, inst.horizon);
  EXPECT_EQ(r.value, *enumerated_minimum(inst, 0, pricing));
}

TEST(SolveExact, AvoidsChargerOccupiedByOthers) {
  test::TwoNodeOptions o;
  o.trucks = 2;
  o.travel = 2;
  o.horizon = 10;
  o.drain_loaded = 3000;
  o.drain_empty = 2000;
  o.charge_rate = 2000;
  o.price = 0.1;
  const Instance inst = test::two_node(o);
  TruckSchedule other;
  other.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {{1, 3, 5}}});
  other.trips.push_back({false, {test::leg(inst, 1, 0, 6)}, {}});
  const std::vector<TruckSchedule> plan = {other, TruckSchedule{}};
  const CouplingLayout layout(inst);
  std::vector<double> lambda(static_cast<std::size_t>(layout.size()), 0.0);
  lambda[static_cast<std::size_t>(layout.component_of[0])] = -20.0;
  lambda[static_cast<std::size_t>(layout.component_of[1])] = -20.0;
  const Pricing pricing = exact_pricing(inst, lambda, 5.0, make_context(inst, plan, 1));
  const auto r = solve_exact(inst, 1, pricing);
  ASSERT_FALSE(r.schedule.idle());
  for (const auto& trip : r.schedule.trips) {
    for (const auto& c : trip.charges) {
      if (c.node != 1) continue;
      EXPECT_TRUE(c.last < 3 || c.first > 5) << c.first << ".." << c.last;
    }
  }
  EXPECT_TRUE(verify_truck(inst, 1, r.schedule).empty());
  EXPECT_DOUBLE_EQ(r.value, *enumerated_minimum(inst, 1, pricing));
}

TEST(SolveExact, MatchesEnumerationUnderRandomPrices) {
  std::mt19937_64 rng(7);
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = random_tiny(seed);
    for (int rep = 0; rep < 3; ++rep) {
      const auto lambda = random_multipliers(inst, rng, 5.0);
      std::vector<TruckSchedule> others;
      for (int v = 0; v < inst.truck_count(); ++v) others.push_back(test::random_schedule(inst, v, rng, 200'000));
      const double rho = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
      for (int v = 0; v < inst.truck_count(); ++v) {
        for (const Pricing& pricing :
             {dual_pricing(inst, v, lambda), exact_pricing(inst, lambda, rho, make_context(inst, others, v))}) {
          const auto expected = enumerated_minimum(inst, v, pricing);
          if (!expected) continue;
          const auto r = solve_exact(inst, v, pricing);
          ASSERT_EQ(r.flag, SubproblemFlag::exact_optimal);
          ASSERT_NEAR(r.value, *expected, 1e-9) << "seed " << seed << " truck " << v;
          ASSERT_NEAR(schedule_value(inst, v, r.schedule, pricing), r.value, 1e-9);
          ASSERT_TRUE(verify_truck(inst, v, r.schedule).empty());
          ++compared;
        }
      }
    }
  }
  EXPECT_GT(compared, 300);
}

TEST(SolveExact, PruningDoesNotChangeTheOptimum) {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 100; seed <= 140; ++seed) {
    RandomOptions ro;
    ro.max_periods = 12;
    const Instance inst = random_tiny(seed, ro);
    const auto lambda = random_multipliers(inst, rng, 8.0);
    for (int v = 0; v < inst.truck_count(); ++v) {
      const Pricing pricing = dual_pricing(inst, v, lambda);
      const double reference = solve_exact(inst, v, pricing).value;
      for (bool dominance : {false, true}) {
        for (bool bounding : {false, true}) {
          SearchOptions so;
          so.dominance = dominance;
          so.bounding = bounding;
          so.label_budget = 20'000'000;
          const auto r = solve_exact(inst, v, pricing, so);
          if (r.flag == SubproblemFlag::budget_exceeded) continue;
          ASSERT_NEAR(r.value, reference, 1e-9) << "seed " << seed << " dominance " << dominance << " bounding " << bounding;
        }
      }
    }
  }
}

TEST(SolveSurrogate, StopsAtFirstStrictImprovement) {
  test::TwoNodeOptions o;
  o.horizon = 10;
  const Instance inst = test::two_node(o);
  const CouplingLayout layout(inst);
  std::vector<double> lambda(static_cast<std::size_t>(layout.size()), 0.0);
  lambda[static_cast<std::size_t>(layout.component_of[0])] = -10.0;
  const Pricing pricing = dual_pricing(inst, 0, lambda);
  const auto exact = solve_exact(inst, 0, pricing);
  const auto better = solve_surrogate(inst, 0, pricing, 0.0);
  EXPECT_EQ(better.flag, SubproblemFlag::improved);
  EXPECT_LT(better.value, 0.0);
  EXPECT_GE(better.value, exact.value);
  const auto none = solve_surrogate(inst, 0, pricing, exact.value);
  EXPECT_EQ(none.flag, SubproblemFlag::exact_optimal);
  EXPECT_DOUBLE_EQ(none.value, exact.value);
}

TEST(SolveSurrogate, ImprovementIsStrictUnderRandomPrices) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = random_tiny(seed);
    const auto lambda = random_multipliers(inst, rng, 5.0);
    for (int v = 0; v < inst.truck_count(); ++v) {
      const Pricing pricing = exact_pricing(inst, lambda, 1.0, make_context(inst, {}, v));
      const TruckSchedule incumbent = test::random_schedule(inst, v, rng, 200'000);
      const double before = schedule_value(inst, v, incumbent, pricing);
      const auto r = solve_surrogate(inst, v, pricing, before);
      if (r.flag == SubproblemFlag::improved) {
        EXPECT_LT(r.value, before - kImprovementTolerance);
      } else {
        EXPECT_EQ(r.flag, SubproblemFlag::exact_optimal);
        EXPECT_GE(r.value, before - kImprovementTolerance);
      }
      EXPECT_TRUE(verify_truck(inst, v, r.schedule).empty());
    }
  }
}

TEST(SolveExact, LabelBudgetReportsBudgetExceeded) {
  Example1Options o;
  o.travel = example1_default_travel();
  const Instance inst = example1(o);
  const CouplingLayout layout(inst);
  const std::vector<double> lambda(static_cast<std::size_t>(layout.size()), -5.0);
  SearchOptions so;
  so.label_budget = 50;
  const auto r = solve_exact(inst, 0, dual_pricing(inst, 0, lambda), so);
  EXPECT_EQ(r.flag, SubproblemFlag::budget_exceeded);
  EXPECT_TRUE(verify_truck(inst, 0, r.schedule).empty());
}

TEST(DemandTerm, HandValues) {
  DemandTerm d;
  d.fixed_load = 2;
  d.quantity = 3;
  d.lambda = 1.5;
  d.rho = 2.0;
  d.fixed_latest = 10;
  d.due = 12;
  d.penalty = 0.5;
  d.tardiness_weight = 1.0;
  EXPECT_DOUBLE_EQ(d.value(0, 0), -1.5 + 2.0);
  EXPECT_DOUBLE_EQ(d.value(1, 15), 0.0 + 1.5);
  EXPECT_DOUBLE_EQ(d.value(2, 11), 1.5 + 2.0);
}

}  // namespace
}  // namespace jrc
