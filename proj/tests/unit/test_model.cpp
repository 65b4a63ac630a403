#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "jrc/coordinator.hpp"
#include "jrc/generators.hpp"
#include "jrc/model.hpp"
#include "jrc/verify_oracle.hpp"
#include "support/toys.hpp"

namespace jrc {
namespace {

// One truck, travel 2 each way, P = 6, T = 2.
Instance tag_toy() {
  test::TwoNodeOptions o;
  o.horizon = 6;
  o.due = 10;
  return test::two_node(o);
}

std::vector<int> rows_with(const CanonicalModel& m, const std::string& tag, int column) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (m.tag_of(m.rows[i]) != tag) continue;
    for (const auto& term : m.rows[i].terms) {
      if (term.column == column) out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

double row_lhs(const Constraint& row, const std::map<int, double>& values) {
  double lhs = 0.0;
  for (const auto& t : row.terms) {
    auto it = values.find(t.column);
    if (it != values.end()) lhs += t.coef * it->second;
  }
  return lhs;
}

bool row_holds(const Constraint& row, double lhs) {
  switch (row.sense) {
    case Sense::le: return lhs <= row.rhs + 1e-9;
    case Sense::ge: return lhs >= row.rhs - 1e-9;
    case Sense::eq: return std::abs(lhs - row.rhs) <= 1e-9;
  }
  return false;
}

TEST(BuildModel, TagCountsMatchHandEnumeration) {
  const Instance inst = tag_toy();
  ASSERT_TRUE(validate(inst).ok());
  const auto counts = build_model(inst).tag_counts();
  const int T = 2, N = 2, P = 6, C = 2, D = 2, R = 2, travel = 2;
  EXPECT_EQ(counts.at("eq1-bigM"), 1);
  EXPECT_EQ(counts.at("eq3-dep"), T * P);
  EXPECT_EQ(counts.at("eq3-arr"), T * P);
  EXPECT_EQ(counts.at("eq4-dep"), T * N);
  EXPECT_EQ(counts.at("eq5-dep"), T * N);
  EXPECT_EQ(counts.at("eq5-bgn"), T * C);
  EXPECT_EQ(counts.at("eq6-bigM-le"), T * N * P);
  EXPECT_EQ(counts.at("eq6-bigM-ge"), T * N * P);
  EXPECT_EQ(counts.at("eq7-bigM-le"), T * N * P);
  EXPECT_EQ(counts.at("eq11-ld-bigM-le"), T * R * (P - travel + 1));
  EXPECT_EQ(counts.at("eq11-empty-bigM-ge"), T * R * (P - travel + 1));
  EXPECT_EQ(counts.at("eq12"), T * C * P);
  EXPECT_EQ(counts.at("eq13"), T * C * P);
  EXPECT_EQ(counts.at("eq14"), T * C * P);
  EXPECT_EQ(counts.at("eq15"), T * C * P);
  EXPECT_EQ(counts.at("eq19-bigM"), 1);
  EXPECT_EQ(counts.at("eq20-bigM"), 1);
  EXPECT_EQ(counts.at("eq23"), T);
  EXPECT_EQ(counts.at("eq24"), T - 1);
  EXPECT_EQ(counts.at("eq28"), D);
  EXPECT_EQ(counts.at("eq29"), D);
  EXPECT_EQ(counts.count("eq25"), 0u);
  EXPECT_EQ(counts.count("eq27"), 0u);
}

TEST(BuildModel, AvailabilityBigMOnlyBindsActiveTrip) {
  Instance inst = tag_toy();
  inst.fleet[0].available = 3;
  const CanonicalModel m = build_model(inst);
  const int d = m.catalog.depart_time(0, 1, 0);
  const int trip = m.catalog.trip_var(0, 1);
  const auto rows = rows_with(m, "eq1-bigM", d);
  ASSERT_EQ(rows.size(), 1u);
  const Constraint& row = m.rows[static_cast<std::size_t>(rows[0])];
  EXPECT_FALSE(row_holds(row, row_lhs(row, {{d, 2.0}, {trip, 1.0}})));
  EXPECT_TRUE(row_holds(row, row_lhs(row, {{d, 3.0}, {trip, 1.0}})));
  EXPECT_TRUE(row_holds(row, row_lhs(row, {{d, 0.0}, {trip, 0.0}})));
}

TEST(BuildModel, DepartureImpliesArrivalIsOneBigMPair) {
  const Instance inst = tag_toy();
  const CanonicalModel m = build_model(inst);
  const int x = m.catalog.depart(0, 1, 0, 3);
  const auto le = rows_with(m, "eq6-bigM-le", x);
  const auto ge = rows_with(m, "eq6-bigM-ge", x);
  ASSERT_EQ(le.size(), 1u);
  ASSERT_EQ(ge.size(), 1u);
  EXPECT_GT(m.rows[static_cast<std::size_t>(le[0])].big_m, 0.0);
  EXPECT_EQ(m.rows[static_cast<std::size_t>(le[0])].big_m, m.rows[static_cast<std::size_t>(ge[0])].big_m);
}

TEST(Objective, HandArithmetic) {
  test::TwoNodeOptions o;
  o.travel = 4;
  o.horizon = 12;
  o.price = 2.0;
  o.labor = 1.0;
  o.import_quantity = 0;
  o.due = 2;
  o.penalty = 5.0;
  Instance inst = test::two_node(o);
  inst.demands[1].due = 20;
  TruckSchedule s;
  s.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {{1, 5, 7}}});
  s.trips.push_back({false, {test::leg(inst, 1, 0, 8)}, {}});
  const std::vector<TruckSchedule> all = {s};
  const CostBreakdown c = objective(inst, all);
  EXPECT_DOUBLE_EQ(c.labor, 10.0);
  EXPECT_DOUBLE_EQ(c.charging, 6.0);
  EXPECT_DOUBLE_EQ(c.tardiness, 10.0);
  EXPECT_DOUBLE_EQ(c.total(), 26.0);
  const auto report = verify(inst, all);
  EXPECT_TRUE(report.feasible) << report.summary();
  EXPECT_DOUBLE_EQ(report.cost.total(), 26.0);
}

TEST(Objective, IdleZeroDemandIsZero) {
  test::TwoNodeOptions o;
  o.export_quantity = 0;
  o.import_quantity = 0;
  o.trucks = 2;
  const Instance inst = test::two_node(o);
  const std::vector<TruckSchedule> idle(2);
  EXPECT_EQ(objective(inst, idle).total(), 0.0);
  EXPECT_EQ(objective(inst, empty_assignment(inst)).total(), 0.0);
}

TEST(Objective, MatchesVerifierOnExampleOneScale) {
  Example1Options o;
  o.travel = example1_default_travel();
  const Instance inst = example1(o);
  const CouplingLayout layout(inst);
  for (double lam : {-1.0, -3.0}) {
    const std::vector<double> lambda(static_cast<std::size_t>(layout.size()), lam);
    const DualBound q = dual_lower_bound(inst, lambda);
    bool any_trip = false;
    for (const auto& s : q.schedules) any_trip = any_trip || !s.idle();
    EXPECT_TRUE(any_trip);
    const auto mine = objective(inst, std::span<const TruckSchedule>(q.schedules));
    const auto theirs = verify(inst, std::span<const TruckSchedule>(q.schedules)).cost;
    EXPECT_NEAR(mine.labor, theirs.labor, 1e-9);
    EXPECT_NEAR(mine.charging, theirs.charging, 1e-9);
    EXPECT_NEAR(mine.tardiness, theirs.tardiness, 1e-9);
  }
}

TEST(Coupling, TwoTrucksOnOneCharger) {
  test::TwoNodeOptions o;
  o.trucks = 2;
  o.travel = 1;
  o.export_quantity = 0;
  o.import_quantity = 0;
  const Instance inst = test::two_node(o);
  TruckSchedule s;
  s.trips.push_back({false, {test::leg(inst, 0, 1, 1)}, {{1, 2, 2}}});
  s.trips.push_back({false, {test::leg(inst, 1, 0, 3)}, {}});
  const std::vector<TruckSchedule> both = {s, s};
  const auto h = coupling_violations(inst, both);
  const CouplingLayout layout(inst);
  EXPECT_EQ(h[static_cast<std::size_t>(layout.capacity_component(1, 2))], 1.0);
  EXPECT_EQ(l1_norm(h), 1.0);
}

TEST(Coupling, ShortDemandIsNegative) {
  test::TwoNodeOptions o;
  o.travel = 1;
  o.trucks = 2;
  o.export_quantity = 2;
  o.import_quantity = 0;
  const Instance inst = test::two_node(o);
  TruckSchedule s;
  s.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {}});
  s.trips.push_back({false, {test::leg(inst, 1, 0, 2)}, {}});
  const std::vector<TruckSchedule> plan = {s, TruckSchedule{}};
  const auto h = coupling_violations(inst, plan);
  const CouplingLayout layout(inst);
  EXPECT_EQ(h[static_cast<std::size_t>(layout.component_of[0])], -1.0);
}

TEST(Coupling, MetDemandGivesZeroVector) {
  test::TwoNodeOptions o;
  o.travel = 1;
  const Instance inst = test::two_node(o);
  TruckSchedule s;
  s.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {}});
  s.trips.push_back({true, {test::leg(inst, 1, 0, 2)}, {}});
  const std::vector<TruckSchedule> plan = {s};
  for (double x : coupling_violations(inst, plan)) EXPECT_EQ(x, 0.0);
}

TEST(Lagrangian, ZeroViolationEqualsObjective) {
  test::TwoNodeOptions o;
  o.travel = 1;
  const Instance inst = test::two_node(o);
  TruckSchedule s;
  s.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {{1, 2, 3}}});
  s.trips.push_back({true, {test::leg(inst, 1, 0, 4)}, {}});
  const std::vector<TruckSchedule> plan = {s};
  const CouplingLayout layout(inst);
  std::vector<double> lambda(static_cast<std::size_t>(layout.size()), 0.0);
  EXPECT_EQ(lagrangian_value(inst, plan, lambda, 0.0), objective(inst, plan).total());
  for (auto& x : lambda) x = 3.5;
  EXPECT_EQ(lagrangian_value(inst, plan, lambda, 2.0), objective(inst, plan).total());
}

TEST(Lagrangian, PenaltyOnlyAddsRhoTimesL1) {
  test::TwoNodeOptions o;
  o.travel = 4;
  o.horizon = 12;
  o.export_quantity = 0;
  o.import_quantity = 3;
  const Instance inst = test::two_node(o);
  TruckSchedule s;
  s.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {{1, 5, 7}}});
  s.trips.push_back({false, {test::leg(inst, 1, 0, 8)}, {}});
  const std::vector<TruckSchedule> plan = {s};
  const auto h = coupling_violations(inst, plan);
  ASSERT_EQ(l1_norm(h), 4.0);
  const CouplingLayout layout(inst);
  const std::vector<double> zero(static_cast<std::size_t>(layout.size()), 0.0);
  const double base = objective(inst, plan).total();
  EXPECT_DOUBLE_EQ(lagrangian_value(inst, plan, zero, 1.0), base + 4.0);
  EXPECT_DOUBLE_EQ(lagrangian_value(inst, plan, zero, 2.5), base + 10.0);
}

TEST(Lagrangian, HandComputedTwoTruckToy) {
  test::TwoNodeOptions o;
  o.trucks = 2;
  o.travel = 1;
  o.price = 0.5;
  o.labor = 1.0;
  const Instance inst = test::two_node(o);
  TruckSchedule a, b;
  a.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {{1, 2, 2}}});
  a.trips.push_back({false, {test::leg(inst, 1, 0, 3)}, {}});
  b.trips.push_back({true, {test::leg(inst, 0, 1, 1)}, {{1, 2, 2}}});
  b.trips.push_back({true, {test::leg(inst, 1, 0, 3)}, {}});
  const std::vector<TruckSchedule> plan = {a, b};
  const CouplingLayout layout(inst);
  std::vector<double> lambda(static_cast<std::size_t>(layout.size()), 0.0);
  lambda[static_cast<std::size_t>(layout.component_of[0])] = 2.0;   // export: loads 2, demand 1
  lambda[static_cast<std::size_t>(layout.component_of[1])] = -3.0;  // import: loads 1, demand 1
  lambda[static_cast<std::size_t>(layout.capacity_component(1, 2))] = 0.5;
  // O = 2 * (labor 2 + charging 0.5) = 5; Lambda.H = 2*1 + 0.5*1; rho |H|_1 = 0.25 * 2.
  EXPECT_DOUBLE_EQ(lagrangian_value(inst, plan, lambda, 0.25), 8.0);
  EXPECT_THROW(lagrangian_value(inst, plan, std::vector<double>(3, 0.0), 0.0), InstanceError);
}

TEST(BigM, NoEnumeratedScheduleIsCut) {
  for (int travel : {1, 2}) {
    test::TwoNodeOptions o;
    o.travel = travel;
    o.horizon = 7;
    o.drain_loaded = 3000;
    o.drain_empty = 2000;
    o.charge_rate = 2500;
    const Instance inst = test::two_node(o);
    const CanonicalModel m = build_model(inst);
    const auto schedules = test::all_schedules(inst, 0);
    ASSERT_GT(schedules.size(), 10u);
    for (const auto& s : schedules) {
      const std::vector<TruckSchedule> plan = {s};
      const Assignment a = materialize(inst, plan);
      const auto eval = evaluate(m, a);
      ASSERT_TRUE(eval.feasible()) << "row " << (eval.violated_rows.empty() ? -1 : eval.violated_rows[0].row);
      ASSERT_TRUE(verify(inst, a).residuals.empty()) << verify(inst, a).summary();
    }
  }
}

TEST(Mps, LinearObjectiveMatchesCostOfMaterializedPlans) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance inst = random_tiny(seed);
    const CanonicalModel m = build_model(inst);
    std::vector<TruckSchedule> plan;
    for (int v = 0; v < inst.truck_count(); ++v) plan.push_back(v == 1 ? TruckSchedule{} : test::random_schedule(inst, v, rng, 2'000'000));
    const Assignment a = materialize(inst, plan);
    const auto x = m.catalog.flatten(a);
    double linear = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) linear += m.cost[j] * x[j];
    EXPECT_NEAR(linear, objective(inst, a).total(), 1e-9);
  }
}

TEST(Mps, ExportHasObjectiveAndSections) {
  const Instance inst = tag_toy();
  std::ostringstream out;
  write_mps(build_model(inst), out, "TOY");
  const std::string text = out.str();
  for (const char* section : {"NAME TOY", "ROWS", " N COST", "COLUMNS", "RHS", "BOUNDS", "ENDATA", "'INTORG'"}) {
    EXPECT_NE(text.find(section), std::string::npos) << section;
  }
  EXPECT_NE(text.find(" COST 0.5\n"), std::string::npos);
  EXPECT_NE(text.find(" COST -1\n"), std::string::npos);
}

TEST(ModelVsVerifier, AgreeOnFuzzedAssignments) {
  std::mt19937_64 rng(2024);
  int feasible = 0, infeasible = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = random_tiny(seed);
    const CanonicalModel m = build_model(inst);
    const auto best = brute_force_optimum(inst);
    for (int k = 0; k < 25; ++k) {
      std::vector<TruckSchedule> plan;
      if (best.status == OracleStatus::optimal && k % 2 == 0) {
        plan = best.schedules;
      } else {
        for (int v = 0; v < inst.truck_count(); ++v) plan.push_back(test::random_schedule(inst, v, rng, 1'000'000));
      }
      Assignment a = materialize(inst, plan);
      test::mutate(inst, a, rng, static_cast<int>(rng() % 3));
      const bool model_ok = evaluate(m, a).feasible() && l1_norm(coupling_violations(inst, a)) == 0.0;
      const auto report = verify(inst, a);
      ASSERT_EQ(model_ok, report.feasible) << "seed " << seed << " case " << k << "\n" << report.summary();
      (report.feasible ? feasible : infeasible)++;
    }
  }
  EXPECT_GT(feasible, 20);
  EXPECT_GT(infeasible, 20);
}

}  // namespace
}  // namespace jrc
