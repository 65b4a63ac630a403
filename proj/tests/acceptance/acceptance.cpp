// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
// Usage: jrc_acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jrc/coordinator.hpp"
#include "jrc/generators.hpp"
#include "jrc/lpfeas.hpp"
#include "jrc/model.hpp"
#include "jrc/verify_oracle.hpp"
#include "support/toys.hpp"

namespace {

using namespace jrc;

constexpr double kExact = 1e-9;              // cost equality
constexpr double kNearRelative = 0.05;       // criterion 1, every instance
constexpr double kExactShare = 0.90;         // criterion 1, share within kExact
constexpr double kRunSeconds = 60.0;         // criterion 1, per run
constexpr int kRunIterations = 100000;
constexpr double kExampleOneTarget = 17.7;   // certified in the ledger; see README
constexpr int kBenchSeeds = 10;
constexpr int kBenchWinsNeeded = 8;
constexpr std::int64_t kBaselineSolves = 500;
constexpr int kCertificateIterations = 2000;
constexpr double kInitSlack = 0.50;          // criterion 8, mean iterations
constexpr double kFeasibleShare = 0.80;      // criterion 9
constexpr std::int64_t kSweepBudget = 200'000'000;
constexpr double kWindowTolerance = 1e-9;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool close(double a, double b, double tol = kExact) { return std::abs(a - b) <= tol; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Shared state so criteria 2 and 8 reuse the runs of 1 and 4.
struct TinyRun {
  std::uint64_t seed = 0;
  Instance instance;
  double optimum = 0.0;
  RunResult result;
};

std::vector<TinyRun>& tiny_runs() {
  static std::vector<TinyRun> runs;
  if (!runs.empty()) return runs;
  for (std::uint64_t seed = 1; runs.size() < 20; ++seed) {
    Instance inst = random_tiny(seed);
    const OracleResult best = brute_force_optimum(inst);
    if (best.status != OracleStatus::optimal) continue;
    Config c;
    c.max_iterations = kRunIterations;
    c.time_limit_s = kRunSeconds;
    TinyRun run{seed, inst, best.cost, jrc::run(inst, c)};
    runs.push_back(std::move(run));
  }
  return runs;
}

Verdict criterion1() {
  int exact = 0;
  int near = 0;
  std::string misses;
  for (const auto& r : tiny_runs()) {
    if (!r.result.feasible) {
      misses += " seed" + std::to_string(r.seed) + ":noFeasible";
      continue;
    }
    if (close(r.result.best_cost, r.optimum)) ++exact;
    if (r.result.best_cost <= r.optimum * (1.0 + kNearRelative) + kExact) {
      ++near;
    } else {
      misses += " seed" + std::to_string(r.seed) + ":" + fmt(r.result.best_cost) + "/" + fmt(r.optimum);
    }
  }
  const int n = static_cast<int>(tiny_runs().size());
  Verdict v;
  v.pass = n >= 20 && exact >= std::ceil(kExactShare * n) && near == n;
  v.detail = "exact " + std::to_string(exact) + "/" + std::to_string(n) + ", within 5% " + std::to_string(near) + "/" +
             std::to_string(n) + misses;
  return v;
}

Verdict criterion2() {
  int checked = 0;
  int violations = 0;
  std::string where;
  auto check = [&](const Instance& inst, const RunResult& r, std::optional<double> optimum, const std::string& label) {
    const DualBound q = dual_lower_bound(inst, r.multipliers);
    if (!q.exact) return;
    std::optional<double> upper;
    if (r.feasible) upper = r.best_cost;
    if (optimum) upper = upper ? std::min(*upper, *optimum) : *optimum;
    if (!upper) return;
    ++checked;
    if (q.value > *upper + kExact) {
      ++violations;
      where += " " + label + ":" + fmt(q.value) + ">" + fmt(*upper);
    }
  };
  for (const auto& r : tiny_runs()) check(r.instance, r.result, r.optimum, "seed" + std::to_string(r.seed));
  std::mt19937_64 rng(2718);
  for (int k = 0; k < 50; ++k) {
    RandomOptions ro;
    ro.trucks = 1 + k % 2;
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(k);
    const Instance inst = random_tiny(seed, ro);
    Config c;
    c.max_iterations = 50 + static_cast<int>(rng() % 400);
    c.init = k % 2 ? MultiplierInit::uniform : MultiplierInit::zeros;
    c.seed = seed;
    c.final_dual_bound = false;
    const RunResult r = run(inst, c);
    const OracleResult best = brute_force_optimum(inst);
    std::optional<double> optimum;
    if (best.status == OracleStatus::optimal) optimum = best.cost;
    check(inst, r, optimum, "fuzz" + std::to_string(seed));
  }
  Verdict v;
  v.pass = violations == 0 && checked >= 50;
  v.detail = "checked " + std::to_string(checked) + " runs, violations " + std::to_string(violations) + where;
  return v;
}

Verdict criterion3() {
  std::mt19937_64 rng(1234);
  int total = 0, disagreements = 0, feasible = 0;
  for (std::uint64_t seed = 1; total < 1000; ++seed) {
    const Instance inst = random_tiny(seed);
    const CanonicalModel model = build_model(inst);
    const OracleResult best = brute_force_optimum(inst);
    for (int k = 0; k < 25 && total < 1000; ++k, ++total) {
      std::vector<TruckSchedule> plan;
      if (best.status == OracleStatus::optimal && k % 3 == 0) {
        plan = best.schedules;
      } else {
        for (int v = 0; v < inst.truck_count(); ++v) plan.push_back(test::random_schedule(inst, v, rng, 1'000'000));
      }
      Assignment a = materialize(inst, plan);
      test::mutate(inst, a, rng, static_cast<int>(rng() % 4));
      const bool by_model = evaluate(model, a).feasible() && l1_norm(coupling_violations(inst, a)) == 0.0;
      const bool by_verifier = verify(inst, a).feasible;
      if (by_model != by_verifier) ++disagreements;
      if (by_verifier) ++feasible;
    }
  }
  Verdict v;
  v.pass = disagreements == 0;
  v.detail = std::to_string(total) + " assignments (" + std::to_string(feasible) + " feasible), disagreements " +
             std::to_string(disagreements);
  return v;
}

Instance benchmark_instance() {
  Example1Options o;
  o.travel = example1_default_travel();
  return example1(o);
}

struct BenchRuns {
  RunResult zero;
  RunResult certificate;
  std::vector<RunResult> slblr;
  std::vector<RunResult> baseline;
};

BenchRuns& bench_runs() {
  static BenchRuns runs;
  static bool done = false;
  if (done) return runs;
  done = true;
  const Instance inst = benchmark_instance();
  Config c;
  c.max_iterations = 1000;
  c.time_limit_s = 120.0;
  c.final_dual_bound = false;
  c.target_cost = kExampleOneTarget;
  runs.zero = run(inst, c);
  Config long_run = c;
  long_run.target_cost.reset();
  long_run.max_iterations = kCertificateIterations;
  long_run.time_limit_s = 600.0;
  long_run.final_dual_bound = true;
  runs.certificate = run(inst, long_run);
  for (int s = 1; s <= kBenchSeeds; ++s) {
    Config u = c;
    u.init = MultiplierInit::uniform;
    u.seed = static_cast<std::uint64_t>(s);
    runs.slblr.push_back(run(inst, u));
    // Past SLBLR's solve count the seed is decided; the baseline still runs
    // to kBaselineSolves so the report shows how far it gets.
    Config b = u;
    b.strategy = Strategy::baseline_lr;
    const auto needed = solves_to_reach(runs.slblr.back(), kExampleOneTarget, 1e-6);
    const std::int64_t cap = std::max<std::int64_t>(needed ? *needed : c.max_iterations, kBaselineSolves);
    b.max_iterations = static_cast<int>((cap + inst.truck_count() - 1) / inst.truck_count());
    runs.baseline.push_back(run(inst, b));
  }
  return runs;
}

Verdict criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = benchmark_instance();
  BenchRuns& runs = bench_runs();
  int wins = 0;
  std::string detail;
  for (int s = 0; s < kBenchSeeds; ++s) {
    const auto mine = solves_to_reach(runs.slblr[static_cast<std::size_t>(s)], kExampleOneTarget, 1e-6);
    const auto theirs = solves_to_reach(runs.baseline[static_cast<std::size_t>(s)], kExampleOneTarget, 1e-6);
    const bool win = mine && (!theirs || *mine < *theirs);
    if (win) ++wins;
    detail += " s" + std::to_string(s + 1) + ":" + (mine ? std::to_string(*mine) : "-") + "/" +
              (theirs ? std::to_string(*theirs) : ">" + std::to_string(runs.baseline[static_cast<std::size_t>(s)].solves));
  }
  // The target is attained by a verified plan and backed by the dual bound.
  const RunResult& z = runs.certificate;
  bool certified = false;
  if (z.feasible && close(z.best_cost, kExampleOneTarget, 1e-6) && z.dual_bound) {
    const bool verified = verify(inst, std::span<const TruckSchedule>(z.best)).feasible;
    // All costs are multiples of 0.1, so a bound above target - 0.1 proves optimality.
    certified = verified && *z.dual_bound > kExampleOneTarget - 0.1 + 1e-6;
    detail += " dual=" + fmt(*z.dual_bound);
  }
  Verdict v;
  v.pass = certified && wins >= kBenchWinsNeeded;
  v.detail = "wins " + std::to_string(wins) + "/" + std::to_string(kBenchSeeds) + " (SLBLR/baseline solves)" + detail +
             (certified ? " target certified" : " target NOT certified") + " in " + fmt(seconds_since(t0)) + "s";
  return v;
}

double oracle_cost(const Instance& inst, const OracleLimits& limits, OracleStatus* status) {
  const OracleResult r = brute_force_optimum(inst, limits);
  *status = r.status;
  if (r.status == OracleStatus::optimal) return r.cost;
  return std::numeric_limits<double>::infinity();
}

Verdict criterion5() {
  int cases = 0, violations = 0, undecided = 0;
  std::string detail;
  for (std::uint64_t seed = 1; cases < 10 && seed <= 40; ++seed) {
    RandomOptions ro;
    ro.max_nodes = 4;
    const Instance wide = with_detour(random_tiny(seed, ro), seed);
    const Instance narrow = shortest_path_subnetwork(wide);
    OracleStatus sw, sn;
    const double full = oracle_cost(wide, {}, &sw);
    const double restricted = oracle_cost(narrow, {}, &sn);
    if (sw == OracleStatus::budget_exceeded || sn == OracleStatus::budget_exceeded) {
      ++undecided;
      continue;
    }
    if (sw == OracleStatus::infeasible && sn == OracleStatus::infeasible) continue;
    ++cases;
    if (!(full <= restricted)) {
      ++violations;
      detail += " seed" + std::to_string(seed) + ":" + fmt(full) + ">" + fmt(restricted);
    }
  }
  const Instance contended = contended_detour_case();
  OracleStatus sw, sn;
  const double full = oracle_cost(contended, {}, &sw);
  const double restricted = oracle_cost(shortest_path_subnetwork(contended), {}, &sn);
  const bool strict = sw == OracleStatus::optimal && full < restricted;
  Verdict v;
  v.pass = cases >= 10 && violations == 0 && strict;
  v.detail = std::to_string(cases) + " detour cases, violations " + std::to_string(violations) + ", skipped " +
             std::to_string(undecided) + "; contended full " + fmt(full) + " vs restricted " + fmt(restricted) + detail;
  return v;
}

Verdict criterion6() {
  const Instance inst = contended_detour_case();
  OracleLimits limits;
  limits.node_budget = kSweepBudget;
  const std::vector<double> scales = {1.0, 1.1, 1.3, 1.5, 1.7};
  bool pass = true;
  std::string detail;
  for (SweepParameter p : {SweepParameter::battery_capacity, SweepParameter::charge_power}) {
    detail += std::string(" ") + to_string(p) + ":";
    double previous = std::numeric_limits<double>::infinity();
    for (double scale : scales) {
      const Instance scaled = apply_scale(inst, p, scale);
      const OracleResult r = brute_force_optimum(scaled, limits);
      if (r.status != OracleStatus::optimal) {
        pass = false;
        detail += std::string(" ") + to_string(r.status);
        continue;
      }
      if (!verify(scaled, std::span<const TruckSchedule>(r.schedules)).feasible) {
        pass = false;
        detail += " unverified";
      }
      if (r.cost > previous + kExact) pass = false;
      previous = r.cost;
      detail += " " + fmt(r.cost);
    }
  }
  return {pass, "costs" + detail};
}

// Grid plus vertex candidates: a nonempty polyhedron in one or two
// dimensions either has a vertex or contains a point on a row boundary.
bool grid_feasible(const LinearSystem& sys) {
  const int n = sys.dimension;
  auto ok = [&](double x, double y) {
    for (std::size_t i = 0; i < sys.rhs.size(); ++i) {
      const auto& a = sys.coefficients[i];
      const double lhs = a[0] * x + (n == 2 ? a[1] * y : 0.0);
      const double scale = std::max({1.0, std::abs(a[0]), n == 2 ? std::abs(a[1]) : 0.0});
      if (lhs > sys.rhs[i] + kWindowTolerance * scale * 10.0) return false;
    }
    return true;
  };
  for (double x = -20.0; x <= 20.0; x += 0.25) {
    if (n == 1) {
      if (ok(x, 0.0)) return true;
      continue;
    }
    for (double y = -20.0; y <= 20.0; y += 0.25) {
      if (ok(x, y)) return true;
    }
  }
  for (std::size_t i = 0; i < sys.rhs.size(); ++i) {
    const auto& a = sys.coefficients[i];
    const double norm = a[0] * a[0] + (n == 2 ? a[1] * a[1] : 0.0);
    if (norm == 0.0) continue;
    const double t = sys.rhs[i] / norm;
    if (ok(a[0] * t, n == 2 ? a[1] * t : 0.0)) return true;
    if (n == 1) continue;
    for (std::size_t j = i + 1; j < sys.rhs.size(); ++j) {
      const auto& b = sys.coefficients[j];
      const double det = a[0] * b[1] - a[1] * b[0];
      if (std::abs(det) < 1e-12) continue;
      const double x = (sys.rhs[i] * b[1] - a[1] * sys.rhs[j]) / det;
      const double y = (a[0] * sys.rhs[j] - sys.rhs[i] * b[0]) / det;
      if (ok(x, y)) return true;
    }
  }
  return false;
}

Verdict criterion7() {
  int arithmetic_failures = 0;
  auto expect = [&](bool c) {
    if (!c) ++arithmetic_failures;
  };
  expect(stepsize(0.5, 5, 30.0, 20.0, 4.0) == 0.25);
  expect(stepsize(0.5, 5, 20.0, 20.0, 4.0) == 0.0);
  expect(stepsize(0.5, 2, 10.0, 4.0, 9.0) == 0.5 / 2 * 6.0 / 9.0);
  expect(level_candidate(0.25, 5, 4.0, 20.0) == 25.0);
  expect(level_candidate(0.25, 5, 0.0, 20.0) == 20.0);
  {
    test::TwoNodeOptions o;
    o.horizon = 1;
    Instance inst = test::two_node(o);
    inst.network.chargers.pop_back();
    expect(update_multipliers(inst, std::vector<double>{0.0, 0.0, 1.0}, 0.25, std::vector<double>{2.0, -1.0, -8.0}) ==
           std::vector<double>{0.5, -0.25, 0.0});
  }
  {
    LevelTracker t;
    t.add_candidate(25.0);
    t.add_candidate(23.0);
    expect(t.candidate_max() == 25.0);
    t.push({0.0});
    t.push({2.0});
    t.push({-1.0});
    expect(t.maybe_update() && t.level() == 25.0);
    LevelTracker u;
    u.push({0.0});
    u.push({1.0});
    expect(!u.maybe_update());
    LevelTracker empty;
    expect(!empty.maybe_update());
  }
  {
    const auto row = linearize_window({{0.0}, {2.0}});
    expect(row.coefficients[0][0] == -4.0 && row.rhs[0] == -4.0);
    const auto row2 = linearize_window({{0.0, 0.0}, {1.0, 1.0}});
    expect(row2.coefficients[0] == std::vector<double>{-2.0, -2.0} && row2.rhs[0] == -2.0);
  }

  std::mt19937_64 rng(37);
  int disagreements = 0, feasible = 0;
  for (int k = 0; k < 200; ++k) {
    const int dim = 1 + k % 2;
    const int length = std::uniform_int_distribution<int>(2, 8)(rng);
    std::uniform_int_distribution<int> coord(-5, 5);
    std::vector<std::vector<double>> window;
    for (int i = 0; i < length; ++i) {
      std::vector<double> w(static_cast<std::size_t>(dim));
      for (auto& x : w) x = coord(rng);
      window.push_back(w);
    }
    const LinearSystem sys = linearize_window(window);
    const bool expected = grid_feasible(sys);
    const bool got = is_feasible(sys).feasible;
    if (expected != got) ++disagreements;
    if (got) ++feasible;
  }
  Verdict v;
  v.pass = arithmetic_failures == 0 && disagreements == 0;
  v.detail = "arithmetic failures " + std::to_string(arithmetic_failures) + ", 200 windows (" + std::to_string(feasible) +
             " feasible), disagreements " + std::to_string(disagreements);
  return v;
}

Verdict criterion8() {
  BenchRuns& runs = bench_runs();
  const auto zero = iterations_to_reach(runs.zero, kExampleOneTarget, 1e-6);
  int reached = 0;
  double sum = 0.0;
  std::string detail;
  for (const auto& r : runs.slblr) {
    const auto it = iterations_to_reach(r, kExampleOneTarget, 1e-6);
    detail += " " + (it ? std::to_string(*it) : std::string("-"));
    if (!it) continue;
    ++reached;
    sum += *it;
  }
  const double mean = reached ? sum / reached : std::numeric_limits<double>::infinity();
  Verdict v;
  v.pass = zero && reached == kBenchSeeds && mean <= (1.0 + kInitSlack) * *zero;
  v.detail = "zero-init " + (zero ? std::to_string(*zero) : std::string("-")) + " iterations, uniform mean " + fmt(mean) +
             " (" + std::to_string(reached) + "/" + std::to_string(kBenchSeeds) + " reached):" + detail;
  return v;
}

Verdict criterion9() {
  int runs = 0, reached = 0, recorded = 0, unverified = 0;
  for (std::uint64_t seed = 500; runs < 20; ++seed) {
    RandomOptions ro;
    ro.trucks = 2;
    const Instance inst = random_tiny(seed, ro);
    if (brute_force_optimum(inst).status != OracleStatus::optimal) continue;
    ++runs;
    Config c;
    c.max_iterations = 2000;
    c.time_limit_s = 60.0;
    c.init = MultiplierInit::uniform;
    c.seed = seed;
    c.final_dual_bound = false;
    const RunResult r = run(inst, c);
    const bool hit = std::any_of(r.trace.begin(), r.trace.end(), [](const TraceRow& row) { return row.h_l1 == 0.0; });
    if (hit) ++reached;
    if (r.feasible) {
      ++recorded;
      if (!verify(inst, std::span<const TruckSchedule>(r.best)).feasible) ++unverified;
    }
  }
  Verdict v;
  v.pass = reached >= std::ceil(kFeasibleShare * runs) && unverified == 0;
  v.detail = "H reached 0 in " + std::to_string(reached) + "/" + std::to_string(runs) + " runs; recorded " +
             std::to_string(recorded) + ", failing verify " + std::to_string(unverified);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  Verdict (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                             criterion6, criterion7, criterion8, criterion9};
  bool all = true;
  for (int n = 1; n <= 9; ++n) {
    if (!selected.empty() && !selected.count(n)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[n - 1]();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.pass;
    std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << " " << v.detail << " [" << fmt(seconds_since(t0))
              << "s]" << std::endl;
  }
  return all ? 0 : 1;
}
