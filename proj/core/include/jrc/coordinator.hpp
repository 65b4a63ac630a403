#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jrc/instance.hpp"
#include "jrc/schedule.hpp"
#include "jrc/subproblem.hpp"

namespace jrc {

enum class Strategy { slblr, baseline_lr };
enum class MultiplierInit { zeros, uniform };

struct Config {
  double zeta = 0.5;
  double rho0 = 5.0;
  double beta = 1.05;
  MultiplierInit init = MultiplierInit::zeros;
  double init_range = 50.0;  // uniform on [-range, range]
  std::uint64_t seed = 1;
  int window = 30;                // divergence-detection window length
  double bootstrap_delta = 0.1;   // initial level L_1 + delta * |L_1|
  // The level is refreshed once q_bar - L falls to this fraction of its value
  // when q_bar was set. The first refresh uses the bootstrap gap; each
  // consecutive refresh multiplies the previous gap by level_growth.
  double level_stall_tolerance = 0.2;
  double level_growth = 2.0;
  int max_iterations = 2000;
  double time_limit_s = 60.0;
  double gap_target = 0.0;        // relative; 0 disables the dual-bound stop
  int dual_every = 0;             // evaluate the dual bound every n iterations (0: only at the end)
  std::optional<double> target_cost;  // stop once the incumbent is within 1e-9 of it
  bool final_dual_bound = true;
  // After this many consecutive feasible iterations without a change
  // (default V) the dual bound is evaluated and the run stops when it meets
  // the incumbent; 0 disables the check.
  int stationary_iterations = -1;
  Strategy strategy = Strategy::slblr;
  // Subgradient-level parameters of the baseline (classical LR at rho = 0).
  double level_delta0 = 0.1;      // initial level gap, relative to max(|L_1|, 1)
  double path_bound = 100.0;      // path length that triggers a level-gap reduction
  double level_reduction = 0.5;
  double level_gamma = 1.0;
  int threads = 1;                // baseline and dual-bound fan-out
  SearchOptions search;
};

Config config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Config& config);

// Multiplier vector in CouplingLayout order: port-destined demands,
// depot-destined demands, then one capacity multiplier per (charger, period).
std::vector<double> initial_multipliers(const Instance& instance, const Config& config);

// alpha = zeta / V * (q_bar - L) / |H|^2.
double stepsize(double zeta, int trucks, double level, double lagrangian, double h_squared);
// Lambda + alpha H with the capacity block projected onto lambda >= 0.
std::vector<double> update_multipliers(const Instance& instance, std::span<const double> lambda, double alpha,
                                       std::span<const double> h);
void project_capacity(const Instance& instance, std::vector<double>& lambda);
// q_hat = alpha V |H|^2 + L.
double level_candidate(double alpha, int trucks, double h_squared, double lagrangian);

// Level value bookkeeping: running maximum of candidates and the window of
// multipliers since the last level update.
class LevelTracker {
 public:
  explicit LevelTracker(int window = 30) : window_(window) {}

  bool has_level() const { return has_level_; }
  double level() const { return level_; }
  double candidate_max() const { return q_max_; }
  int updates() const { return updates_; }
  const std::vector<std::vector<double>>& history() const { return history_; }

  void set_level(double level) {
    level_ = level;
    has_level_ = true;
  }
  void add_candidate(double q_hat) { q_max_ = std::max(q_max_, q_hat); }
  void push(std::vector<double> lambda);
  // Tests the window for divergence; when the system is infeasible the
  // level becomes the candidate maximum, the maximum resets and the window
  // restarts from the latest multipliers. Returns true on update.
  bool maybe_update();

 private:
  int window_;
  bool has_level_ = false;
  double level_ = std::numeric_limits<double>::infinity();
  double q_max_ = -std::numeric_limits<double>::infinity();
  int updates_ = 0;
  std::vector<std::vector<double>> history_;
};

struct TraceRow {
  int k = 0;
  int v = 0;  // truck solved (-1 for a full pass)
  double lagrangian = 0.0;
  double h_l1 = 0.0;
  double h_l2sq = 0.0;
  double alpha = 0.0;
  double q_max = 0.0;
  double q_bar = 0.0;
  double rho = 0.0;
  double best_feasible = std::numeric_limits<double>::infinity();
  std::string event = "none";
  // Not part of the CSV.
  std::int64_t solves = 0;  // cumulative subproblem solves
  bool divergence_update = false;
};

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

struct RunResult {
  bool feasible = false;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<TruckSchedule> best;
  std::vector<double> multipliers;
  std::vector<TraceRow> trace;
  int iterations = 0;
  std::int64_t solves = 0;
  std::int64_t solves_at_best = 0;
  int iteration_at_best = 0;
  std::optional<double> dual_bound;
  double elapsed_s = 0.0;
  std::string stop_reason;
};

RunResult run(const Instance& instance, const Config& config);
// Cumulative subproblem solves at the first trace row whose best feasible
// cost is within `tolerance` of `target`.
std::optional<std::int64_t> solves_to_reach(const RunResult& result, double target, double tolerance = 1e-9);
std::optional<int> iterations_to_reach(const RunResult& result, double target, double tolerance = 1e-9);
RunResult run_slblr(const Instance& instance, const Config& config);
RunResult run_baseline_lr(const Instance& instance, const Config& config);

struct DualBound {
  double value = -std::numeric_limits<double>::infinity();
  bool exact = true;  // false when a subproblem hit its label budget
  std::vector<TruckSchedule> schedules;  // the decoupled minimizers
};

// Subgradient of q at the decoupled minimizers: demand components as in H,
// capacity components load - C with their sign.
std::vector<double> dual_subgradient(const Instance& instance, std::span<const TruckSchedule> schedules);

// q(Lambda): with rho = 0 every truck is solved to optimality against
// linear prices; the constants -lambda.D and -lambda.C are included.
// Negative capacity multipliers are clipped to zero first.
DualBound dual_lower_bound(const Instance& instance, std::span<const double> multipliers, const SearchOptions& search = {},
                           int threads = 1);

}  // namespace jrc
