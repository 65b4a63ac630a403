#include "jrc/coordinator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>
#include <thread>

#include "jrc/lpfeas.hpp"
#include "jrc/model.hpp"

namespace jrc {

using nlohmann::json;

Config config_from_json(const json& j) {
  Config c;
  c.zeta = j.value("zeta", c.zeta);
  c.rho0 = j.value("rho0", c.rho0);
  c.beta = j.value("beta", c.beta);
  const std::string init = j.value("init", std::string("zeros"));
  if (init == "zeros") {
    c.init = MultiplierInit::zeros;
  } else if (init == "uniform") {
    c.init = MultiplierInit::uniform;
  } else {
    throw InstanceError("unknown multiplier init '" + init + "'");
  }
  c.init_range = j.value("init_range", c.init_range);
  c.seed = j.value("seed", c.seed);
  c.window = j.value("window", c.window);
  c.bootstrap_delta = j.value("bootstrap_delta", c.bootstrap_delta);
  if (j.contains("target_cost") && !j.at("target_cost").is_null()) c.target_cost = j.at("target_cost").get<double>();
  c.level_stall_tolerance = j.value("level_stall_tolerance", c.level_stall_tolerance);
  c.level_growth = j.value("level_growth", c.level_growth);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.time_limit_s = j.value("time_limit_s", c.time_limit_s);
  c.gap_target = j.value("gap_target", c.gap_target);
  c.dual_every = j.value("dual_every", c.dual_every);
  c.final_dual_bound = j.value("final_dual_bound", c.final_dual_bound);
  c.stationary_iterations = j.value("stationary_iterations", c.stationary_iterations);
  const std::string strategy = j.value("strategy", std::string("slblr"));
  if (strategy == "slblr") {
    c.strategy = Strategy::slblr;
  } else if (strategy == "lr") {
    c.strategy = Strategy::baseline_lr;
  } else {
    throw InstanceError("unknown strategy '" + strategy + "'");
  }
  c.level_delta0 = j.value("level_delta0", c.level_delta0);
  c.path_bound = j.value("path_bound", c.path_bound);
  c.level_reduction = j.value("level_reduction", c.level_reduction);
  c.level_gamma = j.value("level_gamma", c.level_gamma);
  c.threads = j.value("threads", c.threads);
  c.search.dominance = j.value("dominance", c.search.dominance);
  c.search.label_budget = j.value("label_budget", c.search.label_budget);
  if (!(c.zeta > 0.0 && c.zeta < 1.0)) throw InstanceError("zeta must lie in (0, 1)");
  if (!(c.beta > 1.0)) throw InstanceError("beta must exceed 1");
  if (!(c.rho0 > 0.0)) throw InstanceError("rho0 must be positive");
  return c;
}

json to_json(const Config& c) {
  return {{"zeta", c.zeta},
          {"rho0", c.rho0},
          {"beta", c.beta},
          {"init", c.init == MultiplierInit::zeros ? "zeros" : "uniform"},
          {"init_range", c.init_range},
          {"seed", c.seed},
          {"window", c.window},
          {"bootstrap_delta", c.bootstrap_delta},
          {"level_stall_tolerance", c.level_stall_tolerance},
          {"level_growth", c.level_growth},
          {"max_iterations", c.max_iterations},
          {"time_limit_s", c.time_limit_s},
          {"gap_target", c.gap_target},
          {"dual_every", c.dual_every},
          {"target_cost", c.target_cost ? nlohmann::json(*c.target_cost) : nlohmann::json(nullptr)},
          {"final_dual_bound", c.final_dual_bound},
          {"stationary_iterations", c.stationary_iterations},
          {"strategy", c.strategy == Strategy::slblr ? "slblr" : "lr"},
          {"level_delta0", c.level_delta0},
          {"path_bound", c.path_bound},
          {"level_reduction", c.level_reduction},
          {"level_gamma", c.level_gamma},
          {"threads", c.threads},
          {"dominance", c.search.dominance},
          {"label_budget", c.search.label_budget}};
}

std::vector<double> initial_multipliers(const Instance& inst, const Config& config) {
  const CouplingLayout layout(inst);
  std::vector<double> lambda(static_cast<std::size_t>(layout.size()), 0.0);
  if (config.init == MultiplierInit::uniform) {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> dist(-config.init_range, config.init_range);
    for (auto& x : lambda) x = dist(rng);
    project_capacity(inst, lambda);
  }
  return lambda;
}

double stepsize(double zeta, int trucks, double level, double lagrangian, double h_squared) {
  return zeta / trucks * (level - lagrangian) / h_squared;
}

void project_capacity(const Instance& inst, std::vector<double>& lambda) {
  const CouplingLayout layout(inst);
  for (int i = layout.demand_components; i < layout.size(); ++i) {
    auto& x = lambda[static_cast<std::size_t>(i)];
    x = std::max(0.0, x);
  }
}

std::vector<double> update_multipliers(const Instance& inst, std::span<const double> lambda, double alpha,
                                       std::span<const double> h) {
  if (lambda.size() != h.size()) throw InstanceError("multiplier dimension mismatch");
  std::vector<double> out(lambda.begin(), lambda.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += alpha * h[i];
  project_capacity(inst, out);
  return out;
}

double level_candidate(double alpha, int trucks, double h_squared, double lagrangian) {
  return alpha * trucks * h_squared + lagrangian;
}

void LevelTracker::push(std::vector<double> lambda) {
  history_.push_back(std::move(lambda));
  if (window_ > 0 && static_cast<int>(history_.size()) > window_) history_.erase(history_.begin());
}

bool LevelTracker::maybe_update() {
  if (history_.size() < 2) return false;
  if (is_feasible(linearize_window(history_)).feasible) return false;
  level_ = q_max_;
  has_level_ = true;
  q_max_ = -std::numeric_limits<double>::infinity();
  auto last = std::move(history_.back());
  history_.clear();
  history_.push_back(std::move(last));
  ++updates_;
  return true;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "k,v,L_rho,H_l1,H_l2sq,alpha,q_max,q_bar,rho,best_feasible,event\n";
  auto num = [&](double x) {
    if (std::isinf(x)) {
      out << (x > 0 ? "inf" : "-inf");
    } else {
      out << x;
    }
  };
  const auto old_precision = out.precision(17);
  for (const auto& r : trace) {
    out << r.k << ',' << r.v << ',';
    num(r.lagrangian);
    out << ',';
    num(r.h_l1);
    out << ',';
    num(r.h_l2sq);
    out << ',';
    num(r.alpha);
    out << ',';
    num(r.q_max);
    out << ',';
    num(r.q_bar);
    out << ',';
    num(r.rho);
    out << ',';
    num(r.best_feasible);
    out << ',' << r.event << '\n';
  }
  out.precision(old_precision);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool all_zero(const std::vector<double>& h) {
  return std::all_of(h.begin(), h.end(), [](double x) { return x == 0.0; });
}

template <typename F>
void fan_out(int count, int threads, F&& job) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  const int workers = std::min(threads, count);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) job(i);
    });
  }
  for (auto& t : pool) t.join();
}

class Recorder {
 public:
  Recorder(const Instance& inst, RunResult& result) : inst_(inst), result_(result) {}

  // Records the iterate when it satisfies every coupling constraint.
  bool offer(const std::vector<TruckSchedule>& schedules, int iteration) {
    const double cost = objective(inst_, std::span<const TruckSchedule>(schedules)).total();
    if (!result_.feasible || cost < result_.best_cost) {
      result_.feasible = true;
      result_.best_cost = cost;
      result_.best = schedules;
      result_.solves_at_best = result_.solves;
      result_.iteration_at_best = iteration;
    }
    return true;
  }

 private:
  const Instance& inst_;
  RunResult& result_;
};

void finish_run(const Instance& inst, const Config& config, RunResult& result, Clock::time_point start) {
  if (config.final_dual_bound) {
    const DualBound q = dual_lower_bound(inst, result.multipliers, config.search, config.threads);
    if (q.exact && (!result.dual_bound || q.value > *result.dual_bound)) result.dual_bound = q.value;
  }
  result.elapsed_s = seconds_since(start);
}

// A stationary iterate is only a local equilibrium; stop there once the
// dual bound meets the incumbent.
bool gap_closed(const Instance& inst, const Config& config, RunResult& result) {
  if (!result.feasible) return false;
  const DualBound q = dual_lower_bound(inst, result.multipliers, config.search, config.threads);
  if (!q.exact) return false;
  if (!result.dual_bound || q.value > *result.dual_bound) result.dual_bound = q.value;
  return result.best_cost - q.value <= 1e-9 * std::max(1.0, std::abs(result.best_cost));
}

bool target_reached(const Config& config, const RunResult& result) {
  return config.target_cost && result.feasible && result.best_cost <= *config.target_cost + 1e-9;
}

bool gap_reached(const Instance& inst, const Config& config, RunResult& result, int k) {
  if (config.gap_target <= 0.0 || config.dual_every <= 0 || k % config.dual_every != 0 || !result.feasible) return false;
  const DualBound q = dual_lower_bound(inst, result.multipliers, config.search, config.threads);
  if (!q.exact) return false;
  if (!result.dual_bound || q.value > *result.dual_bound) result.dual_bound = q.value;
  const double gap = (result.best_cost - *result.dual_bound) / std::max(1e-12, std::abs(result.best_cost));
  return gap <= config.gap_target;
}

}  // namespace

RunResult run_slblr(const Instance& inst, const Config& config) {
  const auto start = Clock::now();
  RunResult result;
  Recorder recorder(inst, result);
  const int V = inst.truck_count();
  std::vector<TruckSchedule> schedules(static_cast<std::size_t>(V));
  result.multipliers = initial_multipliers(inst, config);
  double rho = config.rho0;
  LevelTracker level(config.window);
  level.push(result.multipliers);
  const int stationary_needed = config.stationary_iterations < 0 ? V : config.stationary_iterations;
  int stationary = 0;
  double level_gap = 0.0;    // q_bar - L when q_bar was last set
  double refresh_gap = 0.0;
  bool refreshed = false;    // last level came from a refresh

  if (V == 0) {
    recorder.offer(schedules, 0);
    result.stop_reason = "no trucks";
    finish_run(inst, config, result, start);
    return result;
  }

  for (int k = 1;; ++k) {
    if (k > config.max_iterations) {
      result.stop_reason = "iteration limit";
      break;
    }
    if (seconds_since(start) > config.time_limit_s) {
      result.stop_reason = "time limit";
      break;
    }
    const int v = (k - 1) % V;
    const FixedContext ctx = make_context(inst, schedules, v);
    const Pricing pricing = exact_pricing(inst, result.multipliers, rho, ctx);
    const double incumbent = schedule_value(inst, v, schedules[static_cast<std::size_t>(v)], pricing);
    const SubproblemResult sub = solve_surrogate(inst, v, pricing, incumbent, config.search);
    ++result.solves;
    if (sub.value < incumbent - kImprovementTolerance) schedules[static_cast<std::size_t>(v)] = sub.schedule;

    const auto h = coupling_violations(inst, std::span<const TruckSchedule>(schedules));
    const double L = lagrangian_value(inst, schedules, result.multipliers, rho);
    TraceRow row;
    row.k = k;
    row.v = v;
    row.lagrangian = L;
    row.h_l1 = l1_norm(h);
    row.h_l2sq = squared_norm(h);

    if (all_zero(h)) {
      recorder.offer(schedules, k);
      rho /= config.beta;
      row.event = "feasible";
      stationary = sub.flag == SubproblemFlag::exact_optimal ? stationary + 1 : 0;
    } else {
      stationary = 0;
      if (!level.has_level() || level.level() - L <= config.level_stall_tolerance * level_gap) {
        refresh_gap = refreshed ? refresh_gap * config.level_growth
                                : config.bootstrap_delta * std::max(std::abs(L), 1.0);
        refreshed = true;
        level_gap = refresh_gap;
        level.set_level(L + refresh_gap);
        row.event = "level_update";
      }
      row.alpha = stepsize(config.zeta, V, level.level(), L, row.h_l2sq);
      result.multipliers = update_multipliers(inst, result.multipliers, row.alpha, h);
      level.add_candidate(level_candidate(row.alpha, V, row.h_l2sq, L));
      level.push(result.multipliers);
      const double used_level = level.level();
      if (level.maybe_update()) {
        row.event = "level_update";
        row.divergence_update = true;
        refreshed = false;
        level_gap = level.level() - L;
      }
      row.q_bar = used_level;
    }
    if (row.event == "feasible") row.q_bar = level.has_level() ? level.level() : std::numeric_limits<double>::infinity();
    row.q_max = level.candidate_max();
    row.rho = rho;
    row.best_feasible = result.best_cost;
    row.solves = result.solves;
    result.trace.push_back(row);
    result.iterations = k;

    if (stationary_needed > 0 && stationary >= stationary_needed) {
      stationary = 0;
      if (gap_closed(inst, config, result)) {
        result.stop_reason = "optimal";
        break;
      }
    }
    if (target_reached(config, result)) {
      result.stop_reason = "target";
      break;
    }
    if (gap_reached(inst, config, result, k)) {
      result.stop_reason = "gap";
      break;
    }
  }
  finish_run(inst, config, result, start);
  return result;
}

RunResult run_baseline_lr(const Instance& inst, const Config& config) {
  const auto start = Clock::now();
  RunResult result;
  Recorder recorder(inst, result);
  const int V = inst.truck_count();
  result.multipliers = initial_multipliers(inst, config);
  double record = -std::numeric_limits<double>::infinity();
  double delta = 0.0;
  double path = 0.0;

  for (int k = 1;; ++k) {
    if (k > config.max_iterations) {
      result.stop_reason = "iteration limit";
      break;
    }
    if (seconds_since(start) > config.time_limit_s) {
      result.stop_reason = "time limit";
      break;
    }
    // Decoupled exact pass at the current multipliers.
    const DualBound q = dual_lower_bound(inst, result.multipliers, config.search, config.threads);
    result.solves += V;
    const auto h = coupling_violations(inst, std::span<const TruckSchedule>(q.schedules));
    const auto g = dual_subgradient(inst, q.schedules);
    TraceRow row;
    row.k = k;
    row.v = -1;
    row.lagrangian = q.value;
    row.h_l1 = l1_norm(h);
    row.h_l2sq = squared_norm(h);
    if (q.exact && (!result.dual_bound || q.value > *result.dual_bound)) result.dual_bound = q.value;
    if (k == 1) delta = config.level_delta0 * std::max(std::abs(q.value), 1.0);
    if (all_zero(h)) {
      recorder.offer(q.schedules, k);
      row.event = "feasible";
    }
    const double g_squared = squared_norm(g);
    if (g_squared > 0.0) {
      // Subgradient-level: aim at the record plus a gap that shrinks when
      // the iterates travel too far without sufficient ascent.
      if (q.value >= record + delta / 2.0) {
        path = 0.0;
        if (row.event == "none") row.event = "level_update";
      } else if (path > config.path_bound) {
        delta *= config.level_reduction;
        path = 0.0;
        if (row.event == "none") row.event = "level_update";
      }
      record = std::max(record, q.value);
      const double target = record + delta;
      row.alpha = config.level_gamma * (target - q.value) / g_squared;
      path += row.alpha * std::sqrt(g_squared);
      result.multipliers = update_multipliers(inst, result.multipliers, row.alpha, g);
      row.q_bar = target;
    } else {
      record = std::max(record, q.value);
      row.q_bar = record;
    }
    row.q_max = record;
    row.best_feasible = result.best_cost;
    row.solves = result.solves;
    result.trace.push_back(row);
    result.iterations = k;

    if (result.feasible && result.dual_bound &&
        result.best_cost - *result.dual_bound <= 1e-9 * std::max(1.0, std::abs(result.best_cost))) {
      result.stop_reason = "optimal";
      break;
    }
    if (target_reached(config, result)) {
      result.stop_reason = "target";
      break;
    }
    if (g_squared == 0.0) {
      result.stop_reason = "zero subgradient";
      break;
    }
    if (config.gap_target > 0.0 && result.feasible && result.dual_bound &&
        (result.best_cost - *result.dual_bound) / std::max(1e-12, std::abs(result.best_cost)) <= config.gap_target) {
      result.stop_reason = "gap";
      break;
    }
  }
  finish_run(inst, config, result, start);
  return result;
}

std::vector<double> dual_subgradient(const Instance& inst, std::span<const TruckSchedule> schedules) {
  const CouplingLayout layout(inst);
  auto g = coupling_violations(inst, schedules);
  const FixedContext all = make_context(inst, schedules, -1);
  const int P = inst.horizon;
  for (int ci = 0; ci < inst.charger_count(); ++ci) {
    const int cap = inst.network.chargers[static_cast<std::size_t>(ci)].chargers;
    for (Period p = 1; p <= P; ++p) {
      g[static_cast<std::size_t>(layout.capacity_component(ci, p))] =
          all.occupancy[static_cast<std::size_t>(ci * P + p - 1)] - cap;
    }
  }
  return g;
}

RunResult run(const Instance& inst, const Config& config) {
  return config.strategy == Strategy::slblr ? run_slblr(inst, config) : run_baseline_lr(inst, config);
}

std::optional<std::int64_t> solves_to_reach(const RunResult& result, double target, double tolerance) {
  for (const auto& row : result.trace) {
    if (row.best_feasible <= target + tolerance) return row.solves;
  }
  return std::nullopt;
}

std::optional<int> iterations_to_reach(const RunResult& result, double target, double tolerance) {
  for (const auto& row : result.trace) {
    if (row.best_feasible <= target + tolerance) return row.k;
  }
  return std::nullopt;
}

DualBound dual_lower_bound(const Instance& inst, std::span<const double> multipliers, const SearchOptions& search,
                           int threads) {
  const CouplingLayout layout(inst);
  if (static_cast<int>(multipliers.size()) != layout.size()) throw InstanceError("multiplier dimension mismatch");
  std::vector<double> lambda(multipliers.begin(), multipliers.end());
  project_capacity(inst, lambda);
  const int V = inst.truck_count();
  std::vector<double> values(static_cast<std::size_t>(V), 0.0);
  std::vector<char> exact(static_cast<std::size_t>(V), 1);
  DualBound out;
  out.schedules.resize(static_cast<std::size_t>(V));
  fan_out(V, threads, [&](int v) {
    const Pricing pricing = dual_pricing(inst, v, lambda);
    SubproblemResult sub = solve_exact(inst, v, pricing, search);
    values[static_cast<std::size_t>(v)] = sub.value;
    out.schedules[static_cast<std::size_t>(v)] = std::move(sub.schedule);
    exact[static_cast<std::size_t>(v)] = sub.flag == SubproblemFlag::budget_exceeded ? 0 : 1;
  });
  out.value = 0.0;
  for (int v = 0; v < V; ++v) {
    out.value += values[static_cast<std::size_t>(v)];
    out.exact = out.exact && exact[static_cast<std::size_t>(v)] != 0;
  }
  for (int c = 0; c < layout.demand_components; ++c) {
    const int d = layout.demand_order[static_cast<std::size_t>(c)];
    out.value -= lambda[static_cast<std::size_t>(c)] * inst.demands[static_cast<std::size_t>(d)].quantity;
  }
  for (int ci = 0; ci < inst.charger_count(); ++ci) {
    const int cap = inst.network.chargers[static_cast<std::size_t>(ci)].chargers;
    for (Period p = 1; p <= inst.horizon; ++p) {
      out.value -= lambda[static_cast<std::size_t>(layout.capacity_component(ci, p))] * cap;
    }
  }
  // Tardiness is split evenly across eligible trucks; a product nobody can
  // carry still incurs nothing here, which keeps the bound valid.
  return out;
}

}  // namespace jrc
