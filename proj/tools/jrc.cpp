#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jrc/coordinator.hpp"
#include "jrc/generators.hpp"
#include "jrc/instance.hpp"
#include "jrc/model.hpp"
#include "jrc/solution_io.hpp"
#include "jrc/verify_oracle.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { ok = 0, usage = 1, invalid = 2, no_feasible = 3, budget = 4 };

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw jrc::InstanceError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw jrc::InstanceError(path + ": " + e.what());
  }
}

// Loads and validates; prints the report and returns nullopt on failure.
std::optional<jrc::Instance> load_valid(const std::string& path) {
  jrc::Instance inst = jrc::load_instance(path);
  const auto report = jrc::validate(inst);
  if (!report.ok()) {
    std::cerr << report.summary();
    return std::nullopt;
  }
  return inst;
}

struct SolveFlags {
  std::string config;
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::string strategy;
  double time_limit = -1.0;
  int iter_limit = -1;
  std::string init;
};

jrc::Config make_config(const SolveFlags& f) {
  jrc::Config c = f.config.empty() ? jrc::Config{} : jrc::config_from_json(read_json(f.config));
  if (f.seed_set) c.seed = f.seed;
  if (f.strategy == "slblr") c.strategy = jrc::Strategy::slblr;
  if (f.strategy == "lr") c.strategy = jrc::Strategy::baseline_lr;
  if (f.time_limit >= 0.0) c.time_limit_s = f.time_limit;
  if (f.iter_limit >= 0) c.max_iterations = f.iter_limit;
  if (f.init == "zeros") c.init = jrc::MultiplierInit::zeros;
  if (f.init == "uniform") c.init = jrc::MultiplierInit::uniform;
  return c;
}

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--config", f.config, "solver config JSON");
  cmd->add_option_function<std::uint64_t>("--seed", [&f](std::uint64_t s) {
    f.seed = s;
    f.seed_set = true;
  }, "seed for random multiplier initialization");
  cmd->add_option("--strategy", f.strategy, "slblr or lr")->check(CLI::IsMember({"slblr", "lr"}));
  cmd->add_option("--time-limit-s", f.time_limit, "wall-clock cap per run");
  cmd->add_option("--iter-limit", f.iter_limit, "iteration cap per run");
  cmd->add_option("--init", f.init, "zeros or uniform")->check(CLI::IsMember({"zeros", "uniform"}));
}

int trucks_used(const std::vector<jrc::TruckSchedule>& schedules) {
  int used = 0;
  for (const auto& s : schedules) used += s.idle() ? 0 : 1;
  return used;
}

std::vector<double> parse_scales(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0.0) || (i > 0 && !(out[i] > out[i - 1]))) {
      throw jrc::InstanceError("scale factors must be positive and strictly increasing");
    }
  }
  return out;
}

void emit_instance(const jrc::Instance& inst, const std::string& out) {
  if (out.empty()) {
    std::cout << jrc::canonical_dump(inst);
  } else {
    jrc::save_instance(inst, out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint routing and charging scheduler"};
  app.require_subcommand(1);
  std::string instance_path;
  std::string out_dir = ".";
  std::string out_file;
  SolveFlags flags;
  int code = Exit::ok;

  auto* validate = app.add_subcommand("validate", "check an instance");
  validate->add_option("--instance", instance_path)->required();
  std::string mps_path;
  validate->add_option("--mps", mps_path, "write the linearized model in MPS format");

  auto* solve = app.add_subcommand("solve", "run SLBLR or the baseline");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--out-dir", out_dir);
  add_solve_flags(solve, flags);

  auto* verify = app.add_subcommand("verify", "verify a solution file");
  verify->add_option("--instance", instance_path)->required();
  std::string solution_path;
  verify->add_option("--solution", solution_path)->required();

  auto* oracle = app.add_subcommand("oracle", "exact optimum of a tiny instance");
  oracle->add_option("--instance", instance_path)->required();
  jrc::OracleLimits limits;
  oracle->add_option("--node-budget", limits.node_budget);
  oracle->add_option("--max-periods", limits.max_periods);
  oracle->add_option("--out", out_file, "write the optimal solution");

  auto* bench = app.add_subcommand("bench", "SLBLR against the baseline over seeds");
  bench->add_option("--instance", instance_path)->required();
  bench->add_option("--out-dir", out_dir);
  int seeds = 10;
  bench->add_option("--seeds", seeds);
  double target = std::numeric_limits<double>::quiet_NaN();
  bench->add_option("--target", target, "target feasible cost (default: oracle optimum or best found)");
  add_solve_flags(bench, flags);

  auto* sweep = app.add_subcommand("sweep", "resource sweep");
  sweep->add_option("--instance", instance_path)->required();
  sweep->add_option("--out-dir", out_dir);
  std::string parameter;
  sweep->add_option("--parameter", parameter, "batteryCapacityScale, chargePowerScale or chargersPerNode")->required();
  std::string scales_text = "1.0,1.1,1.3,1.5,1.7";
  sweep->add_option("--scales", scales_text);
  std::string backend = "slblr";
  sweep->add_option("--backend", backend)->check(CLI::IsMember({"slblr", "oracle"}));
  sweep->add_option("--node-budget", limits.node_budget, "oracle backend node budget");
  add_solve_flags(sweep, flags);

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->require_subcommand(1);
  auto* gen1 = gen->add_subcommand("example1", "five-node example");
  std::string travel_path, params_path;
  gen1->add_option("--travel", travel_path, "travel-time table JSON");
  gen1->add_option("--params", params_path, "parameter overrides JSON");
  gen1->add_option("--out", out_file);
  auto* gen3 = gen->add_subcommand("example3", "multi-depot example from a topology file");
  std::string topology_path, scenario_path;
  gen3->add_option("--topology", topology_path)->required();
  gen3->add_option("--scenario", scenario_path, "scenario JSON (period_minutes required)")->required();
  gen3->add_option("--out", out_file);
  auto* genr = gen->add_subcommand("random", "random tiny instance");
  std::uint64_t gen_seed = 1;
  jrc::RandomOptions random_options;
  genr->add_option("--seed", gen_seed);
  genr->add_option("--trucks", random_options.trucks);
  genr->add_option("--max-nodes", random_options.max_nodes);
  genr->add_option("--out", out_file);
  auto* gend = gen->add_subcommand("detour", "random tiny instance plus a detour node");
  gend->add_option("--seed", gen_seed);
  gend->add_option("--out", out_file);
  std::string restricted_out;
  gend->add_option("--restricted-out", restricted_out, "also write the shortest-path subnetwork");
  auto* genc = gen->add_subcommand("contended", "detour case with a contended charger");
  genc->add_option("--out", out_file);
  genc->add_option("--restricted-out", restricted_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*validate) {
      jrc::Instance inst = jrc::load_instance(instance_path);
      const auto report = jrc::validate(inst);
      if (!report.ok()) {
        std::cerr << report.summary();
        return Exit::invalid;
      }
      std::cout << "ok: " << inst.truck_count() << " trucks, " << inst.node_count() << " nodes, P=" << inst.horizon
                << ", T=" << inst.max_trips << '\n';
      if (!mps_path.empty()) {
        std::ofstream out(mps_path);
        jrc::write_mps(jrc::build_model(inst), out);
      }
    } else if (*solve) {
      auto inst = load_valid(instance_path);
      if (!inst) return Exit::invalid;
      const auto config = make_config(flags);
      const auto result = jrc::run(*inst, config);
      fs::create_directories(out_dir);
      jrc::save_json(jrc::run_to_json(*inst, result), (fs::path(out_dir) / "solution.json").string());
      std::ofstream trace((fs::path(out_dir) / "trace.csv").string());
      jrc::write_trace_csv(trace, result.trace);
      std::cout << (result.feasible ? "feasible" : "noFeasible") << " cost=" << result.best_cost
                << " iterations=" << result.iterations << " solves=" << result.solves;
      if (result.dual_bound) std::cout << " dual_bound=" << *result.dual_bound;
      std::cout << " stop=" << result.stop_reason << '\n';
      if (!result.feasible) code = Exit::no_feasible;
    } else if (*verify) {
      auto inst = load_valid(instance_path);
      if (!inst) return Exit::invalid;
      const auto schedules = jrc::load_solution(*inst, solution_path);
      const auto report = jrc::verify(*inst, schedules);
      std::cout << report.summary();
      if (!report.feasible) code = Exit::no_feasible;
    } else if (*oracle) {
      auto inst = load_valid(instance_path);
      if (!inst) return Exit::invalid;
      const auto result = jrc::brute_force_optimum(*inst, limits);
      std::cout << jrc::to_string(result.status);
      if (result.status == jrc::OracleStatus::optimal) std::cout << " cost=" << std::setprecision(12) << result.cost;
      std::cout << " nodes=" << result.nodes;
      if (!result.message.empty()) std::cout << " (" << result.message << ")";
      std::cout << '\n';
      if (result.status == jrc::OracleStatus::optimal && !out_file.empty()) {
        jrc::save_json(jrc::solution_to_json(*inst, result.schedules), out_file);
      }
      if (result.status == jrc::OracleStatus::infeasible) code = Exit::no_feasible;
      if (result.status == jrc::OracleStatus::budget_exceeded) code = Exit::budget;
    } else if (*bench) {
      auto inst = load_valid(instance_path);
      if (!inst) return Exit::invalid;
      if (flags.init.empty()) flags.init = "uniform";
      struct Row {
        std::uint64_t seed;
        std::string strategy;
        jrc::RunResult result;
      };
      std::vector<Row> rows;
      for (int s = 1; s <= seeds; ++s) {
        for (const char* strategy : {"slblr", "lr"}) {
          SolveFlags f = flags;
          f.seed = static_cast<std::uint64_t>(s);
          f.seed_set = true;
          f.strategy = strategy;
          auto config = make_config(f);
          config.final_dual_bound = false;
          if (!std::isnan(target)) config.target_cost = target;
          rows.push_back({f.seed, strategy, jrc::run(*inst, config)});
        }
      }
      if (std::isnan(target)) {
        const auto exact = jrc::brute_force_optimum(*inst);
        if (exact.status == jrc::OracleStatus::optimal) {
          target = exact.cost;
        } else {
          target = std::numeric_limits<double>::infinity();
          for (const auto& r : rows) target = std::min(target, r.result.best_cost);
        }
      }
      fs::create_directories(out_dir);
      std::ofstream table((fs::path(out_dir) / "bench.csv").string());
      table << "seed,strategy,best_cost,reached,solves_to_target,iterations,elapsed_s\n";
      std::cout << "target=" << std::setprecision(12) << target << '\n';
      for (const auto& r : rows) {
        const auto solves = jrc::solves_to_reach(r.result, target);
        std::ostringstream line;
        line << r.seed << ',' << r.strategy << ',' << std::setprecision(12) << r.result.best_cost << ','
             << (solves ? 1 : 0) << ',' << (solves ? std::to_string(*solves) : std::string("")) << ','
             << r.result.iterations << ',' << r.result.elapsed_s << '\n';
        table << line.str();
        std::cout << line.str();
      }
    } else if (*sweep) {
      auto inst = load_valid(instance_path);
      if (!inst) return Exit::invalid;
      const auto which = jrc::sweep_parameter_from_string(parameter);
      const auto scales = parse_scales(scales_text);
      fs::create_directories(out_dir);
      std::ofstream table((fs::path(out_dir) / "sweep.csv").string());
      table << "scale,best_cost,trucks_used,wall_time_s,status\n";
      std::cout << "scale,best_cost,trucks_used,wall_time_s,status\n";
      for (double scale : scales) {
        const auto point = jrc::apply_scale(*inst, which, scale);
        const auto start = std::chrono::steady_clock::now();
        double cost = std::numeric_limits<double>::infinity();
        int used = 0;
        std::string status;
        if (backend == "oracle") {
          const auto r = jrc::brute_force_optimum(point, limits);
          status = jrc::to_string(r.status);
          if (r.status == jrc::OracleStatus::budget_exceeded) code = Exit::budget;
          if (r.status == jrc::OracleStatus::optimal) {
            cost = r.cost;
            used = trucks_used(r.schedules);
          }
        } else {
          const auto r = jrc::run(point, make_config(flags));
          status = r.feasible ? "feasible" : "noFeasible";
          if (r.feasible) {
            cost = r.best_cost;
            used = trucks_used(r.best);
          }
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << scale << ',' << std::setprecision(12) << cost << ',' << used << ',' << wall << ',' << status << '\n';
        table << line.str();
        std::cout << line.str();
      }
    } else if (*gen1) {
      jrc::Example1Options options =
          params_path.empty() ? jrc::Example1Options{} : jrc::example1_options_from_json(read_json(params_path));
      if (!travel_path.empty()) {
        options.travel = jrc::travel_table_from_json(read_json(travel_path));
      } else if (options.travel.empty()) {
        options.travel = jrc::example1_default_travel();
      }
      emit_instance(jrc::example1(options), out_file);
    } else if (*gen3) {
      emit_instance(jrc::example3(read_json(topology_path), jrc::example3_scenario_from_json(read_json(scenario_path))),
                    out_file);
    } else if (*genr) {
      emit_instance(jrc::random_tiny(gen_seed, random_options), out_file);
    } else if (*gend || *genc) {
      jrc::RandomOptions base;
      base.max_nodes = 4;
      const auto inst = *genc ? jrc::contended_detour_case() : jrc::with_detour(jrc::random_tiny(gen_seed, base), gen_seed);
      emit_instance(inst, out_file);
      if (!restricted_out.empty()) jrc::save_instance(jrc::shortest_path_subnetwork(inst), restricted_out);
    }
  } catch (const jrc::InstanceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::invalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Exit::usage;
  }
  return code;
}
