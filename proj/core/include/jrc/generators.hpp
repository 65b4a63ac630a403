#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jrc/instance.hpp"

namespace jrc {

// Undirected travel-time entry between two node ids, in periods.
struct TravelEntry {
  int a = 0;
  int b = 0;
  int periods = 0;
};

// Five nodes: depot 1, plain 2-4, port 5, edges 1-2, 2-3, 1-3, 3-4, 4-5, 3-5.
struct Example1Options {
  std::vector<TravelEntry> travel;  // must cover every edge
  int trucks = 5;
  int port_demand = 3;    // export, depot -> port
  int depot_demand = 8;   // import, port -> depot
  int export_due = 20;
  int import_due = 45;
  int trips = 4;          // 0: derive from the demands
  int horizon = 65;       // 0: derive from the longest path
  int charge_rate = 1700;
  int discharge_loaded = 500;
  int discharge_empty = 250;
  std::vector<int> charger_counts = {2, 2, 1, 2, 2};
  double charging_price = 0.1;
  double labor_cost = 0.1;
  double tardiness_penalty = 0.2;
};

// Travel times used when no table is supplied; stamped nonPaperData.
std::vector<TravelEntry> example1_default_travel();
std::vector<TravelEntry> travel_table_from_json(const nlohmann::json& j);
Instance example1(const Example1Options& options);
Example1Options example1_options_from_json(const nlohmann::json& j);

enum class Example3Case { base, case2, case3 };

struct Example3Scenario {
  Example3Case scenario = Example3Case::base;
  double period_minutes = 0.0;  // required
  int trips = 0;                // 0: derive
  int horizon = 0;              // 0: derive
  int cushion = 5;
  int chargers_per_node = 3;
  double charging_price = 0.1;
  double labor_cost = 0.1;
  double tardiness_penalty = 0.2;
  int import_due = 0;           // 0: horizon
  int export_due = 0;
};

// Topology JSON: nodes [{id, kind}], segments [{from, to, miles, minutes}]
// (both directions), port id, depots [{node, trucks, battery_kwh,
// import_demand, export_demand}], charger_kw, kwh_per_mile_loaded,
// kwh_per_mile_empty.
Instance example3(const nlohmann::json& topology, const Example3Scenario& scenario);
Example3Scenario example3_scenario_from_json(const nlohmann::json& j);

// round(kW * hours / kWh * 10000)
int kwh_rate_to_bp(double kw, double hours, double battery_kwh);

struct RandomOptions {
  int trucks = 2;
  int min_nodes = 2;
  int max_nodes = 5;
  int max_periods = 20;
  int trips = 2;
};

// Tiny single-lane instance: depot, port and up to three plain nodes on a
// connected random graph, all within the oracle limits.
Instance random_tiny(std::uint64_t seed, const RandomOptions& options = {});

// Adds one plain node with its own charger, linked to two existing nodes by
// segments no shorter than the existing route between them.
Instance with_detour(const Instance& base, std::uint64_t seed);
// Two trucks whose direct route passes a capacity-1 charger both need, with
// a slightly longer detour through a second charger.
Instance contended_detour_case();
// Keeps only segments on some shortest depot-port path of some truck.
Instance shortest_path_subnetwork(const Instance& instance);

enum class SweepParameter { battery_capacity, charge_power, chargers_per_node };
SweepParameter sweep_parameter_from_string(const std::string& name);
const char* to_string(SweepParameter parameter);
// Battery scale multiplies each truck's SOC ceiling, power scale its charge
// rate (both rounded to whole basis points); chargers_per_node sets every
// site's count to round(scale).
Instance apply_scale(const Instance& instance, SweepParameter parameter, double scale);

}  // namespace jrc
