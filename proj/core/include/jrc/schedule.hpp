#pragma once

#include <span>
#include <vector>

#include "jrc/instance.hpp"

namespace jrc {

// Compact event form of one truck's plan.
struct Leg {
  NodeIndex from = 0;
  NodeIndex to = 0;
  int segment = 0;
  Period depart = 0;
  Period arrive = 0;
  bool operator==(const Leg&) const = default;
};

// Contiguous charging block [first, last] at a node.
struct ChargeBlock {
  NodeIndex node = 0;
  Period first = 0;
  Period last = 0;
  int periods() const { return last - first + 1; }
  bool operator==(const ChargeBlock&) const = default;
};

struct Trip {
  bool loaded = false;
  std::vector<Leg> legs;
  std::vector<ChargeBlock> charges;
  bool operator==(const Trip&) const = default;
};

// trips.size() is the number of trips taken; an empty schedule keeps the
// truck at its depot.
struct TruckSchedule {
  std::vector<Trip> trips;
  bool operator==(const TruckSchedule&) const = default;
  bool idle() const { return trips.empty(); }
};

// Full variable assignment of the time-expanded model. Binaries are kept
// as int so out-of-range values can be represented and rejected.
// Node-indexed arrays use [node * P + (p - 1)]; charger arrays use the
// charger-site index in place of the node.
struct TripAssignment {
  int trip = 0;
  int loaded = 0;
  std::vector<int> depart, arrive;               // x^dprtr, x^arrvl
  std::vector<int> charge, charge_begin, charge_end;  // x^chrg, x^chrg,bgn, x^chrg,cmplt
  std::vector<int> depart_time, arrive_time;     // d, a per node
  std::vector<int> begin_time, end_time;         // b, c per charger
  std::vector<int> soc;                          // per node, bp
  std::vector<int> overflow;                     // charge clipped at the battery ceiling, per node
  std::vector<int> full;                         // clipping indicator, per node
  int unload = 0;                                // u for the carried product
};

struct TruckAssignment {
  std::vector<TripAssignment> trips;  // always max_trips entries
  int last_depot_arrival = 0;         // a-bar
};

struct Assignment {
  std::vector<TruckAssignment> trucks;
  std::vector<int> latest_unload;  // u-bar per demand
  std::vector<int> tardiness;      // per demand
};

// Sizes every array for the instance with all values zero.
Assignment empty_assignment(const Instance& instance);
TripAssignment empty_trip_assignment(const Instance& instance);

// Expands schedules into the full assignment with tight auxiliary values.
Assignment materialize(const Instance& instance, std::span<const TruckSchedule> schedules);

// Per-truck SOC on arrival at each leg end before charging; used by
// pretty-printers and tests.
std::vector<int> arrival_soc(const Instance& instance, int truck, const TruckSchedule& schedule);

// Coupling vector layout: port-destined demands, then depot-destined
// demands, then charging capacity per (charger site, period).
struct CouplingLayout {
  std::vector<int> demand_order;   // component -> demand index
  std::vector<int> component_of;   // demand index -> component
  int demand_components = 0;
  int chargers = 0;
  int horizon = 0;

  explicit CouplingLayout(const Instance& instance);
  int size() const { return demand_components + chargers * horizon; }
  int capacity_component(int charger, Period p) const { return demand_components + charger * horizon + (p - 1); }
  bool is_capacity(int component) const { return component >= demand_components; }
};

}  // namespace jrc
