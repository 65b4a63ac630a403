#include "jrc/schedule.hpp"

#include <algorithm>

namespace jrc {

TripAssignment empty_trip_assignment(const Instance& inst) {
  const auto P = static_cast<std::size_t>(inst.horizon);
  const auto N = static_cast<std::size_t>(inst.node_count());
  const auto C = static_cast<std::size_t>(inst.charger_count());
  TripAssignment t;
  t.depart.assign(N * P, 0);
  t.arrive.assign(N * P, 0);
  t.charge.assign(C * P, 0);
  t.charge_begin.assign(C * P, 0);
  t.charge_end.assign(C * P, 0);
  t.depart_time.assign(N, 0);
  t.arrive_time.assign(N, 0);
  t.begin_time.assign(C, 0);
  t.end_time.assign(C, 0);
  t.soc.assign(N, 0);
  t.overflow.assign(N, 0);
  t.full.assign(N, 0);
  return t;
}

Assignment empty_assignment(const Instance& inst) {
  Assignment a;
  a.trucks.resize(static_cast<std::size_t>(inst.truck_count()));
  for (auto& truck : a.trucks) {
    truck.trips.assign(static_cast<std::size_t>(inst.max_trips), empty_trip_assignment(inst));
  }
  a.latest_unload.assign(static_cast<std::size_t>(inst.demand_count()), 0);
  a.tardiness.assign(static_cast<std::size_t>(inst.demand_count()), 0);
  return a;
}

namespace {

int charged_periods_at(const Trip& trip, NodeIndex node) {
  int total = 0;
  for (const auto& c : trip.charges) {
    if (c.node == node) total += c.periods();
  }
  return total;
}

}  // namespace

std::vector<int> arrival_soc(const Instance& inst, int v, const TruckSchedule& schedule) {
  const Truck& truck = inst.fleet.at(static_cast<std::size_t>(v));
  std::vector<int> out;
  int soc = truck.battery;
  for (const auto& trip : schedule.trips) {
    for (const auto& leg : trip.legs) {
      const int travel = leg.arrive - leg.depart + 1;
      const int arrival = soc - travel * truck.drain(leg.segment, trip.loaded);
      out.push_back(arrival);
      soc = std::min(truck.battery, arrival + truck.charge_rate * charged_periods_at(trip, leg.to));
    }
  }
  return out;
}

Assignment materialize(const Instance& inst, std::span<const TruckSchedule> schedules) {
  if (static_cast<int>(schedules.size()) != inst.truck_count()) {
    throw InstanceError("one schedule per truck is required");
  }
  const int P = inst.horizon;
  Assignment a = empty_assignment(inst);
  for (int v = 0; v < inst.truck_count(); ++v) {
    const Truck& truck = inst.fleet[static_cast<std::size_t>(v)];
    const auto& sched = schedules[static_cast<std::size_t>(v)];
    auto& tv = a.trucks[static_cast<std::size_t>(v)];
    if (static_cast<int>(sched.trips.size()) > inst.max_trips) throw InstanceError("schedule exceeds the trip limit");
    if (inst.max_trips > 0) tv.trips[0].soc[static_cast<std::size_t>(truck.depot)] = truck.battery;
    int soc = truck.battery;
    for (std::size_t ti = 0; ti < sched.trips.size(); ++ti) {
      const Trip& trip = sched.trips[ti];
      const int t = static_cast<int>(ti) + 1;
      auto& x = tv.trips[ti];
      x.trip = 1;
      x.loaded = trip.loaded ? 1 : 0;
      x.soc[static_cast<std::size_t>(inst.trip_origin(v, t))] = soc;
      for (const auto& leg : trip.legs) {
        const auto from = static_cast<std::size_t>(leg.from);
        const auto to = static_cast<std::size_t>(leg.to);
        x.depart[from * static_cast<std::size_t>(P) + static_cast<std::size_t>(leg.depart - 1)] = 1;
        x.arrive[to * static_cast<std::size_t>(P) + static_cast<std::size_t>(leg.arrive - 1)] = 1;
        x.depart_time[from] = leg.depart;
        x.arrive_time[to] = leg.arrive;
        const int travel = leg.arrive - leg.depart + 1;
        const int raw = soc - travel * truck.drain(leg.segment, trip.loaded) +
                        truck.charge_rate * charged_periods_at(trip, leg.to);
        soc = std::min(truck.battery, raw);
        x.soc[to] = soc;
        x.overflow[to] = raw - soc;
        x.full[to] = raw > soc ? 1 : 0;
      }
      for (const auto& block : trip.charges) {
        const int ci = inst.network.charger_of(block.node);
        if (ci < 0) throw InstanceError("charging at a node without chargers");
        const auto base = static_cast<std::size_t>(ci) * static_cast<std::size_t>(P);
        for (Period p = block.first; p <= block.last; ++p) x.charge[base + static_cast<std::size_t>(p - 1)] = 1;
        x.charge_begin[base + static_cast<std::size_t>(block.first - 1)] = 1;
        x.charge_end[base + static_cast<std::size_t>(block.last - 1)] = 1;
        x.begin_time[static_cast<std::size_t>(ci)] = block.first;
        x.end_time[static_cast<std::size_t>(ci)] = block.last;
      }
      const NodeIndex dest = inst.trip_destination(v, t);
      if (trip.loaded) {
        x.unload = x.arrive_time[static_cast<std::size_t>(dest)];
        const int product = inst.product_for_trip(v, t);
        if (product >= 0) {
          auto& latest = a.latest_unload[static_cast<std::size_t>(product)];
          latest = std::max(latest, x.unload);
        }
      }
      if (dest == truck.depot) {
        tv.last_depot_arrival = std::max(tv.last_depot_arrival, x.arrive_time[static_cast<std::size_t>(dest)]);
      }
    }
  }
  for (int i = 0; i < inst.demand_count(); ++i) {
    const auto& d = inst.demands[static_cast<std::size_t>(i)];
    a.tardiness[static_cast<std::size_t>(i)] = std::max(0, a.latest_unload[static_cast<std::size_t>(i)] - d.due);
  }
  return a;
}

CouplingLayout::CouplingLayout(const Instance& inst)
    : chargers(inst.charger_count()), horizon(inst.horizon) {
  component_of.assign(static_cast<std::size_t>(inst.demand_count()), -1);
  for (int pass = 0; pass < 2; ++pass) {
    const NodeKind wanted = pass == 0 ? NodeKind::port : NodeKind::depot;
    for (int i = 0; i < inst.demand_count(); ++i) {
      const auto dest = inst.demands[static_cast<std::size_t>(i)].destination;
      if (inst.network.nodes.at(static_cast<std::size_t>(dest)).kind == wanted) {
        component_of[static_cast<std::size_t>(i)] = static_cast<int>(demand_order.size());
        demand_order.push_back(i);
      }
    }
  }
  demand_components = static_cast<int>(demand_order.size());
}

}  // namespace jrc
