#include "jrc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>

namespace jrc {

using nlohmann::json;

namespace {

void add_edge(Network& net, NodeIndex a, NodeIndex b, int periods) {
  net.segments.push_back({a, b, {periods}});
  net.segments.push_back({b, a, {periods}});
}

NodeIndex index_of(const Network& net, int id) {
  auto found = net.find_node(id);
  if (!found) throw InstanceError("unknown node id " + std::to_string(id));
  return *found;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

int shortest_travel(const Segment& s) { return *std::min_element(s.travel.begin(), s.travel.end()); }

// Dijkstra over shortest travel times; forward from `source` or, with
// reverse, towards it.
std::vector<int> distances(const Network& net, NodeIndex source, bool reverse) {
  constexpr int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(net.nodes.size(), inf);
  using Item = std::pair<int, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[static_cast<std::size_t>(source)] = 0;
  queue.emplace(0, source);
  while (!queue.empty()) {
    auto [d, n] = queue.top();
    queue.pop();
    if (d > dist[static_cast<std::size_t>(n)]) continue;
    for (const auto& s : net.segments) {
      const NodeIndex from = reverse ? s.to : s.from;
      const NodeIndex to = reverse ? s.from : s.to;
      if (from != n) continue;
      const int nd = d + shortest_travel(s);
      if (nd < dist[static_cast<std::size_t>(to)]) {
        dist[static_cast<std::size_t>(to)] = nd;
        queue.emplace(nd, to);
      }
    }
  }
  return dist;
}

// Keeps the listed segments and the matching per-segment discharge entries.
Instance keep_segments(const Instance& inst, const std::vector<int>& kept) {
  Instance out = inst;
  out.network.segments.clear();
  for (int s : kept) out.network.segments.push_back(inst.network.segments[static_cast<std::size_t>(s)]);
  for (auto& truck : out.fleet) {
    for (auto* rates : {&truck.discharge_loaded, &truck.discharge_empty}) {
      if (rates->size() <= 1) continue;
      std::vector<int> filtered;
      for (int s : kept) filtered.push_back((*rates)[static_cast<std::size_t>(s)]);
      *rates = std::move(filtered);
    }
  }
  return out;
}

}  // namespace

std::vector<TravelEntry> example1_default_travel() {
  return {{1, 2, 4}, {2, 3, 3}, {1, 3, 5}, {3, 4, 4}, {4, 5, 4}, {3, 5, 5}};
}

std::vector<TravelEntry> travel_table_from_json(const json& j) {
  std::vector<TravelEntry> out;
  for (const auto& e : j.at("travel")) {
    out.push_back({e.at("a").get<int>(), e.at("b").get<int>(), e.at("periods").get<int>()});
  }
  return out;
}

Example1Options example1_options_from_json(const json& j) {
  Example1Options o;
  if (j.contains("travel")) o.travel = travel_table_from_json(j);
  o.trucks = j.value("trucks", o.trucks);
  o.port_demand = j.value("port_demand", o.port_demand);
  o.depot_demand = j.value("depot_demand", o.depot_demand);
  o.export_due = j.value("export_due", o.export_due);
  o.import_due = j.value("import_due", o.import_due);
  o.trips = j.value("trips", o.trips);
  o.horizon = j.value("horizon", o.horizon);
  o.charge_rate = j.value("charge_rate", o.charge_rate);
  o.discharge_loaded = j.value("discharge_loaded", o.discharge_loaded);
  o.discharge_empty = j.value("discharge_empty", o.discharge_empty);
  o.charger_counts = j.value("charger_counts", o.charger_counts);
  o.charging_price = j.value("charging_price", o.charging_price);
  o.labor_cost = j.value("labor_cost", o.labor_cost);
  o.tardiness_penalty = j.value("tardiness_penalty", o.tardiness_penalty);
  return o;
}

Instance example1(const Example1Options& o) {
  static const std::pair<int, int> edges[] = {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}, {3, 5}};
  if (o.charger_counts.size() != 5) throw InstanceError("example 1 needs five charger counts");
  Instance inst;
  auto& net = inst.network;
  for (int id = 1; id <= 5; ++id) {
    net.nodes.push_back({id, id == 1 ? NodeKind::depot : id == 5 ? NodeKind::port : NodeKind::plain});
  }
  std::map<std::pair<int, int>, int> table;
  for (const auto& e : o.travel) table[{std::min(e.a, e.b), std::max(e.a, e.b)}] = e.periods;
  for (auto [a, b] : edges) {
    auto it = table.find({a, b});
    if (it == table.end()) {
      throw InstanceError("travel table misses segment " + std::to_string(a) + "-" + std::to_string(b));
    }
    add_edge(net, a - 1, b - 1, it->second);
  }
  if (table.size() != std::size(edges)) throw InstanceError("travel table names a segment outside the topology");
  for (int n = 0; n < 5; ++n) net.chargers.push_back({n, o.charger_counts[static_cast<std::size_t>(n)], {o.charging_price}});
  for (int v = 0; v < o.trucks; ++v) {
    Truck t;
    t.id = "truck" + std::to_string(v + 1);
    t.depot = 0;
    t.port = 4;
    t.charge_rate = o.charge_rate;
    t.discharge_loaded = {o.discharge_loaded};
    t.discharge_empty = {o.discharge_empty};
    inst.fleet.push_back(t);
  }
  inst.demands.push_back({"export", 0, 4, o.port_demand, o.export_due, o.tardiness_penalty});
  inst.demands.push_back({"import", 4, 0, o.depot_demand, o.import_due, o.tardiness_penalty});
  inst.max_trips = o.trips > 0 ? o.trips : derive_trip_count(inst.demands, o.trucks);
  inst.horizon = o.horizon > 0 ? o.horizon : derive_horizon(net, inst.fleet, inst.max_trips);
  inst.labor_cost = o.labor_cost;
  inst.metadata["generator"] = "example1";
  inst.metadata["nonPaperData"] = true;
  return inst;
}

int kwh_rate_to_bp(double kw, double hours, double battery_kwh) {
  if (battery_kwh <= 0.0) throw InstanceError("battery capacity must be positive");
  return static_cast<int>(std::lround(kw * hours / battery_kwh * kFullCharge));
}

Example3Scenario example3_scenario_from_json(const json& j) {
  Example3Scenario s;
  const std::string name = j.value("case", std::string("base"));
  if (name == "base") {
    s.scenario = Example3Case::base;
  } else if (name == "case2") {
    s.scenario = Example3Case::case2;
  } else if (name == "case3") {
    s.scenario = Example3Case::case3;
  } else {
    throw InstanceError("unknown example 3 case '" + name + "'");
  }
  if (!j.contains("period_minutes")) throw InstanceError("example 3 needs period_minutes");
  s.period_minutes = j.at("period_minutes").get<double>();
  s.trips = j.value("trips", s.trips);
  s.horizon = j.value("horizon", s.horizon);
  s.cushion = j.value("cushion", s.cushion);
  s.chargers_per_node = j.value("chargers_per_node", s.chargers_per_node);
  s.charging_price = j.value("charging_price", s.charging_price);
  s.labor_cost = j.value("labor_cost", s.labor_cost);
  s.tardiness_penalty = j.value("tardiness_penalty", s.tardiness_penalty);
  s.import_due = j.value("import_due", s.import_due);
  s.export_due = j.value("export_due", s.export_due);
  return s;
}

Instance example3(const json& topo, const Example3Scenario& sc) {
  if (!(sc.period_minutes > 0.0)) throw InstanceError("example 3 needs a positive period length");
  const double hours = sc.period_minutes / 60.0;
  Instance inst;
  auto& net = inst.network;
  std::vector<double> miles;
  try {
    for (const auto& n : topo.at("nodes")) {
      const std::string kind = n.at("kind").get<std::string>();
      net.nodes.push_back({n.at("id").get<int>(), kind == "port"    ? NodeKind::port
                                                  : kind == "depot" ? NodeKind::depot
                                                                    : NodeKind::plain});
    }
    for (const auto& s : topo.at("segments")) {
      const NodeIndex a = index_of(net, s.at("from").get<int>());
      const NodeIndex b = index_of(net, s.at("to").get<int>());
      const double minutes = s.at("minutes").get<double>();
      if (minutes <= 0.0) throw InstanceError("segment minutes must be positive");
      add_edge(net, a, b, std::max(1, static_cast<int>(std::ceil(minutes / sc.period_minutes - 1e-9))));
      const double m = s.at("miles").get<double>();
      miles.push_back(m);
      miles.push_back(m);
    }
    const NodeIndex port = index_of(net, topo.at("port").get<int>());
    double charger_kw = topo.at("charger_kw").get<double>();
    if (sc.scenario == Example3Case::case3) charger_kw *= 2.0;
    const double loaded_kwh = topo.at("kwh_per_mile_loaded").get<double>();
    const double empty_kwh = topo.at("kwh_per_mile_empty").get<double>();
    for (int n = 0; n < static_cast<int>(net.nodes.size()); ++n) {
      net.chargers.push_back({n, sc.chargers_per_node, {sc.charging_price}});
    }
    int truck_no = 0;
    for (const auto& d : topo.at("depots")) {
      const NodeIndex depot = index_of(net, d.at("node").get<int>());
      double battery = d.at("battery_kwh").get<double>();
      if (sc.scenario == Example3Case::case2) battery = 600.0;
      for (int i = 0; i < d.at("trucks").get<int>(); ++i) {
        Truck t;
        t.id = "truck" + std::to_string(++truck_no);
        t.depot = depot;
        t.port = port;
        t.charge_rate = kwh_rate_to_bp(charger_kw, hours, battery);
        for (std::size_t s = 0; s < net.segments.size(); ++s) {
          const double periods = net.segments[s].travel.front();
          auto per_period = [&](double kwh_per_mile) {
            return std::max(1, static_cast<int>(std::lround(kwh_per_mile * miles[s] / periods / battery * kFullCharge)));
          };
          t.discharge_loaded.push_back(per_period(loaded_kwh));
          t.discharge_empty.push_back(per_period(empty_kwh));
        }
        inst.fleet.push_back(std::move(t));
      }
      const int id = d.at("node").get<int>();
      inst.demands.push_back({"import" + std::to_string(id), port, depot, d.at("import_demand").get<int>(), 0,
                              sc.tardiness_penalty});
      inst.demands.push_back({"export" + std::to_string(id), depot, port, d.at("export_demand").get<int>(), 0,
                              sc.tardiness_penalty});
    }
  } catch (const json::exception& e) {
    throw InstanceError(std::string("malformed topology: ") + e.what());
  }
  int trips = sc.trips;
  if (trips <= 0) {
    trips = derive_trip_count(inst.demands, inst.truck_count());
    for (int i = 0; i < inst.demand_count(); ++i) {
      const int eligible = static_cast<int>(eligible_trucks(inst, i).size());
      const int q = inst.demands[static_cast<std::size_t>(i)].quantity;
      if (eligible > 0) trips = std::max(trips, 2 * ((q + eligible - 1) / eligible));
    }
  }
  inst.max_trips = trips;
  inst.horizon = sc.horizon > 0 ? sc.horizon : derive_horizon(net, inst.fleet, trips, sc.cushion);
  for (auto& d : inst.demands) {
    const bool import = net.nodes[static_cast<std::size_t>(d.destination)].kind == NodeKind::depot;
    const int due = import ? sc.import_due : sc.export_due;
    d.due = due > 0 ? due : inst.horizon;
  }
  inst.labor_cost = sc.labor_cost;
  inst.metadata["generator"] = "example3";
  inst.metadata["nonPaperData"] = true;
  inst.metadata["period_minutes"] = sc.period_minutes;
  inst.metadata["rate_rounding"] = "round(kW * hours / kWh * 10000)";
  return inst;
}

Instance random_tiny(std::uint64_t seed, const RandomOptions& o) {
  std::mt19937_64 rng(seed);
  const int n = uniform_int(rng, std::max(2, o.min_nodes), std::max(2, o.max_nodes));
  Instance inst;
  auto& net = inst.network;
  for (int id = 1; id <= n; ++id) {
    net.nodes.push_back({id, id == 1 ? NodeKind::depot : id == n ? NodeKind::port : NodeKind::plain});
  }
  std::vector<NodeIndex> order;
  for (int i = 1; i + 1 < n; ++i) order.push_back(i);
  std::shuffle(order.begin(), order.end(), rng);
  order.insert(order.begin(), 0);
  order.push_back(n - 1);
  std::set<std::pair<int, int>> linked;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    add_edge(net, order[i], order[i + 1], uniform_int(rng, 1, 2));
    linked.insert({std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])});
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (linked.count({a, b}) || std::bernoulli_distribution(0.35)(rng) == false) continue;
      add_edge(net, a, b, uniform_int(rng, 1, 3));
      linked.insert({a, b});
    }
  }
  const int trucks = uniform_int(rng, 1, std::max(1, o.trucks));
  for (int i = 0; i < n; ++i) {
    const bool host = net.nodes[static_cast<std::size_t>(i)].kind != NodeKind::plain || std::bernoulli_distribution(0.5)(rng);
    if (host) net.chargers.push_back({i, uniform_int(rng, 1, trucks), {uniform_int(rng, 1, 5) / 10.0}});
  }
  for (int v = 0; v < trucks; ++v) {
    Truck t;
    t.id = "truck" + std::to_string(v + 1);
    t.depot = 0;
    t.port = n - 1;
    t.available = uniform_int(rng, 1, 2);
    t.charge_rate = 500 * uniform_int(rng, 3, 8);
    const int loaded = 250 * uniform_int(rng, 2, 6);
    t.discharge_loaded = {loaded};
    t.discharge_empty = {std::max(250, loaded / 2 / 250 * 250)};
    inst.fleet.push_back(t);
  }
  inst.max_trips = o.trips;
  const int round_trips = o.trips / 2;
  const int cushion = uniform_int(rng, 1, 4);
  inst.horizon = std::min(o.max_periods, derive_horizon(net, inst.fleet, o.trips, cushion));
  inst.horizon = std::max(inst.horizon, 2);
  const int P = inst.horizon;
  inst.demands.push_back({"export", 0, n - 1, uniform_int(rng, 1, trucks * round_trips),
                          uniform_int(rng, std::max(1, P / 3), P), uniform_int(rng, 1, 10) / 10.0});
  inst.demands.push_back({"import", n - 1, 0, uniform_int(rng, 0, trucks * round_trips),
                          uniform_int(rng, std::max(1, P / 3), P), uniform_int(rng, 1, 10) / 10.0});
  inst.labor_cost = uniform_int(rng, 1, 5) / 10.0;
  inst.metadata["generator"] = "random_tiny";
  inst.metadata["seed"] = seed;
  inst.metadata["nonPaperData"] = true;
  return inst;
}

Instance with_detour(const Instance& base, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance inst = base;
  auto& net = inst.network;
  int id = 0;
  for (const auto& n : net.nodes) id = std::max(id, n.id);
  const NodeIndex y = static_cast<NodeIndex>(net.nodes.size());
  net.nodes.push_back({id + 1, NodeKind::plain});
  const NodeIndex a = inst.fleet.empty() ? 0 : inst.fleet.front().depot;
  const NodeIndex b = inst.fleet.empty() ? y - 1 : inst.fleet.front().port;
  const int direct = distances(base.network, a, false)[static_cast<std::size_t>(b)];
  const int ta = uniform_int(rng, 1, std::max(1, direct - 1));
  const int tb = std::max(1, direct - ta) + uniform_int(rng, 0, 1);
  add_edge(net, a, y, ta);
  add_edge(net, y, b, tb);
  net.chargers.push_back({y, uniform_int(rng, 1, 2), {uniform_int(rng, 1, 5) / 10.0}});
  for (auto& truck : inst.fleet) {
    for (auto* rates : {&truck.discharge_loaded, &truck.discharge_empty}) {
      if (rates->size() > 1) rates->insert(rates->end(), 4, rates->back());
    }
  }
  inst.metadata["generator"] = "with_detour";
  inst.metadata["detour_seed"] = seed;
  return inst;
}

Instance contended_detour_case() {
  Instance inst;
  auto& net = inst.network;
  net.nodes = {{1, NodeKind::depot}, {2, NodeKind::plain}, {3, NodeKind::plain}, {4, NodeKind::port}};
  add_edge(net, 0, 1, 2);  // depot - charger X
  add_edge(net, 1, 3, 2);  // X - port
  add_edge(net, 0, 2, 2);  // depot - detour Y
  add_edge(net, 2, 3, 3);  // Y - port
  net.chargers = {{0, 2, {0.1}}, {1, 1, {0.1}}, {2, 1, {0.1}}, {3, 2, {0.1}}};
  for (int v = 0; v < 2; ++v) {
    Truck t;
    t.id = "truck" + std::to_string(v + 1);
    t.depot = 0;
    t.port = 3;
    t.charge_rate = 1000;
    // The detour roads drain less per period.
    t.discharge_loaded = {3000, 3000, 3000, 3000, 2400, 2400, 2400, 2400};
    t.discharge_empty = {1500, 1500, 1500, 1500, 1200, 1200, 1200, 1200};
    inst.fleet.push_back(t);
  }
  inst.demands.push_back({"export", 0, 3, 2, 6, 1.0});
  inst.demands.push_back({"import", 3, 0, 0, 20, 1.0});
  inst.max_trips = 2;
  inst.horizon = 20;
  inst.labor_cost = 0.1;
  inst.metadata["generator"] = "contended_detour_case";
  inst.metadata["nonPaperData"] = true;
  return inst;
}

Instance shortest_path_subnetwork(const Instance& inst) {
  const auto& net = inst.network;
  std::set<std::pair<NodeIndex, NodeIndex>> pairs;
  for (const auto& t : inst.fleet) {
    pairs.insert({t.depot, t.port});
    pairs.insert({t.port, t.depot});
  }
  std::vector<char> keep(net.segments.size(), 0);
  for (auto [s, t] : pairs) {
    const auto from_s = distances(net, s, false);
    const auto to_t = distances(net, t, true);
    const int best = from_s[static_cast<std::size_t>(t)];
    if (best == std::numeric_limits<int>::max()) continue;
    for (std::size_t i = 0; i < net.segments.size(); ++i) {
      const auto& seg = net.segments[i];
      const int a = from_s[static_cast<std::size_t>(seg.from)];
      const int b = to_t[static_cast<std::size_t>(seg.to)];
      if (a == std::numeric_limits<int>::max() || b == std::numeric_limits<int>::max()) continue;
      if (a + shortest_travel(seg) + b == best) keep[i] = 1;
    }
  }
  std::vector<int> kept;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) kept.push_back(static_cast<int>(i));
  }
  Instance out = keep_segments(inst, kept);
  out.metadata["restricted"] = "shortest paths";
  return out;
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
  if (name == "batteryCapacityScale" || name == "battery") return SweepParameter::battery_capacity;
  if (name == "chargePowerScale" || name == "power") return SweepParameter::charge_power;
  if (name == "chargersPerNode" || name == "chargers") return SweepParameter::chargers_per_node;
  throw InstanceError("unknown sweep parameter '" + name + "'");
}

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::battery_capacity: return "batteryCapacityScale";
    case SweepParameter::charge_power: return "chargePowerScale";
    case SweepParameter::chargers_per_node: return "chargersPerNode";
  }
  return "?";
}

Instance apply_scale(const Instance& inst, SweepParameter parameter, double scale) {
  if (!(scale > 0.0)) throw InstanceError("scale factors must be positive");
  Instance out = inst;
  switch (parameter) {
    case SweepParameter::battery_capacity:
      for (auto& t : out.fleet) t.battery = static_cast<int>(std::lround(t.battery * scale));
      break;
    case SweepParameter::charge_power:
      for (auto& t : out.fleet) t.charge_rate = static_cast<int>(std::lround(t.charge_rate * scale));
      break;
    case SweepParameter::chargers_per_node:
      for (auto& c : out.network.chargers) c.chargers = std::max(1, static_cast<int>(std::lround(scale)));
      break;
  }
  out.metadata["sweep"] = {{"parameter", to_string(parameter)}, {"scale", scale}};
  return out;
}

}  // namespace jrc
