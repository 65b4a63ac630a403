#include "jrc/instance.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace jrc {

std::optional<NodeIndex> Network::find_node(int id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return static_cast<NodeIndex>(i);
  }
  return std::nullopt;
}

int Network::charger_of(NodeIndex n) const {
  for (std::size_t i = 0; i < chargers.size(); ++i) {
    if (chargers[i].node == n) return static_cast<int>(i);
  }
  return -1;
}

NodeIndex Instance::trip_origin(int truck, int trip) const {
  const Truck& v = fleet.at(static_cast<std::size_t>(truck));
  return is_outbound(trip) ? v.depot : v.port;
}

NodeIndex Instance::trip_destination(int truck, int trip) const {
  const Truck& v = fleet.at(static_cast<std::size_t>(truck));
  return is_outbound(trip) ? v.port : v.depot;
}

int Instance::product_for_trip(int truck, int trip) const {
  return is_outbound(trip) ? outbound_product(truck) : inbound_product(truck);
}

int Instance::outbound_product(int truck) const {
  const Truck& v = fleet.at(static_cast<std::size_t>(truck));
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i].origin == v.depot && demands[i].destination == v.port) return static_cast<int>(i);
  }
  return -1;
}

int Instance::inbound_product(int truck) const {
  const Truck& v = fleet.at(static_cast<std::size_t>(truck));
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i].origin == v.port && demands[i].destination == v.depot) return static_cast<int>(i);
  }
  return -1;
}

std::string ValidationReport::summary() const {
  if (ok()) return "pass";
  std::ostringstream out;
  for (const auto& issue : issues) out << issue.path << ": " << issue.message << '\n';
  return out.str();
}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::depot: return "depot";
    case NodeKind::port: return "port";
    case NodeKind::plain: return "plain";
  }
  return "plain";
}

namespace {

int max_travel(const Segment& s) { return *std::max_element(s.travel.begin(), s.travel.end()); }
int min_travel(const Segment& s) { return *std::min_element(s.travel.begin(), s.travel.end()); }

// Shortest path by minimum segment duration (Bellman-Ford; networks are tiny).
int shortest_path(const Network& net, NodeIndex from, NodeIndex to) {
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<int> dist(net.nodes.size(), inf);
  dist[static_cast<std::size_t>(from)] = 0;
  for (std::size_t round = 0; round < net.nodes.size(); ++round) {
    for (const auto& s : net.segments) {
      auto& d_to = dist[static_cast<std::size_t>(s.to)];
      const int d_from = dist[static_cast<std::size_t>(s.from)];
      if (d_from < inf && d_from + min_travel(s) < d_to) d_to = d_from + min_travel(s);
    }
  }
  return dist[static_cast<std::size_t>(to)] >= inf ? -1 : dist[static_cast<std::size_t>(to)];
}

bool well_formed_segments(const Network& net) {
  const auto n = static_cast<NodeIndex>(net.nodes.size());
  return std::all_of(net.segments.begin(), net.segments.end(), [n](const Segment& s) {
    return s.from >= 0 && s.from < n && s.to >= 0 && s.to < n && !s.travel.empty();
  });
}

}  // namespace

int longest_simple_path(const Network& network, NodeIndex from, NodeIndex to) {
  int best = -1;
  std::vector<bool> on_path(network.nodes.size(), false);
  std::function<void(NodeIndex, int)> dfs = [&](NodeIndex at, int length) {
    if (at == to) {
      best = std::max(best, length);
      return;
    }
    on_path[static_cast<std::size_t>(at)] = true;
    for (const auto& s : network.segments) {
      if (s.from == at && !on_path[static_cast<std::size_t>(s.to)]) dfs(s.to, length + max_travel(s));
    }
    on_path[static_cast<std::size_t>(at)] = false;
  };
  dfs(from, 0);
  return best;
}

int derive_trip_count(int max_demand, int fleet_size) {
  if (fleet_size < 1) throw InstanceError("trip count needs a non-empty fleet");
  if (max_demand < 0) throw InstanceError("demand must be non-negative");
  return 2 * ((max_demand + fleet_size - 1) / fleet_size);
}

int derive_trip_count(const std::vector<Demand>& demands, int fleet_size) {
  int max_demand = 0;
  for (const auto& d : demands) max_demand = std::max(max_demand, d.quantity);
  return derive_trip_count(max_demand, fleet_size);
}

int derive_horizon(const Network& network, const std::vector<Truck>& fleet, int trips, int cushion) {
  if (trips < 0) throw InstanceError("trip count must be non-negative");
  int longest = 0;
  std::set<std::pair<NodeIndex, NodeIndex>> pairs;
  for (const auto& v : fleet) pairs.emplace(v.depot, v.port);
  for (const auto& [depot, port] : pairs) {
    const int there = longest_simple_path(network, depot, port);
    const int back = longest_simple_path(network, port, depot);
    if (there < 0 || back < 0) {
      throw InstanceError("depot " + std::to_string(network.nodes.at(static_cast<std::size_t>(depot)).id) +
                          " and port " + std::to_string(network.nodes.at(static_cast<std::size_t>(port)).id) +
                          " are disconnected");
    }
    longest = std::max({longest, there, back});
  }
  return longest * trips + cushion;
}

std::vector<int> eligible_trucks(const Instance& instance, int demand_index) {
  if (demand_index < 0 || demand_index >= instance.demand_count()) {
    throw InstanceError("unknown product index " + std::to_string(demand_index));
  }
  const Demand& d = instance.demands[static_cast<std::size_t>(demand_index)];
  std::vector<int> out;
  for (int v = 0; v < instance.truck_count(); ++v) {
    const Truck& t = instance.fleet[static_cast<std::size_t>(v)];
    const bool export_match = d.origin == t.depot && d.destination == t.port;
    const bool import_match = d.origin == t.port && d.destination == t.depot;
    if (export_match || import_match) out.push_back(v);
  }
  return out;
}

std::vector<int> eligible_trucks(const Instance& instance, const std::string& product) {
  for (int i = 0; i < instance.demand_count(); ++i) {
    if (instance.demands[static_cast<std::size_t>(i)].product == product) return eligible_trucks(instance, i);
  }
  throw InstanceError("unknown product '" + product + "'");
}

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  auto fail = [&](std::string path, std::string message) {
    report.issues.push_back({std::move(path), std::move(message)});
  };
  const auto& net = inst.network;
  const int node_count = inst.node_count();
  auto node_ok = [&](NodeIndex n) { return n >= 0 && n < node_count; };
  auto kind_of = [&](NodeIndex n) { return net.nodes[static_cast<std::size_t>(n)].kind; };

  if (inst.horizon < 1) fail("horizon", "horizon must be at least 1 period");
  const int P = std::max(inst.horizon, 1);

  // nodes
  std::set<int> ids;
  int depots = 0;
  int ports = 0;
  for (int i = 0; i < node_count; ++i) {
    const auto& n = net.nodes[static_cast<std::size_t>(i)];
    if (!ids.insert(n.id).second) fail("nodes[" + std::to_string(i) + "].id", "duplicate node id");
    depots += n.kind == NodeKind::depot;
    ports += n.kind == NodeKind::port;
  }
  if (depots == 0) fail("nodes", "at least one depot is required");
  if (ports == 0) fail("nodes", "at least one port is required");

  // segments
  std::set<std::pair<NodeIndex, NodeIndex>> arcs;
  for (std::size_t i = 0; i < net.segments.size(); ++i) {
    const auto& s = net.segments[i];
    const std::string path = "segments[" + std::to_string(i) + "]";
    if (!node_ok(s.from) || !node_ok(s.to)) {
      fail(path, "segment endpoints must be existing nodes");
      continue;
    }
    if (s.from == s.to) fail(path, "segment endpoints must be distinct");
    if (!arcs.emplace(s.from, s.to).second) fail(path, "duplicate directed segment");
    if (s.travel.size() != 1 && static_cast<int>(s.travel.size()) != P) {
      fail(path + ".travel", "travel time must be a scalar or one entry per period");
    }
    if (s.travel.empty() || *std::min_element(s.travel.begin(), s.travel.end()) < 1) {
      fail(path + ".travel", "travel times must be at least 1 period");
    }
  }

  // chargers
  std::set<NodeIndex> charger_nodes;
  for (std::size_t i = 0; i < net.chargers.size(); ++i) {
    const auto& c = net.chargers[i];
    const std::string path = "chargers[" + std::to_string(i) + "]";
    if (!node_ok(c.node)) {
      fail(path, "charger site must be an existing node");
      continue;
    }
    if (!charger_nodes.insert(c.node).second) fail(path, "duplicate charger site");
    if (c.chargers < 1) fail(path + ".count", "charger count must be at least 1");
    if (c.price.size() != 1 && static_cast<int>(c.price.size()) != P) {
      fail(path + ".price", "price must be a scalar or one entry per period");
    }
    if (std::any_of(c.price.begin(), c.price.end(), [](double p) { return p < 0.0; })) {
      fail(path + ".price", "charging prices must be non-negative");
    }
  }
  for (int i = 0; i < node_count; ++i) {
    const auto kind = kind_of(i);
    if (kind != NodeKind::plain && !charger_nodes.count(i)) {
      fail("nodes[" + std::to_string(i) + "]", std::string(to_string(kind)) + " must host charger");
    }
  }

  // fleet
  std::set<std::string> truck_ids;
  const bool segments_ok = well_formed_segments(net);
  for (int v = 0; v < inst.truck_count(); ++v) {
    const auto& t = inst.fleet[static_cast<std::size_t>(v)];
    const std::string path = "trucks[" + std::to_string(v) + "]";
    if (!truck_ids.insert(t.id).second) fail(path + ".id", "duplicate truck id");
    if (!node_ok(t.depot) || kind_of(t.depot) != NodeKind::depot) fail(path + ".depot", "home depot must be a depot node");
    if (!node_ok(t.port) || kind_of(t.port) != NodeKind::port) fail(path + ".port", "designated port must be a port node");
    if (t.available < 1 || t.available > P) fail(path + ".available", "availability must lie within the horizon");
    if (t.battery < 1) fail(path + ".battery", "battery ceiling must be positive");
    auto rates_ok = [&](const std::vector<int>& rates) {
      return !rates.empty() && std::all_of(rates.begin(), rates.end(), [](int r) { return r > 0; });
    };
    if (t.charge_rate <= 0 || !rates_ok(t.discharge_loaded) || !rates_ok(t.discharge_empty)) {
      fail(path, "rates must be positive");
    }
    for (const auto* rates : {&t.discharge_loaded, &t.discharge_empty}) {
      if (rates->size() != 1 && rates->size() != net.segments.size()) {
        fail(path, "per-segment discharge rates must match the segment count");
      }
    }
    if (segments_ok && node_ok(t.depot) && node_ok(t.port) &&
        (shortest_path(net, t.depot, t.port) < 0 || shortest_path(net, t.port, t.depot) < 0)) {
      fail(path, "home depot and designated port are disconnected");
    }
  }

  // demands
  std::set<std::string> products;
  std::set<std::pair<NodeIndex, NodeIndex>> lanes;
  for (int i = 0; i < inst.demand_count(); ++i) {
    const auto& d = inst.demands[static_cast<std::size_t>(i)];
    const std::string path = "demands[" + std::to_string(i) + "]";
    if (!products.insert(d.product).second) fail(path + ".product", "duplicate product id");
    if (d.quantity < 0) fail(path + ".quantity", "quantity must be non-negative");
    if (d.due < 0) fail(path + ".due", "due time must be non-negative");
    if (d.tardiness_penalty < 0.0) fail(path + ".tardiness_penalty", "penalty must be non-negative");
    if (!node_ok(d.destination) || kind_of(d.destination) == NodeKind::plain) {
      fail(path + ".destination", "destination must be a depot or a port");
      continue;
    }
    const NodeKind wanted = kind_of(d.destination) == NodeKind::port ? NodeKind::depot : NodeKind::port;
    if (!node_ok(d.origin) || kind_of(d.origin) != wanted) {
      fail(path + ".origin", "origin must be the opposite depot/port kind");
      continue;
    }
    if (!lanes.emplace(d.origin, d.destination).second) fail(path, "duplicate origin-destination lane");
    const int eligible = static_cast<int>(eligible_trucks(inst, i).size());
    if (inst.max_trips >= 0 && d.quantity > eligible * (inst.max_trips / 2)) {
      fail(path + ".quantity", "demand exceeds eligible trucks times round trips");
    }
  }

  // trips & horizon
  if (inst.max_trips < 0 || inst.max_trips % 2 != 0) fail("trips", "trip count must be even and non-negative");
  if (inst.parity != TripParity::odd_outbound) {
    fail("trip_parity", "only odd-outbound parity is supported (trip 1 leaves the depot)");
  }
  if (inst.labor_cost < 0.0) fail("costs.labor", "labor cost must be non-negative");
  if (report.ok() && inst.max_trips >= 2 && !inst.fleet.empty()) {
    int shortest_round_trip = std::numeric_limits<int>::max();
    for (const auto& t : inst.fleet) {
      shortest_round_trip =
          std::min(shortest_round_trip, shortest_path(net, t.depot, t.port) + shortest_path(net, t.port, t.depot));
    }
    if (inst.horizon < shortest_round_trip) {
      fail("horizon", "horizon shorter than the minimum round trip (" + std::to_string(shortest_round_trip) + ")");
    }
  }
  return report;
}

}  // namespace jrc
