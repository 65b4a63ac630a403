#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace jrc {

// Periods are 1-based: a horizon of P periods spans 1..P. A departure at
// period p over a segment of duration T arrives at the end of p + T - 1.
using Period = int;
// Index into Network::nodes (not the user-facing node id).
using NodeIndex = int;

// State of charge is kept on an integer lattice of basis points of the
// reference battery (10000 bp = 100 %).
inline constexpr int kFullCharge = 10000;

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { depot, port, plain };

struct Node {
  int id = 0;  // user-facing label, unique
  NodeKind kind = NodeKind::plain;
};

// Directed road segment. travel[p-1] is the duration when departing at
// period p; a single entry applies to every period.
struct Segment {
  NodeIndex from = 0;
  NodeIndex to = 0;
  std::vector<int> travel;

  int travel_time(Period p) const {
    return travel.size() == 1 ? travel.front() : travel.at(static_cast<std::size_t>(p - 1));
  }
};

struct ChargerSite {
  NodeIndex node = 0;
  int chargers = 1;
  // Price per occupied period; a single entry applies to every period.
  std::vector<double> price;

  double price_at(Period p) const {
    return price.size() == 1 ? price.front() : price.at(static_cast<std::size_t>(p - 1));
  }
};

struct Network {
  std::vector<Node> nodes;
  std::vector<Segment> segments;
  std::vector<ChargerSite> chargers;

  std::optional<NodeIndex> find_node(int id) const;
  // Index into `chargers` for the given node, or -1.
  int charger_of(NodeIndex n) const;
  bool is_charger(NodeIndex n) const { return charger_of(n) >= 0; }
};

struct Truck {
  std::string id;
  NodeIndex depot = 0;
  NodeIndex port = 0;
  Period available = 1;
  int charge_rate = 0;                 // bp gained per charging period
  std::vector<int> discharge_loaded;   // bp per driving period, per segment (size 1 = all)
  std::vector<int> discharge_empty;
  int battery = kFullCharge;           // SOC ceiling in bp of the reference battery

  int drain(int segment, bool loaded) const {
    const auto& rates = loaded ? discharge_loaded : discharge_empty;
    return rates.size() == 1 ? rates.front() : rates.at(static_cast<std::size_t>(segment));
  }
};

struct Demand {
  std::string product;
  NodeIndex origin = 0;
  NodeIndex destination = 0;
  int quantity = 0;
  Period due = 0;
  double tardiness_penalty = 0.0;
};

enum class TripParity { odd_outbound, even_outbound };

struct Instance {
  Network network;
  std::vector<Truck> fleet;
  std::vector<Demand> demands;
  int horizon = 0;     // P
  int max_trips = 0;   // T
  double labor_cost = 0.0;
  TripParity parity = TripParity::odd_outbound;
  nlohmann::json metadata = nlohmann::json::object();

  int truck_count() const { return static_cast<int>(fleet.size()); }
  int node_count() const { return static_cast<int>(network.nodes.size()); }
  int charger_count() const { return static_cast<int>(network.chargers.size()); }
  int demand_count() const { return static_cast<int>(demands.size()); }

  // Trip t (1-based) runs depot -> port when outbound.
  bool is_outbound(int trip) const {
    return parity == TripParity::odd_outbound ? (trip % 2 == 1) : (trip % 2 == 0);
  }
  NodeIndex trip_origin(int truck, int trip) const;
  NodeIndex trip_destination(int truck, int trip) const;

  // Demand index carried by a loaded trip of this truck, or -1 when no
  // product matches the trip's origin-destination pair.
  int product_for_trip(int truck, int trip) const;
  int outbound_product(int truck) const;
  int inbound_product(int truck) const;
};

struct ValidationIssue {
  std::string path;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate(const Instance& instance);

// 2 * ceil(max demand / fleet size). Throws InstanceError for an empty fleet.
int derive_trip_count(const std::vector<Demand>& demands, int fleet_size);
int derive_trip_count(int max_demand, int fleet_size);

// Longest loop-free path duration over every designated depot/port pair,
// multiplied by the trip count, plus the cushion. Time-dependent segments
// contribute their longest duration. Throws when a pair is disconnected.
int derive_horizon(const Network& network, const std::vector<Truck>& fleet, int trips, int cushion = 5);
int longest_simple_path(const Network& network, NodeIndex from, NodeIndex to);

// Trucks whose (home depot, designated port) pair matches the product's
// origin-destination pair. Throws for an unknown product.
std::vector<int> eligible_trucks(const Instance& instance, const std::string& product);
std::vector<int> eligible_trucks(const Instance& instance, int demand_index);

// JSON schema "jrc-instance/1". to_json emits the canonical form: sorted
// keys, directed segments, integers for periods and basis points.
nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);
std::string canonical_dump(const Instance& instance);
Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

const char* to_string(NodeKind kind);

}  // namespace jrc
