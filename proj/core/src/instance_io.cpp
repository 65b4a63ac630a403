#include <fstream>
#include <sstream>

#include "jrc/instance.hpp"

namespace jrc {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "jrc-instance/1";

template <typename T>
json scalar_or_array(const std::vector<T>& values) {
  if (values.size() == 1) return values.front();
  return values;
}

template <typename T>
std::vector<T> read_scalar_or_array(const json& j, const char* what) {
  if (j.is_array()) {
    auto out = j.get<std::vector<T>>();
    if (out.empty()) throw InstanceError(std::string(what) + " must not be empty");
    return out;
  }
  if (j.is_number()) return {j.get<T>()};
  throw InstanceError(std::string(what) + " must be a number or an array");
}

NodeKind kind_from_string(const std::string& s) {
  if (s == "depot") return NodeKind::depot;
  if (s == "port") return NodeKind::port;
  if (s == "plain") return NodeKind::plain;
  throw InstanceError("unknown node kind '" + s + "'");
}

}  // namespace

json to_json(const Instance& inst) {
  const auto& net = inst.network;
  auto id_of = [&](NodeIndex n) { return net.nodes.at(static_cast<std::size_t>(n)).id; };
  json j;
  j["schema"] = kSchema;
  j["nodes"] = json::array();
  for (const auto& n : net.nodes) j["nodes"].push_back({{"id", n.id}, {"kind", to_string(n.kind)}});
  j["segments"] = json::array();
  for (const auto& s : net.segments) {
    j["segments"].push_back({{"from", id_of(s.from)}, {"to", id_of(s.to)}, {"travel", scalar_or_array(s.travel)}});
  }
  j["chargers"] = json::array();
  for (const auto& c : net.chargers) {
    j["chargers"].push_back({{"node", id_of(c.node)}, {"count", c.chargers}, {"price", scalar_or_array(c.price)}});
  }
  j["trucks"] = json::array();
  for (const auto& t : inst.fleet) {
    j["trucks"].push_back({{"id", t.id},
                           {"depot", id_of(t.depot)},
                           {"port", id_of(t.port)},
                           {"available", t.available},
                           {"charge_rate", t.charge_rate},
                           {"discharge_loaded", scalar_or_array(t.discharge_loaded)},
                           {"discharge_empty", scalar_or_array(t.discharge_empty)},
                           {"battery", t.battery}});
  }
  j["demands"] = json::array();
  for (const auto& d : inst.demands) {
    j["demands"].push_back({{"product", d.product},
                            {"origin", id_of(d.origin)},
                            {"destination", id_of(d.destination)},
                            {"quantity", d.quantity},
                            {"due", d.due},
                            {"tardiness_penalty", d.tardiness_penalty}});
  }
  j["horizon"] = inst.horizon;
  j["trips"] = inst.max_trips;
  j["costs"] = {{"labor", inst.labor_cost}};
  j["trip_parity"] = inst.parity == TripParity::odd_outbound ? "odd_outbound" : "even_outbound";
  j["metadata"] = inst.metadata;
  return j;
}

Instance instance_from_json(const json& j) {
  try {
    if (j.value("schema", std::string{}) != kSchema) {
      throw InstanceError(std::string("expected schema '") + kSchema + "'");
    }
    Instance inst;
    auto& net = inst.network;
    for (const auto& n : j.at("nodes")) {
      net.nodes.push_back({n.at("id").get<int>(), kind_from_string(n.at("kind").get<std::string>())});
    }
    auto index_of = [&](const json& id) {
      auto found = net.find_node(id.get<int>());
      if (!found) throw InstanceError("unknown node id " + id.dump());
      return *found;
    };
    for (const auto& s : j.at("segments")) {
      Segment seg{index_of(s.at("from")), index_of(s.at("to")), read_scalar_or_array<int>(s.at("travel"), "travel")};
      const bool both = s.value("bidirectional", false);
      net.segments.push_back(seg);
      if (both) net.segments.push_back({seg.to, seg.from, seg.travel});
    }
    for (const auto& c : j.value("chargers", json::array())) {
      net.chargers.push_back(
          {index_of(c.at("node")), c.at("count").get<int>(), read_scalar_or_array<double>(c.at("price"), "price")});
    }
    for (const auto& t : j.at("trucks")) {
      Truck truck;
      truck.id = t.at("id").get<std::string>();
      truck.depot = index_of(t.at("depot"));
      truck.port = index_of(t.at("port"));
      truck.available = t.value("available", 1);
      truck.charge_rate = t.at("charge_rate").get<int>();
      truck.discharge_loaded = read_scalar_or_array<int>(t.at("discharge_loaded"), "discharge_loaded");
      truck.discharge_empty = read_scalar_or_array<int>(t.at("discharge_empty"), "discharge_empty");
      truck.battery = t.value("battery", kFullCharge);
      inst.fleet.push_back(std::move(truck));
    }
    for (const auto& d : j.value("demands", json::array())) {
      inst.demands.push_back({d.at("product").get<std::string>(), index_of(d.at("origin")),
                              index_of(d.at("destination")), d.at("quantity").get<int>(), d.at("due").get<int>(),
                              d.value("tardiness_penalty", 0.0)});
    }
    inst.horizon = j.at("horizon").get<int>();
    inst.max_trips = j.at("trips").get<int>();
    inst.labor_cost = j.at("costs").at("labor").get<double>();
    const std::string parity = j.value("trip_parity", std::string("odd_outbound"));
    if (parity == "odd_outbound") {
      inst.parity = TripParity::odd_outbound;
    } else if (parity == "even_outbound") {
      inst.parity = TripParity::even_outbound;
    } else {
      throw InstanceError("unknown trip parity '" + parity + "'");
    }
    inst.metadata = j.value("metadata", json::object());
    return inst;
  } catch (const json::exception& e) {
    throw InstanceError(std::string("malformed instance: ") + e.what());
  }
}

std::string canonical_dump(const Instance& instance) { return to_json(instance).dump(2) + "\n"; }

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InstanceError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write " + path);
  out << canonical_dump(instance);
}

}  // namespace jrc
