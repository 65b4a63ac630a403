#include "jrc/solution_io.hpp"

#include <cmath>
#include <fstream>

#include "jrc/model.hpp"

namespace jrc {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "jrc-solution/1";

}  // namespace

json solution_to_json(const Instance& inst, std::span<const TruckSchedule> schedules) {
  const auto& nodes = inst.network.nodes;
  auto id = [&](NodeIndex n) { return nodes.at(static_cast<std::size_t>(n)).id; };
  json j;
  j["schema"] = kSchema;
  j["trucks"] = json::array();
  for (std::size_t v = 0; v < schedules.size(); ++v) {
    json truck;
    truck["id"] = inst.fleet.at(v).id;
    truck["trips"] = json::array();
    for (const auto& trip : schedules[v].trips) {
      json t;
      t["loaded"] = trip.loaded;
      t["legs"] = json::array();
      for (const auto& leg : trip.legs) t["legs"].push_back({id(leg.from), id(leg.to), leg.depart, leg.arrive});
      t["charges"] = json::array();
      for (const auto& c : trip.charges) t["charges"].push_back({id(c.node), c.first, c.last});
      truck["trips"].push_back(std::move(t));
    }
    j["trucks"].push_back(std::move(truck));
  }
  const auto cost = objective(inst, schedules);
  j["cost"] = {{"labor", cost.labor}, {"charging", cost.charging}, {"tardiness", cost.tardiness}, {"total", cost.total()}};
  return j;
}

std::vector<TruckSchedule> solution_from_json(const Instance& inst, const json& j) {
  if (j.value("schema", std::string{}) != kSchema) throw InstanceError(std::string("expected schema '") + kSchema + "'");
  const auto& net = inst.network;
  auto index = [&](const json& id) {
    auto found = net.find_node(id.get<int>());
    if (!found) throw InstanceError("unknown node id " + id.dump());
    return *found;
  };
  std::vector<TruckSchedule> out(static_cast<std::size_t>(inst.truck_count()));
  try {
    const auto& trucks = j.at("trucks");
    if (trucks.size() != out.size()) throw InstanceError("solution truck count does not match the instance");
    for (std::size_t v = 0; v < out.size(); ++v) {
      if (trucks[v].at("id").get<std::string>() != inst.fleet[v].id) {
        throw InstanceError("solution truck " + std::to_string(v) + " has an unexpected id");
      }
      for (const auto& t : trucks[v].at("trips")) {
        Trip trip;
        trip.loaded = t.at("loaded").get<bool>();
        for (const auto& l : t.at("legs")) {
          Leg leg;
          leg.from = index(l.at(0));
          leg.to = index(l.at(1));
          leg.depart = l.at(2).get<int>();
          leg.arrive = l.at(3).get<int>();
          leg.segment = -1;
          for (std::size_t s = 0; s < net.segments.size(); ++s) {
            const auto& seg = net.segments[s];
            if (seg.from != leg.from || seg.to != leg.to) continue;
            if (leg.depart < 1 || leg.depart > inst.horizon) break;
            if (seg.travel_time(leg.depart) == leg.arrive - leg.depart + 1) leg.segment = static_cast<int>(s);
            break;
          }
          if (leg.segment < 0) throw InstanceError("leg " + l.dump() + " matches no segment");
          trip.legs.push_back(leg);
        }
        for (const auto& c : t.value("charges", json::array())) {
          trip.charges.push_back({index(c.at(0)), c.at(1).get<int>(), c.at(2).get<int>()});
        }
        out[v].trips.push_back(std::move(trip));
      }
    }
  } catch (const json::exception& e) {
    throw InstanceError(std::string("malformed solution: ") + e.what());
  }
  return out;
}

std::vector<TruckSchedule> load_solution(const Instance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InstanceError(path + ": " + e.what());
  }
  return solution_from_json(inst, j);
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError("cannot write " + path);
  out << j.dump(2) << '\n';
}

json run_to_json(const Instance& inst, const RunResult& r) {
  json j = r.feasible ? solution_to_json(inst, r.best) : json{{"schema", kSchema}, {"trucks", json::array()}};
  j["status"] = r.feasible ? "feasible" : "noFeasible";
  j["run"] = {{"iterations", r.iterations},
              {"subproblem_solves", r.solves},
              {"solves_at_best", r.solves_at_best},
              {"iteration_at_best", r.iteration_at_best},
              {"elapsed_s", r.elapsed_s},
              {"stop_reason", r.stop_reason}};
  if (r.dual_bound) j["run"]["dual_bound"] = *r.dual_bound;
  j["multipliers"] = r.multipliers;
  return j;
}

}  // namespace jrc
