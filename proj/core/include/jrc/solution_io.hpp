#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jrc/coordinator.hpp"
#include "jrc/instance.hpp"
#include "jrc/schedule.hpp"

namespace jrc {

// JSON schema "jrc-solution/1": per-truck trips with legs
// [from, to, depart, arrive] and charges [node, first, last] in node ids.
nlohmann::json solution_to_json(const Instance& instance, std::span<const TruckSchedule> schedules);
// Resolves each leg to its segment; throws InstanceError when a leg does
// not match a segment whose travel time fits the depart/arrive periods.
std::vector<TruckSchedule> solution_from_json(const Instance& instance, const nlohmann::json& j);

std::vector<TruckSchedule> load_solution(const Instance& instance, const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);

// Solution document plus run statistics.
nlohmann::json run_to_json(const Instance& instance, const RunResult& result);

}  // namespace jrc
