#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jrc/instance.hpp"
#include "jrc/model.hpp"
#include "jrc/schedule.hpp"

namespace jrc {

struct VerificationReport {
  // Total violation per constraint family, only families with a nonzero
  // residual are present. "domain" collects bound and integrality errors.
  std::map<std::string, double> residuals;
  // Demand components |load - D| followed by capacity overload per
  // (charger site, period), in CouplingLayout order.
  std::vector<double> coupling;
  CostBreakdown cost;
  bool feasible = false;

  std::string summary() const;
};

// Checks the logical (implication) forms of every constraint directly and
// recomputes the objective. Throws InstanceError when the assignment is not
// sized for the instance.
VerificationReport verify(const Instance& instance, const Assignment& assignment);
VerificationReport verify(const Instance& instance, std::span<const TruckSchedule> schedules);

// Per-truck part of verify (no coupling, no product rows); used to check
// subproblem output.
std::map<std::string, double> verify_truck(const Instance& instance, int truck, const TruckSchedule& schedule);

struct OracleLimits {
  int max_trucks = 2;
  int max_nodes = 5;
  int max_periods = 20;
  int max_trips = 2;
  std::int64_t node_budget = 20'000'000;  // search nodes across enumeration and combination
};

enum class OracleStatus { optimal, infeasible, budget_exceeded };

struct OracleResult {
  OracleStatus status = OracleStatus::infeasible;
  double cost = 0.0;
  std::vector<TruckSchedule> schedules;
  std::int64_t nodes = 0;
  std::string message;
};

// Visits every complete feasible schedule of one truck (trip-wise
// constraints only). Returns false when the node budget ran out.
bool for_each_schedule(const Instance& instance, int truck, std::int64_t node_budget,
                       const std::function<void(const TruckSchedule&)>& visit);

// Exact optimum by exhaustive per-truck enumeration and branch-and-bound
// over the cross product.
OracleResult brute_force_optimum(const Instance& instance, const OracleLimits& limits = {});

const char* to_string(OracleStatus status);

}  // namespace jrc
