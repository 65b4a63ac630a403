#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "jrc/instance.hpp"
#include "jrc/schedule.hpp"

namespace jrc {

// What the other trucks contribute, frozen at the previous iterate.
struct FixedContext {
  std::vector<int> occupancy;  // [charger * P + p - 1] trucks charging
  std::vector<int> loads;      // per demand
  std::vector<int> latest;     // per demand, latest unloading time
};

FixedContext make_context(const Instance& instance, std::span<const TruckSchedule> schedules, int excluded_truck);

// Demand-related terms of one product as seen by the truck being solved:
//   lambda * h + rho * |h|,  h = fixed_load + own_load - quantity
//   + weight * penalty * max(0, max(fixed_latest, own_latest) - due)
struct DemandTerm {
  int fixed_load = 0;
  int quantity = 0;
  double lambda = 0.0;
  double rho = 0.0;
  int fixed_latest = 0;
  int due = 0;
  double penalty = 0.0;
  double tardiness_weight = 1.0;

  double value(int own_load, int own_latest) const;
};

// Additive and terminal prices of a truck subproblem.
struct Pricing {
  std::vector<double> charge;       // [charger * P + p - 1] cost of occupying one charger
  std::vector<DemandTerm> demands;  // per demand
  double constant = 0.0;            // capacity terms independent of this truck
};

// Prices of the penalized subproblem: O_v + tardiness + Lambda.H + rho*|H|_1
// with the other trucks fixed; capacity components use max(0, load - C).
Pricing exact_pricing(const Instance& instance, std::span<const double> multipliers, double rho,
                      const FixedContext& context);

// Prices of the unpenalized, fully decoupled subproblem used for the dual
// bound: the truck pays lambda per unit of its own load and charger use and
// 1/|eligible| of the tardiness of its own products.
Pricing dual_pricing(const Instance& instance, int truck, std::span<const double> multipliers);

// Value of a given schedule under the pricing.
double schedule_value(const Instance& instance, int truck, const TruckSchedule& schedule, const Pricing& pricing);

struct SearchOptions {
  bool dominance = true;
  // Prune labels whose completion bound cannot beat the best value found.
  bool bounding = true;
  std::int64_t label_budget = 50'000'000;
};

enum class SubproblemFlag { improved, exact_optimal, budget_exceeded };

struct SubproblemResult {
  TruckSchedule schedule;
  double value = std::numeric_limits<double>::infinity();
  SubproblemFlag flag = SubproblemFlag::exact_optimal;
  std::int64_t labels = 0;
};

// Global minimizer of the priced subproblem. The idle schedule is always
// feasible, so a result always exists unless the label budget runs out, in
// which case the best schedule seen is returned with budget_exceeded.
SubproblemResult solve_exact(const Instance& instance, int truck, const Pricing& pricing,
                             const SearchOptions& options = {});

// Stops at the first schedule valued strictly below `incumbent_value`
// (flag improved); otherwise returns the exact optimum.
SubproblemResult solve_surrogate(const Instance& instance, int truck, const Pricing& pricing, double incumbent_value,
                                 const SearchOptions& options = {});

// Improvement margin used by solve_surrogate to avoid accepting a schedule
// whose value differs from the incumbent only by rounding.
inline constexpr double kImprovementTolerance = 1e-9;

}  // namespace jrc
