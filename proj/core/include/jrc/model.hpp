#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jrc/instance.hpp"
#include "jrc/schedule.hpp"

namespace jrc {

enum class Family {
  trip, loaded, unload,
  depart, arrive, charge, charge_begin, charge_end,
  depart_time, arrive_time, begin_time, end_time,
  soc, overflow, full,
  last_depot_arrival, latest_unload, tardiness,
};

struct Column {
  double lower = 0.0;
  double upper = 0.0;
  bool integer = true;
};

// Flat column indexing of every decision family. Per-truck/per-trip blocks
// are laid out contiguously; the per-product families come last.
class VariableCatalog {
 public:
  explicit VariableCatalog(const Instance& instance);

  int size() const { return static_cast<int>(columns_.size()); }
  const Column& column(int j) const { return columns_.at(static_cast<std::size_t>(j)); }
  std::string name(int j) const;

  // trip is 1-based; `index` is the node, charger, or unused (0) as the family needs.
  int trip_var(int v, int t) const { return trip_base(v, t); }
  int loaded(int v, int t) const { return trip_base(v, t) + 1; }
  int unload(int v, int t) const { return trip_base(v, t) + 2; }
  int depart(int v, int t, NodeIndex n, Period p) const { return trip_base(v, t) + off_depart_ + n * P_ + p - 1; }
  int arrive(int v, int t, NodeIndex n, Period p) const { return trip_base(v, t) + off_arrive_ + n * P_ + p - 1; }
  int charge(int v, int t, int c, Period p) const { return trip_base(v, t) + off_charge_ + c * P_ + p - 1; }
  int charge_begin(int v, int t, int c, Period p) const { return trip_base(v, t) + off_begin_ + c * P_ + p - 1; }
  int charge_end(int v, int t, int c, Period p) const { return trip_base(v, t) + off_end_ + c * P_ + p - 1; }
  int depart_time(int v, int t, NodeIndex n) const { return trip_base(v, t) + off_d_ + n; }
  int arrive_time(int v, int t, NodeIndex n) const { return trip_base(v, t) + off_a_ + n; }
  int begin_time(int v, int t, int c) const { return trip_base(v, t) + off_b_ + c; }
  int end_time(int v, int t, int c) const { return trip_base(v, t) + off_c_ + c; }
  int soc(int v, int t, NodeIndex n) const { return trip_base(v, t) + off_soc_ + n; }
  int overflow(int v, int t, NodeIndex n) const { return trip_base(v, t) + off_overflow_ + n; }
  int full(int v, int t, NodeIndex n) const { return trip_base(v, t) + off_full_ + n; }
  int last_depot_arrival(int v) const { return v * truck_block_ + T_ * trip_block_; }
  int latest_unload(int d) const { return global_base_ + d; }
  int tardiness(int d) const { return global_base_ + D_ + d; }

  std::vector<double> flatten(const Assignment& assignment) const;

 private:
  int trip_base(int v, int t) const { return v * truck_block_ + (t - 1) * trip_block_; }

  int N_, C_, P_, T_, D_;
  int off_depart_, off_arrive_, off_charge_, off_begin_, off_end_;
  int off_d_, off_a_, off_b_, off_c_, off_soc_, off_overflow_, off_full_;
  int trip_block_, truck_block_, global_base_;
  std::vector<Column> columns_;
};

enum class Sense { le, ge, eq };

struct Term {
  int column = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;
  int tag = 0;        // index into CanonicalModel::tags
  double big_m = 0.0; // 0 when the row carries no big-M term
};

// Linearized constraint system of the per-truck and trip-connecting
// constraints plus the latest-unloading, tardiness and latest-arrival
// families. Coupling constraints are not part of it.
struct CanonicalModel {
  VariableCatalog catalog;
  std::vector<Constraint> rows;
  std::vector<std::string> tags;
  // Linear objective per column: C (abar_v - d_{v,depot,1}) + price x^chrg +
  // penalty tard. Exact at optimality since abar is only bounded from below.
  std::vector<double> cost;

  explicit CanonicalModel(const Instance& instance) : catalog(instance) {}
  std::map<std::string, int> tag_counts() const;
  const std::string& tag_of(const Constraint& row) const { return tags.at(static_cast<std::size_t>(row.tag)); }
};

CanonicalModel build_model(const Instance& instance);

struct RowViolation {
  int row = 0;
  double amount = 0.0;
};

struct ModelEvaluation {
  std::vector<RowViolation> violated_rows;
  std::vector<int> bound_violations;  // column indices out of bounds or fractional
  bool feasible() const { return violated_rows.empty() && bound_violations.empty(); }
};

ModelEvaluation evaluate(const CanonicalModel& model, std::span<const double> x, double tolerance = 1e-9);
ModelEvaluation evaluate(const CanonicalModel& model, const Assignment& assignment);

// Free-format MPS export (named rows and columns, integer markers, bounds).
void write_mps(const CanonicalModel& model, std::ostream& out, const std::string& name = "JRC");

struct CostBreakdown {
  double labor = 0.0;
  double charging = 0.0;
  double tardiness = 0.0;
  double total() const { return labor + charging + tardiness; }
};

CostBreakdown objective(const Instance& instance, const Assignment& assignment);
CostBreakdown objective(const Instance& instance, std::span<const TruckSchedule> schedules);

// Per-truck labor + charging cost O_v of a schedule.
double truck_cost(const Instance& instance, int truck, const TruckSchedule& schedule);

// Relaxed-constraint residuals in CouplingLayout order. Demand components
// are signed; capacity components are max(0, load - chargers).
std::vector<double> coupling_violations(const Instance& instance, std::span<const TruckSchedule> schedules);
std::vector<double> coupling_violations(const Instance& instance, const Assignment& assignment);

// Absolute-value Lagrangian: sum O_v + tardiness + lambda.H + rho*|H|_1 with
// tardiness taken from the joint latest unloading times.
double lagrangian_value(const Instance& instance, std::span<const TruckSchedule> schedules,
                        std::span<const double> multipliers, double rho);

double l1_norm(std::span<const double> h);
double squared_norm(std::span<const double> h);

}  // namespace jrc
