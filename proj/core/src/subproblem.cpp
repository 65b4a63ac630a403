#include "jrc/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "jrc/model.hpp"

namespace jrc {

FixedContext make_context(const Instance& inst, std::span<const TruckSchedule> schedules, int excluded) {
  FixedContext ctx;
  const int P = inst.horizon;
  ctx.occupancy.assign(static_cast<std::size_t>(inst.charger_count() * P), 0);
  ctx.loads.assign(static_cast<std::size_t>(inst.demand_count()), 0);
  ctx.latest.assign(static_cast<std::size_t>(inst.demand_count()), 0);
  for (std::size_t v = 0; v < schedules.size(); ++v) {
    if (static_cast<int>(v) == excluded) continue;
    for (std::size_t ti = 0; ti < schedules[v].trips.size(); ++ti) {
      const Trip& trip = schedules[v].trips[ti];
      const int d = inst.product_for_trip(static_cast<int>(v), static_cast<int>(ti) + 1);
      if (trip.loaded && d >= 0) {
        ++ctx.loads[static_cast<std::size_t>(d)];
        auto& latest = ctx.latest[static_cast<std::size_t>(d)];
        latest = std::max(latest, trip.legs.back().arrive);
      }
      for (const auto& block : trip.charges) {
        const int ci = inst.network.charger_of(block.node);
        for (Period p = block.first; p <= block.last; ++p) ++ctx.occupancy[static_cast<std::size_t>(ci * P + p - 1)];
      }
    }
  }
  return ctx;
}

double DemandTerm::value(int own_load, int own_latest) const {
  const double h = fixed_load + own_load - quantity;
  const int latest = std::max(fixed_latest, own_latest);
  return lambda * h + rho * std::abs(h) + tardiness_weight * penalty * std::max(0, latest - due);
}

Pricing exact_pricing(const Instance& inst, std::span<const double> lambda, double rho, const FixedContext& ctx) {
  const CouplingLayout layout(inst);
  if (static_cast<int>(lambda.size()) != layout.size()) throw InstanceError("multiplier dimension mismatch");
  const int P = inst.horizon;
  Pricing pricing;
  pricing.charge.assign(static_cast<std::size_t>(inst.charger_count() * P), 0.0);
  for (int ci = 0; ci < inst.charger_count(); ++ci) {
    const auto& site = inst.network.chargers[static_cast<std::size_t>(ci)];
    for (Period p = 1; p <= P; ++p) {
      const auto k = static_cast<std::size_t>(ci * P + p - 1);
      const double weight = lambda[static_cast<std::size_t>(layout.capacity_component(ci, p))] + rho;
      const int occ = ctx.occupancy[k];
      pricing.charge[k] = site.price_at(p) + (occ >= site.chargers ? weight : 0.0);
      pricing.constant += weight * std::max(0, occ - site.chargers);
    }
  }
  for (int d = 0; d < inst.demand_count(); ++d) {
    const auto& dem = inst.demands[static_cast<std::size_t>(d)];
    DemandTerm term;
    term.fixed_load = ctx.loads[static_cast<std::size_t>(d)];
    term.quantity = dem.quantity;
    term.lambda = lambda[static_cast<std::size_t>(layout.component_of[static_cast<std::size_t>(d)])];
    term.rho = rho;
    term.fixed_latest = ctx.latest[static_cast<std::size_t>(d)];
    term.due = dem.due;
    term.penalty = dem.tardiness_penalty;
    pricing.demands.push_back(term);
  }
  return pricing;
}

Pricing dual_pricing(const Instance& inst, int truck, std::span<const double> lambda) {
  const CouplingLayout layout(inst);
  if (static_cast<int>(lambda.size()) != layout.size()) throw InstanceError("multiplier dimension mismatch");
  const int P = inst.horizon;
  Pricing pricing;
  pricing.charge.assign(static_cast<std::size_t>(inst.charger_count() * P), 0.0);
  for (int ci = 0; ci < inst.charger_count(); ++ci) {
    const auto& site = inst.network.chargers[static_cast<std::size_t>(ci)];
    for (Period p = 1; p <= P; ++p) {
      pricing.charge[static_cast<std::size_t>(ci * P + p - 1)] =
          site.price_at(p) + lambda[static_cast<std::size_t>(layout.capacity_component(ci, p))];
    }
  }
  for (int d = 0; d < inst.demand_count(); ++d) {
    const auto& dem = inst.demands[static_cast<std::size_t>(d)];
    DemandTerm term;
    term.lambda = lambda[static_cast<std::size_t>(layout.component_of[static_cast<std::size_t>(d)])];
    term.due = dem.due;
    term.penalty = dem.tardiness_penalty;
    const auto eligible = eligible_trucks(inst, d);
    const bool mine = std::find(eligible.begin(), eligible.end(), truck) != eligible.end();
    term.tardiness_weight = mine ? 1.0 / static_cast<double>(eligible.size()) : 0.0;
    pricing.demands.push_back(term);
  }
  return pricing;
}

namespace {

// Demand terms for own loads/latest per direction (0 outbound, 1 inbound).
double terminal_terms(const Instance& inst, int v, const Pricing& pricing, const int load[2], const int latest[2]) {
  const int product[2] = {inst.outbound_product(v), inst.inbound_product(v)};
  double value = pricing.constant;
  for (int d = 0; d < static_cast<int>(pricing.demands.size()); ++d) {
    int own_load = 0, own_latest = 0;
    for (int dir = 0; dir < 2; ++dir) {
      if (product[dir] == d) {
        own_load += load[dir];
        own_latest = std::max(own_latest, latest[dir]);
      }
    }
    value += pricing.demands[static_cast<std::size_t>(d)].value(own_load, own_latest);
  }
  return value;
}

}  // namespace

double schedule_value(const Instance& inst, int v, const TruckSchedule& schedule, const Pricing& pricing) {
  const Truck& truck = inst.fleet.at(static_cast<std::size_t>(v));
  const int P = inst.horizon;
  double cost = 0.0;
  int load[2] = {0, 0};
  int latest[2] = {0, 0};
  if (!schedule.trips.empty()) {
    Period last = 0;
    for (std::size_t ti = 0; ti < schedule.trips.size(); ++ti) {
      const Trip& trip = schedule.trips[ti];
      const int t = static_cast<int>(ti) + 1;
      const int dir = inst.is_outbound(t) ? 0 : 1;
      if (trip.loaded) {
        ++load[dir];
        latest[dir] = std::max(latest[dir], trip.legs.back().arrive);
      }
      if (trip.legs.back().to == truck.depot) last = std::max(last, trip.legs.back().arrive);
      for (const auto& block : trip.charges) {
        const int ci = inst.network.charger_of(block.node);
        for (Period p = block.first; p <= block.last; ++p) cost += pricing.charge[static_cast<std::size_t>(ci * P + p - 1)];
      }
    }
    cost += inst.labor_cost * (last - schedule.trips.front().legs.front().depart);
  }
  return cost + terminal_terms(inst, v, pricing, load, latest);
}

namespace {

enum class Phase : std::uint8_t { fresh, charging, post_charge };
enum class Action : std::uint8_t { start, wait, charge, depart };

struct Label {
  double cost = 0.0;
  int soc = 0;
  int parent = -1;
  Action action = Action::start;
  int action_arg = 0;  // segment for depart
  Period action_period = 0;
  std::uint8_t t = 0;
  bool boundary = true;  // at the end node of trip t (or at the depot before trip 1)
  bool loaded = false;
  Phase phase = Phase::fresh;
  NodeIndex node = 0;
  Period period = 0;
  std::uint8_t load[2] = {0, 0};
  Period latest[2] = {0, 0};
  std::uint64_t visited = 0;
  std::vector<std::uint32_t> forbidden;  // node << 16 | arrival period, sorted
  bool dead = false;
};

std::uint32_t forbid_code(NodeIndex n, Period q) { return (static_cast<std::uint32_t>(n) << 16) | static_cast<std::uint32_t>(q); }

class LabelSearch {
 public:
  LabelSearch(const Instance& inst, int v, const Pricing& pricing, const SearchOptions& options, bool surrogate,
              double incumbent)
      : inst_(inst),
        v_(v),
        truck_(inst.fleet.at(static_cast<std::size_t>(v))),
        pricing_(pricing),
        options_(options),
        surrogate_(surrogate),
        incumbent_(incumbent) {
    const int N = inst.node_count();
    dist_.assign(static_cast<std::size_t>(N * N), kUnreachable);
    for (int n = 0; n < N; ++n) dist_[static_cast<std::size_t>(n * N + n)] = 0;
    for (const auto& seg : inst.network.segments) {
      auto& d = dist_[static_cast<std::size_t>(seg.from * N + seg.to)];
      d = std::min(d, *std::min_element(seg.travel.begin(), seg.travel.end()));
    }
    for (int k = 0; k < N; ++k) {
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          auto& d = dist_[static_cast<std::size_t>(i * N + j)];
          d = std::min(d, dist_[static_cast<std::size_t>(i * N + k)] + dist_[static_cast<std::size_t>(k * N + j)]);
        }
      }
    }
    // Tardiness only sees max(fixed latest, own latest) beyond the due
    // time, so unloading times below that threshold are interchangeable.
    const int product[2] = {inst.outbound_product(v), inst.inbound_product(v)};
    for (int dir = 0; dir < 2; ++dir) {
      if (product[dir] < 0) continue;
      const DemandTerm& term = pricing.demands[static_cast<std::size_t>(product[dir])];
      if (term.penalty * term.tardiness_weight > 0.0) {
        latest_floor_[dir] = std::max(term.fixed_latest, term.due);
      } else {
        latest_floor_[dir] = -1;
      }
    }
    // charge_floor_[p]: cheapest possible charging from period p on, when
    // prices can go negative.
    const int P = inst.horizon;
    charge_floor_.assign(static_cast<std::size_t>(P + 2), 0.0);
    for (Period p = P; p >= 1; --p) {
      double cheapest = 0.0;
      for (int c = 0; c < inst.charger_count(); ++c) {
        cheapest = std::min(cheapest, pricing.charge[static_cast<std::size_t>(c * P + p - 1)]);
      }
      charge_floor_[static_cast<std::size_t>(p)] = charge_floor_[static_cast<std::size_t>(p + 1)] + cheapest;
    }
  }

  SubproblemResult run() {
    const int P = inst_.horizon;
    if (inst_.node_count() > 64) throw InstanceError("label search supports at most 64 nodes");
    buckets_.assign(static_cast<std::size_t>(P + 2), {});
    const int zero[2] = {0, 0};
    // The idle schedule.
    best_value_ = terminal_terms(inst_, v_, pricing_, zero, zero);
    best_label_ = -1;
    if (surrogate_ && best_value_ < incumbent_ - kImprovementTolerance) return finish(SubproblemFlag::improved);
    if (inst_.max_trips > 0 && truck_.available <= P) {
      Label start;
      start.node = truck_.depot;
      start.period = std::max(1, truck_.available);
      start.soc = truck_.battery;
      insert(std::move(start));
    }
    for (Period p = 1; p <= P; ++p) {
      auto& bucket = buckets_[static_cast<std::size_t>(p)];
      for (std::size_t i = 0; i < bucket.size(); ++i) {
        const int id = bucket[i];
        if (labels_[static_cast<std::size_t>(id)].dead || hopeless(labels_[static_cast<std::size_t>(id)])) continue;
        expand(id);
        if (stop_) return finish(stop_flag_);
      }
      bucket.clear();
      bucket.shrink_to_fit();
    }
    return finish(SubproblemFlag::exact_optimal);
  }

 private:
  SubproblemResult finish(SubproblemFlag flag) {
    SubproblemResult out;
    out.value = best_value_;
    out.flag = flag;
    out.labels = static_cast<std::int64_t>(labels_.size());
    out.schedule = rebuild(best_label_);
    return out;
  }

  TruckSchedule rebuild(int id) const {
    TruckSchedule s;
    if (id < 0) return s;
    std::vector<int> chain;
    for (int k = id; k >= 0; k = labels_[static_cast<std::size_t>(k)].parent) chain.push_back(k);
    std::reverse(chain.begin(), chain.end());
    for (std::size_t i = 1; i < chain.size(); ++i) {
      const Label& prev = labels_[static_cast<std::size_t>(chain[i - 1])];
      const Label& cur = labels_[static_cast<std::size_t>(chain[i])];
      if (cur.action == Action::depart) {
        if (prev.boundary) s.trips.push_back(Trip{});
        const auto& seg = inst_.network.segments[static_cast<std::size_t>(cur.action_arg)];
        const Period q = cur.action_period + seg.travel_time(cur.action_period) - 1;
        s.trips.back().legs.push_back(Leg{seg.from, seg.to, cur.action_arg, cur.action_period, q});
      } else if (cur.action == Action::charge) {
        auto& charges = s.trips.back().charges;
        if (!charges.empty() && charges.back().node == prev.node && charges.back().last == cur.action_period - 1) {
          charges.back().last = cur.action_period;
        } else {
          charges.push_back(ChargeBlock{prev.node, cur.action_period, cur.action_period});
        }
      }
    }
    // Load flags are recorded on the label that started each trip.
    int trip = -1;
    for (std::size_t i = 1; i < chain.size(); ++i) {
      const Label& prev = labels_[static_cast<std::size_t>(chain[i - 1])];
      const Label& cur = labels_[static_cast<std::size_t>(chain[i])];
      if (cur.action == Action::depart && prev.boundary) {
        ++trip;
        s.trips[static_cast<std::size_t>(trip)].loaded = start_loaded_[static_cast<std::size_t>(chain[i])] != 0;
      }
    }
    return s;
  }

  int dist(NodeIndex a, NodeIndex b) const { return dist_[static_cast<std::size_t>(a * inst_.node_count() + b)]; }

  // Lower bound on the final value of any completion of `l`: labor for the
  // shortest remaining driving time plus the best terminal terms over the
  // loads still reachable, plus any negative charging prices ahead.
  double completion_bound(const Label& l) const {
    const NodeIndex depot = truck_.depot;
    const NodeIndex port = truck_.port;
    const int round_trip = dist(depot, port) + dist(port, depot);
    int travel = 0;
    int load[2] = {l.load[0], l.load[1]};
    if (l.t == 0) {
      travel = round_trip;
    } else if (!l.boundary) {
      travel = dist(l.node, inst_.trip_destination(v_, l.t));
      if (inst_.is_outbound(l.t)) travel += dist(port, depot);
      if (l.loaded) ++load[inst_.is_outbound(l.t) ? 0 : 1];
    } else {
      travel = inst_.is_outbound(l.t) ? dist(port, depot) : round_trip;
    }
    if (travel >= kUnreachable) return std::numeric_limits<double>::infinity();
    int open[2] = {0, 0};
    for (int t = l.t + 1; t <= inst_.max_trips; ++t) {
      if (inst_.product_for_trip(v_, t) >= 0) ++open[inst_.is_outbound(t) ? 0 : 1];
    }
    const int latest[2] = {l.latest[0], l.latest[1]};
    double terminal = std::numeric_limits<double>::infinity();
    for (int a = load[0]; a <= load[0] + open[0]; ++a) {
      for (int b = load[1]; b <= load[1] + open[1]; ++b) {
        const int loads[2] = {a, b};
        terminal = std::min(terminal, terminal_terms(inst_, v_, pricing_, loads, latest));
      }
    }
    // Before the first departure the span is at least the driving time less
    // one, since labor runs from the departure period to the last arrival.
    const double labor = l.t == 0 ? inst_.labor_cost * (travel - 1) : inst_.labor_cost * (l.period - 1 + travel);
    const double charging = charge_floor_[static_cast<std::size_t>(std::clamp(l.period, 1, inst_.horizon + 1))];
    return l.cost + labor + terminal + charging;
  }

  bool hopeless(const Label& l) const {
    return options_.bounding && completion_bound(l) >= best_value_ - kBoundSlack;
  }

  Period normalized_latest(int dir, Period q) const {
    return latest_floor_[dir] < 0 ? 0 : std::max(q, latest_floor_[dir]);
  }

  std::uint64_t key_of(const Label& l) const {
    std::uint64_t k = l.t;
    k = (k << 1) | (l.boundary ? 1u : 0u);
    k = (k << 1) | (l.loaded ? 1u : 0u);
    k = (k << 8) | static_cast<std::uint64_t>(l.node);
    k = (k << 16) | static_cast<std::uint64_t>(l.period);
    k = (k << 8) | l.load[0];
    k = (k << 8) | l.load[1];
    return k;
  }

  // Phases are ordered by the actions they still allow: fresh, charging,
  // post_charge.
  static bool dominates(const Label& a, const Label& b) {
    if (a.cost > b.cost || a.soc < b.soc || a.phase > b.phase) return false;
    if (a.latest[0] > b.latest[0] || a.latest[1] > b.latest[1]) return false;
    if ((a.visited & ~b.visited) != 0) return false;
    return std::includes(b.forbidden.begin(), b.forbidden.end(), a.forbidden.begin(), a.forbidden.end());
  }

  void insert(Label l, int start_loaded = 0) {
    if (static_cast<std::int64_t>(labels_.size()) >= options_.label_budget) {
      stop_ = true;
      stop_flag_ = SubproblemFlag::budget_exceeded;
      return;
    }
    if (hopeless(l)) return;
    const std::uint64_t key = key_of(l);
    auto& peers = frontier_[key];
    if (options_.dominance) {
      for (int id : peers) {
        if (!labels_[static_cast<std::size_t>(id)].dead && dominates(labels_[static_cast<std::size_t>(id)], l)) return;
      }
      for (int id : peers) {
        auto& other = labels_[static_cast<std::size_t>(id)];
        if (!other.dead && dominates(l, other)) other.dead = true;
      }
      std::erase_if(peers, [&](int id) { return labels_[static_cast<std::size_t>(id)].dead; });
    }
    const int id = static_cast<int>(labels_.size());
    const Period p = l.period;
    labels_.push_back(std::move(l));
    start_loaded_.push_back(static_cast<std::uint8_t>(start_loaded));
    peers.push_back(id);
    buckets_[static_cast<std::size_t>(p)].push_back(id);
  }

  void expand(int id) {
    // Copy: insert() may reallocate the arena.
    const Label cur = labels_[static_cast<std::size_t>(id)];
    const int P = inst_.horizon;
    const Period p = cur.period;
    const int ci = inst_.network.charger_of(cur.node);

    // Wait one period.
    if (p + 1 <= P) {
      Label next = cur;
      next.parent = id;
      next.action = Action::wait;
      next.action_period = p;
      next.period = p + 1;
      if (next.phase == Phase::charging) next.phase = Phase::post_charge;
      prune_forbidden(next);
      insert(std::move(next));
      if (stop_) return;
    }

    // Charge one period. Charging at a trip end belongs to the trip just
    // completed, so there is none before the first trip.
    const bool may_charge = ci >= 0 && cur.t >= 1 && cur.phase != Phase::post_charge;
    if (may_charge) {
      Label next = cur;
      next.parent = id;
      next.action = Action::charge;
      next.action_period = p;
      next.period = p + 1;
      next.phase = Phase::charging;
      next.soc = std::min(truck_.battery, cur.soc + truck_.charge_rate);
      next.cost += pricing_.charge[static_cast<std::size_t>(ci * P + p - 1)];
      prune_forbidden(next);
      if (next.period <= P) {
        insert(std::move(next));
        if (stop_) return;
      }
    }

    // Depart.
    const bool starts_trip = cur.boundary;
    if (starts_trip && cur.t >= inst_.max_trips) return;
    const int t = starts_trip ? cur.t + 1 : cur.t;
    const NodeIndex origin = inst_.trip_origin(v_, t);
    const NodeIndex dest = inst_.trip_destination(v_, t);
    const std::uint64_t visited = starts_trip ? (std::uint64_t{1} << origin) : cur.visited;
    const bool can_load = inst_.product_for_trip(v_, t) >= 0;
    const auto& segments = inst_.network.segments;
    for (std::size_t r = 0; r < segments.size(); ++r) {
      const auto& seg = segments[r];
      if (seg.from != cur.node || (visited >> seg.to & 1u) != 0) continue;
      const int travel = seg.travel_time(p);
      const Period q = p + travel - 1;
      if (q > P) continue;
      if (!starts_trip && std::binary_search(cur.forbidden.begin(), cur.forbidden.end(), forbid_code(seg.to, q))) continue;
      for (int loaded = 0; loaded <= 1; ++loaded) {
        const bool is_loaded = starts_trip ? loaded == 1 : cur.loaded;
        if (starts_trip && loaded == 1 && !can_load) break;
        if (!starts_trip && loaded == 1) break;
        const int left = cur.soc - travel * truck_.drain(static_cast<int>(r), is_loaded);
        if (left < 0) continue;
        Label next;
        next.parent = id;
        next.action = Action::depart;
        next.action_arg = static_cast<int>(r);
        next.action_period = p;
        next.t = static_cast<std::uint8_t>(t);
        next.soc = left;
        next.node = seg.to;
        next.period = q + 1;
        next.load[0] = cur.load[0];
        next.load[1] = cur.load[1];
        next.latest[0] = cur.latest[0];
        next.latest[1] = cur.latest[1];
        next.cost = cur.cost;
        if (starts_trip && cur.t == 0) next.cost -= inst_.labor_cost * p;
        if (seg.to == dest) {
          next.boundary = true;
          next.loaded = false;
          if (is_loaded) {
            const int dir = inst_.is_outbound(t) ? 0 : 1;
            ++next.load[dir];
            next.latest[dir] = normalized_latest(dir, q);
          }
          if (seg.to == truck_.depot) {
            const int load[2] = {next.load[0], next.load[1]};
            const int latest[2] = {next.latest[0], next.latest[1]};
            const double value = next.cost + inst_.labor_cost * q + terminal_terms(inst_, v_, pricing_, load, latest);
            const bool improves = surrogate_ && value < incumbent_ - kImprovementTolerance;
            if (value < best_value_ || improves) {
              // Kept for reconstruction even when the label is not expandable.
              const int lid = static_cast<int>(labels_.size());
              labels_.push_back(next);
              start_loaded_.push_back(static_cast<std::uint8_t>(starts_trip ? loaded : 0));
              best_value_ = value;
              best_label_ = lid;
            }
            if (improves) {
              stop_ = true;
              stop_flag_ = SubproblemFlag::improved;
              return;
            }
          }
        } else {
          next.boundary = false;
          next.loaded = is_loaded;
          next.visited = visited | (std::uint64_t{1} << seg.to);
          // Arrivals that would line up with this departure over another
          // direct segment are ruled out for the rest of the trip.
          next.forbidden = starts_trip ? std::vector<std::uint32_t>{} : cur.forbidden;
          for (const auto& other : segments) {
            if (other.from != cur.node || other.to == seg.to || (visited >> other.to & 1u) != 0) continue;
            const Period qq = p + other.travel_time(p) - 1;
            if (qq <= P) next.forbidden.push_back(forbid_code(other.to, qq));
          }
          std::sort(next.forbidden.begin(), next.forbidden.end());
          next.forbidden.erase(std::unique(next.forbidden.begin(), next.forbidden.end()), next.forbidden.end());
          prune_forbidden(next);
        }
        if (next.period <= P) {
          insert(std::move(next), starts_trip ? loaded : 0);
          if (stop_) return;
        }
      }
    }
  }

  // Entries that can no longer match a future arrival carry no information.
  static void prune_forbidden(Label& l) {
    std::erase_if(l.forbidden, [&](std::uint32_t code) {
      const auto node = static_cast<NodeIndex>(code >> 16);
      const auto q = static_cast<Period>(code & 0xffffu);
      return q < l.period || (l.visited >> node & 1u) != 0;
    });
  }

  const Instance& inst_;
  int v_;
  const Truck& truck_;
  const Pricing& pricing_;
  SearchOptions options_;
  bool surrogate_;
  double incumbent_;
  std::vector<Label> labels_;
  std::vector<std::uint8_t> start_loaded_;
  std::vector<std::vector<int>> buckets_;
  std::unordered_map<std::uint64_t, std::vector<int>> frontier_;
  static constexpr int kUnreachable = 1 << 28;
  static constexpr double kBoundSlack = 1e-12;
  std::vector<int> dist_;
  std::vector<double> charge_floor_;
  Period latest_floor_[2] = {-1, -1};
  double best_value_ = 0.0;
  int best_label_ = -1;
  bool stop_ = false;
  SubproblemFlag stop_flag_ = SubproblemFlag::exact_optimal;
};

}  // namespace

SubproblemResult solve_exact(const Instance& inst, int truck, const Pricing& pricing, const SearchOptions& options) {
  return LabelSearch(inst, truck, pricing, options, false, 0.0).run();
}

SubproblemResult solve_surrogate(const Instance& inst, int truck, const Pricing& pricing, double incumbent_value,
                                 const SearchOptions& options) {
  return LabelSearch(inst, truck, pricing, options, true, incumbent_value).run();
}

}  // namespace jrc
