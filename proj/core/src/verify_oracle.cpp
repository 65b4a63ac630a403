#include "jrc/verify_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace jrc {

namespace {

using Residuals = std::map<std::string, double>;

void note(Residuals& r, const std::string& tag, double amount) {
  if (amount > 0.0) r[tag] += amount;
}

// Read-only view of one trip's arrays with 1-based periods.
struct TripView {
  const TripAssignment& x;
  int P;
  int dep(NodeIndex n, Period p) const { return x.depart[static_cast<std::size_t>(n * P + p - 1)]; }
  int arr(NodeIndex n, Period p) const { return x.arrive[static_cast<std::size_t>(n * P + p - 1)]; }
  int chg(int c, Period p) const { return x.charge[static_cast<std::size_t>(c * P + p - 1)]; }
  int bgn(int c, Period p) const { return x.charge_begin[static_cast<std::size_t>(c * P + p - 1)]; }
  int cmp(int c, Period p) const { return x.charge_end[static_cast<std::size_t>(c * P + p - 1)]; }
};

void check_sizes(const Instance& inst, const TripAssignment& x) {
  const auto np = static_cast<std::size_t>(inst.node_count() * inst.horizon);
  const auto cp = static_cast<std::size_t>(inst.charger_count() * inst.horizon);
  const auto n = static_cast<std::size_t>(inst.node_count());
  const auto c = static_cast<std::size_t>(inst.charger_count());
  const bool ok = x.depart.size() == np && x.arrive.size() == np && x.charge.size() == cp &&
                  x.charge_begin.size() == cp && x.charge_end.size() == cp && x.depart_time.size() == n &&
                  x.arrive_time.size() == n && x.begin_time.size() == c && x.end_time.size() == c &&
                  x.soc.size() == n && x.overflow.size() == n && x.full.size() == n;
  if (!ok) throw InstanceError("assignment arrays are not sized for the instance");
}

void check_domain(const Instance& inst, int v, const TruckAssignment& tv, Residuals& r) {
  const Truck& truck = inst.fleet[static_cast<std::size_t>(v)];
  const int P = inst.horizon;
  auto binary = [&](int x) { note(r, "domain", x == 0 || x == 1 ? 0.0 : 1.0); };
  auto period = [&](int x) { note(r, "domain", x >= 0 && x <= P ? 0.0 : 1.0); };
  const int overflow_cap = std::max(1, truck.charge_rate * P);
  for (const auto& x : tv.trips) {
    binary(x.trip);
    binary(x.loaded);
    period(x.unload);
    for (const auto* arr : {&x.depart, &x.arrive, &x.charge, &x.charge_begin, &x.charge_end, &x.full}) {
      for (int b : *arr) binary(b);
    }
    for (const auto* arr : {&x.depart_time, &x.arrive_time, &x.begin_time, &x.end_time}) {
      for (int b : *arr) period(b);
    }
    for (int s : x.soc) note(r, "domain", s >= 0 && s <= truck.battery ? 0.0 : 1.0);
    for (int w : x.overflow) note(r, "domain", w >= 0 && w <= overflow_cap ? 0.0 : 1.0);
  }
  period(tv.last_depot_arrival);
}

void check_trip(const Instance& inst, int v, int t, const TruckAssignment& tv, Residuals& r) {
  const Truck& truck = inst.fleet[static_cast<std::size_t>(v)];
  const auto& net = inst.network;
  const int N = inst.node_count();
  const int P = inst.horizon;
  const TripAssignment& x = tv.trips[static_cast<std::size_t>(t - 1)];
  const TripView y{x, P};
  const NodeIndex origin = inst.trip_origin(v, t);
  const NodeIndex dest = inst.trip_destination(v, t);

  if (t == 1 && x.trip == 1) note(r, "eq1", x.depart_time[static_cast<std::size_t>(origin)] < truck.available ? 1.0 : 0.0);

  for (Period p = 1; p <= P; ++p) {
    int deps = 0, arrs = 0;
    for (int n = 0; n < N; ++n) {
      deps += y.dep(n, p);
      arrs += y.arr(n, p);
    }
    note(r, "eq3-dep", std::max(0, deps - 1));
    note(r, "eq3-arr", std::max(0, arrs - 1));
  }
  for (int n = 0; n < N; ++n) {
    int deps = 0, arrs = 0, dep_time = 0, arr_time = 0;
    for (Period p = 1; p <= P; ++p) {
      deps += y.dep(n, p);
      arrs += y.arr(n, p);
      dep_time += p * y.dep(n, p);
      arr_time += p * y.arr(n, p);
    }
    note(r, "eq4-dep", std::max(0, deps - 1));
    note(r, "eq4-arr", std::max(0, arrs - 1));
    note(r, "eq5-dep", std::abs(dep_time - x.depart_time[static_cast<std::size_t>(n)]));
    note(r, "eq5-arr", std::abs(arr_time - x.arrive_time[static_cast<std::size_t>(n)]));
  }

  for (int n = 0; n < N; ++n) {
    for (Period p = 1; p <= P; ++p) {
      if (y.dep(n, p) == 1) {
        int reached = 0;
        for (const auto& seg : net.segments) {
          if (seg.from != n) continue;
          const Period q = p + seg.travel_time(p) - 1;
          if (q <= P) reached += y.arr(seg.to, q);
        }
        note(r, "eq6", reached == 1 ? 0.0 : 1.0);
      }
      if (y.arr(n, p) == 1) {
        int sources = 0;
        for (const auto& seg : net.segments) {
          if (seg.to != n) continue;
          for (Period d = 1; d <= p; ++d) {
            if (d + seg.travel_time(d) - 1 == p) sources += y.dep(seg.from, d);
          }
        }
        note(r, "eq7", sources == 1 ? 0.0 : 1.0);
        if (n != truck.depot && n != truck.port) {
          int later = 0;
          for (Period d = p + 1; d <= P; ++d) later += y.dep(n, d);
          note(r, "eq8", later == 1 ? 0.0 : 1.0);
        }
      }
    }
  }

  int from_origin = 0, into_dest = 0, into_origin = 0, from_dest = 0;
  for (Period p = 1; p <= P; ++p) {
    from_origin += y.dep(origin, p);
    into_dest += y.arr(dest, p);
    into_origin += y.arr(origin, p);
    from_dest += y.dep(dest, p);
  }
  note(r, "path-origin", std::abs(from_origin - x.trip));
  note(r, "path-dest", std::abs(into_dest - x.trip));
  note(r, "no-arr-origin", into_origin);
  note(r, "no-dep-dest", from_dest);
  for (int n = 0; n < N; ++n) {
    if (n == origin) continue;
    for (Period p = 1; p <= P; ++p) {
      if (y.dep(n, p) != 1) continue;
      bool arrived = false;
      for (Period q = 1; q < p; ++q) arrived = arrived || y.arr(n, q) == 1;
      note(r, "dep-after-arr", arrived ? 0.0 : 1.0);
    }
  }

  // SOC along every used segment.
  for (std::size_t s = 0; s < net.segments.size(); ++s) {
    const auto& seg = net.segments[s];
    const int ci = net.charger_of(seg.to);
    for (Period p = 1; p <= P; ++p) {
      const int travel = seg.travel_time(p);
      const Period q = p + travel - 1;
      if (q > P || y.dep(seg.from, p) != 1 || y.arr(seg.to, q) != 1) continue;
      const bool loaded = x.loaded == 1;
      const int drop = travel * truck.drain(static_cast<int>(s), loaded);
      int charged = 0;
      if (ci >= 0) {
        for (Period c = 1; c <= P; ++c) charged += y.chg(ci, c);
      }
      const auto from = static_cast<std::size_t>(seg.from);
      const auto to = static_cast<std::size_t>(seg.to);
      const int expected = x.soc[from] - drop + truck.charge_rate * charged - x.overflow[to];
      const std::string tag = ci >= 0 ? (loaded ? "eq11-ld" : "eq11-empty") : (loaded ? "eq9" : "eq10");
      note(r, tag, std::abs(x.soc[to] - expected));
      note(r, "soc-arrive-nonneg", x.soc[from] < drop ? 1.0 : 0.0);
    }
  }
  for (int n = 0; n < N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    if (x.overflow[k] > 0 && x.full[k] != 1) note(r, "soc-clip-overflow", 1.0);
    if (x.full[k] == 1 && x.soc[k] < truck.battery) note(r, "soc-clip-full", 1.0);
  }
  if (t == 1) note(r, "soc-initial", std::abs(x.soc[static_cast<std::size_t>(truck.depot)] - truck.battery));

  for (int ci = 0; ci < inst.charger_count(); ++ci) {
    const NodeIndex n = net.chargers[static_cast<std::size_t>(ci)].node;
    int begins = 0, ends = 0, begin_time = 0, end_time = 0;
    for (Period p = 1; p <= P; ++p) {
      if (y.chg(ci, p) == 1) {
        bool arrived = false, departed = false;
        for (Period q = 1; q < p; ++q) arrived = arrived || y.arr(n, q) == 1;
        for (Period q = 1; q <= p; ++q) departed = departed || y.dep(n, q) == 1;
        note(r, "eq12", arrived ? 0.0 : 1.0);
        note(r, "eq13", departed ? 1.0 : 0.0);
      }
      const bool on = y.chg(ci, p) == 1;
      const bool prev = p > 1 && y.chg(ci, p - 1) == 1;
      const bool next = p < P && y.chg(ci, p + 1) == 1;
      note(r, "eq14", (y.bgn(ci, p) == 1) == (on && !prev) ? 0.0 : 1.0);
      note(r, "eq15", (y.cmp(ci, p) == 1) == (on && !next) ? 0.0 : 1.0);
      begins += y.bgn(ci, p);
      ends += y.cmp(ci, p);
      begin_time += p * y.bgn(ci, p);
      end_time += p * y.cmp(ci, p);
    }
    note(r, "eq4-bgn", std::max(0, begins - 1));
    note(r, "eq4-cmp", std::max(0, ends - 1));
    note(r, "eq5-bgn", std::abs(begin_time - x.begin_time[static_cast<std::size_t>(ci)]));
    note(r, "eq5-cmp", std::abs(end_time - x.end_time[static_cast<std::size_t>(ci)]));
  }
  for (Period p = 1; p <= P; ++p) {
    int begins = 0, ends = 0;
    for (int ci = 0; ci < inst.charger_count(); ++ci) {
      begins += y.bgn(ci, p);
      ends += y.cmp(ci, p);
    }
    note(r, "eq3-bgn", std::max(0, begins - 1));
    note(r, "eq3-cmp", std::max(0, ends - 1));
  }

  if (x.loaded == 1) {
    note(r, "eq16", std::abs(x.unload - x.arrive_time[static_cast<std::size_t>(dest)]));
  } else {
    note(r, "eq16-gate", x.unload != 0 ? 1.0 : 0.0);
  }
  note(r, "eq23", x.loaded > x.trip ? 1.0 : 0.0);
  if (inst.product_for_trip(v, t) < 0) note(r, "ld-no-product", x.loaded);
  note(r, "eq31", std::max(0, x.arrive_time[static_cast<std::size_t>(truck.depot)] - tv.last_depot_arrival));

  if (t < inst.max_trips) {
    const TripAssignment& next = tv.trips[static_cast<std::size_t>(t)];
    const bool outbound = inst.is_outbound(t);
    const bool gate = outbound ? x.trip == 1 : next.trip == 1;
    const int ci = net.charger_of(dest);
    const int next_dep = next.depart_time[static_cast<std::size_t>(dest)];
    if (gate) {
      note(r, outbound ? "eq19" : "eq17", next_dep <= x.arrive_time[static_cast<std::size_t>(dest)] ? 1.0 : 0.0);
      if (ci >= 0) note(r, outbound ? "eq20" : "eq18", next_dep <= x.end_time[static_cast<std::size_t>(ci)] ? 1.0 : 0.0);
      note(r, outbound ? "eq22" : "eq21",
           std::abs(next.soc[static_cast<std::size_t>(dest)] - x.soc[static_cast<std::size_t>(dest)]));
    }
    note(r, "eq24", next.trip > x.trip ? 1.0 : 0.0);
  }
}

Residuals check_truck(const Instance& inst, int v, const TruckAssignment& tv) {
  Residuals r;
  if (static_cast<int>(tv.trips.size()) != inst.max_trips) throw InstanceError("assignment trip count mismatch");
  for (const auto& x : tv.trips) check_sizes(inst, x);
  check_domain(inst, v, tv, r);
  for (int t = 1; t <= inst.max_trips; ++t) check_trip(inst, v, t, tv, r);
  return r;
}

}  // namespace

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << (feasible ? "feasible" : "infeasible") << " cost=" << cost.total() << " (labor " << cost.labor
     << ", charging " << cost.charging << ", tardiness " << cost.tardiness << ")";
  for (const auto& [tag, amount] : residuals) os << "\n  " << tag << ": " << amount;
  double coupled = 0.0;
  for (double c : coupling) coupled += c;
  if (coupled > 0.0) os << "\n  coupling: " << coupled;
  os << '\n';
  return os.str();
}

VerificationReport verify(const Instance& inst, const Assignment& a) {
  if (static_cast<int>(a.trucks.size()) != inst.truck_count() ||
      static_cast<int>(a.latest_unload.size()) != inst.demand_count() ||
      static_cast<int>(a.tardiness.size()) != inst.demand_count()) {
    throw InstanceError("assignment is not sized for the instance");
  }
  VerificationReport report;
  const int P = inst.horizon;
  for (int v = 0; v < inst.truck_count(); ++v) {
    for (const auto& [tag, amount] : check_truck(inst, v, a.trucks[static_cast<std::size_t>(v)])) note(report.residuals, tag, amount);
  }
  for (int d = 0; d < inst.demand_count(); ++d) {
    const auto k = static_cast<std::size_t>(d);
    note(report.residuals, "domain", a.latest_unload[k] >= 0 && a.latest_unload[k] <= P ? 0.0 : 1.0);
    note(report.residuals, "domain", a.tardiness[k] >= 0 && a.tardiness[k] <= P ? 0.0 : 1.0);
    for (int v = 0; v < inst.truck_count(); ++v) {
      for (int t = 1; t <= inst.max_trips; ++t) {
        if (inst.product_for_trip(v, t) != d) continue;
        const int u = a.trucks[static_cast<std::size_t>(v)].trips[static_cast<std::size_t>(t - 1)].unload;
        note(report.residuals, "eq28", std::max(0, u - a.latest_unload[k]));
      }
    }
    note(report.residuals, "eq29", std::max(0, a.latest_unload[k] - inst.demands[k].due - a.tardiness[k]));
  }

  // Coupling: demand met exactly, charger occupancy within capacity.
  const CouplingLayout layout(inst);
  report.coupling.assign(static_cast<std::size_t>(layout.size()), 0.0);
  std::vector<int> loads(static_cast<std::size_t>(inst.demand_count()), 0);
  for (int v = 0; v < inst.truck_count(); ++v) {
    for (int t = 1; t <= inst.max_trips; ++t) {
      const int d = inst.product_for_trip(v, t);
      if (d >= 0) loads[static_cast<std::size_t>(d)] += a.trucks[static_cast<std::size_t>(v)].trips[static_cast<std::size_t>(t - 1)].loaded;
    }
  }
  for (int d = 0; d < inst.demand_count(); ++d) {
    const int c = layout.component_of[static_cast<std::size_t>(d)];
    report.coupling[static_cast<std::size_t>(c)] = std::abs(loads[static_cast<std::size_t>(d)] - inst.demands[static_cast<std::size_t>(d)].quantity);
  }
  for (int ci = 0; ci < inst.charger_count(); ++ci) {
    const int cap = inst.network.chargers[static_cast<std::size_t>(ci)].chargers;
    for (Period p = 1; p <= P; ++p) {
      int busy = 0;
      for (const auto& tv : a.trucks) {
        for (const auto& x : tv.trips) busy += x.charge[static_cast<std::size_t>(ci * P + p - 1)];
      }
      report.coupling[static_cast<std::size_t>(layout.capacity_component(ci, p))] = std::max(0, busy - cap);
    }
  }

  // Objective, recomputed from the assignment.
  for (int v = 0; v < inst.truck_count(); ++v) {
    const auto& tv = a.trucks[static_cast<std::size_t>(v)];
    const NodeIndex depot = inst.fleet[static_cast<std::size_t>(v)].depot;
    if (!tv.trips.empty() && tv.trips.front().trip == 1) {
      report.cost.labor += inst.labor_cost * (tv.last_depot_arrival - tv.trips.front().depart_time[static_cast<std::size_t>(depot)]);
    }
    for (const auto& x : tv.trips) {
      for (int ci = 0; ci < inst.charger_count(); ++ci) {
        for (Period p = 1; p <= P; ++p) {
          report.cost.charging += x.charge[static_cast<std::size_t>(ci * P + p - 1)] *
                                  inst.network.chargers[static_cast<std::size_t>(ci)].price_at(p);
        }
      }
    }
  }
  for (int d = 0; d < inst.demand_count(); ++d) {
    report.cost.tardiness += inst.demands[static_cast<std::size_t>(d)].tardiness_penalty * a.tardiness[static_cast<std::size_t>(d)];
  }

  report.feasible = report.residuals.empty() &&
                    std::all_of(report.coupling.begin(), report.coupling.end(), [](double c) { return c == 0.0; });
  return report;
}

VerificationReport verify(const Instance& inst, std::span<const TruckSchedule> schedules) {
  return verify(inst, materialize(inst, schedules));
}

std::map<std::string, double> verify_truck(const Instance& inst, int v, const TruckSchedule& schedule) {
  std::vector<TruckSchedule> all(static_cast<std::size_t>(inst.truck_count()));
  all.at(static_cast<std::size_t>(v)) = schedule;
  const Assignment a = materialize(inst, all);
  return check_truck(inst, v, a.trucks[static_cast<std::size_t>(v)]);
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& inst, int v, std::int64_t budget, std::function<void(const TruckSchedule&)> visit)
      : inst_(inst), v_(v), truck_(inst.fleet[static_cast<std::size_t>(v)]), budget_(budget), visit_(std::move(visit)) {
    const int N = inst.node_count();
    arc_.assign(static_cast<std::size_t>(N * N), -1);
    for (std::size_t r = 0; r < inst.network.segments.size(); ++r) {
      const auto& s = inst.network.segments[r];
      arc_[static_cast<std::size_t>(s.from * N + s.to)] = static_cast<int>(r);
    }
  }

  bool run() {
    visit_(schedule_);
    if (inst_.max_trips >= 1) start_trip(1, truck_.depot, truck_.battery, std::max(1, truck_.available));
    return nodes_ <= budget_;
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  bool tick() { return ++nodes_ <= budget_; }

  void start_trip(int t, NodeIndex at, int soc, Period earliest) {
    if (!tick()) return;
    const bool can_load = inst_.product_for_trip(v_, t) >= 0;
    for (int loaded = 0; loaded <= (can_load ? 1 : 0); ++loaded) {
      schedule_.trips.push_back(Trip{loaded == 1, {}, {}});
      visited_.assign(static_cast<std::size_t>(inst_.node_count()), false);
      visited_[static_cast<std::size_t>(at)] = true;
      depart_from(t, at, soc, earliest);
      schedule_.trips.pop_back();
    }
  }

  void depart_from(int t, NodeIndex at, int soc, Period earliest) {
    const int P = inst_.horizon;
    const NodeIndex origin = inst_.trip_origin(v_, t);
    for (Period p = earliest; p <= P; ++p) {
      for (std::size_t r = 0; r < inst_.network.segments.size(); ++r) {
        const auto& seg = inst_.network.segments[r];
        if (seg.from != at || seg.to == origin || visited_[static_cast<std::size_t>(seg.to)]) continue;
        const int travel = seg.travel_time(p);
        const Period q = p + travel - 1;
        if (q > P) continue;
        Trip& trip = schedule_.trips.back();
        const int left = soc - travel * truck_.drain(static_cast<int>(r), trip.loaded);
        if (left < 0) continue;
        if (coincides(trip, seg.to, q)) continue;
        trip.legs.push_back(Leg{at, seg.to, static_cast<int>(r), p, q});
        visited_[static_cast<std::size_t>(seg.to)] = true;
        arrived(t, seg.to, left, q);
        visited_[static_cast<std::size_t>(seg.to)] = false;
        schedule_.trips.back().legs.pop_back();
        if (nodes_ > budget_) return;
      }
    }
  }

  // Arrival at `to` at q must not line up with an earlier, non-adjacent
  // departure of the same trip over a direct segment.
  bool coincides(const Trip& trip, NodeIndex to, Period q) const {
    const int N = inst_.node_count();
    for (std::size_t i = 0; i < trip.legs.size(); ++i) {
      const Leg& leg = trip.legs[i];
      const int r = arc_[static_cast<std::size_t>(leg.from * N + to)];
      if (r < 0) continue;
      const auto& seg = inst_.network.segments[static_cast<std::size_t>(r)];
      if (leg.depart + seg.travel_time(leg.depart) - 1 == q) return true;
    }
    return false;
  }

  void arrived(int t, NodeIndex at, int soc, Period q) {
    if (!tick()) return;
    const int P = inst_.horizon;
    const bool is_dest = at == inst_.trip_destination(v_, t);
    const int ci = inst_.network.charger_of(at);
    auto proceed = [&](int soc_now, Period ready) {
      if (is_dest) {
        finish_trip(t, at, soc_now, ready);
      } else {
        depart_from(t, at, soc_now, ready);
      }
    };
    proceed(soc, q + 1);
    if (ci < 0) return;
    for (Period first = q + 1; first <= P; ++first) {
      for (Period last = first; last <= P; ++last) {
        const int charged = std::min(truck_.battery, soc + truck_.charge_rate * (last - first + 1));
        schedule_.trips.back().charges.push_back(ChargeBlock{at, first, last});
        if (is_dest) {
          if (t < inst_.max_trips) finish_trip(t, at, charged, last + 1, true);
        } else {
          depart_from(t, at, charged, last + 1);
        }
        schedule_.trips.back().charges.pop_back();
        if (nodes_ > budget_) return;
      }
    }
  }

  void finish_trip(int t, NodeIndex at, int soc, Period ready, bool charged_at_end = false) {
    const bool outbound = inst_.is_outbound(t);
    if (!outbound && !charged_at_end) visit_(schedule_);
    if (t < inst_.max_trips && ready <= inst_.horizon) {
      auto saved = visited_;
      start_trip(t + 1, at, soc, ready);
      visited_ = std::move(saved);
    }
  }

  const Instance& inst_;
  int v_;
  const Truck& truck_;
  std::int64_t budget_;
  std::function<void(const TruckSchedule&)> visit_;
  std::vector<int> arc_;
  std::vector<bool> visited_;
  TruckSchedule schedule_;
  std::int64_t nodes_ = 0;
};

struct Option {
  double cost = 0.0;
  std::vector<int> loads;     // per demand
  std::vector<int> unloads;   // latest own unloading per demand
  std::vector<int> occupied;  // charger * P + p - 1, sorted
  TruckSchedule schedule;
};

std::vector<int> option_key(const Option& o) {
  std::vector<int> key;
  key.reserve(o.loads.size() * 2 + o.occupied.size() + 1);
  key.insert(key.end(), o.loads.begin(), o.loads.end());
  key.insert(key.end(), o.unloads.begin(), o.unloads.end());
  key.push_back(-1);
  key.insert(key.end(), o.occupied.begin(), o.occupied.end());
  return key;
}

struct KeyHash {
  std::size_t operator()(const std::vector<int>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : k) h = (h ^ static_cast<std::size_t>(x + 7)) * 1099511628211ull;
    return h;
  }
};

class CrossProduct {
 public:
  CrossProduct(const Instance& inst, std::vector<std::vector<Option>> options, std::int64_t budget, std::int64_t used)
      : inst_(inst), options_(std::move(options)), budget_(budget), nodes_(used) {
    const std::size_t V = options_.size();
    rest_min_.assign(V + 1, 0.0);
    const auto D = static_cast<std::size_t>(inst.demand_count());
    rest_max_load_.assign(V + 1, std::vector<int>(D, 0));
    for (std::size_t i = V; i-- > 0;) {
      double best = std::numeric_limits<double>::infinity();
      std::vector<int> most(D, 0);
      for (const auto& o : options_[i]) {
        best = std::min(best, o.cost);
        for (std::size_t d = 0; d < D; ++d) most[d] = std::max(most[d], o.loads[d]);
      }
      rest_min_[i] = rest_min_[i + 1] + best;
      for (std::size_t d = 0; d < D; ++d) rest_max_load_[i][d] = rest_max_load_[i + 1][d] + most[d];
    }
    loads_.assign(D, 0);
    unloads_.assign(D, 0);
    busy_.assign(static_cast<std::size_t>(inst.charger_count() * inst.horizon), 0);
    pick_.assign(V, 0);
  }

  void run() { descend(0, 0.0); }

  bool found() const { return !best_pick_.empty(); }
  bool exhausted() const { return nodes_ > budget_; }
  double best() const { return best_; }
  const std::vector<std::size_t>& pick() const { return best_pick_; }
  std::int64_t nodes() const { return nodes_; }
  std::vector<TruckSchedule> schedules() const {
    std::vector<TruckSchedule> out;
    for (std::size_t i = 0; i < best_pick_.size(); ++i) out.push_back(options_[i][best_pick_[i]].schedule);
    return out;
  }

 private:
  void descend(std::size_t i, double partial) {
    if (++nodes_ > budget_) return;
    const auto D = loads_.size();
    if (i == options_.size()) {
      double tard = 0.0;
      for (std::size_t d = 0; d < D; ++d) {
        if (loads_[d] != inst_.demands[d].quantity) return;
        tard += inst_.demands[d].tardiness_penalty * std::max(0, unloads_[d] - inst_.demands[d].due);
      }
      if (partial + tard < best_) {
        best_ = partial + tard;
        best_pick_ = pick_;
      }
      return;
    }
    for (std::size_t k = 0; k < options_[i].size(); ++k) {
      const Option& o = options_[i][k];
      if (partial + o.cost + rest_min_[i + 1] >= best_) break;  // sorted by cost
      bool ok = true;
      for (std::size_t d = 0; d < D && ok; ++d) {
        const int have = loads_[d] + o.loads[d];
        ok = have <= inst_.demands[d].quantity && have + rest_max_load_[i + 1][d] >= inst_.demands[d].quantity;
      }
      std::size_t placed = 0;
      for (; ok && placed < o.occupied.size(); ++placed) {
        const auto cell = static_cast<std::size_t>(o.occupied[placed]);
        const int cap = inst_.network.chargers[cell / static_cast<std::size_t>(inst_.horizon)].chargers;
        if (busy_[cell] + 1 > cap) {
          ok = false;
          break;
        }
        ++busy_[cell];
      }
      if (ok) {
        const auto saved = unloads_;
        for (std::size_t d = 0; d < D; ++d) {
          loads_[d] += o.loads[d];
          unloads_[d] = std::max(unloads_[d], o.unloads[d]);
        }
        pick_[i] = k;
        descend(i + 1, partial + o.cost);
        for (std::size_t d = 0; d < D; ++d) loads_[d] -= o.loads[d];
        unloads_ = saved;
      }
      for (std::size_t j = 0; j < placed; ++j) --busy_[static_cast<std::size_t>(o.occupied[j])];
      if (nodes_ > budget_) return;
    }
  }

  const Instance& inst_;
  std::vector<std::vector<Option>> options_;
  std::int64_t budget_;
  std::int64_t nodes_;
  std::vector<double> rest_min_;
  std::vector<std::vector<int>> rest_max_load_;
  std::vector<int> loads_, unloads_, busy_;
  std::vector<std::size_t> pick_, best_pick_;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace

bool for_each_schedule(const Instance& inst, int truck, std::int64_t node_budget,
                       const std::function<void(const TruckSchedule&)>& visit) {
  Enumerator e(inst, truck, node_budget, visit);
  return e.run();
}

OracleResult brute_force_optimum(const Instance& inst, const OracleLimits& limits) {
  OracleResult result;
  if (inst.truck_count() > limits.max_trucks || inst.node_count() > limits.max_nodes ||
      inst.horizon > limits.max_periods || inst.max_trips > limits.max_trips) {
    result.status = OracleStatus::budget_exceeded;
    result.message = "instance exceeds the oracle limits";
    return result;
  }
  const int P = inst.horizon;
  const auto D = static_cast<std::size_t>(inst.demand_count());
  std::vector<std::vector<Option>> options(static_cast<std::size_t>(inst.truck_count()));
  std::int64_t used = 0;
  for (int v = 0; v < inst.truck_count(); ++v) {
    std::unordered_map<std::vector<int>, std::size_t, KeyHash> index;
    auto& list = options[static_cast<std::size_t>(v)];
    Enumerator e(inst, v, limits.node_budget - used, [&](const TruckSchedule& s) {
      Option o;
      o.cost = truck_cost(inst, v, s);
      o.loads.assign(D, 0);
      o.unloads.assign(D, 0);
      for (std::size_t ti = 0; ti < s.trips.size(); ++ti) {
        const Trip& trip = s.trips[ti];
        const int d = inst.product_for_trip(v, static_cast<int>(ti) + 1);
        if (trip.loaded && d >= 0) {
          ++o.loads[static_cast<std::size_t>(d)];
          o.unloads[static_cast<std::size_t>(d)] = std::max(o.unloads[static_cast<std::size_t>(d)], trip.legs.back().arrive);
        }
        for (const auto& block : trip.charges) {
          const int ci = inst.network.charger_of(block.node);
          for (Period p = block.first; p <= block.last; ++p) o.occupied.push_back(ci * P + p - 1);
        }
      }
      std::sort(o.occupied.begin(), o.occupied.end());
      // Unload times only matter past the due period.
      for (std::size_t d = 0; d < D; ++d) {
        const Demand& dem = inst.demands[d];
        o.unloads[d] = dem.tardiness_penalty > 0.0 ? std::max(o.unloads[d], dem.due) : 0;
      }
      auto key = option_key(o);
      auto it = index.find(key);
      if (it == index.end()) {
        o.schedule = s;
        index.emplace(std::move(key), list.size());
        list.push_back(std::move(o));
      } else if (o.cost < list[it->second].cost) {
        list[it->second].cost = o.cost;
        list[it->second].schedule = s;
      }
    });
    const bool complete = e.run();
    used += e.nodes();
    if (!complete) {
      result.status = OracleStatus::budget_exceeded;
      result.nodes = used;
      result.message = "schedule enumeration exceeded the node budget";
      return result;
    }
    std::stable_sort(list.begin(), list.end(), [](const Option& a, const Option& b) { return a.cost < b.cost; });
  }
  CrossProduct search(inst, std::move(options), limits.node_budget, used);
  search.run();
  result.nodes = search.nodes();
  if (search.exhausted()) {
    result.status = OracleStatus::budget_exceeded;
    result.message = "combination search exceeded the node budget";
    return result;
  }
  if (!search.found()) {
    result.status = OracleStatus::infeasible;
    result.message = "no combination of truck schedules meets demand and charger capacity";
    return result;
  }
  result.status = OracleStatus::optimal;
  result.cost = search.best();
  result.schedules = search.schedules();
  return result;
}

const char* to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::optimal: return "optimal";
    case OracleStatus::infeasible: return "infeasible";
    case OracleStatus::budget_exceeded: return "budget_exceeded";
  }
  return "unknown";
}

}  // namespace jrc
