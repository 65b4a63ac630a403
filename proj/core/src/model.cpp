#include "jrc/model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace jrc {

namespace {

struct ColumnKey {
  Family family;
  int v, t, index, p;
};

const char* family_prefix(Family f) {
  switch (f) {
    case Family::trip: return "trip";
    case Family::loaded: return "ld";
    case Family::unload: return "u";
    case Family::depart: return "dep";
    case Family::arrive: return "arr";
    case Family::charge: return "chg";
    case Family::charge_begin: return "bgn";
    case Family::charge_end: return "cmp";
    case Family::depart_time: return "d";
    case Family::arrive_time: return "a";
    case Family::begin_time: return "b";
    case Family::end_time: return "c";
    case Family::soc: return "s";
    case Family::overflow: return "w";
    case Family::full: return "full";
    case Family::last_depot_arrival: return "abar";
    case Family::latest_unload: return "ubar";
    case Family::tardiness: return "tard";
  }
  return "x";
}

}  // namespace

VariableCatalog::VariableCatalog(const Instance& inst)
    : N_(inst.node_count()),
      C_(inst.charger_count()),
      P_(inst.horizon),
      T_(inst.max_trips),
      D_(inst.demand_count()) {
  const int np = N_ * P_;
  const int cp = C_ * P_;
  off_depart_ = 3;
  off_arrive_ = off_depart_ + np;
  off_charge_ = off_arrive_ + np;
  off_begin_ = off_charge_ + cp;
  off_end_ = off_begin_ + cp;
  off_d_ = off_end_ + cp;
  off_a_ = off_d_ + N_;
  off_b_ = off_a_ + N_;
  off_c_ = off_b_ + C_;
  off_soc_ = off_c_ + C_;
  off_overflow_ = off_soc_ + N_;
  off_full_ = off_overflow_ + N_;
  trip_block_ = off_full_ + N_;
  truck_block_ = T_ * trip_block_ + 1;
  global_base_ = inst.truck_count() * truck_block_;

  const double P = P_;
  columns_.assign(static_cast<std::size_t>(global_base_ + 2 * D_), Column{0.0, P, true});
  auto set = [&](int j, double lo, double hi, bool integer) {
    columns_[static_cast<std::size_t>(j)] = Column{lo, hi, integer};
  };
  for (int v = 0; v < inst.truck_count(); ++v) {
    const Truck& truck = inst.fleet[static_cast<std::size_t>(v)];
    for (int t = 1; t <= T_; ++t) {
      const int base = trip_base(v, t);
      set(base, 0, 1, true);
      set(base + 1, 0, 1, true);
      for (int k = off_depart_; k < off_d_; ++k) set(base + k, 0, 1, true);
      for (int n = 0; n < N_; ++n) {
        set(soc(v, t, n), 0, truck.battery, false);
        set(overflow(v, t, n), 0, std::max(1.0, static_cast<double>(truck.charge_rate) * P), false);
        set(full(v, t, n), 0, 1, true);
      }
    }
  }
}

std::vector<double> VariableCatalog::flatten(const Assignment& a) const {
  std::vector<double> x(columns_.size(), 0.0);
  auto put = [&](int j, double value) { x[static_cast<std::size_t>(j)] = value; };
  for (std::size_t vi = 0; vi < a.trucks.size(); ++vi) {
    const int v = static_cast<int>(vi);
    const auto& tv = a.trucks[vi];
    for (int t = 1; t <= T_; ++t) {
      const auto& tr = tv.trips.at(static_cast<std::size_t>(t - 1));
      put(trip_var(v, t), tr.trip);
      put(loaded(v, t), tr.loaded);
      put(unload(v, t), tr.unload);
      for (int n = 0; n < N_; ++n) {
        for (Period p = 1; p <= P_; ++p) {
          const auto k = static_cast<std::size_t>(n * P_ + p - 1);
          put(depart(v, t, n, p), tr.depart[k]);
          put(arrive(v, t, n, p), tr.arrive[k]);
        }
        put(depart_time(v, t, n), tr.depart_time[static_cast<std::size_t>(n)]);
        put(arrive_time(v, t, n), tr.arrive_time[static_cast<std::size_t>(n)]);
        put(soc(v, t, n), tr.soc[static_cast<std::size_t>(n)]);
        put(overflow(v, t, n), tr.overflow[static_cast<std::size_t>(n)]);
        put(full(v, t, n), tr.full[static_cast<std::size_t>(n)]);
      }
      for (int c = 0; c < C_; ++c) {
        for (Period p = 1; p <= P_; ++p) {
          const auto k = static_cast<std::size_t>(c * P_ + p - 1);
          put(charge(v, t, c, p), tr.charge[k]);
          put(charge_begin(v, t, c, p), tr.charge_begin[k]);
          put(charge_end(v, t, c, p), tr.charge_end[k]);
        }
        put(begin_time(v, t, c), tr.begin_time[static_cast<std::size_t>(c)]);
        put(end_time(v, t, c), tr.end_time[static_cast<std::size_t>(c)]);
      }
    }
    put(last_depot_arrival(v), tv.last_depot_arrival);
  }
  for (int d = 0; d < D_; ++d) {
    put(latest_unload(d), a.latest_unload.at(static_cast<std::size_t>(d)));
    put(tardiness(d), a.tardiness.at(static_cast<std::size_t>(d)));
  }
  return x;
}

std::string VariableCatalog::name(int j) const {
  ColumnKey k{Family::trip, 0, 0, 0, 0};
  if (j >= global_base_) {
    const int d = j - global_base_;
    k = d < D_ ? ColumnKey{Family::latest_unload, 0, 0, d, 0} : ColumnKey{Family::tardiness, 0, 0, d - D_, 0};
  } else {
    const int v = j / truck_block_;
    int r = j % truck_block_;
    if (r == truck_block_ - 1) {
      k = {Family::last_depot_arrival, v, 0, 0, 0};
    } else {
      const int t = r / trip_block_ + 1;
      r %= trip_block_;
      struct Span {
        Family family;
        int count;
        bool per_period;
      };
      const Span layout[] = {
          {Family::trip, 1, false},          {Family::loaded, 1, false},         {Family::unload, 1, false},
          {Family::depart, N_ * P_, true},   {Family::arrive, N_ * P_, true},    {Family::charge, C_ * P_, true},
          {Family::charge_begin, C_ * P_, true}, {Family::charge_end, C_ * P_, true}, {Family::depart_time, N_, false},
          {Family::arrive_time, N_, false},  {Family::begin_time, C_, false},    {Family::end_time, C_, false},
          {Family::soc, N_, false},          {Family::overflow, N_, false},      {Family::full, N_, false}};
      for (const Span& s : layout) {
        if (r < s.count) {
          k = s.per_period ? ColumnKey{s.family, v, t, r / P_, r % P_ + 1} : ColumnKey{s.family, v, t, r, 0};
          break;
        }
        r -= s.count;
      }
    }
  }
  std::ostringstream os;
  os << family_prefix(k.family);
  switch (k.family) {
    case Family::latest_unload:
    case Family::tardiness:
      os << "_pr" << k.index;
      break;
    case Family::last_depot_arrival:
      os << "_v" << k.v;
      break;
    default:
      os << "_v" << k.v << "_t" << k.t;
      if (k.family != Family::trip && k.family != Family::loaded && k.family != Family::unload) os << "_" << k.index;
      if (k.p > 0) os << "_p" << k.p;
  }
  return os.str();
}

namespace {

class Builder {
 public:
  Builder(const Instance& inst, CanonicalModel& model) : inst_(inst), m_(model), cat_(model.catalog) {}

  void build() {
    for (int v = 0; v < inst_.truck_count(); ++v) {
      for (int t = 1; t <= inst_.max_trips; ++t) trip_rows(v, t);
      for (int t = 1; t < inst_.max_trips; ++t) connecting_rows(v, t);
    }
    product_rows();
  }

 private:
  int tag(const std::string& name) {
    auto it = std::find(m_.tags.begin(), m_.tags.end(), name);
    if (it != m_.tags.end()) return static_cast<int>(it - m_.tags.begin());
    m_.tags.push_back(name);
    return static_cast<int>(m_.tags.size()) - 1;
  }

  void add(const std::string& name, std::vector<Term> terms, Sense sense, double rhs, double big_m = 0.0) {
    m_.rows.push_back(Constraint{std::move(terms), sense, rhs, tag(name), big_m});
  }

  // A.2 pair for "gate = 1 => sum(terms) = 1" with M = max(1, #terms).
  void implies_exactly_one(const std::string& name, int gate, const std::vector<int>& cols) {
    const double M = std::max<double>(1.0, static_cast<double>(cols.size()));
    std::vector<Term> le, ge;
    for (int c : cols) {
      le.push_back({c, 1.0});
      ge.push_back({c, 1.0});
    }
    le.push_back({gate, M});
    ge.push_back({gate, -M});
    add(name + "-bigM-le", std::move(le), Sense::le, M + 1.0, M);
    add(name + "-bigM-ge", std::move(ge), Sense::ge, 1.0 - M, M);
  }

  // A.2 pair for "gate = 1 => x - y = 0" with a given M.
  void implies_equal(const std::string& name, int gate, int x, int y, double M) {
    add(name + "-bigM-le", {{x, 1.0}, {y, -1.0}, {gate, M}}, Sense::le, M, M);
    add(name + "-bigM-ge", {{x, 1.0}, {y, -1.0}, {gate, -M}}, Sense::ge, -M, M);
  }

  void trip_rows(int v, int t) {
    const Truck& truck = inst_.fleet[static_cast<std::size_t>(v)];
    const int N = inst_.node_count();
    const int C = inst_.charger_count();
    const int P = inst_.horizon;
    const double Mt = P + 1.0;
    const NodeIndex origin = inst_.trip_origin(v, t);
    const NodeIndex dest = inst_.trip_destination(v, t);
    const int trip = cat_.trip_var(v, t);
    const int ld = cat_.loaded(v, t);

    if (t == 1) {
      add("eq1-bigM", {{cat_.depart_time(v, t, origin), 1.0}, {trip, -Mt}}, Sense::ge, truck.available - Mt, Mt);
    }

    for (Period p = 1; p <= P; ++p) {
      std::vector<Term> dep, arr;
      for (int n = 0; n < N; ++n) {
        dep.push_back({cat_.depart(v, t, n, p), 1.0});
        arr.push_back({cat_.arrive(v, t, n, p), 1.0});
      }
      add("eq3-dep", std::move(dep), Sense::le, 1.0);
      add("eq3-arr", std::move(arr), Sense::le, 1.0);
    }
    for (int n = 0; n < N; ++n) {
      std::vector<Term> dep, arr, dep_time, arr_time;
      for (Period p = 1; p <= P; ++p) {
        dep.push_back({cat_.depart(v, t, n, p), 1.0});
        arr.push_back({cat_.arrive(v, t, n, p), 1.0});
        dep_time.push_back({cat_.depart(v, t, n, p), static_cast<double>(p)});
        arr_time.push_back({cat_.arrive(v, t, n, p), static_cast<double>(p)});
      }
      dep_time.push_back({cat_.depart_time(v, t, n), -1.0});
      arr_time.push_back({cat_.arrive_time(v, t, n), -1.0});
      add("eq4-dep", std::move(dep), Sense::le, 1.0);
      add("eq4-arr", std::move(arr), Sense::le, 1.0);
      add("eq5-dep", std::move(dep_time), Sense::eq, 0.0);
      add("eq5-arr", std::move(arr_time), Sense::eq, 0.0);
    }

    // A departure reaches exactly one neighbour on time.
    for (int n = 0; n < N; ++n) {
      for (Period p = 1; p <= P; ++p) {
        std::vector<int> cols;
        for (const auto& seg : inst_.network.segments) {
          if (seg.from != n) continue;
          const Period q = p + seg.travel_time(p) - 1;
          if (q <= P) cols.push_back(cat_.arrive(v, t, seg.to, q));
        }
        implies_exactly_one("eq6", cat_.depart(v, t, n, p), cols);
      }
    }
    // An arrival comes from exactly one matching departure.
    for (int n = 0; n < N; ++n) {
      for (Period q = 1; q <= P; ++q) {
        std::vector<int> cols;
        for (const auto& seg : inst_.network.segments) {
          if (seg.to != n) continue;
          for (Period p = 1; p <= q; ++p) {
            if (p + seg.travel_time(p) - 1 == q) cols.push_back(cat_.depart(v, t, seg.from, p));
          }
        }
        implies_exactly_one("eq7", cat_.arrive(v, t, n, q), cols);
      }
    }
    // Arrival at an intermediate node forces a later departure.
    for (int n = 0; n < N; ++n) {
      if (n == truck.depot || n == truck.port) continue;
      for (Period q = 1; q <= P; ++q) {
        std::vector<int> cols;
        for (Period p = q + 1; p <= P; ++p) cols.push_back(cat_.depart(v, t, n, p));
        implies_exactly_one("eq8", cat_.arrive(v, t, n, q), cols);
      }
    }

    // Simple-path structure of a trip.
    {
      std::vector<Term> from_origin, into_dest, into_origin, from_dest;
      for (Period p = 1; p <= P; ++p) {
        from_origin.push_back({cat_.depart(v, t, origin, p), 1.0});
        into_dest.push_back({cat_.arrive(v, t, dest, p), 1.0});
        into_origin.push_back({cat_.arrive(v, t, origin, p), 1.0});
        from_dest.push_back({cat_.depart(v, t, dest, p), 1.0});
      }
      from_origin.push_back({trip, -1.0});
      into_dest.push_back({trip, -1.0});
      add("path-origin", std::move(from_origin), Sense::eq, 0.0);
      add("path-dest", std::move(into_dest), Sense::eq, 0.0);
      add("no-arr-origin", std::move(into_origin), Sense::eq, 0.0);
      add("no-dep-dest", std::move(from_dest), Sense::eq, 0.0);
    }
    for (int n = 0; n < N; ++n) {
      if (n == origin) continue;
      for (Period p = 1; p <= P; ++p) {
        std::vector<Term> terms{{cat_.depart(v, t, n, p), 1.0}};
        for (Period q = 1; q < p; ++q) terms.push_back({cat_.arrive(v, t, n, q), -1.0});
        add("dep-after-arr", std::move(terms), Sense::le, 0.0);
      }
    }

    // SOC propagation along a used segment, plus non-negative
    // arrival SOC.
    for (std::size_t r = 0; r < inst_.network.segments.size(); ++r) {
      const auto& seg = inst_.network.segments[r];
      const int ci = inst_.network.charger_of(seg.to);
      for (Period p = 1; p <= P; ++p) {
        const int travel = seg.travel_time(p);
        const Period q = p + travel - 1;
        if (q > P) continue;
        const int dep = cat_.depart(v, t, seg.from, p);
        const int arr = cat_.arrive(v, t, seg.to, q);
        for (bool loaded : {true, false}) {
          const double drop = static_cast<double>(travel) * truck.drain(static_cast<int>(r), loaded);
          std::vector<Term> expr{{cat_.soc(v, t, seg.to), 1.0},
                                 {cat_.soc(v, t, seg.from), -1.0},
                                 {arr, drop},
                                 {cat_.overflow(v, t, seg.to), 1.0}};
          double M = truck.battery + drop + cat_.column(cat_.overflow(v, t, seg.to)).upper;
          if (ci >= 0) {
            for (Period pp = 1; pp <= P; ++pp) expr.push_back({cat_.charge(v, t, ci, pp), -static_cast<double>(truck.charge_rate)});
            M += static_cast<double>(truck.charge_rate) * P;
          }
          // Gate: dep + arr + (ld or 1 - ld) = 3 when active.
          const double ld_coef = loaded ? M : -M;
          const double active = loaded ? 3.0 * M : 2.0 * M;
          const std::string name = std::string(ci >= 0 ? "eq11" : (loaded ? "eq9" : "eq10")) +
                                   (ci >= 0 ? (loaded ? "-ld" : "-empty") : "");
          auto le = expr;
          le.push_back({dep, M});
          le.push_back({arr, M});
          le.push_back({ld, ld_coef});
          add(name + "-bigM-le", std::move(le), Sense::le, active, M);
          auto ge = expr;
          ge.push_back({dep, -M});
          ge.push_back({arr, -M});
          ge.push_back({ld, -ld_coef});
          add(name + "-bigM-ge", std::move(ge), Sense::ge, -active, M);

          const double Mn = std::max(1.0, drop);
          add(std::string("soc-arrive-nonneg") + (loaded ? "-ld" : "-empty"),
              {{cat_.soc(v, t, seg.from), 1.0}, {dep, -Mn}, {arr, -Mn}, {ld, loaded ? -Mn : Mn}}, Sense::ge,
              drop - (loaded ? 3.0 : 2.0) * Mn, Mn);
        }
      }
    }
    for (int n = 0; n < N; ++n) {
      const double Mo = cat_.column(cat_.overflow(v, t, n)).upper;
      add("soc-clip-overflow", {{cat_.overflow(v, t, n), 1.0}, {cat_.full(v, t, n), -Mo}}, Sense::le, 0.0, Mo);
      add("soc-clip-full", {{cat_.soc(v, t, n), 1.0}, {cat_.full(v, t, n), -static_cast<double>(truck.battery)}},
          Sense::ge, 0.0, truck.battery);
    }
    if (t == 1) add("soc-initial", {{cat_.soc(v, t, truck.depot), 1.0}}, Sense::eq, truck.battery);

    // Charging windows and block markers.
    for (int ci = 0; ci < C; ++ci) {
      const NodeIndex n = inst_.network.chargers[static_cast<std::size_t>(ci)].node;
      for (Period p = 1; p <= P; ++p) {
        const int chg = cat_.charge(v, t, ci, p);
        const int bgn = cat_.charge_begin(v, t, ci, p);
        const int cmp = cat_.charge_end(v, t, ci, p);
        std::vector<Term> after{{chg, 1.0}};
        for (Period q = 1; q < p; ++q) after.push_back({cat_.arrive(v, t, n, q), -1.0});
        add("eq12", std::move(after), Sense::le, 0.0);
        std::vector<Term> before{{chg, 1.0}};
        for (Period q = 1; q <= p; ++q) before.push_back({cat_.depart(v, t, n, q), 1.0});
        add("eq13", std::move(before), Sense::le, 1.0);

        if (p == 1) {
          add("eq14", {{bgn, 1.0}, {chg, -1.0}}, Sense::ge, 0.0);
        } else {
          add("eq14", {{bgn, 1.0}, {chg, -1.0}, {cat_.charge(v, t, ci, p - 1), 1.0}}, Sense::ge, 0.0);
          add("eq14-tight-prev", {{bgn, 1.0}, {cat_.charge(v, t, ci, p - 1), 1.0}}, Sense::le, 1.0);
        }
        add("eq14-tight-on", {{bgn, 1.0}, {chg, -1.0}}, Sense::le, 0.0);
        if (p == P) {
          add("eq15", {{cmp, 1.0}, {chg, -1.0}}, Sense::ge, 0.0);
        } else {
          add("eq15", {{cmp, 1.0}, {chg, -1.0}, {cat_.charge(v, t, ci, p + 1), 1.0}}, Sense::ge, 0.0);
          add("eq15-tight-next", {{cmp, 1.0}, {cat_.charge(v, t, ci, p + 1), 1.0}}, Sense::le, 1.0);
        }
        add("eq15-tight-on", {{cmp, 1.0}, {chg, -1.0}}, Sense::le, 0.0);
      }
    }
    for (Period p = 1; p <= P; ++p) {
      std::vector<Term> bgn, cmp;
      for (int ci = 0; ci < C; ++ci) {
        bgn.push_back({cat_.charge_begin(v, t, ci, p), 1.0});
        cmp.push_back({cat_.charge_end(v, t, ci, p), 1.0});
      }
      if (C > 0) {
        add("eq3-bgn", std::move(bgn), Sense::le, 1.0);
        add("eq3-cmp", std::move(cmp), Sense::le, 1.0);
      }
    }
    for (int ci = 0; ci < C; ++ci) {
      std::vector<Term> bgn, cmp, btime, ctime;
      for (Period p = 1; p <= P; ++p) {
        bgn.push_back({cat_.charge_begin(v, t, ci, p), 1.0});
        cmp.push_back({cat_.charge_end(v, t, ci, p), 1.0});
        btime.push_back({cat_.charge_begin(v, t, ci, p), static_cast<double>(p)});
        ctime.push_back({cat_.charge_end(v, t, ci, p), static_cast<double>(p)});
      }
      btime.push_back({cat_.begin_time(v, t, ci), -1.0});
      ctime.push_back({cat_.end_time(v, t, ci), -1.0});
      add("eq4-bgn", std::move(bgn), Sense::le, 1.0);
      add("eq4-cmp", std::move(cmp), Sense::le, 1.0);
      add("eq5-bgn", std::move(btime), Sense::eq, 0.0);
      add("eq5-cmp", std::move(ctime), Sense::eq, 0.0);
    }

    // Unloading starts on arrival at the destination.
    implies_equal("eq16", ld, cat_.unload(v, t), cat_.arrive_time(v, t, dest), Mt);
    add("eq16-gate", {{cat_.unload(v, t), 1.0}, {ld, -static_cast<double>(P)}}, Sense::le, 0.0);

    add("eq23", {{ld, 1.0}, {trip, -1.0}}, Sense::le, 0.0);
    if (inst_.product_for_trip(v, t) < 0) add("ld-no-product", {{ld, 1.0}}, Sense::le, 0.0);
    add("eq31", {{cat_.last_depot_arrival(v), 1.0}, {cat_.arrive_time(v, t, truck.depot), -1.0}}, Sense::ge, 0.0);
  }

  void connecting_rows(int v, int t) {
    const Truck& truck = inst_.fleet[static_cast<std::size_t>(v)];
    const double Mt = inst_.horizon + 1.0;
    const NodeIndex node = inst_.trip_destination(v, t);
    const int ci = inst_.network.charger_of(node);
    const bool outbound = inst_.is_outbound(t);
    // Outbound trips end at the port, which must be left again;
    // inbound trips connect only if the next trip is taken.
    const int gate = outbound ? cat_.trip_var(v, t) : cat_.trip_var(v, t + 1);
    const std::string time_tag = outbound ? "eq19-bigM" : "eq17-bigM";
    const std::string charge_tag = outbound ? "eq20-bigM" : "eq18-bigM";
    const int next_dep = cat_.depart_time(v, t + 1, node);
    add(time_tag, {{next_dep, 1.0}, {cat_.arrive_time(v, t, node), -1.0}, {gate, -Mt}}, Sense::ge, 1.0 - Mt, Mt);
    if (ci >= 0) {
      add(charge_tag, {{next_dep, 1.0}, {cat_.end_time(v, t, ci), -1.0}, {gate, -Mt}}, Sense::ge, 1.0 - Mt, Mt);
    }
    // SOC carries over at the shared depot/port node.
    implies_equal(outbound ? "eq22" : "eq21", gate, cat_.soc(v, t + 1, node), cat_.soc(v, t, node), truck.battery);
    add("eq24", {{cat_.trip_var(v, t + 1), 1.0}, {cat_.trip_var(v, t), -1.0}}, Sense::le, 0.0);
  }

  void product_rows() {
    for (int d = 0; d < inst_.demand_count(); ++d) {
      for (int v = 0; v < inst_.truck_count(); ++v) {
        for (int t = 1; t <= inst_.max_trips; ++t) {
          if (inst_.product_for_trip(v, t) != d) continue;
          add("eq28", {{cat_.latest_unload(d), 1.0}, {cat_.unload(v, t), -1.0}}, Sense::ge, 0.0);
        }
      }
      add("eq29", {{cat_.tardiness(d), 1.0}, {cat_.latest_unload(d), -1.0}}, Sense::ge,
          -static_cast<double>(inst_.demands[static_cast<std::size_t>(d)].due));
    }
  }

  const Instance& inst_;
  CanonicalModel& m_;
  const VariableCatalog& cat_;
};

}  // namespace

std::map<std::string, int> CanonicalModel::tag_counts() const {
  std::map<std::string, int> out;
  for (const auto& tag : tags) out[tag] = 0;
  for (const auto& row : rows) ++out[tag_of(row)];
  return out;
}

CanonicalModel build_model(const Instance& instance) {
  CanonicalModel model(instance);
  Builder(instance, model).build();
  const auto& cat = model.catalog;
  const int P = instance.horizon;
  model.cost.assign(static_cast<std::size_t>(cat.size()), 0.0);
  auto at = [&](int j) -> double& { return model.cost[static_cast<std::size_t>(j)]; };
  for (int v = 0; v < instance.truck_count() && instance.max_trips > 0; ++v) {
    at(cat.last_depot_arrival(v)) += instance.labor_cost;
    at(cat.depart_time(v, 1, instance.fleet[static_cast<std::size_t>(v)].depot)) -= instance.labor_cost;
    for (int t = 1; t <= instance.max_trips; ++t) {
      for (int ci = 0; ci < instance.charger_count(); ++ci) {
        const auto& site = instance.network.chargers[static_cast<std::size_t>(ci)];
        for (Period p = 1; p <= P; ++p) at(cat.charge(v, t, ci, p)) += site.price_at(p);
      }
    }
  }
  for (int d = 0; d < instance.demand_count(); ++d) at(cat.tardiness(d)) += instance.demands[static_cast<std::size_t>(d)].tardiness_penalty;
  return model;
}

ModelEvaluation evaluate(const CanonicalModel& model, std::span<const double> x, double tolerance) {
  if (static_cast<int>(x.size()) != model.catalog.size()) throw InstanceError("assignment size does not match the catalog");
  ModelEvaluation out;
  for (int j = 0; j < model.catalog.size(); ++j) {
    const Column& col = model.catalog.column(j);
    const double value = x[static_cast<std::size_t>(j)];
    const bool fractional = col.integer && std::abs(value - std::round(value)) > tolerance;
    if (value < col.lower - tolerance || value > col.upper + tolerance || fractional) out.bound_violations.push_back(j);
  }
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    const auto& row = model.rows[i];
    double lhs = 0.0;
    for (const auto& term : row.terms) lhs += term.coef * x[static_cast<std::size_t>(term.column)];
    double excess = 0.0;
    switch (row.sense) {
      case Sense::le: excess = lhs - row.rhs; break;
      case Sense::ge: excess = row.rhs - lhs; break;
      case Sense::eq: excess = std::abs(lhs - row.rhs); break;
    }
    if (excess > tolerance) out.violated_rows.push_back({static_cast<int>(i), excess});
  }
  return out;
}

ModelEvaluation evaluate(const CanonicalModel& model, const Assignment& assignment) {
  const auto x = model.catalog.flatten(assignment);
  return evaluate(model, x);
}

void write_mps(const CanonicalModel& model, std::ostream& out, const std::string& name) {
  const auto& cat = model.catalog;
  std::vector<std::vector<std::pair<int, double>>> by_column(static_cast<std::size_t>(cat.size()));
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    for (const auto& term : model.rows[i].terms) {
      if (term.coef != 0.0) by_column[static_cast<std::size_t>(term.column)].emplace_back(static_cast<int>(i), term.coef);
    }
  }
  auto row_name = [&](int i) { return "R" + std::to_string(i) + "_" + model.tag_of(model.rows[static_cast<std::size_t>(i)]); };
  out << std::setprecision(15);
  out << "NAME " << name << "\nROWS\n N COST\n";
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    const char sense = model.rows[i].sense == Sense::le ? 'L' : model.rows[i].sense == Sense::ge ? 'G' : 'E';
    out << ' ' << sense << ' ' << row_name(static_cast<int>(i)) << '\n';
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < cat.size(); ++j) {
    const bool integer = cat.column(j).integer;
    if (integer != in_int) {
      out << " M" << marker++ << " 'MARKER' '" << (integer ? "INTORG" : "INTEND") << "'\n";
      in_int = integer;
    }
    const std::string col = cat.name(j);
    const double c = j < static_cast<int>(model.cost.size()) ? model.cost[static_cast<std::size_t>(j)] : 0.0;
    if (c != 0.0 || by_column[static_cast<std::size_t>(j)].empty()) out << ' ' << col << " COST " << c << '\n';
    for (auto [i, coef] : by_column[static_cast<std::size_t>(j)]) out << ' ' << col << ' ' << row_name(i) << ' ' << coef << '\n';
  }
  if (in_int) out << " M" << marker << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    if (model.rows[i].rhs != 0.0) out << " RHS " << row_name(static_cast<int>(i)) << ' ' << model.rows[i].rhs << '\n';
  }
  out << "BOUNDS\n";
  for (int j = 0; j < cat.size(); ++j) {
    const Column& c = cat.column(j);
    out << " UP BND " << cat.name(j) << ' ' << c.upper << '\n';
  }
  out << "ENDATA\n";
}

CostBreakdown objective(const Instance& inst, const Assignment& a) {
  CostBreakdown cost;
  for (int v = 0; v < inst.truck_count(); ++v) {
    const auto& tv = a.trucks.at(static_cast<std::size_t>(v));
    const Truck& truck = inst.fleet[static_cast<std::size_t>(v)];
    if (inst.max_trips > 0 && tv.trips[0].trip == 1) {
      cost.labor += inst.labor_cost * (tv.last_depot_arrival - tv.trips[0].depart_time[static_cast<std::size_t>(truck.depot)]);
    }
    for (const auto& trip : tv.trips) {
      for (int ci = 0; ci < inst.charger_count(); ++ci) {
        const auto& site = inst.network.chargers[static_cast<std::size_t>(ci)];
        for (Period p = 1; p <= inst.horizon; ++p) {
          if (trip.charge[static_cast<std::size_t>(ci * inst.horizon + p - 1)] != 0) {
            cost.charging += site.price_at(p) * trip.charge[static_cast<std::size_t>(ci * inst.horizon + p - 1)];
          }
        }
      }
    }
  }
  for (int d = 0; d < inst.demand_count(); ++d) {
    cost.tardiness += inst.demands[static_cast<std::size_t>(d)].tardiness_penalty * a.tardiness.at(static_cast<std::size_t>(d));
  }
  return cost;
}

CostBreakdown objective(const Instance& inst, std::span<const TruckSchedule> schedules) {
  return objective(inst, materialize(inst, schedules));
}

double truck_cost(const Instance& inst, int v, const TruckSchedule& schedule) {
  if (schedule.trips.empty()) return 0.0;
  double cost = 0.0;
  const Truck& truck = inst.fleet.at(static_cast<std::size_t>(v));
  const Period first = schedule.trips.front().legs.front().depart;
  Period last = 0;
  for (std::size_t ti = 0; ti < schedule.trips.size(); ++ti) {
    const auto& trip = schedule.trips[ti];
    if (!trip.legs.empty() && trip.legs.back().to == truck.depot) last = std::max(last, trip.legs.back().arrive);
    for (const auto& block : trip.charges) {
      const auto& site = inst.network.chargers.at(static_cast<std::size_t>(inst.network.charger_of(block.node)));
      for (Period p = block.first; p <= block.last; ++p) cost += site.price_at(p);
    }
  }
  return cost + inst.labor_cost * (last - first);
}

std::vector<double> coupling_violations(const Instance& inst, const Assignment& a) {
  const CouplingLayout layout(inst);
  std::vector<double> h(static_cast<std::size_t>(layout.size()), 0.0);
  for (int c = 0; c < layout.demand_components; ++c) {
    h[static_cast<std::size_t>(c)] = -inst.demands[static_cast<std::size_t>(layout.demand_order[static_cast<std::size_t>(c)])].quantity;
  }
  std::vector<int> load(static_cast<std::size_t>(inst.charger_count() * inst.horizon), 0);
  for (int v = 0; v < inst.truck_count(); ++v) {
    for (int t = 1; t <= inst.max_trips; ++t) {
      const auto& trip = a.trucks.at(static_cast<std::size_t>(v)).trips.at(static_cast<std::size_t>(t - 1));
      const int product = inst.product_for_trip(v, t);
      if (product >= 0) h[static_cast<std::size_t>(layout.component_of[static_cast<std::size_t>(product)])] += trip.loaded;
      for (std::size_t k = 0; k < load.size(); ++k) load[k] += trip.charge[k];
    }
  }
  for (int ci = 0; ci < inst.charger_count(); ++ci) {
    const int cap = inst.network.chargers[static_cast<std::size_t>(ci)].chargers;
    for (Period p = 1; p <= inst.horizon; ++p) {
      const int over = load[static_cast<std::size_t>(ci * inst.horizon + p - 1)] - cap;
      h[static_cast<std::size_t>(layout.capacity_component(ci, p))] = std::max(0, over);
    }
  }
  return h;
}

std::vector<double> coupling_violations(const Instance& inst, std::span<const TruckSchedule> schedules) {
  const CouplingLayout layout(inst);
  std::vector<double> h(static_cast<std::size_t>(layout.size()), 0.0);
  for (int c = 0; c < layout.demand_components; ++c) {
    h[static_cast<std::size_t>(c)] = -inst.demands[static_cast<std::size_t>(layout.demand_order[static_cast<std::size_t>(c)])].quantity;
  }
  std::vector<int> load(static_cast<std::size_t>(inst.charger_count() * inst.horizon), 0);
  for (std::size_t v = 0; v < schedules.size(); ++v) {
    for (std::size_t ti = 0; ti < schedules[v].trips.size(); ++ti) {
      const auto& trip = schedules[v].trips[ti];
      const int product = inst.product_for_trip(static_cast<int>(v), static_cast<int>(ti) + 1);
      if (trip.loaded && product >= 0) h[static_cast<std::size_t>(layout.component_of[static_cast<std::size_t>(product)])] += 1.0;
      for (const auto& block : trip.charges) {
        const int ci = inst.network.charger_of(block.node);
        for (Period p = block.first; p <= block.last; ++p) ++load[static_cast<std::size_t>(ci * inst.horizon + p - 1)];
      }
    }
  }
  for (int ci = 0; ci < inst.charger_count(); ++ci) {
    const int cap = inst.network.chargers[static_cast<std::size_t>(ci)].chargers;
    for (Period p = 1; p <= inst.horizon; ++p) {
      h[static_cast<std::size_t>(layout.capacity_component(ci, p))] =
          std::max(0, load[static_cast<std::size_t>(ci * inst.horizon + p - 1)] - cap);
    }
  }
  return h;
}

double l1_norm(std::span<const double> h) {
  double s = 0.0;
  for (double x : h) s += std::abs(x);
  return s;
}

double squared_norm(std::span<const double> h) {
  double s = 0.0;
  for (double x : h) s += x * x;
  return s;
}

double lagrangian_value(const Instance& inst, std::span<const TruckSchedule> schedules, std::span<const double> lambda,
                        double rho) {
  const auto h = coupling_violations(inst, schedules);
  if (lambda.size() != h.size()) throw InstanceError("multiplier dimension does not match the coupling vector");
  double value = 0.0;
  for (std::size_t v = 0; v < schedules.size(); ++v) value += truck_cost(inst, static_cast<int>(v), schedules[v]);
  value += objective(inst, materialize(inst, schedules)).tardiness;
  for (std::size_t i = 0; i < h.size(); ++i) value += lambda[i] * h[i];
  return value + rho * l1_norm(h);
}

}  // namespace jrc
