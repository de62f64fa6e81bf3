#include "harmony/engine.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>
#include <thread>
#include <unordered_map>

namespace harmony {

MarginalPair mode_marginals(const Instance& inst) {
  const long n = static_cast<long>(inst.agent_count());
  const long m = static_cast<long>(inst.room_count());
  MarginalPair marg;
  marg.agents.assign(static_cast<std::size_t>(n), Rational(1) / Rational(n));
  switch (inst.mode()) {
    case Mode::classic:
    case Mode::secretive:
    case Mode::extra:
      marg.rooms.assign(static_cast<std::size_t>(m), Rational(1) / Rational(m));
      break;
    case Mode::roommates:
      for (const auto& r : inst.rooms()) marg.rooms.push_back(Rational(r.capacity) / Rational(n));
      break;
  }
  return marg;
}

SolverConfig resolve_config(const Instance& inst, SolverConfig config) {
  if (!config.epsilon) {
    Rational scale = std::max(inst.total_rent(), inst.compensation_bound());
    if (sgn(scale) <= 0) scale = 1;
    config.epsilon = scale * rational(1, 1'000'000);
  }
  if (!config.price_tolerance) config.price_tolerance = config.epsilon;
  if (sgn(*config.epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  if (sgn(*config.price_tolerance) <= 0) throw std::invalid_argument("price tolerance must be positive");
  if (config.initial_resolution < 1) throw std::invalid_argument("initial resolution k0 must be at least 1");
  if (config.growth < 2) throw std::invalid_argument("growth factor must be at least 2");
  if (config.max_rounds < 1) throw std::invalid_argument("max rounds must be at least 1");
  if (config.localization_radius < 0) throw std::invalid_argument("localization radius must be nonnegative");
  if (config.workers == 0) config.workers = 1;
  return config;
}

PriceMap instance_price_map(const Instance& inst) {
  return PriceMap{PriceMapKind::compensable, inst.compensation_bound(), inst.total_rent()};
}

namespace {

std::size_t admissible_label(const Instance& inst, std::size_t agent, const GridPoint& point,
                             const PriceVector& prices, const RoomSet& best) {
  for (auto j : best)
    if (point.y[j] > 0) return j;
  throw AssumptionViolation("agent '" + inst.agents()[agent].name + "' is not compensable: at prices " +
                                format_prices(prices) + " every best room costs T",
                            agent, prices);
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

// Labels of every agent at each vertex, memoised for one scan.
class Labeler {
 public:
  Labeler(const Instance& inst, const PriceMap& map, const LabelObserver& observer)
      : inst_(inst), map_(map), observer_(observer) {}

  const std::vector<std::size_t>& labels(const GridPoint& point) {
    if (auto it = cache_.find(point.y); it != cache_.end()) return it->second;
    const PriceVector prices = map_(point);
    std::vector<std::size_t> out(inst_.agent_count());
    const bool boundary = point.on_boundary();
    for (std::size_t i = 0; i < inst_.agent_count(); ++i) {
      const RoomSet best = inst_.oracle(i).best_rooms(prices);
      ++stats.oracle_calls;
      out[i] = admissible_label(inst_, i, point, prices, best);
      if (boundary) ++stats.boundary_labels;
      if (observer_) observer_(point, i, out[i]);
    }
    return cache_.emplace(point.y, std::move(out)).first->second;
  }

  ScanStats stats;

 private:
  const Instance& inst_;
  const PriceMap& map_;
  const LabelObserver& observer_;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, VectorHash> cache_;
};

DemandGraph graph_of(const Instance& inst, const Cell& cell, Labeler& labeler) {
  DemandGraph g(inst.agent_count(), inst.room_count());
  for (const auto& v : cell.vertices()) {
    const auto& labels = labeler.labels(v);
    for (std::size_t i = 0; i < labels.size(); ++i) g.add_edge(i, labels[i]);
  }
  return g;
}

struct CellOutcome {
  std::optional<FeasibleCell> feasible;
  std::exception_ptr error;
  bool decided() const { return feasible.has_value() || error != nullptr; }
};

// Evaluates cells in order, stopping at the first decided one.
void scan_chunk(const Instance& inst, const MarginalPair& marg, const std::vector<Cell>& batch,
                std::size_t begin, std::size_t end, Labeler& labeler, std::vector<CellOutcome>& outcomes) {
  for (std::size_t c = begin; c < end; ++c) {
    try {
      ++labeler.stats.cells_scanned;
      DemandGraph g = graph_of(inst, batch[c], labeler);
      if (auto w = transportation_feasible(g, marg))
        outcomes[c].feasible = FeasibleCell{batch[c], std::move(g), std::move(*w)};
    } catch (...) {
      outcomes[c].error = std::current_exception();
    }
    if (outcomes[c].decided()) return;
  }
}

}  // namespace

std::size_t label_vertex(const Instance& inst, std::size_t agent, const GridPoint& point, const PriceMap& map) {
  if (point.dimension() != inst.room_count()) throw std::invalid_argument("grid point dimension differs from room count");
  const PriceVector prices = map(point);
  return admissible_label(inst, agent, point, prices, inst.oracle(agent).best_rooms(prices));
}

DemandGraph cell_demand_graph(const Instance& inst, const Cell& cell, const PriceMap& map) {
  const LabelObserver none;
  Labeler labeler(inst, map, none);
  return graph_of(inst, cell, labeler);
}

std::optional<FeasibleCell> find_feasible_cell(const Instance& inst, std::int64_t k, const PriceMap& map,
                                               const MarginalPair& marg, const std::optional<SearchRegion>& region,
                                               unsigned workers, ScanStats* stats, const LabelObserver& observer) {
  const std::size_t m = inst.room_count();
  CellEnumerator cursor = region ? CellEnumerator(m, k, region->box, region->exclude) : CellEnumerator(m, k);
  workers = std::max(1u, workers);
  std::vector<Labeler> labelers;
  labelers.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) labelers.emplace_back(inst, map, observer);

  const std::size_t batch_size = 256 * workers;
  std::optional<FeasibleCell> result;
  std::exception_ptr error;
  for (bool exhausted = false; !exhausted && !result && !error;) {
    std::vector<Cell> batch;
    while (batch.size() < batch_size) {
      auto c = cursor.next();
      if (!c) {
        exhausted = true;
        break;
      }
      batch.push_back(std::move(*c));
    }
    if (batch.empty()) break;
    std::vector<CellOutcome> outcomes(batch.size());
    if (workers == 1) {
      scan_chunk(inst, marg, batch, 0, batch.size(), labelers[0], outcomes);
    } else {
      const std::size_t chunk = (batch.size() + workers - 1) / workers;
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(batch.size(), w * chunk);
        const std::size_t end = std::min(batch.size(), begin + chunk);
        threads.emplace_back([&, begin, end, w] { scan_chunk(inst, marg, batch, begin, end, labelers[w], outcomes); });
      }
      for (auto& t : threads) t.join();
    }
    for (auto& o : outcomes) {
      if (o.error) {
        error = o.error;
        break;
      }
      if (o.feasible) {
        result = std::move(o.feasible);
        break;
      }
    }
  }
  if (stats) {
    for (const auto& l : labelers) {
      stats->cells_scanned += l.stats.cells_scanned;
      stats->oracle_calls += l.stats.oracle_calls;
      stats->boundary_labels += l.stats.boundary_labels;
    }
  }
  if (error) std::rethrow_exception(error);
  return result;
}

DemandGraph relaxed_demand_graph(const Instance& inst, const PriceVector& prices, const Rational& epsilon) {
  DemandGraph g(inst.agent_count(), inst.room_count());
  for (std::size_t i = 0; i < inst.agent_count(); ++i)
    for (auto j : near_best_rooms(inst.oracle(i), prices, epsilon)) g.add_edge(i, j);
  return g;
}

namespace {

std::optional<std::vector<std::vector<std::size_t>>> perfect_placement(const DemandGraph& g, std::size_t needed) {
  const Matching mm = max_matching(g);
  if (mm.size() != needed) return std::nullopt;
  std::vector<std::vector<std::size_t>> rooms(g.room_count());
  for (std::size_t i = 0; i < mm.agent_room.size(); ++i)
    if (mm.agent_room[i]) rooms[*mm.agent_room[i]].push_back(i);
  return rooms;
}

}  // namespace

std::optional<std::vector<Scenario>> extract_scenarios(const Instance& inst, const DemandGraph& g) {
  std::vector<Scenario> out;
  switch (inst.mode()) {
    case Mode::classic: {
      auto rooms = perfect_placement(g, inst.agent_count());
      if (!rooms) return std::nullopt;
      out.push_back({std::nullopt, std::move(*rooms)});
      break;
    }
    case Mode::roommates: {
      std::vector<long> caps;
      for (const auto& r : inst.rooms()) caps.push_back(r.capacity);
      auto result = capacity_matching(g, caps);
      if (std::holds_alternative<HallViolation>(result)) return std::nullopt;
      out.push_back({std::nullopt, std::move(std::get<CapacityAssignment>(result))});
      break;
    }
    case Mode::secretive:
      for (std::size_t r = 0; r < inst.room_count(); ++r) {
        auto rooms = perfect_placement(g.without_room(r), inst.agent_count());
        if (!rooms) return std::nullopt;
        out.push_back({r, std::move(*rooms)});
      }
      break;
    case Mode::extra:
      for (std::size_t i = 0; i < inst.agent_count(); ++i) {
        auto rooms = perfect_placement(g.without_agent(i), inst.room_count());
        if (!rooms) return std::nullopt;
        out.push_back({i, std::move(*rooms)});
      }
      break;
  }
  return out;
}

Solution solve(const Instance& inst, const SolverConfig& raw_config) {
  const auto started = std::chrono::steady_clock::now();
  const SolverConfig cfg = resolve_config(inst, raw_config);
  const PriceMap map = instance_price_map(inst);
  const MarginalPair marg = mode_marginals(inst);
  const std::size_t m = inst.room_count();

  Diagnostics diag;
  diag.solver = "engine";
  ScanStats stats;
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  };
  auto sync = [&] {
    diag.cells_scanned = stats.cells_scanned;
    diag.oracle_calls = stats.oracle_calls;
    diag.boundary_labels = stats.boundary_labels;
    diag.wall_time_ms = elapsed_ms();
  };

  std::int64_t k = cfg.initial_resolution;
  std::optional<Cell> previous;
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    diag.rounds = round;
    diag.final_k = k;

    std::optional<FeasibleCell> found;
    if (!previous) {
      found = find_feasible_cell(inst, k, map, marg, std::nullopt, cfg.workers, &stats, cfg.observer);
    } else {
      // Widen the rescan around the previous cell until it reaches the
      // whole simplex, never revisiting an already scanned box.
      const BaseBox whole = full_box(m, k);
      std::optional<BaseBox> scanned;
      for (std::int64_t radius = cfg.localization_radius;; radius = std::max<std::int64_t>(1, 2 * radius)) {
        const BaseBox box = refined_box(*previous, cfg.growth, radius);
        found = find_feasible_cell(inst, k, map, marg, SearchRegion{box, scanned}, cfg.workers, &stats,
                                   cfg.observer);
        if (found || box == whole) break;
        scanned = box;
      }
    }
    if (!found) {
      sync();
      throw AssumptionViolation("no feasible cell in the full scan at k=" + std::to_string(k) +
                                    " although every label was admissible",
                                std::nullopt, {}, true);
    }

    const CellGeometry geometry = cell_geometry(found->cell, map);
    diag.diameters.push_back(geometry.price_diameter.value());
    if (geometry.price_diameter <= ExtRational(*cfg.price_tolerance)) {
      const PriceVector centre = map(geometry.centroid);
      DemandGraph relaxed = relaxed_demand_graph(inst, centre, *cfg.epsilon);
      if (auto scenarios = extract_scenarios(inst, relaxed)) {
        Solution sol;
        sol.mode = inst.mode();
        sol.prices = finite_prices(centre);
        sol.scenarios = std::move(*scenarios);
        sol.demand_graph = std::move(relaxed);
        VerificationReport report = verify(inst, sol, *cfg.epsilon);
        sol.certificate = std::move(report.overall);
        sol.scenario_certificates = std::move(report.scenarios);
        sync();
        sol.diagnostics = diag;
        return sol;
      }
    }

    previous = found->cell;
    if (k > std::numeric_limits<std::int64_t>::max() / cfg.growth) break;
    k *= cfg.growth;
  }
  sync();
  throw MaxRoundsExceeded("no envy-free solution within " + std::to_string(cfg.max_rounds) +
                              " refinement rounds (last k=" + std::to_string(diag.final_k) + ")",
                          diag);
}

}  // namespace harmony
