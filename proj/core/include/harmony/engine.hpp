#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harmony/domain.hpp"
#include "harmony/matching.hpp"
#include "harmony/mesh.hpp"
#include "harmony/solution.hpp"

namespace harmony {

/// An oracle broke the compensable assumption (no admissible label on a
/// boundary vertex), or a global scan found no feasible cell.
class AssumptionViolation : public std::runtime_error {
 public:
  AssumptionViolation(const std::string& message, std::optional<std::size_t> agent, PriceVector prices,
                      bool scan_exhausted = false)
      : std::runtime_error(message), agent_(agent), prices_(std::move(prices)), scan_exhausted_(scan_exhausted) {}

  const std::optional<std::size_t>& agent() const noexcept { return agent_; }
  const PriceVector& prices() const noexcept { return prices_; }
  /// The full mesh held no feasible cell although every label was admissible.
  bool scan_exhausted() const noexcept { return scan_exhausted_; }

 private:
  std::optional<std::size_t> agent_;
  PriceVector prices_;
  bool scan_exhausted_;
};

class MaxRoundsExceeded : public std::runtime_error {
 public:
  MaxRoundsExceeded(const std::string& message, Diagnostics diagnostics)
      : std::runtime_error(message), diagnostics_(std::move(diagnostics)) {}

  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

/// Target marginals per mode:
///   classic   b = 1/n,      a = 1/n
///   roommates b = 1/n,      a = c_j/n
///   secretive b = 1/(n-1),  a = 1/n   (n rooms, n-1 agents)
///   extra     b = 1/(n+1),  a = 1/n   (n rooms, n+1 agents)
MarginalPair mode_marginals(const Instance& instance);

/// Called for every label the engine emits.
using LabelObserver = std::function<void(const GridPoint&, std::size_t agent, std::size_t room)>;

struct SolverConfig {
  std::int64_t initial_resolution = 4;
  std::int64_t growth = 2;
  /// Accept a cell only once its price diameter is at most this; defaults to epsilon.
  std::optional<Rational> price_tolerance;
  /// Envy tolerance of the relaxed demand graph; defaults to 1e-6 * max(R, T).
  std::optional<Rational> epsilon;
  int max_rounds = 30;
  /// Rescan radius around the previous cell, in cells of the previous resolution.
  std::int64_t localization_radius = 2;
  unsigned workers = 1;
  /// Must be thread-safe when workers > 1.
  LabelObserver observer;
};

/// Fills defaults and checks k0 >= 1, growth >= 2, tolerances > 0.
SolverConfig resolve_config(const Instance& instance, SolverConfig config);

/// The compensable price map of the instance (T, R, room count).
PriceMap instance_price_map(const Instance& instance);

/// Lowest-index best room j of `agent` at map(point) with y_j > 0.
/// Throws AssumptionViolation if every best room has y_j = 0.
std::size_t label_vertex(const Instance& instance, std::size_t agent, const GridPoint& point,
                         const PriceMap& map);

/// Edge (i, j) iff agent i labels some vertex of the cell with j.
DemandGraph cell_demand_graph(const Instance& instance, const Cell& cell, const PriceMap& map);

struct FeasibleCell {
  Cell cell;
  DemandGraph graph;
  EdgeWeights weights;
};

struct ScanStats {
  std::uint64_t cells_scanned = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t boundary_labels = 0;
};

struct SearchRegion {
  BaseBox box;
  std::optional<BaseBox> exclude;
};

/// First cell in enumeration order (restricted to `region` if given) whose
/// demand graph carries weights with the target marginals. The result does
/// not depend on the worker count.
std::optional<FeasibleCell> find_feasible_cell(const Instance& instance, std::int64_t k, const PriceMap& map,
                                               const MarginalPair& marginals,
                                               const std::optional<SearchRegion>& region = std::nullopt,
                                               unsigned workers = 1, ScanStats* stats = nullptr,
                                               const LabelObserver& observer = {});

/// Graph of rooms within epsilon of each agent's best at `prices`
/// (exact best rooms for ordinal oracles).
DemandGraph relaxed_demand_graph(const Instance& instance, const PriceVector& prices, const Rational& epsilon);

/// Mode-specific placements from a relaxed demand graph, or nullopt if the
/// graph does not support them.
std::optional<std::vector<Scenario>> extract_scenarios(const Instance& instance, const DemandGraph& graph);

/// Refining simplicial search for an epsilon-envy-free solution.
/// Throws AssumptionViolation or MaxRoundsExceeded.
Solution solve(const Instance& instance, const SolverConfig& config = {});

}  // namespace harmony
