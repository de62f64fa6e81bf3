#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "harmony/rational.hpp"

namespace harmony {

struct Edge {
  std::size_t agent;
  std::size_t room;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Bipartite agent-room graph. Edges are kept sorted and unique.
class DemandGraph {
 public:
  DemandGraph(std::size_t agents, std::size_t rooms);
  DemandGraph(std::size_t agents, std::size_t rooms, std::vector<Edge> edges);

  std::size_t agent_count() const noexcept { return agents_; }
  std::size_t room_count() const noexcept { return rooms_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  void add_edge(std::size_t agent, std::size_t room);
  bool has_edge(std::size_t agent, std::size_t room) const;
  std::vector<std::size_t> rooms_of(std::size_t agent) const;
  std::vector<std::size_t> agents_of(std::size_t room) const;

  DemandGraph without_room(std::size_t room) const;
  DemandGraph without_agent(std::size_t agent) const;

 private:
  std::size_t agents_;
  std::size_t rooms_;
  std::vector<Edge> edges_;
};

struct MarginalPair {
  std::vector<Rational> agents;  // b0
  std::vector<Rational> rooms;   // a0
};

class MarginalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Edge weights aligned with DemandGraph::edges().
using EdgeWeights = std::vector<Rational>;

/// Decides whether nonnegative edge weights with row sums `marg.agents` and
/// column sums `marg.rooms` exist, by exact max flow. Returns the weights of
/// one such flow, or nullopt.
std::optional<EdgeWeights> transportation_feasible(const DemandGraph& graph, const MarginalPair& marg);

/// Row and column sums of a weighting.
MarginalPair marginals_of(const DemandGraph& graph, const EdgeWeights& weights);

/// agent -> matched room.
struct Matching {
  std::vector<std::optional<std::size_t>> agent_room;

  std::size_t size() const;
};

/// Maximum-cardinality matching by augmenting paths scanned in index order.
Matching max_matching(const DemandGraph& graph);

enum class HallSide { agents, rooms };

/// A subset of one side whose demand exceeds what its neighbourhood can
/// supply.
struct HallViolation {
  HallSide side = HallSide::agents;
  std::vector<std::size_t> subset;
  std::vector<std::size_t> neighbourhood;
  long demand = 0;  // what the subset needs
  long supply = 0;  // what its neighbourhood offers
};

/// Capacitated Hall check. With side == agents every agent needs one seat
/// and room j offers `room_capacity[j]`; with side == rooms room j needs
/// `room_capacity[j]` agents and each agent offers one. Computed from a
/// minimum cut.
std::optional<HallViolation> hall_violation(const DemandGraph& graph,
                                            const std::vector<long>& room_capacity, HallSide side);

/// One-to-many matching: room -> agents with exactly capacity[j] agents each.
using CapacityAssignment = std::vector<std::vector<std::size_t>>;

/// Requires sum(capacity) == agent count; throws MarginalError otherwise.
std::variant<CapacityAssignment, HallViolation> capacity_matching(const DemandGraph& graph,
                                                                  const std::vector<long>& capacity);

}  // namespace harmony
