#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmony/domain.hpp"
#include "harmony/matching.hpp"

namespace harmony {

/// One envy-free placement. For secretive instances `removed` is the room
/// the absent agent picks; for extra instances it is the agent who leaves.
struct Scenario {
  std::optional<std::size_t> removed;
  std::vector<std::vector<std::size_t>> room_agents;
};

struct Diagnostics {
  std::string solver;
  int rounds = 0;
  std::int64_t final_k = 0;
  std::uint64_t cells_scanned = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t boundary_labels = 0;
  double wall_time_ms = 0;
  /// Price diameter of the accepted cell in each round.
  std::vector<Rational> diameters;
};

struct Solution {
  Mode mode = Mode::classic;
  std::vector<Rational> prices;
  /// One scenario for classic/roommates; one per room (secretive) or per
  /// agent (extra).
  std::vector<Scenario> scenarios;
  Certificate certificate;
  std::vector<Certificate> scenario_certificates;
  Diagnostics diagnostics;
  /// Relaxed demand graph the placements were extracted from (engine only).
  std::optional<DemandGraph> demand_graph;
};

struct VerificationReport {
  Certificate overall;
  std::vector<Certificate> scenarios;
};

/// Re-queries every oracle at the solution prices and checks each stored
/// placement independently of how it was produced. Cardinal oracles pass
/// within `epsilon`; ordinal oracles need exact best-room membership.
VerificationReport verify(const Instance& instance, const Solution& solution, const Rational& epsilon);

}  // namespace harmony
