#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harmony/preferences.hpp"
#include "harmony/price.hpp"
#include "harmony/rational.hpp"

namespace harmony {

enum class Mode { classic, roommates, secretive, extra };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& text);

struct RoomSpec {
  std::string name;
  long capacity = 1;
};

struct AgentSpec {
  std::string name;
  OraclePtr oracle;
};

/// Unvalidated instance description, as read from an external format.
struct InstanceDraft {
  Mode mode = Mode::classic;
  std::vector<AgentSpec> agents;
  std::vector<RoomSpec> rooms;
  Rational total_rent = 0;
  std::optional<Rational> compensation_bound;
};

/// Names the violated instance invariant.
class InstanceError : public std::invalid_argument {
 public:
  InstanceError(std::string invariant, const std::string& message)
      : std::invalid_argument(message), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// A validated rental-harmony instance. Immutable; rooms and agents are
/// addressed by 0-based index in input order.
class Instance {
 public:
  Mode mode() const noexcept { return mode_; }
  const std::vector<AgentSpec>& agents() const noexcept { return agents_; }
  const std::vector<RoomSpec>& rooms() const noexcept { return rooms_; }
  std::size_t agent_count() const noexcept { return agents_.size(); }
  std::size_t room_count() const noexcept { return rooms_.size(); }
  const Rational& total_rent() const noexcept { return total_rent_; }
  const Rational& compensation_bound() const noexcept { return compensation_bound_; }
  /// True when T was derived rather than supplied.
  bool bound_defaulted() const noexcept { return bound_defaulted_; }
  const DemandOracle& oracle(std::size_t agent) const { return *agents_.at(agent).oracle; }
  bool all_quasilinear() const;

  friend Instance validate_instance(InstanceDraft draft);

 private:
  Instance() = default;

  Mode mode_ = Mode::classic;
  std::vector<AgentSpec> agents_;
  std::vector<RoomSpec> rooms_;
  Rational total_rent_ = 0;
  Rational compensation_bound_ = 0;
  bool bound_defaulted_ = false;
};

/// Checks every instance invariant; throws InstanceError naming the first
/// violation. When T is omitted and every oracle is quasilinear, T defaults
/// to max(R, largest per-agent value spread).
Instance validate_instance(InstanceDraft draft);

/// room -> agents placed there.
struct Allocation {
  std::vector<std::vector<std::size_t>> room_agents;
  std::vector<Rational> prices;

  /// agent -> room, or nullopt for agents not placed.
  std::vector<std::optional<std::size_t>> agent_rooms(std::size_t agent_count) const;
};

struct Certificate {
  bool envy_free = false;
  std::optional<Rational> max_regret;  // cardinal oracles only
  Rational epsilon = 0;
  /// Per agent; nullopt for ordinal oracles or agents absent from the scenario.
  std::vector<std::optional<Rational>> regrets;
  std::vector<std::string> failures;
};

}  // namespace harmony
