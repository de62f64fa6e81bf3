#include "harmony/domain.hpp"

#include <algorithm>
#include <set>

namespace harmony {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::classic: return "classic";
    case Mode::roommates: return "roommates";
    case Mode::secretive: return "secretive";
    case Mode::extra: return "extra";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(const std::string& text) {
  if (text == "classic") return Mode::classic;
  if (text == "roommates") return Mode::roommates;
  if (text == "secretive") return Mode::secretive;
  if (text == "extra") return Mode::extra;
  return std::nullopt;
}

bool Instance::all_quasilinear() const {
  return std::all_of(agents_.begin(), agents_.end(),
                     [](const AgentSpec& a) { return a.oracle->kind() == OracleKind::quasilinear; });
}

namespace {

void require(bool ok, const char* invariant, const std::string& message) {
  if (!ok) throw InstanceError(invariant, message);
}

template <typename Spec>
void require_unique_names(const std::vector<Spec>& specs, const char* what) {
  std::set<std::string> seen;
  for (const auto& s : specs) {
    require(!s.name.empty(), "names", std::string(what) + " names must be nonempty");
    require(seen.insert(s.name).second, "names",
            std::string("duplicate ") + what + " name '" + s.name + "'");
  }
}

}  // namespace

Instance validate_instance(InstanceDraft draft) {
  const std::size_t n = draft.agents.size();
  const std::size_t m = draft.rooms.size();
  require(n > 0, "nonempty", "instance has no agents");
  require(m > 0, "nonempty", "instance has no rooms");
  require_unique_names(draft.agents, "agent");
  require_unique_names(draft.rooms, "room");

  long capacity_sum = 0;
  for (const auto& r : draft.rooms) {
    require(r.capacity > 0, "capacity",
            "room '" + r.name + "' has nonpositive capacity " + std::to_string(r.capacity));
    capacity_sum += r.capacity;
  }
  const bool unit = std::all_of(draft.rooms.begin(), draft.rooms.end(),
                                [](const RoomSpec& r) { return r.capacity == 1; });
  const std::string counts =
      std::to_string(n) + " agents, " + std::to_string(m) + " rooms";
  switch (draft.mode) {
    case Mode::classic:
      require(n == m, "counts", "classic mode needs as many agents as rooms (" + counts + ")");
      require(unit, "capacity", "classic mode needs all capacities 1");
      break;
    case Mode::roommates:
      require(capacity_sum == static_cast<long>(n), "counts",
              "capacity sum " + std::to_string(capacity_sum) + " ≠ agent count " + std::to_string(n));
      require(m <= n, "counts", "roommates mode needs no more rooms than agents (" + counts + ")");
      break;
    case Mode::secretive:
      require(m >= 2, "counts", "secretive mode needs at least 2 rooms");
      require(n + 1 == m, "counts", "secretive mode needs one fewer agent than rooms (" + counts + ")");
      require(unit, "capacity", "secretive mode needs all capacities 1");
      break;
    case Mode::extra:
      require(n == m + 1, "counts", "extra mode needs one more agent than rooms (" + counts + ")");
      require(unit, "capacity", "extra mode needs all capacities 1");
      break;
  }

  for (const auto& a : draft.agents) {
    require(a.oracle != nullptr, "oracle", "agent '" + a.name + "' has no oracle");
    require(a.oracle->room_count() == m, "oracle",
            "agent '" + a.name + "' oracle covers " + std::to_string(a.oracle->room_count()) +
                " rooms, instance has " + std::to_string(m));
  }

  Instance inst;
  inst.mode_ = draft.mode;
  inst.total_rent_ = draft.total_rent;
  if (draft.compensation_bound) {
    inst.compensation_bound_ = *draft.compensation_bound;
  } else {
    Rational bound = draft.total_rent;
    for (const auto& a : draft.agents) {
      const auto* q = dynamic_cast<const QuasilinearOracle*>(a.oracle.get());
      require(q != nullptr, "compensationBound",
              "compensationBound T is required unless every oracle is quasilinear");
      bound = std::max(bound, q->spread());
    }
    inst.compensation_bound_ = bound;
    inst.bound_defaulted_ = true;
  }
  require(inst.compensation_bound_ >= inst.total_rent_, "T>=R",
          "compensation bound T=" + to_exact_string(inst.compensation_bound_) +
              " is below total rent R=" + to_exact_string(inst.total_rent_) + "; T ≥ R is required");

  for (const auto& a : draft.agents) {
    if (const auto* c = dynamic_cast<const ArchimedeanCurveOracle*>(a.oracle.get()))
      require(c->free_room_beats(inst.compensation_bound_), "archimedean-curve",
              "agent '" + a.name + "': archimedean-curve oracle needs u_j(0) ≥ u_j'(T) for all rooms");
  }

  inst.agents_ = std::move(draft.agents);
  inst.rooms_ = std::move(draft.rooms);
  return inst;
}

std::vector<std::optional<std::size_t>> Allocation::agent_rooms(std::size_t agent_count) const {
  std::vector<std::optional<std::size_t>> out(agent_count);
  for (std::size_t j = 0; j < room_agents.size(); ++j)
    for (auto i : room_agents[j])
      if (i < agent_count) out[i] = j;
  return out;
}

}  // namespace harmony

namespace harmony {

PriceVector shift_to_sum(const PriceVector& prices, const Rational& total_rent) {
  if (prices.empty()) throw std::invalid_argument("cannot shift an empty price vector");
  for (const auto& p : prices)
    if (!p.is_finite()) throw std::domain_error("cannot shift a price vector with an infinite entry");
  const Rational shift = (total_rent - price_sum(prices)) / static_cast<long>(prices.size());
  PriceVector q;
  q.reserve(prices.size());
  for (const auto& p : prices) q.emplace_back(Rational(p.value() + shift));
  return q;
}

}  // namespace harmony
