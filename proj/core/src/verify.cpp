#include <algorithm>
#include <set>

#include "harmony/solution.hpp"

namespace harmony {

namespace {

std::string scenario_label(const Instance& inst, const Scenario& s) {
  if (!s.removed) return "";
  if (inst.mode() == Mode::secretive) return " [secret pick " + inst.rooms()[*s.removed].name + "]";
  return " [leaver " + inst.agents()[*s.removed].name + "]";
}

Certificate check_scenario(const Instance& inst, const PriceVector& prices, const Scenario& s,
                           const Rational& epsilon) {
  Certificate cert;
  cert.epsilon = epsilon;
  cert.regrets.assign(inst.agent_count(), std::nullopt);
  const std::string tag = scenario_label(inst, s);
  auto fail = [&](std::string why) { cert.failures.push_back(why + tag); };

  const std::size_t m = inst.room_count();
  if (s.room_agents.size() != m) {
    fail("assignment covers " + std::to_string(s.room_agents.size()) + " rooms, instance has " +
         std::to_string(m));
    return cert;
  }

  std::vector<int> seen(inst.agent_count(), 0);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t expected = static_cast<std::size_t>(inst.rooms()[j].capacity);
    if (inst.mode() == Mode::secretive && s.removed == j) expected = 0;
    if (s.room_agents[j].size() != expected)
      fail("room '" + inst.rooms()[j].name + "' holds " + std::to_string(s.room_agents[j].size()) +
           " agents, expected " + std::to_string(expected));
    for (auto i : s.room_agents[j]) {
      if (i >= inst.agent_count()) {
        fail("agent index out of range");
        continue;
      }
      ++seen[i];
    }
  }
  for (std::size_t i = 0; i < inst.agent_count(); ++i) {
    const bool absent = inst.mode() == Mode::extra && s.removed == i;
    if (seen[i] != (absent ? 0 : 1))
      fail("agent '" + inst.agents()[i].name + "' placed " + std::to_string(seen[i]) + " times");
  }

  bool all_cardinal = true;
  std::optional<Rational> worst;
  for (std::size_t j = 0; j < m; ++j) {
    for (auto i : s.room_agents[j]) {
      if (i >= inst.agent_count()) continue;
      const auto& oracle = inst.oracle(i);
      if (oracle.is_cardinal()) {
        const ExtRational r = regret(oracle, j, prices);
        const Rational value = r.is_finite() ? r.value() : Rational(0);
        if (!r.is_finite() || value > epsilon)
          fail("agent '" + inst.agents()[i].name + "' envies: regret " + r.to_string() + " > " +
               to_decimal_string(epsilon));
        if (r.is_finite()) {
          cert.regrets[i] = value;
          if (!worst || value > *worst) worst = value;
        }
      } else {
        all_cardinal = false;
        const RoomSet best = oracle.best_rooms(prices);
        if (!std::binary_search(best.begin(), best.end(), j))
          fail("agent '" + inst.agents()[i].name + "' does not demand room '" + inst.rooms()[j].name + "'");
      }
    }
  }
  if (all_cardinal) cert.max_regret = worst.value_or(Rational(0));
  cert.envy_free = cert.failures.empty();
  return cert;
}

}  // namespace

VerificationReport verify(const Instance& inst, const Solution& sol, const Rational& epsilon) {
  VerificationReport report;
  Certificate& overall = report.overall;
  overall.epsilon = epsilon;
  overall.regrets.assign(inst.agent_count(), std::nullopt);

  if (sol.prices.size() != inst.room_count()) {
    overall.failures.push_back("price vector has " + std::to_string(sol.prices.size()) +
                               " entries, instance has " + std::to_string(inst.room_count()) + " rooms");
    return report;
  }
  Rational sum = 0;
  for (const auto& p : sol.prices) sum += p;
  const Rational rent_tolerance = abs(inst.total_rent()) * rational(1, 1'000'000'000);
  if (abs(Rational(sum - inst.total_rent())) > rent_tolerance)
    overall.failures.push_back("prices sum to " + to_exact_string(sum) + ", total rent is " +
                               to_exact_string(inst.total_rent()));

  // Which scenarios must be present.
  std::set<std::optional<std::size_t>> required;
  switch (inst.mode()) {
    case Mode::classic:
    case Mode::roommates: required.insert(std::nullopt); break;
    case Mode::secretive:
      for (std::size_t r = 0; r < inst.room_count(); ++r) required.insert(r);
      break;
    case Mode::extra:
      for (std::size_t i = 0; i < inst.agent_count(); ++i) required.insert(i);
      break;
  }
  std::set<std::optional<std::size_t>> present;
  for (const auto& s : sol.scenarios) present.insert(s.removed);
  for (const auto& r : required)
    if (!present.count(r)) overall.failures.push_back("missing scenario" + scenario_label(inst, Scenario{r, {}}));
  for (const auto& r : present)
    if (!required.count(r)) overall.failures.push_back("unexpected scenario" + scenario_label(inst, Scenario{r, {}}));

  const PriceVector prices = to_price_vector(sol.prices);
  bool all_cardinal = true;
  std::optional<Rational> worst;
  for (const auto& s : sol.scenarios) {
    Certificate cert = check_scenario(inst, prices, s, epsilon);
    for (const auto& f : cert.failures) overall.failures.push_back(f);
    if (!cert.max_regret) all_cardinal = false;
    else if (!worst || *cert.max_regret > *worst) worst = cert.max_regret;
    for (std::size_t i = 0; i < inst.agent_count(); ++i)
      if (cert.regrets[i] && (!overall.regrets[i] || *cert.regrets[i] > *overall.regrets[i]))
        overall.regrets[i] = cert.regrets[i];
    report.scenarios.push_back(std::move(cert));
  }
  if (all_cardinal && !sol.scenarios.empty()) overall.max_regret = worst.value_or(Rational(0));
  overall.envy_free = overall.failures.empty();
  return report;
}

}  // namespace harmony
