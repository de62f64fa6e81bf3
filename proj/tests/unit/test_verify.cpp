#include <doctest.h>

#include "harmony/quasilinear_exact.hpp"
#include "harmony/solution.hpp"
#include "support/instances.hpp"

using namespace harmony;
using testsupport::int_matrix;
using testsupport::quasilinear_instance;

namespace {

Solution manual(Mode mode, std::vector<Rational> prices, std::vector<Scenario> scenarios) {
  Solution s;
  s.mode = mode;
  s.prices = std::move(prices);
  s.scenarios = std::move(scenarios);
  return s;
}

}  // namespace

TEST_CASE("verify exact output of the two-room example") {
  const auto inst = quasilinear_instance(Mode::classic, int_matrix({{150, 0}, {140, 10}}), 100);
  const auto rep = verify(inst, solve_exact(inst), 0);
  CHECK(rep.overall.envy_free);
  CHECK(*rep.overall.max_regret == 0);
  CHECK(rep.overall.regrets == std::vector<std::optional<Rational>>{Rational(0), Rational(0)});
}

TEST_CASE("verify detects envy") {
  const auto inst = quasilinear_instance(Mode::classic, int_matrix({{150, 0}, {140, 10}}), 100);
  const auto swapped = manual(Mode::classic, {115, -15}, {{std::nullopt, {{1}, {0}}}});
  const auto rep = verify(inst, swapped, 0);
  CHECK_FALSE(rep.overall.envy_free);
  CHECK(*rep.overall.regrets[0] == 20);
  CHECK(*rep.overall.max_regret == 20);
  CHECK(verify(inst, swapped, 20).overall.envy_free);
}

TEST_CASE("verify checks rent total and placement shape") {
  const auto inst = quasilinear_instance(Mode::classic, int_matrix({{150, 0}, {140, 10}}), 100);
  CHECK_FALSE(verify(inst, manual(Mode::classic, {115, 0}, {{std::nullopt, {{0}, {1}}}}), 100).overall.envy_free);
  CHECK_FALSE(verify(inst, manual(Mode::classic, {115, -15}, {{std::nullopt, {{0, 1}, {}}}}), 100).overall.envy_free);
  CHECK_FALSE(verify(inst, manual(Mode::classic, {115, -15, 0}, {{std::nullopt, {{0}, {1}}}}), 100).overall.envy_free);
  CHECK_FALSE(verify(inst, manual(Mode::classic, {115, -15}, {}), 100).overall.envy_free);
}

TEST_CASE("single agent, single room") {
  const auto inst = quasilinear_instance(Mode::classic, int_matrix({{3}}), 10, 10);
  CHECK(verify(inst, manual(Mode::classic, {10}, {{std::nullopt, {{0}}}}), 0).overall.envy_free);
}

TEST_CASE("secretive solutions need every pick") {
  const auto inst = quasilinear_instance(Mode::secretive, int_matrix({{100, 0}}), 100, 200);
  const auto full = manual(Mode::secretive, {100, 0}, {{0, {{}, {0}}}, {1, {{0}, {}}}});
  const auto rep = verify(inst, full, 0);
  CHECK(rep.overall.envy_free);
  CHECK(rep.scenarios.size() == 2);
  CHECK_FALSE(verify(inst, manual(Mode::secretive, {100, 0}, {{0, {{}, {0}}}}), 0).overall.envy_free);
  CHECK_FALSE(verify(inst, manual(Mode::secretive, {100, 0}, {{0, {{0}, {}}}, {1, {{0}, {}}}}), 0).overall.envy_free);
}

TEST_CASE("extra-agent leavers must be absent") {
  const auto inst = quasilinear_instance(Mode::extra, int_matrix({{1}, {1}}), 5, 5);
  CHECK(verify(inst, manual(Mode::extra, {5}, {{0, {{1}}}, {1, {{0}}}}), 0).overall.envy_free);
  CHECK_FALSE(verify(inst, manual(Mode::extra, {5}, {{0, {{0}}}, {1, {{0}}}}), 0).overall.envy_free);
}

TEST_CASE("ordinal oracles need exact best rooms") {
  auto wants0 = std::make_shared<CustomOracle>(2, CustomOracle::DemandFn([](const PriceVector&) { return RoomSet{0}; }));
  auto wants1 = std::make_shared<CustomOracle>(2, CustomOracle::DemandFn([](const PriceVector&) { return RoomSet{1}; }));
  const auto inst = testsupport::make_instance(Mode::classic, {wants0, wants1}, 2, 10, Rational(10));
  const auto good = verify(inst, manual(Mode::classic, {5, 5}, {{std::nullopt, {{0}, {1}}}}), 1000);
  CHECK(good.overall.envy_free);
  CHECK_FALSE(good.overall.max_regret.has_value());
  CHECK_FALSE(verify(inst, manual(Mode::classic, {5, 5}, {{std::nullopt, {{1}, {0}}}}), 1000).overall.envy_free);
}
