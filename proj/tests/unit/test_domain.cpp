#include <doctest.h>

#include "harmony/domain.hpp"
#include "support/instances.hpp"

using namespace harmony;
using testsupport::int_matrix;
using testsupport::quasilinear_instance;

TEST_CASE("valid instances per mode") {
  const auto inst = quasilinear_instance(Mode::classic, int_matrix({{800, 100, 100}, {0, 0, 0}, {1, 2, 3}}), 1000, 1000);
  CHECK(inst.agent_count() == 3);
  CHECK(inst.compensation_bound() == 1000);
  CHECK_FALSE(inst.bound_defaulted());

  const auto sec = quasilinear_instance(Mode::secretive, int_matrix({{1, 2, 3}, {3, 2, 1}}), 10, 10);
  CHECK(sec.room_count() == 3);

  const auto ex = quasilinear_instance(Mode::extra, int_matrix({{1, 2}, {3, 2}, {0, 0}}), 10, 10);
  CHECK(ex.agent_count() == 3);

  const auto rm = quasilinear_instance(Mode::roommates, int_matrix({{1, 2}, {3, 2}, {0, 0}}), 10, 10, {2, 1});
  CHECK(rm.rooms()[0].capacity == 2);
}

TEST_CASE("roommates capacity mismatch names both counts") {
  try {
    quasilinear_instance(Mode::roommates, int_matrix({{1, 2}, {3, 2}, {0, 0}}), 10, 10, {2, 2});
    FAIL("accepted");
  } catch (const InstanceError& e) {
    CHECK(std::string(e.what()) == "capacity sum 4 ≠ agent count 3");
    CHECK(e.invariant() == "counts");
  }
}

TEST_CASE("rejected drafts") {
  CHECK_THROWS_AS(quasilinear_instance(Mode::classic, int_matrix({{1, 2}, {3, 4}}), 100, 50), InstanceError);
  CHECK_THROWS_AS(quasilinear_instance(Mode::classic, int_matrix({{1, 2, 3}, {3, 4, 5}}), 10, 10), InstanceError);
  CHECK_THROWS_AS(quasilinear_instance(Mode::secretive, int_matrix({{1}}), 10, 10), InstanceError);
  CHECK_THROWS_AS(quasilinear_instance(Mode::extra, int_matrix({{1, 2}, {3, 4}}), 10, 10), InstanceError);
  CHECK_THROWS_AS(quasilinear_instance(Mode::roommates, int_matrix({{1, 2}}), 10, 10, {1, 0}), InstanceError);

  InstanceDraft dup;
  dup.agents = testsupport::agents({std::make_shared<QuasilinearOracle>(std::vector<Rational>{1, 2}),
                                    std::make_shared<QuasilinearOracle>(std::vector<Rational>{1, 2})});
  dup.rooms = {{"same", 1}, {"same", 1}};
  dup.total_rent = 1;
  CHECK_THROWS_AS(validate_instance(dup), InstanceError);

  InstanceDraft empty;
  CHECK_THROWS_AS(validate_instance(empty), InstanceError);

  InstanceDraft width;
  width.agents = testsupport::agents({std::make_shared<QuasilinearOracle>(std::vector<Rational>{1, 2, 3})});
  width.rooms = testsupport::rooms(1);
  width.total_rent = 1;
  CHECK_THROWS_AS(validate_instance(width), InstanceError);
}

TEST_CASE("bound defaults to max of rent and value spread for quasilinear agents") {
  const auto inst = quasilinear_instance(Mode::classic, int_matrix({{150, 0}, {140, 10}}), 100);
  CHECK(inst.bound_defaulted());
  CHECK(inst.compensation_bound() == 150);
  const auto low = quasilinear_instance(Mode::classic, int_matrix({{5, 0}, {0, 5}}), 100);
  CHECK(low.compensation_bound() == 100);

  InstanceDraft d;
  d.agents = testsupport::agents({std::make_shared<AffineExternalityOracle>(std::vector<Rational>{1}, std::vector<Rational>{0})});
  d.rooms = testsupport::rooms(1);
  d.total_rent = 5;
  CHECK_THROWS_AS(validate_instance(d), InstanceError);
}

TEST_CASE("archimedean curves must make a free room beat any room at T") {
  auto steep = std::make_shared<ArchimedeanCurveOracle>(std::vector<UtilityCurve>{
      UtilityCurve({{0, 0}, {10, -10}}), UtilityCurve({{0, 100}, {10, 90}})});
  InstanceDraft d;
  d.agents = testsupport::agents({steep, steep});
  d.rooms = testsupport::rooms(2);
  d.total_rent = 10;
  d.compensation_bound = 10;
  CHECK_THROWS_AS(validate_instance(d), InstanceError);
  d.compensation_bound = 200;
  CHECK_NOTHROW(validate_instance(d));
}

TEST_CASE("allocation inverse map") {
  Allocation a{{{1}, {}, {0, 2}}, {1, 2, 3}};
  const auto ar = a.agent_rooms(4);
  CHECK(ar[0] == std::optional<std::size_t>(2));
  CHECK(ar[1] == std::optional<std::size_t>(0));
  CHECK(ar[2] == std::optional<std::size_t>(2));
  CHECK_FALSE(ar[3].has_value());
}
