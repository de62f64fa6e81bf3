#include <doctest.h>

#include <random>

#include "harmony/preferences.hpp"

using namespace harmony;

namespace {

PriceVector pv(std::initializer_list<long> xs) {
  PriceVector out;
  for (long x : xs) out.emplace_back(Rational(x));
  return out;
}

std::vector<Rational> vals(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("quasilinear best rooms") {
  const QuasilinearOracle living(vals({800, 100, 100}));
  CHECK(living.best_rooms(pv({600, 400, 0})) == RoomSet{0});
  CHECK(QuasilinearOracle(vals({5, 5})).best_rooms(pv({2, 2})) == RoomSet{0, 1});
  PriceVector p = pv({600, 0, 0});
  p[1] = ExtRational::pos_infinity();
  CHECK(living.best_rooms(p) == RoomSet{0});
  CHECK(living.utility(1, p) == ExtRational::neg_infinity());
  PriceVector none(2, ExtRational::pos_infinity());
  CHECK_THROWS_AS(QuasilinearOracle(vals({1, 2})).best_rooms(none), InadmissiblePrices);
  CHECK_THROWS_AS(QuasilinearOracle(vals({1, 2})).best_rooms(pv({1})), std::invalid_argument);
}

TEST_CASE("utilities") {
  const QuasilinearOracle q(vals({150, 0}));
  CHECK(q.utility(0, pv({115, -15})) == ExtRational(35));
  CHECK(q.utility(1, pv({115, -15})) == ExtRational(15));
  const AffineExternalityOracle a(vals({10, 0}), vals({0, 1}));
  CHECK(a.utility(1, pv({100, 5})) == ExtRational(95));
  CHECK(a.utility(0, pv({100, 5})) == ExtRational(-90));
  CHECK(a.best_rooms(pv({100, 5})) == RoomSet{1});
}

TEST_CASE("regret and near-best rooms") {
  const QuasilinearOracle q(vals({150, 0}));
  CHECK(regret(q, 1, pv({115, -15})) == ExtRational(20));
  CHECK(regret(q, 0, pv({115, -15})) == ExtRational(0));
  CHECK(near_best_rooms(q, pv({115, -15}), 20) == RoomSet{0, 1});
  CHECK(near_best_rooms(q, pv({115, -15}), rational(199, 10)) == RoomSet{0});
  PriceVector p = pv({1, 0});
  p[1] = ExtRational::pos_infinity();
  CHECK(regret(q, 1, p) == ExtRational::pos_infinity());
}

TEST_CASE("utility curves interpolate and extrapolate linearly") {
  const UtilityCurve c({{0, 10}, {10, 0}, {20, -20}});
  CHECK(c(5) == 5);
  CHECK(c(15) == -10);
  CHECK(c(-10) == 20);
  CHECK(c(30) == -40);
  CHECK(UtilityCurve({{3, 7}})(5) == 5);
  CHECK_THROWS_AS(UtilityCurve({}), std::invalid_argument);
  CHECK_THROWS_AS(UtilityCurve({{0, 0}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(UtilityCurve({{0, 0}, {1, 1}}), std::invalid_argument);

  const ArchimedeanCurveOracle o({UtilityCurve({{0, 0}, {10, -10}}), UtilityCurve({{0, 5}, {10, -50}})});
  CHECK(o.best_rooms(pv({0, 0})) == RoomSet{1});
  CHECK(o.best_rooms(pv({0, 1})) == RoomSet{0});
  CHECK(o.free_room_beats(10));
  CHECK_FALSE(o.free_room_beats(rational(1, 2)));
}

TEST_CASE("custom oracles") {
  const CustomOracle ordinal(2, CustomOracle::DemandFn([](const PriceVector&) { return RoomSet{1}; }));
  CHECK_FALSE(ordinal.is_cardinal());
  CHECK(ordinal.best_rooms(pv({0, 0})) == RoomSet{1});
  CHECK_THROWS_AS(ordinal.utility(0, pv({0, 0})), CapabilityError);
  CHECK(near_best_rooms(ordinal, pv({0, 0}), 100) == RoomSet{1});

  const CustomOracle cardinal(2, CustomOracle::UtilityFn([](std::size_t j, const PriceVector& p) {
                                return (j == 0 ? 1.0 : 1.0 + 1e-12) - to_double(p[j].value());
                              }));
  CHECK(cardinal.is_cardinal());
  CHECK(cardinal.best_rooms(pv({0, 0})) == RoomSet{0, 1});
  CHECK(cardinal.best_rooms(pv({1, 0})) == RoomSet{1});
}

TEST_CASE("quasilinear demand is invariant under uniform price shifts") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t % 4);
    std::vector<Rational> v(m);
    PriceVector p(m), shifted(m);
    const Rational c = rational(d(rng), 1 + (d(rng) & 63));
    for (std::size_t j = 0; j < m; ++j) {
      v[j] = Rational(d(rng) % 20);
      p[j] = Rational(d(rng) % 20);
      shifted[j] = Rational(p[j].value() + c);
    }
    const QuasilinearOracle q(v);
    CHECK(q.best_rooms(p) == q.best_rooms(shifted));
  }
}

TEST_CASE("assumption validator") {
  const QuasilinearOracle living(vals({800, 100, 100}));

  const auto comp = validate_assumption(living, Assumption::compensable, 3, 1000, 1000, 1000, 1);
  CHECK(comp.passed);
  CHECK(comp.samples_checked == 1000);
  CHECK(comp.probes_checked > 0);

  const auto mis = validate_assumption(living, Assumption::miserly, 3, 1000, 1000, 1000, 1);
  REQUIRE_FALSE(mis.passed);
  CHECK(*mis.counterexample == pv({600, 400, 0}));
  CHECK(mis.counterexample_best_rooms == RoomSet{0});

  const auto weak = validate_assumption(living, Assumption::weak_miserly, 3, 1000, 1000, 1000, 1);
  REQUIRE_FALSE(weak.passed);
  CHECK(*weak.counterexample == pv({600, 400, 0}));

  CHECK(validate_assumption(QuasilinearOracle(vals({0, 0, 0})), Assumption::miserly, 3, 1000, 1000, 1000, 3).passed);
  CHECK(validate_assumption(living, Assumption::archimedean, 3, 1000, 1000, 500, 3).passed);
  CHECK_FALSE(validate_assumption(living, Assumption::archimedean, 3, 500, 500, 500, 3).passed);

  const CustomOracle greedy(3, CustomOracle::DemandFn([](const PriceVector& p) {
                              std::size_t top = 0;
                              for (std::size_t j = 1; j < p.size(); ++j)
                                if (p[j] > p[top]) top = j;
                              return RoomSet{top};
                            }));
  const auto bad = validate_assumption(greedy, Assumption::compensable, 3, 100, 100, 100, 9);
  REQUIRE_FALSE(bad.passed);
  bool has_t = false;
  for (const auto& x : *bad.counterexample) has_t = has_t || x == ExtRational(100);
  CHECK(has_t);

  const auto a = validate_assumption(living, Assumption::compensable, 3, 1000, 1000, 200, 42);
  const auto b = validate_assumption(living, Assumption::compensable, 3, 1000, 1000, 200, 42);
  CHECK(a.samples_checked == b.samples_checked);
  CHECK(a.note.find("continuity") != std::string::npos);

  CHECK(parse_assumption("weak-miserly") == Assumption::weak_miserly);
  CHECK_FALSE(parse_assumption("bogus").has_value());
}
