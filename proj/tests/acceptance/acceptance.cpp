// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "harmony/engine.hpp"
#include "harmony/quasilinear_exact.hpp"
#include "support/brute.hpp"
#include "support/instances.hpp"
#include "support/lp_oracle.hpp"

using namespace harmony;
using testsupport::Matrix;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

// Counts labels emitted on boundary vertices and those that break the
// positive-coordinate rule or are not best rooms.
struct SpernerAudit {
  std::uint64_t boundary_labels = 0;
  std::uint64_t violations = 0;

  LabelObserver observer(const Instance& inst) {
    return [this, &inst](const GridPoint& pt, std::size_t agent, std::size_t room) {
      const auto best = inst.oracle(agent).best_rooms(instance_price_map(inst)(pt));
      const bool is_best = std::binary_search(best.begin(), best.end(), room);
      if (pt.on_boundary()) ++boundary_labels;
      if (pt.y[room] <= 0 || !is_best) ++violations;
    };
  }
};

SpernerAudit g_audit;

SolverConfig config(const Instance& inst, const Rational& eps, int max_rounds) {
  SolverConfig c;
  c.epsilon = eps;
  c.max_rounds = max_rounds;
  c.initial_resolution = 4;
  c.growth = 2;
  c.observer = g_audit.observer(inst);
  return c;
}

std::string str(const Rational& q) { return to_decimal_string(q, 6); }

void report(int id, const std::string& name, Outcome& o) {
  std::cout << "criterion " << id << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail.str()
            << std::endl;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const QuasilinearOracle oracle({800, 100, 100});
  const PriceVector p = to_price_vector({600, 400, 0});
  const auto t0 = Clock::now();
  const RoomSet best = oracle.best_rooms(p);
  const double demand_ms = ms_since(t0);
  const auto t1 = Clock::now();
  const auto rep = validate_assumption(oracle, Assumption::miserly, 3, 1000, 1000, 1000, 1);
  const double validate_ms = ms_since(t1);
  o.require(best == RoomSet{0}, "best rooms differ from {room 1}");
  o.require(!rep.passed, "miserly validator accepted the oracle");
  o.require(rep.counterexample.has_value(), "no counterexample");
  if (rep.counterexample) {
    const auto ce = *rep.counterexample;
    const auto ce_best = oracle.best_rooms(ce);
    bool nonpositive_exists = false, nonpositive_best = false;
    for (std::size_t j = 0; j < ce.size(); ++j) {
      if (ce[j] <= ExtRational(0)) nonpositive_exists = true;
    }
    for (auto j : ce_best)
      if (ce[j] <= ExtRational(0)) nonpositive_best = true;
    o.require(nonpositive_exists && !nonpositive_best, "counterexample does not violate the miserly rule");
    o.detail << "counterexample " << format_prices(ce) << "; ";
  }
  o.require(demand_ms < 1.0, "demand query took " + std::to_string(demand_ms) + " ms");
  o.detail << "demand query " << demand_ms << " ms, validator " << validate_ms << " ms";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const Matrix v = testsupport::int_matrix({{150, 0}, {140, 10}});
  const Rational rent = 100;

  const auto inst_exact = testsupport::quasilinear_instance(Mode::classic, v, rent);
  const auto t0 = Clock::now();
  const Solution ex = solve_exact(inst_exact);
  const double exact_ms = ms_since(t0);
  const auto lp = testsupport::envy_free_polyhedron(v, {0, 1}, rent).bounds(1);
  o.require(ex.scenarios.at(0).room_agents == std::vector<std::vector<std::size_t>>{{0}, {1}},
            "exact assignment");
  o.require(ex.prices[1] == -15, "exact basement price " + to_exact_string(ex.prices[1]));
  o.require(lp.feasible && lp.hi && *lp.hi == -15, "LP oracle upper bound is not -15");
  o.require(lp.lo && *lp.lo == -25, "LP oracle lower bound is not -25");
  o.require(ex.prices[0] + ex.prices[1] == rent, "exact prices do not sum to 100");
  o.require(exact_ms < 10.0, "exact solver took " + std::to_string(exact_ms) + " ms");

  const auto inst = testsupport::quasilinear_instance(Mode::classic, v, rent, Rational(250));
  const Rational eps = rent / 10000;
  const auto t1 = Clock::now();
  Solution en;
  try {
    en = solve(inst, config(inst, eps, 30));
  } catch (const std::exception& e) {
    o.require(false, std::string("engine threw: ") + e.what());
    return o;
  }
  const double engine_ms = ms_since(t1);
  o.require(en.scenarios.at(0).room_agents == std::vector<std::vector<std::size_t>>{{0}, {1}}, "engine assignment");
  o.require(en.prices[1] <= Rational(-15) + rational(1, 100), "engine basement price " + str(en.prices[1]));
  o.require(en.prices[0] + en.prices[1] == rent, "engine prices do not sum to 100");
  o.require(verify(inst, en, eps).overall.envy_free, "engine output fails verify");
  o.require(engine_ms < 30000.0, "engine took " + std::to_string(engine_ms) + " ms");
  o.detail << "exact (" << ex.prices[0] << ", " << ex.prices[1] << ") in " << exact_ms << " ms, LP interval ["
           << (lp.lo ? to_exact_string(*lp.lo) : "?") << ", " << (lp.hi ? to_exact_string(*lp.hi) : "?")
           << "]; engine basement " << str(en.prices[1]) << " at k=" << en.diagnostics.final_k << " in " << engine_ms
           << " ms";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(20240301);
  const Rational rent = 100;
  const Rational eps = rent / 1000;
  const auto t0 = Clock::now();
  int solved = 0, max_rounds_used = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    const Matrix v = testsupport::random_matrix(rng, n, n, 0, 100);
    const auto inst = testsupport::quasilinear_instance(Mode::classic, v, rent, rent + testsupport::max_spread(v));
    Solution sol;
    try {
      sol = solve(inst, config(inst, eps, 12));
    } catch (const std::exception& e) {
      o.require(false, "instance " + std::to_string(t) + ": " + e.what());
      continue;
    }
    max_rounds_used = std::max(max_rounds_used, sol.diagnostics.rounds);
    const auto rep = verify(inst, sol, eps);
    o.require(rep.overall.envy_free, "instance " + std::to_string(t) + " fails verify");
    const Rational welfare = testsupport::placement_welfare(v, sol.scenarios.at(0).room_agents);
    const Rational optimum = assignment_welfare(v, max_weight_assignment(v));
    o.require(welfare == optimum, "instance " + std::to_string(t) + " welfare " + str(welfare) + " vs optimum " +
                                      str(optimum));
    o.require(optimum == testsupport::brute_best_welfare(v), "Hungarian optimum disagrees with enumeration");
    ++solved;
  }
  const double total_ms = ms_since(t0);
  o.require(total_ms < 600000.0, "took " + std::to_string(total_ms / 1000) + " s");
  o.detail << solved << "/100 solved, max rounds " << max_rounds_used << ", total " << total_ms / 1000 << " s";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(777);
  const Rational rent = 100, bound = 300;
  const Rational eps = rent / 1000;
  std::uniform_int_distribution<long> value(0, 100), beta(-4, 4);
  int excluded = 0, solved = 0;
  for (int t = 0; t < 25; ++t) {
    const std::size_t m = 2 + rng() % 2;
    const std::size_t n = m + rng() % (7 - m);
    std::vector<long> caps(m, 1);
    for (std::size_t extra = n - m; extra > 0; --extra) ++caps[rng() % m];
    std::vector<OraclePtr> oracles;
    while (oracles.size() < n) {
      std::vector<Rational> vals(m), betas(m);
      for (std::size_t j = 0; j < m; ++j) {
        vals[j] = value(rng);
        betas[j] = rational(beta(rng), 10);
      }
      auto oracle = std::make_shared<AffineExternalityOracle>(vals, betas);
      const auto screen = validate_assumption(*oracle, Assumption::compensable, m, bound, rent, 1000, 1000 + t);
      if (!screen.passed) {
        ++excluded;
        std::cout << "  criterion 4: instance " << t << " excluded oracle (counterexample "
                  << format_prices(*screen.counterexample) << ")" << std::endl;
        continue;
      }
      oracles.push_back(oracle);
    }
    const auto inst = testsupport::make_instance(Mode::roommates, oracles, m, rent, bound, caps);
    Solution sol;
    try {
      sol = solve(inst, config(inst, eps, 16));
    } catch (const std::exception& e) {
      o.require(false, "instance " + std::to_string(t) + ": " + e.what());
      continue;
    }
    const auto& rooms = sol.scenarios.at(0).room_agents;
    bool caps_ok = rooms.size() == m;
    for (std::size_t j = 0; caps_ok && j < m; ++j) caps_ok = static_cast<long>(rooms[j].size()) == caps[j];
    o.require(caps_ok, "instance " + std::to_string(t) + " violates capacities");
    o.require(verify(inst, sol, eps).overall.envy_free, "instance " + std::to_string(t) + " fails verify");
    ++solved;
  }
  o.detail << solved << "/25 solved, " << excluded << " oracles excluded by screening";
  return o;
}

Outcome scenario_criterion(Mode mode) {
  Outcome o;
  std::mt19937_64 rng(mode == Mode::secretive ? 3003 : 4004);
  const Rational rent = 100;
  const Rational eps = rent / 1000;
  int scenarios = 0, solved = 0;
  for (int t = 0; t < 25; ++t) {
    const std::size_t m = mode == Mode::secretive ? 2 + static_cast<std::size_t>(t % 3) : 2 + static_cast<std::size_t>(t % 2);
    const std::size_t n = mode == Mode::secretive ? m - 1 : m + 1;
    const Matrix v = testsupport::random_matrix(rng, n, m, 0, 100);
    const auto inst = testsupport::quasilinear_instance(mode, v, rent, rent + testsupport::max_spread(v));
    Solution sol;
    try {
      sol = solve(inst, config(inst, eps, 16));
    } catch (const std::exception& e) {
      o.require(false, "instance " + std::to_string(t) + ": " + e.what());
      continue;
    }
    const std::string tag = "instance " + std::to_string(t);
    o.require(sol.demand_graph.has_value(), tag + " has no demand graph");
    if (!sol.demand_graph) continue;
    // Independent of the stored scenarios: the relaxed graph must admit a
    // perfect matching after every removal.
    const DemandGraph independent = relaxed_demand_graph(inst, to_price_vector(sol.prices), eps);
    o.require(independent.edges() == sol.demand_graph->edges(), tag + " demand graph not reproducible");
    const std::size_t removals = mode == Mode::secretive ? m : n;
    o.require(sol.scenarios.size() == removals, tag + " scenario count");
    for (std::size_t r = 0; r < removals; ++r) {
      const DemandGraph g = mode == Mode::secretive ? independent.without_room(r) : independent.without_agent(r);
      const std::size_t need = mode == Mode::secretive ? n : m;
      o.require(max_matching(g).size() == need, tag + " removal " + std::to_string(r) + " has no perfect matching");
      o.require(testsupport::brute_max_matching(g) == need, tag + " brute-force matching disagrees");
      ++scenarios;
    }
    for (const auto& s : sol.scenarios) {
      o.require(testsupport::quasilinear_max_regret(v, s.room_agents, sol.prices) <= eps, tag + " scenario regret");
    }
    const auto rep = verify(inst, sol, eps);
    o.require(rep.overall.envy_free && rep.scenarios.size() == removals, tag + " fails verify");
    ++solved;
  }
  o.detail << solved << "/25 solved, " << scenarios << " removal scenarios matched and verified";
  return o;
}

Outcome criterion7() {
  Outcome o;
  // price map identities
  std::size_t vertices = 0;
  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::int64_t k = 1; k <= 16; ++k) {
      for (const Rational& rent : {Rational(100), rational(-7, 3), Rational(0)}) {
        const Rational bound = std::max(rent, Rational(0)) + rational(50, 3);
        for (const auto& pt : grid_vertices(m, k)) {
          const auto p = price_map_compensable(pt.barycentric(), bound, rent);
          o.require(price_sum(p) == rent, "sum identity");
          if (m > 1)
            for (std::size_t j = 0; j < m; ++j) o.require((pt.y[j] == 0) == (p[j] == ExtRational(bound)), "x_j = 0 iff p_j = T");
          ++vertices;
        }
      }
    }
  }
  o.detail << vertices << " map vertices; ";

  // boundary labels of every engine run in this suite
  o.require(g_audit.boundary_labels > 0, "no boundary labels observed");
  o.require(g_audit.violations == 0, std::to_string(g_audit.violations) + " label violations");
  o.detail << g_audit.boundary_labels << " boundary labels, " << g_audit.violations << " violations; ";

  // transportation witnesses and monotonicity
  std::mt19937_64 rng(55);
  int monotone_cases = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 5, m = 1 + rng() % 5;
    DemandGraph g(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (rng() % 3 == 0) g.add_edge(i, j);
    MarginalPair marg{std::vector<Rational>(n, rational(1, static_cast<long>(n))),
                      std::vector<Rational>(m, rational(1, static_cast<long>(m)))};
    const auto before = transportation_feasible(g, marg);
    if (before) {
      const auto back = marginals_of(g, *before);
      o.require(back.agents == marg.agents && back.rooms == marg.rooms, "witness marginals inexact");
      for (const auto& w : *before) o.require(w >= 0, "negative witness weight");
    }
    DemandGraph bigger = g;
    bigger.add_edge(rng() % n, rng() % m);
    const auto after = transportation_feasible(bigger, marg);
    o.require(!before || after, "feasibility lost after adding an edge");
    if (after) {
      const auto back = marginals_of(bigger, *after);
      o.require(back.agents == marg.agents && back.rooms == marg.rooms, "witness marginals inexact");
    }
    ++monotone_cases;
  }
  o.detail << monotone_cases << " monotonicity graphs; ";

  // Hall vs deficiency on every graph up to 4+4
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      const std::vector<long> ones(m, 1);
      for (unsigned mask = 0; mask < (1u << (n * m)); ++mask) {
        const auto g = testsupport::graph_from_mask(n, m, mask);
        const std::size_t best = testsupport::brute_max_matching(g);
        o.require(max_matching(g).size() == best, "matching size");
        o.require(hall_violation(g, ones, HallSide::agents).has_value() == (best < n), "agent-side Hall");
        o.require(hall_violation(g, ones, HallSide::rooms).has_value() == (best < m), "room-side Hall");
        o.require(static_cast<long>(n) - testsupport::agent_defect(g, ones) == static_cast<long>(best), "deficiency");
        ++graphs;
      }
    }
  }
  o.detail << graphs << " Hall graphs; ";

  // shift invariance
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t % 4);
    std::vector<Rational> v(m);
    PriceVector p(m), q(m);
    const Rational c = rational(d(rng), 1 + (d(rng) & 127));
    for (std::size_t j = 0; j < m; ++j) {
      v[j] = d(rng) % 25;
      p[j] = Rational(d(rng) % 25);
      q[j] = Rational(p[j].value() + c);
    }
    const QuasilinearOracle oracle(v);
    o.require(oracle.best_rooms(p) == oracle.best_rooms(q), "shift changed best rooms");
  }
  o.detail << "1000 shift pairs; ";

  // miserly agents never pay below -epsilon
  std::mt19937_64 mrng(606);
  std::uniform_int_distribution<long> value(1, 100);
  const Rational rent = 100, eps = rent / 1000;
  Rational lowest = rent;
  int miserly_runs = 0;
  for (int t = 0; t < 12; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t % 3);
    std::vector<OraclePtr> oracles;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<UtilityCurve> curves;
      for (std::size_t j = 0; j < m; ++j)
        curves.emplace_back(std::vector<Breakpoint>{{-1, 1}, {0, 0}, {1, rational(-1, value(mrng))}});
      auto oracle = std::make_shared<ArchimedeanCurveOracle>(std::move(curves));
      o.require(validate_assumption(*oracle, Assumption::miserly, m, 200, rent, 500, 9).passed,
                "synthetic oracle is not miserly");
      oracles.push_back(oracle);
    }
    const auto inst = testsupport::make_instance(Mode::classic, oracles, m, rent, Rational(200));
    try {
      const auto sol = solve(inst, config(inst, eps, 16));
      for (const auto& p : sol.prices) {
        o.require(p >= -eps, "miserly run price " + str(p));
        lowest = std::min(lowest, p);
      }
      o.require(verify(inst, sol, eps).overall.envy_free, "miserly run fails verify");
      ++miserly_runs;
    } catch (const std::exception& e) {
      o.require(false, std::string("miserly run threw: ") + e.what());
    }
  }
  o.detail << miserly_runs << " miserly runs, lowest price " << str(lowest);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const DemandGraph g(3, 2, {{0, 0}, {1, 0}, {1, 1}, {2, 1}});
  const EdgeWeights w{rational(1, 10), rational(2, 10), rational(3, 10), rational(4, 10)};
  const MarginalPair marg = marginals_of(g, w);
  o.require(marg.agents == std::vector<Rational>{rational(1, 10), rational(1, 2), rational(2, 5)}, "b differs");
  o.require(marg.rooms == std::vector<Rational>{rational(3, 10), rational(7, 10)}, "a differs");
  const auto found = transportation_feasible(g, marg);
  o.require(found.has_value(), "no witness");
  if (found) {
    const auto back = marginals_of(g, *found);
    o.require(back.agents == marg.agents && back.rooms == marg.rooms, "witness marginals differ");
    o.detail << "witness (";
    for (std::size_t e = 0; e < found->size(); ++e) o.detail << (e ? ", " : "") << (*found)[e];
    o.detail << "), ";
  }
  o.detail << "b = (1/10, 1/2, 2/5), a = (3/10, 7/10)";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int id, const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.require(false, std::string("uncaught: ") + e.what());
    }
    report(id, name, o);
    if (!o.pass) ++failures;
  };
  run(1, "demand example and miserly validator", criterion1);
  run(2, "negative-price example, both solvers", criterion2);
  run(3, "engine matches the exact optimum", criterion3);
  run(4, "roommates with externalities", criterion4);
  run(5, "secretive agent", [] { return scenario_criterion(Mode::secretive); });
  run(6, "extra agent", [] { return scenario_criterion(Mode::extra); });
  run(7, "property suites", criterion7);
  run(8, "marginals of a weighted cell graph", criterion8);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
