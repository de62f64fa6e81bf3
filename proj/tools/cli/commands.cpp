#include "cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include "cli/json_io.hpp"
#include "harmony/engine.hpp"
#include "harmony/quasilinear_exact.hpp"

namespace harmony::cli {

namespace {

void write_output(const Json& doc, const std::optional<std::string>& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw InputError(*path + ": cannot open for writing");
  file << text;
  if (!file) throw InputError(*path + ": write failed");
}

Rational option_rational(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw InputError(flag + ": " + e.what());
  }
}

Json prices_json(const PriceVector& prices) {
  Json arr = Json::array();
  for (const auto& p : prices) arr.push_back(p.is_finite() ? to_exact_string(p.value()) : p.to_exact_string());
  return arr;
}

Json regret_json(const std::optional<Rational>& r) {
  return r ? Json(to_decimal_string(*r)) : Json(nullptr);
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const MeshError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const MarginalError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace

std::optional<unsigned> workers_from_env() {
  const char* raw = std::getenv("HARMONY_WORKERS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string text(raw);
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value == 0 || value > 1024)
    throw InputError("HARMONY_WORKERS: expected a worker count in 1..1024, got \"" + text + "\"");
  return static_cast<unsigned>(value);
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    InstanceFile file = read_instance_file(options.input);
    const Instance& inst = file.instance;
    SolverSettings s = file.solver;
    if (options.epsilon) s.epsilon = option_rational(*options.epsilon, "--epsilon");
    if (options.k0) s.k0 = *options.k0;
    if (options.max_rounds) s.max_rounds = *options.max_rounds;
    if (options.workers) {
      s.workers = *options.workers;
    } else if (!s.workers) {
      s.workers = workers_from_env();
    }

    Solution sol;
    if (!options.force_mesh && inst.mode() == Mode::classic && inst.all_quasilinear()) {
      sol = solve_exact(inst);
    } else {
      try {
        sol = solve(inst, s.apply(SolverConfig{}));
      } catch (const AssumptionViolation& e) {
        err << "assumption violation: " << e.what() << "\n";
        if (e.agent()) err << "  agent: " << inst.agents()[*e.agent()].name << "\n";
        if (!e.prices().empty()) err << "  prices: " << prices_json(e.prices()).dump() << "\n";
        return static_cast<int>(kAssumptionViolation);
      } catch (const MaxRoundsExceeded& e) {
        err << "max rounds exceeded: " << e.what() << "\n";
        return static_cast<int>(kMaxRoundsExceeded);
      }
    }
    write_output(solution_to_json(inst, sol), options.output, out);
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const InstanceFile file = read_instance_file(options.input);
    const Instance& inst = file.instance;
    const Json doc = read_json_file(options.solution);
    if (doc.contains("mode") && doc["mode"] != to_string(inst.mode()))
      throw InputError(options.solution + ": solution mode " + doc["mode"].dump() + " does not match instance mode \"" +
                       to_string(inst.mode()) + "\"");
    const Solution sol = solution_from_json(inst, doc);
    if (sol.prices.size() != inst.room_count())
      throw InputError(options.solution + ": " + std::to_string(sol.prices.size()) + " prices for " +
                       std::to_string(inst.room_count()) + " rooms");
    for (const auto& sc : sol.scenarios)
      if (sc.room_agents.size() != inst.room_count())
        throw InputError(options.solution + ": assignment does not cover the instance rooms");

    Rational eps = 0;
    if (options.epsilon) {
      eps = option_rational(*options.epsilon, "--epsilon");
    } else if (doc.contains("certificate") && doc["certificate"].contains("epsilon")) {
      eps = json_rational(doc["certificate"]["epsilon"], options.solution + ".certificate.epsilon");
    }
    if (eps < 0) throw InputError("--epsilon must be nonnegative");

    const VerificationReport report = verify(inst, sol, eps);
    Json result;
    result["envyFree"] = report.overall.envy_free;
    result["maxRegret"] = regret_json(report.overall.max_regret);
    result["epsilon"] = to_decimal_string(eps, 15);
    Json agents = Json::array();
    for (std::size_t i = 0; i < inst.agent_count(); ++i) {
      Json a;
      a["agent"] = inst.agents()[i].name;
      a["regret"] = i < report.overall.regrets.size() ? regret_json(report.overall.regrets[i]) : Json(nullptr);
      agents.push_back(a);
    }
    result["agents"] = agents;
    result["scenariosChecked"] = sol.scenarios.size();
    result["failures"] = report.overall.failures;
    out << result.dump(2) << "\n";
    return static_cast<int>(report.overall.envy_free ? kOk : kVerifyFailed);
  });
}

int cmd_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto kind = parse_assumption(options.kind);
    if (!kind)
      throw InputError("unknown assumption kind \"" + options.kind +
                       "\" (expected miserly, weak-miserly, archimedean or compensable)");
    const InstanceFile file = read_instance_file(options.input);
    const Instance& inst = file.instance;
    bool all = true;
    Json result;
    result["kind"] = to_string(*kind);
    result["samples"] = options.samples;
    result["seed"] = options.seed;
    Json agents = Json::array();
    for (std::size_t i = 0; i < inst.agent_count(); ++i) {
      const ValidationReport r = validate_assumption(inst.oracle(i), *kind, inst.room_count(),
                                                     inst.compensation_bound(), inst.total_rent(),
                                                     options.samples, options.seed);
      all = all && r.passed;
      Json a;
      a["agent"] = inst.agents()[i].name;
      a["passed"] = r.passed;
      a["probesChecked"] = r.probes_checked;
      a["samplesChecked"] = r.samples_checked;
      if (r.counterexample) {
        Json ce;
        ce["prices"] = prices_json(*r.counterexample);
        Json best = Json::array();
        for (auto j : r.counterexample_best_rooms) best.push_back(inst.rooms()[j].name);
        ce["bestRooms"] = best;
        a["counterexample"] = ce;
      } else {
        a["counterexample"] = nullptr;
      }
      a["note"] = r.note;
      agents.push_back(a);
    }
    result["agents"] = agents;
    result["allPassed"] = all;
    out << result.dump(2) << "\n";
    return static_cast<int>(all ? kOk : kVerifyFailed);
  });
}

int cmd_mesh_dump(const MeshOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.rooms < 2) throw InputError("--m must be at least 2");
    if (options.k < 1) throw InputError("--k must be at least 1");
    const auto kind = parse_price_map_kind(options.map);
    if (!kind) throw InputError("unknown map \"" + options.map + "\" (expected compensable, reciprocal or su)");
    PriceMap map{*kind, 0, 0};
    if (*kind != PriceMapKind::reciprocal) {
      if (!options.rent) throw InputError("--rent is required for the " + options.map + " map");
      map.total_rent = option_rational(*options.rent, "--rent");
    }
    if (*kind == PriceMapKind::compensable) {
      if (!options.bound) throw InputError("--bound is required for the compensable map");
      map.bound = option_rational(*options.bound, "--bound");
      if (map.bound < map.total_rent) throw InputError("--bound T must satisfy T ≥ R");
    }

    const auto vertices = grid_vertices(options.rooms, options.k);
    std::map<std::vector<std::int64_t>, std::size_t> index;
    Json doc;
    doc["m"] = options.rooms;
    doc["k"] = options.k;
    doc["map"] = to_string(*kind);
    if (*kind == PriceMapKind::compensable) doc["compensationBound"] = to_exact_string(map.bound);
    if (*kind != PriceMapKind::reciprocal) doc["totalRent"] = to_exact_string(map.total_rent);
    Json vjson = Json::array();
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      index.emplace(vertices[v].y, v);
      Json entry;
      entry["y"] = vertices[v].y;
      Json x = Json::array();
      for (const auto& c : vertices[v].barycentric()) x.push_back(to_exact_string(c));
      entry["x"] = x;
      entry["prices"] = prices_json(map(vertices[v]));
      vjson.push_back(entry);
    }
    doc["vertices"] = vjson;
    Json cjson = Json::array();
    CellEnumerator it(options.rooms, options.k);
    while (auto cell = it.next()) {
      Json entry;
      entry["base"] = cell->base();
      entry["order"] = cell->order();
      Json ids = Json::array();
      for (const auto& v : cell->vertices()) ids.push_back(index.at(v.y));
      entry["vertices"] = ids;
      cjson.push_back(entry);
    }
    doc["cells"] = cjson;
    write_output(doc, options.output, out);
    return static_cast<int>(kOk);
  });
}

}  // namespace harmony::cli
