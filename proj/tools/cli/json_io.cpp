#include "cli/json_io.hpp"

#include <fstream>
#include <sstream>

namespace harmony::cli {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string json_string(const Json& value, const std::string& where) {
  if (!value.is_string()) schema_error(where, "expected a string");
  return value.get<std::string>();
}

std::int64_t json_integer(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_string()) {
    const Rational q = json_rational(value, where);
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  }
  schema_error(where, "expected an integer");
}

std::vector<Rational> rational_list(const Json& value, const std::string& where) {
  if (!value.is_array()) schema_error(where, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(json_rational(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Json rational_list_json(const std::vector<Rational>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(to_exact_string(v));
  return arr;
}

OraclePtr parse_oracle(const Json& spec, const std::string& where) {
  const std::string type = json_string(member(spec, "type", where), where + ".type");
  try {
    if (type == "quasilinear") {
      return std::make_shared<QuasilinearOracle>(rational_list(member(spec, "values", where), where + ".values"));
    }
    if (type == "affine-externality") {
      return std::make_shared<AffineExternalityOracle>(
          rational_list(member(spec, "values", where), where + ".values"),
          rational_list(member(spec, "betas", where), where + ".betas"));
    }
    if (type == "archimedean-curve") {
      const Json& curves = member(spec, "curves", where);
      const std::string cw = where + ".curves";
      if (!curves.is_array()) schema_error(cw, "expected an array of curves");
      std::vector<UtilityCurve> out;
      for (std::size_t j = 0; j < curves.size(); ++j) {
        const std::string jw = cw + "[" + std::to_string(j) + "]";
        if (!curves[j].is_array()) schema_error(jw, "expected an array of [price, utility] pairs");
        std::vector<Breakpoint> points;
        for (std::size_t b = 0; b < curves[j].size(); ++b) {
          const std::string bw = jw + "[" + std::to_string(b) + "]";
          const Json& pair = curves[j][b];
          if (!pair.is_array() || pair.size() != 2) schema_error(bw, "expected a [price, utility] pair");
          points.push_back({json_rational(pair[0], bw), json_rational(pair[1], bw)});
        }
        out.emplace_back(std::move(points));
      }
      return std::make_shared<ArchimedeanCurveOracle>(std::move(out));
    }
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const InputError*>(&e) == nullptr) schema_error(where, e.what());
    throw;
  }
  schema_error(where + ".type", "unknown oracle type \"" + type + "\"");
}

Json oracle_to_json(const DemandOracle& oracle) {
  Json out;
  out["type"] = to_string(oracle.kind());
  if (const auto* q = dynamic_cast<const QuasilinearOracle*>(&oracle)) {
    out["values"] = rational_list_json(q->values());
  } else if (const auto* a = dynamic_cast<const AffineExternalityOracle*>(&oracle)) {
    out["values"] = rational_list_json(a->values());
    out["betas"] = rational_list_json(a->betas());
  } else if (const auto* c = dynamic_cast<const ArchimedeanCurveOracle*>(&oracle)) {
    Json curves = Json::array();
    for (const auto& curve : c->curves()) {
      Json points = Json::array();
      for (const auto& p : curve.points())
        points.push_back(Json::array({to_exact_string(p.price), to_exact_string(p.utility)}));
      curves.push_back(points);
    }
    out["curves"] = curves;
  } else {
    throw std::invalid_argument("custom oracles cannot be serialised");
  }
  return out;
}

SolverSettings parse_solver(const Json& s, const std::string& where) {
  if (!s.is_object()) schema_error(where, "expected an object");
  SolverSettings out;
  if (s.contains("k0")) out.k0 = json_integer(s["k0"], where + ".k0");
  if (s.contains("growth")) out.growth = json_integer(s["growth"], where + ".growth");
  if (s.contains("tolP")) out.tol_price = json_rational(s["tolP"], where + ".tolP");
  if (s.contains("epsilon")) out.epsilon = json_rational(s["epsilon"], where + ".epsilon");
  if (s.contains("maxRounds")) out.max_rounds = static_cast<int>(json_integer(s["maxRounds"], where + ".maxRounds"));
  if (s.contains("workers")) out.workers = static_cast<unsigned>(json_integer(s["workers"], where + ".workers"));
  if (s.contains("radius")) out.radius = json_integer(s["radius"], where + ".radius");
  return out;
}

Json assignment_json(const Instance& inst, const std::vector<std::vector<std::size_t>>& room_agents) {
  Json arr = Json::array();
  for (std::size_t j = 0; j < room_agents.size(); ++j) {
    Json agents = Json::array();
    for (auto i : room_agents[j]) agents.push_back(inst.agents()[i].name);
    Json entry;
    entry["room"] = inst.rooms()[j].name;
    entry["agents"] = agents;
    arr.push_back(entry);
  }
  return arr;
}

Json certificate_json(const Certificate& cert) {
  Json out;
  out["envyFree"] = cert.envy_free;
  out["maxRegret"] = cert.max_regret ? Json(to_decimal_string(*cert.max_regret)) : Json(nullptr);
  out["epsilon"] = to_decimal_string(cert.epsilon, 15);
  return out;
}

std::size_t index_of(const std::string& name, const std::vector<std::string>& names, const std::string& where) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  schema_error(where, "unknown name \"" + name + "\"");
}

std::vector<std::vector<std::size_t>> parse_assignment(const Instance& inst, const Json& arr, const std::string& where) {
  if (!arr.is_array()) schema_error(where, "expected an array");
  std::vector<std::string> room_names, agent_names;
  for (const auto& r : inst.rooms()) room_names.push_back(r.name);
  for (const auto& a : inst.agents()) agent_names.push_back(a.name);
  std::vector<std::vector<std::size_t>> out(inst.room_count());
  for (std::size_t e = 0; e < arr.size(); ++e) {
    const std::string ew = where + "[" + std::to_string(e) + "]";
    const std::size_t j = index_of(json_string(member(arr[e], "room", ew), ew + ".room"), room_names, ew + ".room");
    const Json& agents = member(arr[e], "agents", ew);
    if (!agents.is_array()) schema_error(ew + ".agents", "expected an array");
    for (const auto& a : agents) out[j].push_back(index_of(json_string(a, ew + ".agents"), agent_names, ew + ".agents"));
  }
  return out;
}

}  // namespace

SolverConfig SolverSettings::apply(SolverConfig base) const {
  if (k0) base.initial_resolution = *k0;
  if (growth) base.growth = *growth;
  if (tol_price) base.price_tolerance = *tol_price;
  if (epsilon) base.epsilon = *epsilon;
  if (max_rounds) base.max_rounds = *max_rounds;
  if (workers) base.workers = *workers;
  if (radius) base.localization_radius = *radius;
  return base;
}

Rational json_rational(const Json& value, const std::string& where) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return parse_rational(std::to_string(value.get<std::int64_t>()));
    if (value.is_number_unsigned()) return parse_rational(std::to_string(value.get<std::uint64_t>()));
    if (value.is_number_float()) return parse_rational(value.dump());
  } catch (const ParseError& e) {
    schema_error(where, e.what());
  }
  schema_error(where, "expected a number or a decimal string");
}

InstanceFile parse_instance(const std::string& text, const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": JSON syntax error: " +
                     e.what());
  }

  const std::string root = source;
  InstanceDraft draft;
  const std::string mode_text = json_string(member(doc, "mode", root), root + ".mode");
  const auto mode = parse_mode(mode_text);
  if (!mode) schema_error(root + ".mode", "unknown mode \"" + mode_text + "\"");
  draft.mode = *mode;
  draft.total_rent = json_rational(member(doc, "totalRent", root), root + ".totalRent");
  if (doc.contains("compensationBound") && !doc["compensationBound"].is_null())
    draft.compensation_bound = json_rational(doc["compensationBound"], root + ".compensationBound");

  const Json& rooms = member(doc, "rooms", root);
  if (!rooms.is_array()) schema_error(root + ".rooms", "expected an array");
  for (std::size_t j = 0; j < rooms.size(); ++j) {
    const std::string w = root + ".rooms[" + std::to_string(j) + "]";
    RoomSpec spec{json_string(member(rooms[j], "name", w), w + ".name"), 1};
    if (rooms[j].contains("capacity")) spec.capacity = json_integer(rooms[j]["capacity"], w + ".capacity");
    draft.rooms.push_back(std::move(spec));
  }
  const Json& agents = member(doc, "agents", root);
  if (!agents.is_array()) schema_error(root + ".agents", "expected an array");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string w = root + ".agents[" + std::to_string(i) + "]";
    draft.agents.push_back(AgentSpec{json_string(member(agents[i], "name", w), w + ".name"),
                                     parse_oracle(member(agents[i], "oracle", w), w + ".oracle")});
  }

  SolverSettings solver;
  if (doc.contains("solver")) solver = parse_solver(doc["solver"], root + ".solver");
  try {
    return InstanceFile{validate_instance(std::move(draft)), solver};
  } catch (const InstanceError& e) {
    throw InputError(source + ": invalid instance (" + e.invariant() + "): " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InstanceFile read_instance_file(const std::string& path) { return parse_instance(read_text_file(path), path); }

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": JSON syntax error: " + e.what());
  }
}

Json instance_to_json(const Instance& inst, const SolverSettings& solver) {
  Json out;
  out["mode"] = to_string(inst.mode());
  out["totalRent"] = to_exact_string(inst.total_rent());
  out["compensationBound"] = to_exact_string(inst.compensation_bound());
  Json rooms = Json::array();
  for (const auto& r : inst.rooms()) {
    Json entry;
    entry["name"] = r.name;
    entry["capacity"] = r.capacity;
    rooms.push_back(entry);
  }
  out["rooms"] = rooms;
  Json agents = Json::array();
  for (const auto& a : inst.agents()) {
    Json entry;
    entry["name"] = a.name;
    entry["oracle"] = oracle_to_json(*a.oracle);
    agents.push_back(entry);
  }
  out["agents"] = agents;
  Json s = Json::object();
  if (solver.k0) s["k0"] = *solver.k0;
  if (solver.growth) s["growth"] = *solver.growth;
  if (solver.tol_price) s["tolP"] = to_exact_string(*solver.tol_price);
  if (solver.epsilon) s["epsilon"] = to_exact_string(*solver.epsilon);
  if (solver.max_rounds) s["maxRounds"] = *solver.max_rounds;
  if (solver.workers) s["workers"] = *solver.workers;
  if (solver.radius) s["radius"] = *solver.radius;
  if (!s.empty()) out["solver"] = s;
  return out;
}

Json solution_to_json(const Instance& inst, const Solution& sol) {
  Json out;
  out["mode"] = to_string(sol.mode);
  out["solver"] = sol.diagnostics.solver;
  Json prices = Json::array(), exact = Json::array();
  for (const auto& p : sol.prices) {
    prices.push_back(to_decimal_string(p));
    exact.push_back(to_exact_string(p));
  }
  out["prices"] = prices;
  out["pricesExact"] = exact;
  if (sol.mode == Mode::classic || sol.mode == Mode::roommates) {
    out["assignment"] = assignment_json(inst, sol.scenarios.at(0).room_agents);
  } else {
    Json scenarios = Json::array();
    for (std::size_t s = 0; s < sol.scenarios.size(); ++s) {
      const auto& sc = sol.scenarios[s];
      Json entry;
      if (sol.mode == Mode::secretive)
        entry["secretPick"] = inst.rooms()[*sc.removed].name;
      else
        entry["leaver"] = inst.agents()[*sc.removed].name;
      entry["assignment"] = assignment_json(inst, sc.room_agents);
      if (s < sol.scenario_certificates.size()) entry["certificate"] = certificate_json(sol.scenario_certificates[s]);
      scenarios.push_back(entry);
    }
    out["scenarios"] = scenarios;
  }
  out["certificate"] = certificate_json(sol.certificate);
  Json d;
  d["rounds"] = sol.diagnostics.rounds;
  d["finalK"] = sol.diagnostics.final_k;
  d["cellsScanned"] = sol.diagnostics.cells_scanned;
  d["oracleCalls"] = sol.diagnostics.oracle_calls;
  d["boundaryLabels"] = sol.diagnostics.boundary_labels;
  d["wallTimeMs"] = static_cast<std::int64_t>(sol.diagnostics.wall_time_ms);
  out["diagnostics"] = d;
  return out;
}

Solution solution_from_json(const Instance& inst, const Json& json) {
  const std::string root = "solution";
  Solution sol;
  sol.mode = inst.mode();
  const Json& prices = json.contains("pricesExact") ? json["pricesExact"] : member(json, "prices", root);
  sol.prices = rational_list(prices, root + ".prices");
  if (json.contains("assignment")) {
    sol.scenarios.push_back({std::nullopt, parse_assignment(inst, json["assignment"], root + ".assignment")});
  }
  if (json.contains("scenarios")) {
    const Json& arr = json["scenarios"];
    if (!arr.is_array()) schema_error(root + ".scenarios", "expected an array");
    std::vector<std::string> room_names, agent_names;
    for (const auto& r : inst.rooms()) room_names.push_back(r.name);
    for (const auto& a : inst.agents()) agent_names.push_back(a.name);
    for (std::size_t s = 0; s < arr.size(); ++s) {
      const std::string w = root + ".scenarios[" + std::to_string(s) + "]";
      Scenario sc;
      if (arr[s].contains("secretPick"))
        sc.removed = index_of(json_string(arr[s]["secretPick"], w), room_names, w + ".secretPick");
      else
        sc.removed = index_of(json_string(member(arr[s], "leaver", w), w), agent_names, w + ".leaver");
      sc.room_agents = parse_assignment(inst, member(arr[s], "assignment", w), w + ".assignment");
      sol.scenarios.push_back(std::move(sc));
    }
  }
  return sol;
}

}  // namespace harmony::cli
