#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "harmony/domain.hpp"
#include "harmony/engine.hpp"
#include "harmony/solution.hpp"

namespace harmony::cli {

using Json = nlohmann::ordered_json;

/// Malformed input file; the message carries file, line and column when known.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Optional "solver" block of an instance file.
struct SolverSettings {
  std::optional<std::int64_t> k0;
  std::optional<std::int64_t> growth;
  std::optional<Rational> tol_price;
  std::optional<Rational> epsilon;
  std::optional<int> max_rounds;
  std::optional<unsigned> workers;
  std::optional<std::int64_t> radius;

  /// Applies the set fields on top of `base`.
  SolverConfig apply(SolverConfig base) const;
};

struct InstanceFile {
  Instance instance;
  SolverSettings solver;
};

/// Accepts a JSON string ("1/3", "0.25") or a JSON number.
Rational json_rational(const Json& value, const std::string& where);

InstanceFile parse_instance(const std::string& text, const std::string& source = "<input>");
InstanceFile read_instance_file(const std::string& path);

Json instance_to_json(const Instance& instance, const SolverSettings& solver = {});

Json solution_to_json(const Instance& instance, const Solution& solution);

/// Reads prices (preferring "pricesExact") and placements back by name.
Solution solution_from_json(const Instance& instance, const Json& json);

Json read_json_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace harmony::cli
