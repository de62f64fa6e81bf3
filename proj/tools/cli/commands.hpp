#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace harmony::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kAssumptionViolation = 2,
  kMaxRoundsExceeded = 3,
  kVerifyFailed = 4,
};

struct SolveOptions {
  std::string input;
  std::optional<std::string> output;  // stdout when unset
  std::optional<std::string> epsilon;
  std::optional<std::int64_t> k0;
  std::optional<int> max_rounds;
  std::optional<unsigned> workers;
  bool force_mesh = false;
};

struct VerifyOptions {
  std::string input;
  std::string solution;
  std::optional<std::string> epsilon;  // defaults to the solution's own epsilon
};

struct ValidateOptions {
  std::string input;
  std::string kind = "compensable";
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

struct MeshOptions {
  std::size_t rooms = 3;
  std::int64_t k = 1;
  std::string map = "compensable";
  std::optional<std::string> bound;
  std::optional<std::string> rent;
  std::optional<std::string> output;
};

/// Worker count from HARMONY_WORKERS, if set. Throws InputError on garbage.
std::optional<unsigned> workers_from_env();

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err);
int cmd_mesh_dump(const MeshOptions& options, std::ostream& out, std::ostream& err);

}  // namespace harmony::cli
