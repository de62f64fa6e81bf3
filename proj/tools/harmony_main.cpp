#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/json_io.hpp"

using namespace harmony::cli;

int main(int argc, char** argv) {
  CLI::App app{"harmony - envy-free rent division"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "compute an envy-free allocation and rent split");
  s->add_option("-i,--input", solve.input, "instance file")->required();
  s->add_option("-o,--output", solve.output, "solution file (default: stdout)");
  s->add_option("--epsilon", solve.epsilon, "envy tolerance, e.g. 0.01 or 1/100");
  s->add_option("--k0", solve.k0, "initial mesh resolution")->check(CLI::PositiveNumber);
  s->add_option("--max-rounds", solve.max_rounds, "refinement round limit")->check(CLI::PositiveNumber);
  s->add_option("--workers", solve.workers, "scan threads (fallback: HARMONY_WORKERS)")->check(CLI::Range(1, 1024));
  s->add_flag("--force-mesh", solve.force_mesh, "use the mesh engine even for quasilinear instances");
  std::uint64_t unused_seed = 0;
  s->add_option("--seed", unused_seed, "accepted for uniformity; the solver is deterministic");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "check a solution against an instance");
  v->add_option("-i,--input", verify.input, "instance file")->required();
  v->add_option("-s,--solution", verify.solution, "solution file")->required();
  v->add_option("--epsilon", verify.epsilon, "envy tolerance (default: the solution's)");

  ValidateOptions validate;
  auto* va = app.add_subcommand("validate", "test oracles for a preference assumption");
  va->add_option("-i,--input", validate.input, "instance file")->required();
  va->add_option("--kind", validate.kind, "miserly | weak-miserly | archimedean | compensable");
  va->add_option("--samples", validate.samples, "random samples per agent");
  va->add_option("--seed", validate.seed, "sampler seed");

  MeshOptions mesh;
  auto* m = app.add_subcommand("mesh", "dump the triangulated price simplex as JSON");
  m->add_option("--m", mesh.rooms, "room count")->required();
  m->add_option("--k", mesh.k, "resolution")->required();
  m->add_option("--map", mesh.map, "compensable | reciprocal | su");
  m->add_option("-T,--bound", mesh.bound, "compensation bound T");
  m->add_option("-R,--rent", mesh.rent, "total rent R");
  m->add_option("-o,--output", mesh.output, "output file (default: stdout)");
  m->add_flag("--dump", "emit JSON (the only format)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (*s) return cmd_solve(solve, std::cout, std::cerr);
  if (*v) return cmd_verify(verify, std::cout, std::cerr);
  if (*va) return cmd_validate(validate, std::cout, std::cerr);
  return cmd_mesh_dump(mesh, std::cout, std::cerr);
}
