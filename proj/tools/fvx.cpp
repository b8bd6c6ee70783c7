#include "fvx/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv) {
  using namespace fvx::cli;
  CLI::App app{"fvx: optimization over polytope vertices with forbidden vertices"};
  app.require_subcommand(1);

  std::string file;
  std::optional<int> k;
  std::string method;
  std::optional<std::string> output;
  std::size_t trials = 50;
  std::uint64_t seed = 0;

  auto *solve = app.add_subcommand("solve", "minimize over the allowed vertices");
  solve->add_option("file", file, "problem file")->required();

  auto *kbest = app.add_subcommand("kbest", "k cheapest vertices");
  kbest->add_option("file", file, "problem file")->required();
  kbest->add_option("-k", k, "number of vertices (overrides the file)");

  auto *alldiff = app.add_subcommand("alldiff", "one distinct vertex per slot at minimum total cost");
  alldiff->add_option("file", file, "multi-slot problem file")->required();

  auto *compile = app.add_subcommand("compile", "emit an extended formulation in LP format");
  compile->add_option("file", file, "problem file")->required();
  compile->add_option("--method", method, "interval | recursive | faces | facet-intersection | boxes")
      ->required();
  compile->add_option("-o", output, "output path (default: stdout)");

  auto *verify = app.add_subcommand("verify", "check a formulation against enumerated ground truth");
  verify->add_option("file", file, "LP file from compile, or a problem file")->required();
  auto *method_opt = verify->add_option("--method", method, "method to compile a problem file with");
  verify->add_option("--trials", trials, "random objectives")->capture_default_str();
  verify->add_option("--seed", seed, "random seed")->capture_default_str();

  auto *enumerate = app.add_subcommand("enumerate", "list the allowed vertices");
  enumerate->add_option("file", file, "problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  return guarded(
      [&]() -> int {
        if (*solve)
          return cmd_solve(file, std::cout);
        if (*kbest)
          return cmd_kbest(file, k, std::cout);
        if (*alldiff)
          return cmd_alldiff(file, std::cout);
        if (*compile)
          return cmd_compile(file, method, output, std::cout);
        if (*verify)
          return cmd_verify(file, method_opt->count() ? std::optional<std::string>(method) : std::nullopt,
                            trials, seed, std::cout);
        return cmd_enumerate(file, std::cout);
      },
      std::cerr);
}
