#pragma once

#include "fvx/cli/problem.hpp"
#include "fvx/linear_system.hpp"
#include "fvx/verify.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace fvx::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kInfeasible = 2, kVerifyFailed = 3 };

/// Builds the extended formulation `method` names for the problem:
/// interval | recursive | faces | facet-intersection | boxes.
LinearSystem compile_problem(const Problem &problem, const std::string &method);

/// Checks `system` against the problem's enumerated ground truth.
VerificationReport verify_against_problem(const LinearSystem &system, const Problem &problem,
                                          std::size_t trials, std::uint64_t seed);

json report_to_json(const VerificationReport &report);

int cmd_solve(const std::string &path, std::ostream &out);
int cmd_kbest(const std::string &path, std::optional<int> k, std::ostream &out);
int cmd_alldiff(const std::string &path, std::ostream &out);
int cmd_compile(const std::string &path, const std::string &method,
                const std::optional<std::string> &output, std::ostream &out);
int cmd_verify(const std::string &path, const std::optional<std::string> &method, std::size_t trials,
               std::uint64_t seed, std::ostream &out);
int cmd_enumerate(const std::string &path, std::ostream &out);

/// Runs a command, mapping library errors to a diagnostic and exit code 1.
int guarded(const std::function<int()> &command, std::ostream &err);

} // namespace fvx::cli
