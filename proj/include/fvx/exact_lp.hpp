#pragma once

#include "fvx/linear_system.hpp"

#include <map>
#include <span>
#include <vector>

namespace fvx {

enum class Sense { Minimize, Maximize };

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  /// Values of every system variable (Optimal only).
  std::vector<Rational> point;
  Rational value;
  /// The status was proved from a floating-point basis rather than the tableau.
  bool certified = false;

  [[nodiscard]] bool optimal() const { return status == LpStatus::Optimal; }
};

/// Automatic: the rational tableau for small systems; from 64 standard-form
/// rows, a floating-point basis search whose answer is then proved in exact
/// arithmetic, with the tableau as fallback. Tableau: always the tableau.
enum class LpEngine { Automatic, Tableau };

/// Two-phase primal simplex over exact rationals with Bland's lowest-index
/// rule. The optimum is a basic solution and identical inputs always give
/// identical outputs.
LpResult solve_lp(const LinearSystem &system, std::span<const Term> objective, Sense sense,
                  LpEngine engine = LpEngine::Automatic);

/// Dense objective over the original variables x1..xn.
LpResult solve_lp(const LinearSystem &system, const std::vector<Rational> &original_objective,
                  Sense sense, LpEngine engine = LpEngine::Automatic);

/// Phase 1 only.
bool feasible(const LinearSystem &system, LpEngine engine = LpEngine::Automatic);

/// Feasibility after pinning original variables (1-based index -> value).
bool feasible_with_fixings(const LinearSystem &system, const std::map<int, Rational> &fixings);

} // namespace fvx
