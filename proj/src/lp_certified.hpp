#pragma once

#include "fvx/linear_system.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

namespace fvx::detail {

/// One row of  A z (rel) rhs  over structural columns z >= 0, rhs >= 0.
struct StdRow {
  std::vector<std::pair<std::size_t, mpq_class>> coeffs;
  Relation rel = Relation::LessEqual;
  mpq_class rhs;
};

enum class CertifiedStatus { Optimal, Infeasible, Unbounded, Unavailable };

struct CertifiedResult {
  CertifiedStatus status = CertifiedStatus::Unavailable;
  /// Structural values of the certified basic solution.
  std::vector<mpq_class> z;
};

/// Finds a basis with floating-point simplex, then proves it optimal (or
/// proves infeasibility or unboundedness) in exact arithmetic. `cost` over
/// the structural columns; null asks for feasibility only. Unavailable means
/// no certificate was found and the caller must fall back.
CertifiedResult solve_certified(std::size_t structural, const std::vector<StdRow> &rows,
                                const std::vector<mpq_class> *cost);

} // namespace fvx::detail
