#pragma once

#include "fvx/hpolytope.hpp"
#include "fvx/linear_system.hpp"
#include "fvx/oracles.hpp"
#include "fvx/points.hpp"
#include "fvx/separation.hpp"

#include <span>
#include <vector>

namespace fvx {

/// Disjoint boxes whose lattice points are exactly the ambient lattice minus X.
struct BoxFamily {
  LatticeBox ambient;
  std::vector<LatticePoint> source;
  std::vector<LatticeBox> boxes;
};

/// For each coordinate i and each length-(i-1) prefix of X, one box per
/// maximal run of i-th values not extending the prefix into X; later
/// coordinates span the full ambient range. Boxes come out by level, then
/// by prefix in lex order, then by interval.
BoxFamily box_decomposition(std::span<const LatticePoint> forbidden, const LatticeBox &ambient);

/// Same with ambient {0..r-1}^n.
BoxFamily box_decomposition(std::span<const LatticePoint> forbidden, int r, int n);

/// Minimizes c over (P ∩ Z^n) \ X with one oracle call per box.
LatticeOutcome solve_forbidden_integral(const IntegralOracle &oracle,
                                        std::span<const LatticePoint> forbidden,
                                        const LatticeBox &ambient, const Objective &c);

/// conv((P ∩ Z^n) \ X) for box-integral P, as the hull of P intersected with
/// each box of the decomposition. Box-integrality is trusted.
LinearSystem forbI_formulation(const HPolytope &p, std::span<const LatticePoint> forbidden,
                               const LatticeBox &ambient);

KBestResult<LatticePoint> kbest_integral(const IntegralOracle &oracle, const LatticeBox &ambient,
                                         const Objective &c, int k);

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Total unimodularity by enumerating every square minor. SizeCap beyond 8x8.
bool tu_check(const IntegerMatrix &m);

/// P with inequality `row` (0-based) tightened by one: for a TU matrix and an
/// integral right-hand side this removes exactly the vertices on that facet.
/// That the row defines a facet is the caller's responsibility.
HPolytope remove_facet_tu(const HPolytope &p, std::size_t row);

} // namespace fvx
