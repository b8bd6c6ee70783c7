#pragma once

#include "fvx/hpolytope.hpp"
#include "fvx/linear_system.hpp"
#include "fvx/points.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fvx {

/// K(a,b) = {x in {0,1}^n : a <= sigma(x) <= b}; empty when b < a.
struct IntervalCode {
  int n = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  [[nodiscard]] bool empty() const { return b < a; }
};

struct HullOptions {
  /// Probe every block with an LP and drop the infeasible ones.
  bool drop_empty = true;
};

/// Balas's extended formulation of conv(union of blocks). Each block keeps
/// its own copy of every variable (named b{j}_y{t}), scaled by a multiplier
/// lam{j} >= 0; the multipliers sum to one and x = sum of the copies.
LinearSystem disjunctive_hull(const std::vector<LinearSystem> &blocks, HullOptions options = {});

/// conv(K(a,b)) in the original variables only.
LinearSystem conv_K(const IntervalCode &code);

/// Interval codes between consecutive forbidden sigma values (nonempty only).
std::vector<IntervalCode> complement_intervals(std::span<const BinaryPoint> forbidden, int n);

/// forb([0,1]^n, X) as the hull of the conv(K) blocks of the complement intervals.
LinearSystem interval_formulation(std::span<const BinaryPoint> forbidden, int n);

/// forb([0,1]^n, X) built by recursion on the last coordinate.
LinearSystem recursive_formulation(std::span<const BinaryPoint> forbidden, int n);

/// conv of an explicit point list (one multiplier per point).
LinearSystem points_hull(std::span<const BinaryPoint> points, int n);

/// forb(P, X) as the hull of P intersected with each X-separating cube face.
LinearSystem face_formulation(const HPolytope &p, std::span<const BinaryPoint> forbidden);

/// forb(P, X) for |X| <= 2 as the hull of intersections of listed facets,
/// the i-th facet avoiding the i-th forbidden vertex. `facets` are 0-based
/// row indices of `p`.
LinearSystem facet_intersection_formulation(const HPolytope &p, std::span<const std::size_t> facets,
                                            std::span<const BinaryPoint> forbidden);

/// Conjunction of systems over the same originals: auxiliaries of the j-th
/// system are renamed s{j}_<name>, and the original bounds are intersected.
LinearSystem intersect_systems(const std::vector<LinearSystem> &systems);

/// Measured size of a system against the bound its construction method
/// guarantees. The bound is recomputed from (n, |X|, base rows, facets).
struct SizeAudit {
  std::size_t rows = 0;
  std::size_t inequalities = 0;
  std::size_t blocks = 0;
  std::optional<std::size_t> row_bound;
  std::optional<std::size_t> inequality_bound;
  std::optional<std::size_t> block_bound;
  bool ok = true;
  std::string detail;
};

SizeAudit size_audit(const LinearSystem &system, std::size_t forbidden_count);

} // namespace fvx
