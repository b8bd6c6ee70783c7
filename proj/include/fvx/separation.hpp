#pragma once

#include "fvx/oracles.hpp"
#include "fvx/points.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace fvx {

/// Prefix projections of X. Level i (1-based) holds X^i, the distinct
/// length-i prefixes of X, and its complement within X^{i-1} x {0,1}.
/// Prefixes are stored as the low i bits of the point word.
struct PrefixLevel {
  std::vector<std::uint64_t> projection; // X^i
  std::vector<std::uint64_t> missing;    // (X^{i-1} x {0,1}) \ X^i
};

struct PrefixSets {
  int n = 0;
  std::vector<PrefixLevel> levels; // levels[i-1] is level i
};

PrefixSets prefix_sets(std::span<const BinaryPoint> forbidden, int n);

/// Cube faces whose binary points are exactly {0,1}^n \ X.
struct SeparatingFamily {
  int n = 0;
  std::vector<CubeFace> faces;
  std::vector<BinaryPoint> source;
};

/// Prefix-flip faces (v_1..v_k, 1-v_{k+1}) x [0,1]^{n-k-1}, one per element
/// of each nonempty missing level, ordered by level and then lexicographically
/// by prefix. X empty yields the whole cube; X = {0,1}^n yields no faces.
SeparatingFamily separating_faces(std::span<const BinaryPoint> forbidden, int n);

/// Minimizes c over V(P) \ X with one oracle call per separating face.
BinaryOutcome solve_forbidden(const BinaryOracle &oracle, std::span<const BinaryPoint> forbidden,
                              const Objective &c);

template <typename Point> struct KBestResult {
  std::vector<Point> points;
  /// True when the polytope has no vertex beyond the ones returned.
  bool exhausted = false;
};

/// The k cheapest vertices in nondecreasing order, each found by a
/// forbidden-vertex solve excluding all previously found ones.
KBestResult<BinaryPoint> kbest(const BinaryOracle &oracle, const Objective &c, int k);

} // namespace fvx
