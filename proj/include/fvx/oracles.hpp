#pragma once

#include "fvx/hpolytope.hpp"
#include "fvx/points.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace fvx {

/// Either infeasible (empty optional) or an optimal point with its value.
template <typename Point> struct Outcome {
  struct Optimum {
    Point vertex;
    Rational value;
  };
  std::optional<Optimum> optimum;

  [[nodiscard]] bool infeasible() const { return !optimum.has_value(); }
  static Outcome none() { return {}; }
  static Outcome at(Point p, Rational v) { return {Optimum{std::move(p), std::move(v)}}; }
};

using BinaryOutcome = Outcome<BinaryPoint>;
using LatticeOutcome = Outcome<LatticePoint>;

/// Linear optimization over the vertices of a 0-1 polytope restricted to a
/// coordinate-fixing face of the cube. Implementations are immutable and
/// answer identical queries identically.
class BinaryOracle {
public:
  virtual ~BinaryOracle() = default;
  [[nodiscard]] virtual int dimension() const = 0;
  [[nodiscard]] virtual BinaryOutcome minimize(const Objective &c, const CubeFace &face) const = 0;
  /// Vertex membership by direct test (independent of `minimize`); used for
  /// enumeration and verification.
  [[nodiscard]] virtual bool is_vertex(const BinaryPoint &v) const = 0;
};

/// Linear optimization over P ∩ [l,u] ∩ Z^n for integer boxes [l,u].
class IntegralOracle {
public:
  virtual ~IntegralOracle() = default;
  [[nodiscard]] virtual int dimension() const = 0;
  [[nodiscard]] virtual LatticeOutcome minimize(const Objective &c, const LatticeBox &box) const = 0;
  /// Membership of an integer point in P by direct test.
  [[nodiscard]] virtual bool contains(const LatticePoint &p) const = 0;
};

std::unique_ptr<BinaryOracle> cube_oracle(int n);
/// conv{x in {0,1}^n : sum x = s}.
std::unique_ptr<BinaryOracle> cardinality_oracle(int n, int s);

struct Edge {
  int u = 0, v = 0; // 0-based node ids
};
/// Spanning trees of a connected multigraph; one coordinate per edge.
std::unique_ptr<BinaryOracle> spanning_tree_oracle(int nodes, std::vector<Edge> edges);
/// LP over an explicit 0-1 polytope; NotBinaryPolytope on a fractional optimum.
std::unique_ptr<BinaryOracle> hrep_binary_oracle(HPolytope p);
/// Enumeration over an explicit vertex list; ties go to the lex-smallest point.
std::unique_ptr<BinaryOracle> brute_force_oracle(std::vector<BinaryPoint> points);

std::unique_ptr<IntegralOracle> lattice_box_oracle(LatticePoint l, LatticePoint u);
/// LP over an explicit box-integral polytope; NotIntegralPolytope on a
/// fractional optimum.
std::unique_ptr<IntegralOracle> hrep_integral_oracle(HPolytope p);
std::unique_ptr<IntegralOracle> brute_force_integral_oracle(std::vector<LatticePoint> points);

/// All vertices of the oracle's polytope via `is_vertex`, lex order.
std::vector<BinaryPoint> enumerate_vertices(const BinaryOracle &oracle);
/// All integer points of P inside `box` via `contains`, lex order.
std::vector<LatticePoint> enumerate_points(const IntegralOracle &oracle, const LatticeBox &box);

/// Keeps the better of two outcomes: lower value, then lex-smaller vertex.
template <typename Point, typename Less>
void keep_better(Outcome<Point> &best, Outcome<Point> candidate, Less less) {
  if (candidate.infeasible())
    return;
  if (best.infeasible() || candidate.optimum->value < best.optimum->value ||
      (candidate.optimum->value == best.optimum->value &&
       less(candidate.optimum->vertex, best.optimum->vertex)))
    best = std::move(candidate);
}

} // namespace fvx
