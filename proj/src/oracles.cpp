#include "fvx/oracles.hpp"

#include "fvx/errors.hpp"
#include "fvx/exact_lp.hpp"
#include "fvx/linear_system.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace fvx {

namespace {

void check_objective(const Objective &c, int n) {
  if (c.dimension() != n)
    throw DomainError("objective has " + std::to_string(c.dimension()) +
                      " coefficients, oracle dimension is " + std::to_string(n));
}

void check_face(const CubeFace &face, int n) {
  if (face.dimension() != n)
    throw DomainError("face dimension does not match the oracle");
}

class CubeOracle final : public BinaryOracle {
public:
  explicit CubeOracle(int n) : n_(n) {
    if (n < 1 || n > kMaxBinaryDimension)
      throw DomainError("cube dimension outside 1..64");
  }
  int dimension() const override { return n_; }
  BinaryOutcome minimize(const Objective &c, const CubeFace &face) const override {
    check_objective(c, n_);
    check_face(face, n_);
    std::uint64_t bits = face.fixed_values();
    for (int i = 1; i <= n_; ++i)
      if (!face.is_fixed(i) && c[i].sign() < 0)
        bits |= std::uint64_t{1} << (i - 1);
    BinaryPoint v(n_, bits);
    return BinaryOutcome::at(v, c.value(v));
  }
  bool is_vertex(const BinaryPoint &v) const override { return v.dimension() == n_; }

private:
  int n_;
};

class CardinalityOracle final : public BinaryOracle {
public:
  CardinalityOracle(int n, int s) : n_(n), s_(s) {
    if (n < 1 || n > kMaxBinaryDimension)
      throw DomainError("cardinality dimension outside 1..64");
    if (s < 0 || s > n)
      throw DomainError("target sum " + std::to_string(s) + " outside 0.." + std::to_string(n));
  }
  int dimension() const override { return n_; }
  BinaryOutcome minimize(const Objective &c, const CubeFace &face) const override {
    check_objective(c, n_);
    check_face(face, n_);
    const int forced = std::popcount(face.fixed_values());
    std::vector<int> free;
    for (int i = 1; i <= n_; ++i)
      if (!face.is_fixed(i))
        free.push_back(i);
    const int need = s_ - forced;
    if (need < 0 || need > static_cast<int>(free.size()))
      return BinaryOutcome::none();
    // Cheapest first; among equal costs the later coordinate takes the 1 so
    // the result is lex-smallest among optima.
    std::stable_sort(free.begin(), free.end(), [&](int a, int b) {
      if (c[a] != c[b])
        return c[a] < c[b];
      return a > b;
    });
    std::uint64_t bits = face.fixed_values();
    for (int k = 0; k < need; ++k)
      bits |= std::uint64_t{1} << (free[static_cast<std::size_t>(k)] - 1);
    BinaryPoint v(n_, bits);
    return BinaryOutcome::at(v, c.value(v));
  }
  bool is_vertex(const BinaryPoint &v) const override {
    return v.dimension() == n_ && std::popcount(v.bits()) == s_;
  }

private:
  int n_, s_;
};

class DisjointSets {
public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto &p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    parent_[static_cast<std::size_t>(b)] = a;
    return true;
  }

private:
  std::vector<int> parent_;
};

class SpanningTreeOracle final : public BinaryOracle {
public:
  SpanningTreeOracle(int nodes, std::vector<Edge> edges) : nodes_(nodes), edges_(std::move(edges)) {
    if (nodes < 2)
      throw DomainError("spanning-tree graph needs at least two nodes");
    if (edges_.empty() || edges_.size() > static_cast<std::size_t>(kMaxBinaryDimension))
      throw DomainError("spanning-tree edge count must lie in 1..64");
    for (const auto &e : edges_)
      if (e.u < 0 || e.v < 0 || e.u >= nodes || e.v >= nodes || e.u == e.v)
        throw DomainError("spanning-tree edge with invalid endpoints");
    DisjointSets ds(nodes_);
    int components = nodes_;
    for (const auto &e : edges_)
      if (ds.unite(e.u, e.v))
        --components;
    if (components != 1)
      throw DomainError("spanning-tree graph is not connected");
  }
  int dimension() const override { return static_cast<int>(edges_.size()); }

  BinaryOutcome minimize(const Objective &c, const CubeFace &face) const override {
    const int m = dimension();
    check_objective(c, m);
    check_face(face, m);
    DisjointSets ds(nodes_);
    std::uint64_t bits = 0;
    int joined = 0;
    for (int i = 1; i <= m; ++i) {
      if (!face.is_fixed(i) || !face.fixed_value(i))
        continue;
      const auto &e = edges_[static_cast<std::size_t>(i - 1)];
      if (!ds.unite(e.u, e.v))
        return BinaryOutcome::none(); // forced edges close a cycle
      bits |= std::uint64_t{1} << (i - 1);
      ++joined;
    }
    std::vector<int> order;
    for (int i = 1; i <= m; ++i)
      if (!face.is_fixed(i))
        order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return c[a] < c[b]; });
    for (int i : order) {
      const auto &e = edges_[static_cast<std::size_t>(i - 1)];
      if (ds.unite(e.u, e.v)) {
        bits |= std::uint64_t{1} << (i - 1);
        ++joined;
      }
    }
    if (joined != nodes_ - 1)
      return BinaryOutcome::none();
    BinaryPoint v(m, bits);
    return BinaryOutcome::at(v, c.value(v));
  }

  bool is_vertex(const BinaryPoint &v) const override {
    if (v.dimension() != dimension() || std::popcount(v.bits()) != nodes_ - 1)
      return false;
    DisjointSets ds(nodes_);
    for (int i = 1; i <= dimension(); ++i)
      if (v[i] && !ds.unite(edges_[static_cast<std::size_t>(i - 1)].u,
                            edges_[static_cast<std::size_t>(i - 1)].v))
        return false;
    return true;
  }

private:
  int nodes_;
  std::vector<Edge> edges_;
};

std::vector<Rational> to_rationals(const BinaryPoint &v) {
  std::vector<Rational> x;
  for (int i = 1; i <= v.dimension(); ++i)
    x.emplace_back(v[i] ? 1 : 0);
  return x;
}

class HrepBinaryOracle final : public BinaryOracle {
public:
  explicit HrepBinaryOracle(HPolytope p) : p_(std::move(p)), system_(LinearSystem::from_hpolytope(p_)) {
    if (p_.n > kMaxBinaryDimension)
      throw DomainError("binary dimension outside 1..64");
  }
  int dimension() const override { return p_.n; }

  BinaryOutcome minimize(const Objective &c, const CubeFace &face) const override {
    check_objective(c, p_.n);
    check_face(face, p_.n);
    LinearSystem sys = system_;
    for (int i = 1; i <= p_.n; ++i)
      if (face.is_fixed(i)) {
        auto &var = sys.variables()[static_cast<std::size_t>(i - 1)];
        var.lower = var.upper = Rational(face.fixed_value(i) ? 1 : 0);
      }
    LpResult r = solve_lp(sys, c.coefficients(), Sense::Minimize);
    if (r.status == LpStatus::Infeasible)
      return BinaryOutcome::none();
    if (r.status == LpStatus::Unbounded)
      throw UnboundedInput("objective unbounded over the explicit description");
    std::uint64_t bits = 0;
    for (int i = 0; i < p_.n; ++i) {
      const Rational &xi = r.point[static_cast<std::size_t>(i)];
      if (xi == Rational(1))
        bits |= std::uint64_t{1} << i;
      else if (xi != Rational(0))
        throw NotBinaryPolytope("LP optimum has coordinate x" + std::to_string(i + 1) + " = " +
                                xi.str());
    }
    BinaryPoint v(p_.n, bits);
    return BinaryOutcome::at(v, r.value);
  }

  bool is_vertex(const BinaryPoint &v) const override {
    return v.dimension() == p_.n && p_.contains(to_rationals(v));
  }

private:
  HPolytope p_;
  LinearSystem system_;
};

class BruteForceOracle final : public BinaryOracle {
public:
  explicit BruteForceOracle(std::vector<BinaryPoint> points) : points_(std::move(points)) {
    if (points_.empty())
      throw DomainError("brute-force oracle needs at least one point");
    for (const auto &p : points_)
      if (p.dimension() != points_.front().dimension())
        throw DomainError("brute-force points differ in dimension");
  }
  int dimension() const override { return points_.front().dimension(); }
  BinaryOutcome minimize(const Objective &c, const CubeFace &face) const override {
    check_objective(c, dimension());
    check_face(face, dimension());
    BinaryOutcome best;
    for (const auto &p : points_)
      if (face.contains(p))
        keep_better(best, BinaryOutcome::at(p, c.value(p)), BinaryLexLess{});
    return best;
  }
  bool is_vertex(const BinaryPoint &v) const override {
    return std::find(points_.begin(), points_.end(), v) != points_.end();
  }

private:
  std::vector<BinaryPoint> points_;
};

class LatticeBoxOracle final : public IntegralOracle {
public:
  LatticeBoxOracle(LatticePoint l, LatticePoint u) : box_(std::move(l), std::move(u)) {}
  int dimension() const override { return box_.dimension(); }
  LatticeOutcome minimize(const Objective &c, const LatticeBox &query) const override {
    check_objective(c, dimension());
    auto clipped = box_.intersect(query);
    if (!clipped)
      return LatticeOutcome::none();
    LatticePoint x;
    for (int i = 1; i <= dimension(); ++i) {
      const auto k = static_cast<std::size_t>(i - 1);
      x.coords.push_back(c[i].sign() >= 0 ? clipped->lower().coords[k] : clipped->upper().coords[k]);
    }
    Rational v = c.value(x);
    return LatticeOutcome::at(std::move(x), std::move(v));
  }
  bool contains(const LatticePoint &p) const override { return box_.contains(p); }

private:
  LatticeBox box_;
};

class HrepIntegralOracle final : public IntegralOracle {
public:
  explicit HrepIntegralOracle(HPolytope p) : p_(std::move(p)), system_(LinearSystem::from_hpolytope(p_)) {}
  int dimension() const override { return p_.n; }
  LatticeOutcome minimize(const Objective &c, const LatticeBox &box) const override {
    check_objective(c, p_.n);
    if (box.dimension() != p_.n)
      throw DomainError("box dimension does not match the oracle");
    LinearSystem sys = system_;
    for (int i = 0; i < p_.n; ++i) {
      auto &var = sys.variables()[static_cast<std::size_t>(i)];
      var.lower = Rational(box.lower().coords[static_cast<std::size_t>(i)]);
      var.upper = Rational(box.upper().coords[static_cast<std::size_t>(i)]);
    }
    LpResult r = solve_lp(sys, c.coefficients(), Sense::Minimize);
    if (r.status == LpStatus::Infeasible)
      return LatticeOutcome::none();
    if (r.status == LpStatus::Unbounded)
      throw UnboundedInput("objective unbounded over the explicit description");
    LatticePoint x;
    for (int i = 0; i < p_.n; ++i) {
      const Rational &xi = r.point[static_cast<std::size_t>(i)];
      if (!xi.is_integer())
        throw NotIntegralPolytope("LP optimum over a box has x" + std::to_string(i + 1) + " = " +
                                  xi.str());
      x.coords.push_back(xi.numerator());
    }
    return LatticeOutcome::at(std::move(x), r.value);
  }
  bool contains(const LatticePoint &p) const override {
    if (p.dimension() != p_.n)
      return false;
    std::vector<Rational> x;
    for (const auto &v : p.coords)
      x.emplace_back(v);
    return p_.contains(x);
  }

private:
  HPolytope p_;
  LinearSystem system_;
};

class BruteForceIntegralOracle final : public IntegralOracle {
public:
  explicit BruteForceIntegralOracle(std::vector<LatticePoint> points) : points_(std::move(points)) {
    if (points_.empty())
      throw DomainError("brute-force oracle needs at least one point");
    for (const auto &p : points_)
      if (p.dimension() != points_.front().dimension())
        throw DomainError("brute-force points differ in dimension");
  }
  int dimension() const override { return points_.front().dimension(); }
  LatticeOutcome minimize(const Objective &c, const LatticeBox &box) const override {
    check_objective(c, dimension());
    LatticeOutcome best;
    for (const auto &p : points_)
      if (box.contains(p))
        keep_better(best, LatticeOutcome::at(p, c.value(p)), LatticeLexLess{});
    return best;
  }
  bool contains(const LatticePoint &p) const override {
    return std::find(points_.begin(), points_.end(), p) != points_.end();
  }

private:
  std::vector<LatticePoint> points_;
};

} // namespace

std::unique_ptr<BinaryOracle> cube_oracle(int n) { return std::make_unique<CubeOracle>(n); }

std::unique_ptr<BinaryOracle> cardinality_oracle(int n, int s) {
  return std::make_unique<CardinalityOracle>(n, s);
}

std::unique_ptr<BinaryOracle> spanning_tree_oracle(int nodes, std::vector<Edge> edges) {
  return std::make_unique<SpanningTreeOracle>(nodes, std::move(edges));
}

std::unique_ptr<BinaryOracle> hrep_binary_oracle(HPolytope p) {
  p.check();
  return std::make_unique<HrepBinaryOracle>(std::move(p));
}

std::unique_ptr<BinaryOracle> brute_force_oracle(std::vector<BinaryPoint> points) {
  return std::make_unique<BruteForceOracle>(std::move(points));
}

std::unique_ptr<IntegralOracle> lattice_box_oracle(LatticePoint l, LatticePoint u) {
  return std::make_unique<LatticeBoxOracle>(std::move(l), std::move(u));
}

std::unique_ptr<IntegralOracle> hrep_integral_oracle(HPolytope p) {
  p.check();
  return std::make_unique<HrepIntegralOracle>(std::move(p));
}

std::unique_ptr<IntegralOracle> brute_force_integral_oracle(std::vector<LatticePoint> points) {
  return std::make_unique<BruteForceIntegralOracle>(std::move(points));
}

std::vector<BinaryPoint> enumerate_vertices(const BinaryOracle &oracle) {
  const int n = oracle.dimension();
  if (n > 24)
    throw GuardExceeded("vertex enumeration over 2^" + std::to_string(n) + " points");
  std::vector<BinaryPoint> out;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    BinaryPoint v(n, k);
    if (oracle.is_vertex(v))
      out.push_back(v);
  }
  std::sort(out.begin(), out.end(), BinaryLexLess{});
  return out;
}

std::vector<LatticePoint> enumerate_points(const IntegralOracle &oracle, const LatticeBox &box) {
  if (box.point_count() > 1 << 20)
    throw GuardExceeded("lattice enumeration over " + box.point_count().get_str() + " points");
  std::vector<LatticePoint> out;
  for (auto &p : lattice_points(box))
    if (oracle.contains(p))
      out.push_back(std::move(p));
  return out;
}

} // namespace fvx
