#include "fvx/integral.hpp"

#include "fvx/errors.hpp"
#include "fvx/exact_lp.hpp"
#include "fvx/extension.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fvx {

namespace {

using Prefix = std::vector<Integer>;

void check_forbidden(std::span<const LatticePoint> forbidden, const LatticeBox &ambient) {
  for (const auto &x : forbidden) {
    if (x.dimension() != ambient.dimension())
      throw DomainError("point " + x.str() + " has the wrong dimension");
    if (!ambient.contains(x))
      throw DomainError("point " + x.str() + " lies outside the ambient box");
  }
}

LatticeBox make_box(const LatticeBox &ambient, const Prefix &prefix, const Integer &lo,
                    const Integer &hi) {
  LatticePoint l = ambient.lower(), u = ambient.upper();
  for (std::size_t t = 0; t < prefix.size(); ++t)
    l.coords[t] = u.coords[t] = prefix[t];
  l.coords[prefix.size()] = lo;
  u.coords[prefix.size()] = hi;
  return LatticeBox(std::move(l), std::move(u));
}

std::size_t distinct_count(std::span<const LatticePoint> points) {
  std::set<std::vector<Integer>> seen;
  for (const auto &p : points)
    seen.insert(p.coords);
  return seen.size();
}

long long det_bareiss(std::vector<std::vector<long long>> a) {
  const std::size_t n = a.size();
  long long sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0)
        ++swap;
      if (swap == n)
        return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

} // namespace

BoxFamily box_decomposition(std::span<const LatticePoint> forbidden, const LatticeBox &ambient) {
  check_forbidden(forbidden, ambient);
  BoxFamily family;
  family.ambient = ambient;
  family.source.assign(forbidden.begin(), forbidden.end());
  const int n = ambient.dimension();
  for (int i = 1; i <= n; ++i) {
    const std::size_t len = static_cast<std::size_t>(i - 1);
    // prefix of length i-1 -> i-th values that keep it inside X
    std::map<Prefix, std::set<Integer>> next;
    if (forbidden.empty() && i == 1)
      next[Prefix{}];
    for (const auto &x : forbidden)
      next[Prefix(x.coords.begin(), x.coords.begin() + static_cast<long>(len))].insert(x.coords[len]);
    const Integer &lo = ambient.lower().coords[len];
    const Integer &hi = ambient.upper().coords[len];
    for (const auto &[prefix, values] : next) {
      Integer start = lo;
      for (const Integer &v : values) {
        if (v > start)
          family.boxes.push_back(make_box(ambient, prefix, start, v - 1));
        start = v + 1;
      }
      if (start <= hi)
        family.boxes.push_back(make_box(ambient, prefix, start, hi));
    }
  }
  return family;
}

BoxFamily box_decomposition(std::span<const LatticePoint> forbidden, int r, int n) {
  if (r < 1 || n < 1)
    throw DomainError("range and dimension must be positive");
  LatticePoint l{std::vector<Integer>(static_cast<std::size_t>(n), Integer(0))};
  LatticePoint u{std::vector<Integer>(static_cast<std::size_t>(n), Integer(r - 1))};
  return box_decomposition(forbidden, LatticeBox(l, u));
}

LatticeOutcome solve_forbidden_integral(const IntegralOracle &oracle,
                                        std::span<const LatticePoint> forbidden,
                                        const LatticeBox &ambient, const Objective &c) {
  if (oracle.dimension() != ambient.dimension())
    throw DomainError("oracle and ambient box differ in dimension");
  BoxFamily family = box_decomposition(forbidden, ambient);
  LatticeOutcome best;
  for (const auto &box : family.boxes) {
    LatticeOutcome candidate = oracle.minimize(c, box);
    if (!candidate.infeasible() && !box.contains(candidate.optimum->vertex))
      throw DomainError("oracle returned " + candidate.optimum->vertex.str() + " outside the queried box");
    keep_better(best, std::move(candidate), LatticeLexLess{});
  }
  return best;
}

LinearSystem forbI_formulation(const HPolytope &p, std::span<const LatticePoint> forbidden,
                               const LatticeBox &ambient) {
  p.check();
  if (p.n != ambient.dimension())
    throw DomainError("polytope and ambient box differ in dimension");
  BoxFamily family = box_decomposition(forbidden, ambient);
  const LinearSystem base = LinearSystem::from_hpolytope(p);
  std::vector<LinearSystem> blocks;
  std::size_t dropped = 0;
  for (const auto &box : family.boxes) {
    LinearSystem block = base;
    block.meta() = FormulationMeta{};
    // Coordinates past the first non-degenerate one span the ambient range.
    for (int i = 0; i < p.n; ++i) {
      const auto &l = box.lower().coords[static_cast<std::size_t>(i)];
      const auto &u = box.upper().coords[static_cast<std::size_t>(i)];
      auto &x = block.variables()[static_cast<std::size_t>(i)];
      x.lower = Rational(l);
      x.upper = Rational(u);
      if (l != u)
        break;
    }
    if (feasible(block))
      blocks.push_back(std::move(block));
    else
      ++dropped;
  }
  if (blocks.empty())
    throw AllForbidden("no box meets the polytope");
  const std::size_t kept = blocks.size();
  LinearSystem out = kept == 1 ? std::move(blocks.front()) : disjunctive_hull(blocks, {.drop_empty = false});
  out.meta() = FormulationMeta{};
  out.meta().method = "boxes";
  out.meta().forbidden = distinct_count(forbidden);
  out.meta().base_rows = p.rows.size();
  out.meta().family = family.boxes.size();
  out.meta().blocks = kept;
  out.meta().dropped = dropped;
  return out;
}

KBestResult<LatticePoint> kbest_integral(const IntegralOracle &oracle, const LatticeBox &ambient,
                                         const Objective &c, int k) {
  if (k < 1)
    throw DomainError("k must be positive");
  KBestResult<LatticePoint> result;
  for (int i = 0; i <= k; ++i) {
    LatticeOutcome next = solve_forbidden_integral(oracle, result.points, ambient, c);
    if (next.infeasible()) {
      result.exhausted = true;
      break;
    }
    if (i == k)
      break;
    result.points.push_back(next.optimum->vertex);
  }
  return result;
}

bool tu_check(const IntegerMatrix &m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  if (rows > 8 || cols > 8)
    throw SizeCap("TU check is limited to 8x8 matrices");
  for (const auto &r : m) {
    if (r.size() != cols)
      throw DomainError("ragged matrix");
    for (const auto &e : r)
      if (e < -1 || e > 1)
        return false;
  }
  // Every pair of equal-size row and column subsets.
  for (unsigned rs = 1; rs < (1U << rows); ++rs) {
    const int size = __builtin_popcount(rs);
    for (unsigned cs = 1; cs < (1U << cols); ++cs) {
      if (__builtin_popcount(cs) != size)
        continue;
      std::vector<std::vector<long long>> sub;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!((rs >> i) & 1U))
          continue;
        std::vector<long long> line;
        for (std::size_t j = 0; j < cols; ++j)
          if ((cs >> j) & 1U)
            line.push_back(m[i][j].get_si());
        sub.push_back(std::move(line));
      }
      long long d = det_bareiss(std::move(sub));
      if (d < -1 || d > 1)
        return false;
    }
  }
  return true;
}

HPolytope remove_facet_tu(const HPolytope &p, std::size_t row) {
  p.check();
  if (row >= p.rows.size())
    throw DomainError("row " + std::to_string(row + 1) + " out of range");
  if (p.rows[row].rel == Relation::Equal)
    throw DomainError("row " + std::to_string(row + 1) + " is an equation");
  // Unit rows and negated copies never change total unimodularity, so the
  // minors are enumerated over the remaining distinct rows only.
  IntegerMatrix m;
  std::set<std::vector<Integer>> seen;
  for (const auto &r : p.rows) {
    if (!r.b.is_integer())
      throw NonIntegralRhs("right-hand side " + r.b.str() + " is not an integer");
    std::vector<Integer> line, negated;
    int nonzero = 0;
    bool unit = true;
    for (const auto &a : r.a) {
      if (!a.is_integer())
        throw NotTU("coefficient " + a.str() + " is not an integer");
      line.push_back(a.numerator());
      negated.push_back(-a.numerator());
      if (a.sign() != 0) {
        ++nonzero;
        unit = unit && (a == Rational(1) || a == Rational(-1));
      }
    }
    if ((nonzero <= 1 && unit) || seen.count(line) || seen.count(negated))
      continue;
    seen.insert(line);
    m.push_back(std::move(line));
  }
  if (!tu_check(m))
    throw NotTU("constraint matrix is not totally unimodular");
  HPolytope out = p;
  auto &target = out.rows[row];
  target.b = target.rel == Relation::LessEqual ? target.b - 1 : target.b + 1;
  return out;
}

} // namespace fvx
