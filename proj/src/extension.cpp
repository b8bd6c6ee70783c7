#include "fvx/extension.hpp"

#include "fvx/errors.hpp"
#include "fvx/exact_lp.hpp"
#include "fvx/separation.hpp"

#include <algorithm>
#include <set>

namespace fvx {

namespace {

void check_points(std::span<const BinaryPoint> points, int n) {
  if (n < 1 || n > kMaxBinaryDimension)
    throw DomainError("dimension outside 1..64");
  for (const auto &p : points)
    if (p.dimension() != n)
      throw DomainError("point " + p.str() + " does not have dimension " + std::to_string(n));
}

std::set<std::uint64_t> as_codes(std::span<const BinaryPoint> points) {
  std::set<std::uint64_t> codes;
  for (const auto &p : points)
    codes.insert(p.bits());
  return codes;
}

bool covers_cube(std::size_t count, int n) {
  return n < 64 && count == (std::size_t{1} << n);
}

Constraint row(std::vector<Term> terms, Relation rel, Rational rhs) {
  return Constraint{std::move(terms), rel, std::move(rhs)};
}

// Appends block j's homogenized copy and its multiplier lam{j} to `hull`.
void append_block(LinearSystem &hull, const LinearSystem &block, std::size_t j,
                  std::vector<std::vector<Term>> &coupling) {
  const auto &vars = block.variables();
  const std::size_t first = hull.variables().size();
  const std::string prefix = "b" + std::to_string(j) + "_y";
  for (std::size_t t = 0; t < vars.size(); ++t)
    hull.add_variable(prefix + std::to_string(t + 1));
  const std::size_t lam = hull.add_variable("lam" + std::to_string(j), Rational(0));

  for (const auto &c : block.constraints()) {
    Constraint h;
    h.rel = c.rel;
    h.rhs = 0;
    for (const auto &term : c.terms)
      h.terms.push_back({first + term.var, term.coeff});
    if (c.rhs.sign() != 0)
      h.terms.push_back({lam, -c.rhs});
    hull.add_constraint(std::move(h));
  }

  // Bounds l <= y <= u become l*lam <= y <= u*lam; zero bounds stay bounds.
  for (std::size_t t = 0; t < vars.size(); ++t) {
    const auto &v = vars[t];
    auto &copy = hull.variables()[first + t];
    auto scaled = [&](const Rational &bound, Relation rel) {
      if (bound.sign() == 0) {
        if (rel != Relation::LessEqual)
          copy.lower = Rational(0);
        if (rel != Relation::GreaterEqual)
          copy.upper = Rational(0);
        return;
      }
      hull.add_constraint(row({{first + t, Rational(1)}, {lam, -bound}}, rel, Rational(0)));
    };
    if (v.is_fixed()) {
      scaled(*v.lower, Relation::Equal);
      continue;
    }
    if (v.lower)
      scaled(*v.lower, Relation::GreaterEqual);
    if (v.upper)
      scaled(*v.upper, Relation::LessEqual);
  }

  for (int i = 0; i < block.original(); ++i)
    coupling[static_cast<std::size_t>(i)].push_back({first + static_cast<std::size_t>(i), Rational(-1)});
}

// EF over n-1 coordinates lifted to n with x_n in [0,1]; auxiliaries shift by one.
LinearSystem append_free_coordinate(const LinearSystem &sys) {
  const int m = sys.original();
  LinearSystem out(m + 1);
  for (int i = 0; i < m; ++i) {
    out.variables()[static_cast<std::size_t>(i)].lower = sys.variables()[static_cast<std::size_t>(i)].lower;
    out.variables()[static_cast<std::size_t>(i)].upper = sys.variables()[static_cast<std::size_t>(i)].upper;
  }
  out.variables()[static_cast<std::size_t>(m)].lower = Rational(0);
  out.variables()[static_cast<std::size_t>(m)].upper = Rational(1);
  for (std::size_t t = static_cast<std::size_t>(m); t < sys.variables().size(); ++t) {
    const auto &v = sys.variables()[t];
    out.add_variable(v.name, v.lower, v.upper);
  }
  auto remap = [m](std::size_t v) { return v < static_cast<std::size_t>(m) ? v : v + 1; };
  for (const auto &c : sys.constraints()) {
    Constraint moved = c;
    for (auto &t : moved.terms)
      t.var = remap(t.var);
    out.add_constraint(std::move(moved));
  }
  return out;
}

LinearSystem recursive_impl(const std::set<std::uint64_t> &forbidden, int n) {
  if (covers_cube(forbidden.size(), n))
    throw AllForbidden("every vertex of [0,1]^" + std::to_string(n) + " is forbidden");
  if (n == 1) {
    LinearSystem base(1);
    auto &x = base.variables()[0];
    if (forbidden.empty()) {
      x.lower = Rational(0);
      x.upper = Rational(1);
    } else {
      x.lower = x.upper = Rational(*forbidden.begin() == 0 ? 1 : 0);
    }
    return base;
  }
  const std::uint64_t last = std::uint64_t{1} << (n - 1);
  std::set<std::uint64_t> projected;
  std::vector<BinaryPoint> flipped_out; // X^ = flip(X) \ X
  for (std::uint64_t code : forbidden) {
    projected.insert(code & ~last);
    if (!forbidden.count(code ^ last))
      flipped_out.emplace_back(n, code ^ last);
  }
  std::sort(flipped_out.begin(), flipped_out.end(), BinaryLexLess{});

  std::vector<LinearSystem> blocks;
  if (!covers_cube(projected.size(), n - 1))
    blocks.push_back(append_free_coordinate(recursive_impl(projected, n - 1)));
  if (!flipped_out.empty())
    blocks.push_back(points_hull(flipped_out, n));
  if (blocks.size() == 1)
    return std::move(blocks.front());
  return disjunctive_hull(blocks, {.drop_empty = false});
}

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > SIZE_MAX / base)
      return SIZE_MAX;
    out *= base;
  }
  return out;
}

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > SIZE_MAX / a)
    return SIZE_MAX;
  return a * b;
}

std::size_t sat_add(std::size_t a, std::size_t b) { return a > SIZE_MAX - b ? SIZE_MAX : a + b; }

} // namespace

LinearSystem disjunctive_hull(const std::vector<LinearSystem> &blocks, HullOptions options) {
  if (blocks.empty())
    throw EmptyUnion("no blocks to hull");
  const int n = blocks.front().original();
  for (const auto &b : blocks)
    if (b.original() != n)
      throw DomainError("blocks differ in their number of original variables");

  std::vector<const LinearSystem *> kept;
  for (const auto &b : blocks)
    if (!options.drop_empty || feasible(b))
      kept.push_back(&b);
  if (kept.empty())
    throw EmptyUnion("every block is empty");

  LinearSystem hull(n);
  std::vector<std::vector<Term>> coupling(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    coupling[static_cast<std::size_t>(i)].push_back({static_cast<std::size_t>(i), Rational(1)});
  std::vector<Term> lambdas;
  for (std::size_t j = 0; j < kept.size(); ++j) {
    append_block(hull, *kept[j], j + 1, coupling);
    lambdas.push_back({hull.variables().size() - 1, Rational(1)});
  }
  // Coupling rows first so they read as r1..rn in emitted files.
  std::vector<Constraint> block_rows = std::move(hull.constraints());
  hull.constraints().clear();
  for (auto &terms : coupling)
    hull.add_constraint(row(std::move(terms), Relation::Equal, Rational(0)));
  hull.add_constraint(row(std::move(lambdas), Relation::Equal, Rational(1)));
  for (auto &c : block_rows)
    hull.add_constraint(std::move(c));

  hull.meta().method = "hull";
  hull.meta().blocks = kept.size();
  hull.meta().dropped = blocks.size() - kept.size();
  return hull;
}

LinearSystem conv_K(const IntervalCode &code) {
  const int n = code.n;
  if (n < 1 || n > kMaxBinaryDimension)
    throw DomainError("dimension outside 1..64");
  if (code.empty())
    throw EmptyInterval("K(" + std::to_string(code.a) + "," + std::to_string(code.b) + ") is empty");
  if ((code.b & ~low_mask(n)) != 0)
    throw DomainError("interval end " + std::to_string(code.b) + " is not below 2^" + std::to_string(n));
  LinearSystem sys(n);
  for (auto &v : sys.variables()) {
    v.lower = Rational(0);
    v.upper = Rational(1);
  }
  auto in = [](std::uint64_t code_bits, int i) { return ((code_bits >> (i - 1)) & 1U) != 0; };
  // x_i + sum_{j>i, j not in N^a} x_j >= 1 for i in N^a
  for (int i = 1; i <= n; ++i) {
    if (!in(code.a, i))
      continue;
    Constraint c{{{static_cast<std::size_t>(i - 1), Rational(1)}}, Relation::GreaterEqual, Rational(1)};
    for (int j = i + 1; j <= n; ++j)
      if (!in(code.a, j))
        c.terms.push_back({static_cast<std::size_t>(j - 1), Rational(1)});
    sys.add_constraint(std::move(c));
  }
  // x_i + sum_{j>i, j in N^b} x_j <= |{j>i : j in N^b}| for i not in N^b
  for (int i = 1; i <= n; ++i) {
    if (in(code.b, i))
      continue;
    Constraint c{{{static_cast<std::size_t>(i - 1), Rational(1)}}, Relation::LessEqual, Rational(0)};
    long count = 0;
    for (int j = i + 1; j <= n; ++j)
      if (in(code.b, j)) {
        c.terms.push_back({static_cast<std::size_t>(j - 1), Rational(1)});
        ++count;
      }
    c.rhs = Rational(count);
    sys.add_constraint(std::move(c));
  }
  sys.meta().method = "conv-K";
  return sys;
}

std::vector<IntervalCode> complement_intervals(std::span<const BinaryPoint> forbidden, int n) {
  check_points(forbidden, n);
  std::vector<IntervalCode> out;
  std::uint64_t start = 0;
  bool done = false;
  for (std::uint64_t k : as_codes(forbidden)) {
    if (k > start)
      out.push_back({n, start, k - 1});
    if (k == low_mask(n)) {
      done = true;
      break;
    }
    start = k + 1;
  }
  if (!done)
    out.push_back({n, start, low_mask(n)});
  return out;
}

LinearSystem interval_formulation(std::span<const BinaryPoint> forbidden, int n) {
  auto intervals = complement_intervals(forbidden, n);
  if (intervals.empty())
    throw AllForbidden("every vertex of [0,1]^" + std::to_string(n) + " is forbidden");
  std::vector<LinearSystem> blocks;
  for (const auto &code : intervals)
    blocks.push_back(conv_K(code));
  LinearSystem out = blocks.size() == 1 ? std::move(blocks.front())
                                        : disjunctive_hull(blocks, {.drop_empty = false});
  out.meta().method = "interval";
  out.meta().forbidden = as_codes(forbidden).size();
  out.meta().family = intervals.size();
  out.meta().blocks = intervals.size();
  return out;
}

LinearSystem points_hull(std::span<const BinaryPoint> points, int n) {
  check_points(points, n);
  if (points.empty())
    throw EmptyUnion("no points to hull");
  LinearSystem sys(n);
  if (points.size() == 1) {
    for (int i = 1; i <= n; ++i) {
      auto &x = sys.variables()[static_cast<std::size_t>(i - 1)];
      x.lower = x.upper = Rational(points.front()[i] ? 1 : 0);
    }
  } else {
    std::vector<std::size_t> mu;
    for (std::size_t t = 0; t < points.size(); ++t)
      mu.push_back(sys.add_variable("y" + std::to_string(t + 1), Rational(0)));
    for (int i = 1; i <= n; ++i) {
      Constraint c{{{static_cast<std::size_t>(i - 1), Rational(1)}}, Relation::Equal, Rational(0)};
      for (std::size_t t = 0; t < points.size(); ++t)
        if (points[t][i])
          c.terms.push_back({mu[t], Rational(-1)});
      sys.add_constraint(std::move(c));
    }
    Constraint total{{}, Relation::Equal, Rational(1)};
    for (std::size_t m : mu)
      total.terms.push_back({m, Rational(1)});
    sys.add_constraint(std::move(total));
  }
  sys.meta().method = "points";
  return sys;
}

LinearSystem recursive_formulation(std::span<const BinaryPoint> forbidden, int n) {
  check_points(forbidden, n);
  auto codes = as_codes(forbidden);
  LinearSystem out = recursive_impl(codes, n);
  out.meta() = FormulationMeta{};
  out.meta().method = "recursive";
  out.meta().forbidden = codes.size();
  return out;
}

LinearSystem face_formulation(const HPolytope &p, std::span<const BinaryPoint> forbidden) {
  p.check();
  check_points(forbidden, p.n);
  SeparatingFamily family = separating_faces(forbidden, p.n);
  const LinearSystem base = LinearSystem::from_hpolytope(p);
  std::vector<LinearSystem> blocks;
  std::size_t dropped = 0;
  for (const auto &face : family.faces) {
    LinearSystem block = base;
    block.meta() = FormulationMeta{};
    if (face.fixed_count() > 0) {
      // P lies in [0,1]^n, so sum_{fixed 0} x_i + sum_{fixed 1} (1 - x_i) = 0
      // cuts out exactly P ∩ face.
      Constraint c{{}, Relation::Equal, Rational(0)};
      long ones = 0;
      for (int i = 1; i <= p.n; ++i) {
        if (!face.is_fixed(i))
          continue;
        if (face.fixed_value(i)) {
          c.terms.push_back({static_cast<std::size_t>(i - 1), Rational(-1)});
          ++ones;
        } else {
          c.terms.push_back({static_cast<std::size_t>(i - 1), Rational(1)});
        }
      }
      c.rhs = Rational(-ones);
      block.add_constraint(std::move(c));
    }
    if (feasible(block))
      blocks.push_back(std::move(block));
    else
      ++dropped;
  }
  if (blocks.empty())
    throw AllForbidden("no separating face meets the polytope");
  const std::size_t kept = blocks.size();
  LinearSystem out = kept == 1 ? std::move(blocks.front()) : disjunctive_hull(blocks, {.drop_empty = false});
  out.meta() = FormulationMeta{};
  out.meta().method = "faces";
  out.meta().forbidden = as_codes(forbidden).size();
  out.meta().base_rows = p.rows.size();
  out.meta().family = family.faces.size();
  out.meta().blocks = kept;
  out.meta().dropped = dropped;
  return out;
}

LinearSystem facet_intersection_formulation(const HPolytope &p, std::span<const std::size_t> facets,
                                            std::span<const BinaryPoint> forbidden) {
  p.check();
  check_points(forbidden, p.n);
  if (forbidden.size() > 2)
    throw CardinalityCap("facet intersection supports at most 2 forbidden vertices, got " +
                         std::to_string(forbidden.size()));
  std::vector<Rational> dummy;
  for (std::size_t f : facets) {
    if (f >= p.rows.size())
      throw DomainError("facet index " + std::to_string(f + 1) + " out of range");
    if (p.rows[f].rel == Relation::Equal)
      throw DomainError("row " + std::to_string(f + 1) + " is an equation, not a facet");
  }
  // Facets not containing each forbidden vertex.
  std::vector<std::vector<std::size_t>> avoiding;
  for (const auto &v : forbidden) {
    std::vector<Rational> x;
    for (int i = 1; i <= p.n; ++i)
      x.emplace_back(v[i] ? 1 : 0);
    std::vector<std::size_t> options;
    for (std::size_t f : facets)
      if (!p.rows[f].tight_at(x))
        options.push_back(f);
    if (options.empty())
      throw NoFaceExcludes("vertex " + v.str() + " lies on every listed facet");
    avoiding.push_back(std::move(options));
  }
  std::set<std::vector<std::size_t>> tuples;
  if (avoiding.empty()) {
    tuples.insert(std::vector<std::size_t>{});
  } else if (avoiding.size() == 1) {
    for (std::size_t f : avoiding[0])
      tuples.insert({f});
  } else {
    for (std::size_t f : avoiding[0])
      for (std::size_t g : avoiding[1])
        tuples.insert(f == g ? std::vector<std::size_t>{f} : std::vector<std::size_t>{std::min(f, g), std::max(f, g)});
  }
  std::vector<LinearSystem> blocks;
  std::size_t dropped = 0;
  for (const auto &tuple : tuples) {
    HPolytope face = p;
    for (std::size_t f : tuple)
      face.rows[f].rel = Relation::Equal;
    LinearSystem block = LinearSystem::from_hpolytope(face);
    block.meta() = FormulationMeta{};
    if (feasible(block))
      blocks.push_back(std::move(block));
    else
      ++dropped;
  }
  if (blocks.empty())
    throw AllForbidden("every candidate face is empty");
  const std::size_t kept = blocks.size();
  LinearSystem out = kept == 1 ? std::move(blocks.front()) : disjunctive_hull(blocks, {.drop_empty = false});
  out.meta() = FormulationMeta{};
  out.meta().method = "facet-intersection";
  out.meta().forbidden = as_codes(forbidden).size();
  out.meta().base_rows = p.rows.size();
  out.meta().facets = facets.size();
  out.meta().family = tuples.size();
  out.meta().blocks = kept;
  out.meta().dropped = dropped;
  return out;
}

LinearSystem intersect_systems(const std::vector<LinearSystem> &systems) {
  if (systems.empty())
    throw DomainError("nothing to intersect");
  const int n = systems.front().original();
  LinearSystem out(n);
  for (std::size_t j = 0; j < systems.size(); ++j) {
    const auto &sys = systems[j];
    if (sys.original() != n)
      throw DomainError("systems differ in their number of original variables");
    std::vector<std::size_t> where(sys.variables().size());
    for (std::size_t t = 0; t < sys.variables().size(); ++t) {
      const auto &v = sys.variables()[t];
      if (t < static_cast<std::size_t>(n)) {
        auto &x = out.variables()[t];
        if (v.lower && (!x.lower || *v.lower > *x.lower))
          x.lower = v.lower;
        if (v.upper && (!x.upper || *v.upper < *x.upper))
          x.upper = v.upper;
        where[t] = t;
      } else {
        where[t] = out.add_variable("s" + std::to_string(j + 1) + "_" + v.name, v.lower, v.upper);
      }
    }
    for (const auto &c : sys.constraints()) {
      Constraint moved = c;
      for (auto &term : moved.terms)
        term.var = where[term.var];
      out.add_constraint(std::move(moved));
    }
  }
  out.meta().method = "intersection";
  return out;
}

SizeAudit size_audit(const LinearSystem &system, std::size_t forbidden_count) {
  SizeAudit audit;
  audit.rows = system.row_count();
  audit.inequalities = system.inequality_count();
  for (const auto &v : system.variables())
    if (v.name.rfind("lam", 0) == 0)
      ++audit.blocks;
  if (audit.blocks == 0)
    audit.blocks = 1;
  const auto &meta = system.meta();
  const std::size_t n = static_cast<std::size_t>(system.original());
  const std::size_t x = forbidden_count;
  const std::size_t base = meta.base_rows;

  if (meta.method == "interval") {
    std::size_t bound = sat_mul(x + 1, 4 * n + 3);
    audit.row_bound = bound;
    audit.inequality_bound = bound;
    audit.block_bound = x + 1;
    audit.detail = "(|X|+1)(4n+3)";
  } else if (meta.method == "recursive") {
    audit.inequality_bound = sat_mul(n, x + 4);
    audit.detail = "inequalities <= n(|X|+4)";
  } else if (meta.method == "faces") {
    std::size_t family = std::max<std::size_t>(1, sat_mul(n, x));
    audit.row_bound = sat_add(sat_add(sat_mul(family, base + 1), family), 1);
    audit.block_bound = family;
    audit.detail = "n|X|(rows(P)+1) + n|X| + 1";
  } else if (meta.method == "facet-intersection") {
    std::size_t family = saturating_pow(meta.facets, x);
    audit.block_bound = family;
    audit.row_bound = sat_add(sat_mul(family, base), n + 1);
    audit.detail = "blocks <= f^|X|, rows <= f^|X| rows(P) + n + 1";
  } else if (meta.method == "boxes") {
    std::size_t family = std::max<std::size_t>(1, sat_mul(2 * n, x));
    audit.block_bound = family;
    audit.row_bound = sat_add(sat_mul(family, base + n + 1), n + 1);
    audit.detail = "blocks <= 2n|X|, rows <= 2n|X|(rows(P)+n+1) + n + 1";
  } else {
    audit.detail = "no size certificate for method '" + meta.method + "'";
    return audit;
  }
  if (meta.forbidden != forbidden_count) {
    audit.ok = false;
    audit.detail += "; recorded |X| = " + std::to_string(meta.forbidden) + " but " +
                    std::to_string(forbidden_count) + " supplied";
  }
  if (audit.row_bound && audit.rows > *audit.row_bound)
    audit.ok = false;
  if (audit.inequality_bound && audit.inequalities > *audit.inequality_bound)
    audit.ok = false;
  if (audit.block_bound && audit.blocks > *audit.block_bound)
    audit.ok = false;
  return audit;
}

} // namespace fvx
