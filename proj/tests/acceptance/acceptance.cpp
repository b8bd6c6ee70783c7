// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "support/brute.hpp"

#include "fvx/alldiff.hpp"
#include "fvx/cli/commands.hpp"
#include "fvx/cube.hpp"
#include "fvx/errors.hpp"
#include "fvx/exact_lp.hpp"
#include "fvx/extension.hpp"
#include "fvx/integral.hpp"
#include "fvx/separation.hpp"
#include "fvx/verify.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace fvx;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds; // 0 = no limit
  std::function<Verdict()> run;
};

std::string cli_path;
std::string fixtures_dir;

// Records the first few failures; pass flips on the first one.
class Failures {
public:
  void add(const std::string &what) {
    if (count_++ < 3)
      examples_ += (examples_.empty() ? "" : "; ") + what;
  }
  [[nodiscard]] std::size_t count() const { return count_; }
  Verdict outcome(std::string summary) const {
    if (count_ == 0)
      return {true, std::move(summary)};
    return {false, summary + "; " + std::to_string(count_) + " failure(s): " + examples_};
  }

private:
  std::size_t count_ = 0;
  std::string examples_;
};

std::string str(const std::vector<BinaryPoint> &xs) {
  std::string out = "{";
  for (const auto &x : xs)
    out += (out.size() > 1 ? "," : "") + x.str();
  return out + "}";
}

std::string str(const Objective &c) {
  std::string out = "(";
  for (int i = 1; i <= c.dimension(); ++i)
    out += (i > 1 ? "," : "") + c[i].str();
  return out + ")";
}

// ---------------------------------------------------------------- fixtures

struct BinaryFixture {
  std::string name;
  HPolytope p;
  std::vector<BinaryPoint> vertices;
};

HRow hrow(std::vector<Rational> a, Relation rel, Rational b) { return {std::move(a), rel, std::move(b)}; }

// Random 0-1 polytope with an explicit description: the cube, optionally cut
// by a cardinality row, a chain of order rows, or path stable-set rows.
BinaryFixture random_binary_hrep(std::mt19937 &rng, int n) {
  BinaryFixture f;
  f.p = HPolytope::unit_cube(n);
  const int kind = static_cast<int>(rng() % 5);
  const std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
  switch (kind) {
  case 0:
    f.name = "cube";
    break;
  case 1: {
    int s = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    f.name = "sum<=" + std::to_string(s);
    f.p.rows.push_back(hrow(ones, Relation::LessEqual, s));
    break;
  }
  case 2: {
    int s = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
    f.name = "sum=" + std::to_string(s);
    f.p.rows.push_back(hrow(ones, Relation::Equal, s));
    break;
  }
  case 3:
    f.name = "chain";
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<Rational> a(static_cast<std::size_t>(n), Rational(0));
      a[static_cast<std::size_t>(i)] = 1;
      a[static_cast<std::size_t>(i + 1)] = -1;
      f.p.rows.push_back(hrow(a, Relation::GreaterEqual, 0));
    }
    break;
  default:
    f.name = "path-stable";
    for (int i = 0; i + 1 < n; ++i) {
      std::vector<Rational> a(static_cast<std::size_t>(n), Rational(0));
      a[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i + 1)] = 1;
      f.p.rows.push_back(hrow(a, Relation::LessEqual, 1));
    }
    break;
  }
  f.vertices = testing::binary_vertices(f.p);
  return f;
}

std::vector<std::size_t> inequality_rows(const HPolytope &p) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < p.rows.size(); ++r)
    if (p.rows[r].rel != Relation::Equal)
      out.push_back(r);
  return out;
}

bool spanning_tree(int nodes, const std::vector<Edge> &edges, const BinaryPoint &v) {
  std::vector<int> parent(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i)
    parent[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int a) {
    return parent[static_cast<std::size_t>(a)] == a ? a : find(parent[static_cast<std::size_t>(a)]);
  };
  int used = 0;
  for (int i = 1; i <= v.dimension(); ++i) {
    if (!v[i])
      continue;
    int a = find(edges[static_cast<std::size_t>(i - 1)].u), b = find(edges[static_cast<std::size_t>(i - 1)].v);
    if (a == b)
      return false;
    parent[static_cast<std::size_t>(a)] = b;
    ++used;
  }
  return used == nodes - 1;
}

// Connected multigraph with `m` edges on 3 or 4 nodes (m >= nodes - 1).
std::pair<int, std::vector<Edge>> random_graph(std::mt19937 &rng, int m) {
  int nodes = std::min(m + 1, 3 + static_cast<int>(rng() % 2));
  std::vector<Edge> edges;
  for (int v = 1; v < nodes; ++v)
    edges.push_back({static_cast<int>(rng() % static_cast<unsigned>(v)), v});
  while (static_cast<int>(edges.size()) < m) {
    int a = static_cast<int>(rng() % static_cast<unsigned>(nodes));
    int b = static_cast<int>(rng() % static_cast<unsigned>(nodes - 1));
    if (b >= a)
      ++b;
    edges.push_back({a, b});
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return {nodes, edges};
}

std::vector<BinaryPoint> nonempty_subset(std::mt19937 &rng, const std::vector<BinaryPoint> &pool,
                                         std::size_t max_size) {
  std::size_t size = 1 + rng() % std::min(max_size, pool.size());
  return testing::random_subset(rng, pool, size);
}

std::vector<LatticePoint> lattice_subset(std::mt19937 &rng, std::vector<LatticePoint> pool, std::size_t size) {
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(size, pool.size()));
  return pool;
}

Verdict exact_report(const VerificationReport &r, const std::string &label, Failures &failures) {
  if (!r.support_mismatches.empty())
    failures.add(label + ": " + std::to_string(r.support_mismatches.size()) + " support mismatches");
  if (!r.membership_failures.empty())
    failures.add(label + ": allowed point " + r.membership_failures.front() + " rejected");
  if (!r.excluded_failures.empty())
    failures.add(label + ": forbidden point " + r.excluded_failures.front() + " misclassified");
  if (!r.size.ok)
    failures.add(label + ": size " + r.size.detail);
  return {};
}

// ---------------------------------------------------------------- criteria

Verdict criterion_1() {
  std::mt19937 rng(101);
  Failures failures;
  std::size_t worst_faces = 0, worst_bound = 1;
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 1 + rep % 6;
    auto all = testing::all_binary(n);
    auto x = nonempty_subset(rng, all, all.size());
    auto family = separating_faces(x, n);
    const std::size_t bound = static_cast<std::size_t>(n) * x.size();
    if (family.faces.size() * worst_bound > worst_faces * bound) {
      worst_faces = family.faces.size();
      worst_bound = bound;
    }
    if (family.faces.size() > bound)
      failures.add("n=" + std::to_string(n) + " X=" + str(x) + ": " + std::to_string(family.faces.size()) +
                   " faces > " + std::to_string(bound));
    for (const auto &y : all) {
      const bool forbidden = std::find(x.begin(), x.end(), y) != x.end();
      const bool covered = std::any_of(family.faces.begin(), family.faces.end(),
                                       [&](const CubeFace &f) { return f.contains(y); });
      if (covered == forbidden)
        failures.add("n=" + std::to_string(n) + " X=" + str(x) + ": point " + y.str() +
                     (forbidden ? " covered" : " uncovered"));
    }
  }
  return failures.outcome("300 instances, n<=6; tightest |F|/(n|X|) = " + std::to_string(worst_faces) + "/" +
                          std::to_string(worst_bound));
}

Verdict criterion_2() {
  std::mt19937 rng(202);
  Failures failures;
  std::map<std::string, int> runs;
  auto check = [&](const std::string &oracle_name, const BinaryOracle &oracle,
                   const std::vector<BinaryPoint> &vertices) {
    const int n = oracle.dimension();
    auto x = testing::random_subset(rng, vertices, rng() % (vertices.size() + 1));
    Objective c = testing::random_objective(rng, n, -20, 20);
    if (rng() % 3 == 0) { // rational objectives too
      std::vector<Rational> q = c.coefficients();
      for (auto &v : q)
        v /= Rational(static_cast<long>(1 + rng() % 6));
      c = Objective(q);
    }
    auto got = solve_forbidden(oracle, x, c);
    auto want = testing::brute_min(testing::minus(vertices, x), c);
    ++runs[oracle_name];
    if (got.infeasible() != !want.has_value() || (want && got.optimum->value != *want) ||
        (want && std::find(x.begin(), x.end(), got.optimum->vertex) != x.end()))
      failures.add(oracle_name + " n=" + std::to_string(n) + " X=" + str(x) + " c=" + str(c));
  };
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rep % 5;
    check("cube", *cube_oracle(n), testing::all_binary(n));

    const int s = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
    std::vector<BinaryPoint> card;
    for (const auto &v : testing::all_binary(n))
      if (std::popcount(v.bits()) == s)
        card.push_back(v);
    check("cardinality", *cardinality_oracle(n, s), card);

    const int m = 2 + rep % 4;
    auto [nodes, edges] = random_graph(rng, m);
    std::vector<BinaryPoint> trees;
    for (const auto &v : testing::all_binary(m))
      if (spanning_tree(nodes, edges, v))
        trees.push_back(v);
    check("spanning-tree", *spanning_tree_oracle(nodes, edges), trees);

    BinaryFixture f = random_binary_hrep(rng, n);
    check("hrep", *hrep_binary_oracle(f.p), f.vertices);
  }
  std::string summary;
  for (const auto &[name, count] : runs)
    summary += (summary.empty() ? "" : ", ") + name + " " + std::to_string(count);
  return failures.outcome(summary + " instances, exact values");
}

Verdict criterion_3() {
  std::mt19937 rng(303);
  Failures failures;
  std::size_t max_rec = 0, max_int = 0, audited = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rep % 6;
    auto all = testing::all_binary(n);
    auto x = testing::random_subset(rng, all, rng() % std::min<std::size_t>(9, all.size()));
    const std::size_t bound_rec = static_cast<std::size_t>(n) * (x.size() + 4);
    const std::size_t bound_int = (x.size() + 1) * (4 * static_cast<std::size_t>(n) + 3);
    LinearSystem rec = recursive_formulation(x, n);
    LinearSystem itv = interval_formulation(x, n);
    const std::string label = "n=" + std::to_string(n) + " X=" + str(x);
    if (rec.inequality_count() > bound_rec)
      failures.add(label + ": recursive " + std::to_string(rec.inequality_count()) + " > " +
                   std::to_string(bound_rec));
    if (itv.row_count() > bound_int || itv.inequality_count() > bound_int)
      failures.add(label + ": interval " + std::to_string(itv.row_count()) + " > " + std::to_string(bound_int));
    // The audit `fvx verify` runs must agree.
    if (!size_audit(rec, x.size()).ok || !size_audit(itv, x.size()).ok)
      failures.add(label + ": size audit rejected a certificate");
    if (rep % 10 == 0) {
      nlohmann::ordered_json problem{{"kind", "binary"}, {"n", n}, {"polytope", {{"type", "cube"}}}};
      problem["forbidden"] = nlohmann::ordered_json::array();
      for (const auto &v : x)
        problem["forbidden"].push_back(v.str());
      const fs::path file = fs::temp_directory_path() / ("fvx-acceptance-3-" + std::to_string(::getpid()) + ".json");
      std::ofstream(file) << problem.dump();
      for (const char *method : {"recursive", "interval"}) {
        std::ostringstream sink;
        if (cli::cmd_verify(file.string(), std::string(method), 10, 0, sink) != cli::kOk)
          failures.add(label + ": cmd_verify rejected " + method);
        ++audited;
      }
      fs::remove(file);
    }
    max_rec = std::max(max_rec, rec.inequality_count() * 100 / bound_rec);
    max_int = std::max(max_int, itv.row_count() * 100 / bound_int);
  }
  return failures.outcome("200 instances, n<=6, |X|<=8; peak use of bound: recursive " + std::to_string(max_rec) +
                          "%, interval " + std::to_string(max_int) + "%; " +
                          std::to_string(audited) + " formulations re-audited by cmd_verify");
}

Verdict criterion_4() {
  std::mt19937 rng(404);
  Failures failures;
  std::map<std::string, int> runs;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rep % 4;
    const auto seed = static_cast<std::uint64_t>(rep);
    auto all = testing::all_binary(n);
    // Cube builders: X is a proper subset, |X| <= 4.
    auto x = testing::random_subset(rng, all, rng() % std::min<std::size_t>(5, all.size()));
    auto truth = testing::minus(all, x);
    const std::string label = " n=" + std::to_string(n) + " X=" + str(x);
    exact_report(verify_formulation(interval_formulation(x, n), truth, x, 50, seed), "interval" + label, failures);
    exact_report(verify_formulation(recursive_formulation(x, n), truth, x, 50, seed), "recursive" + label, failures);
    runs["interval"]++;
    runs["recursive"]++;

    BinaryFixture f = random_binary_hrep(rng, n);
    if (f.vertices.size() < 2)
      f = BinaryFixture{"cube", HPolytope::unit_cube(n), all};
    auto xf = testing::random_subset(rng, f.vertices, rng() % std::min<std::size_t>(5, f.vertices.size()));
    exact_report(verify_formulation(face_formulation(f.p, xf), testing::minus(f.vertices, xf), xf, 50, seed),
                 "faces " + f.name + " n=" + std::to_string(n) + " X=" + str(xf), failures);
    runs["faces"]++;

    auto xi = testing::random_subset(rng, f.vertices, rng() % std::min<std::size_t>(3, f.vertices.size()));
    exact_report(verify_formulation(facet_intersection_formulation(f.p, inequality_rows(f.p), xi),
                                    testing::minus(f.vertices, xi), xi, 50, seed),
                 "facet-intersection " + f.name + " n=" + std::to_string(n) + " X=" + str(xi), failures);
    runs["facet-intersection"]++;
  }
  std::string summary;
  for (const auto &[name, count] : runs)
    summary += (summary.empty() ? "" : ", ") + name + " " + std::to_string(count);
  return failures.outcome(summary + "; 50 directions + all membership/exclusion probes each");
}

Verdict criterion_5() {
  std::mt19937 rng(505);
  Failures failures;
  int instances = 0;
  while (instances < 100) {
    const int n = 2 + instances % 4;
    auto all = testing::all_binary(n);
    auto x1 = nonempty_subset(rng, all, 3);
    // X2 avoids X1 and every cube neighbor of X1.
    std::vector<BinaryPoint> pool;
    for (const auto &v : all) {
      bool ok = true;
      for (const auto &u : x1)
        ok = ok && hamming_distance(u, v) >= 2;
      if (ok)
        pool.push_back(v);
    }
    if (pool.empty())
      continue;
    auto x2 = nonempty_subset(rng, pool, 3);
    std::vector<BinaryPoint> x = x1;
    x.insert(x.end(), x2.begin(), x2.end());
    auto truth = testing::minus(all, x);
    if (truth.empty())
      continue;
    ++instances;
    auto build = [&](const std::vector<BinaryPoint> &part) {
      return rng() % 2 ? interval_formulation(part, n) : recursive_formulation(part, n);
    };
    LinearSystem both = intersect_systems({build(x1), build(x2)});
    for (int t = 0; t < 20; ++t) {
      Objective c = testing::random_objective(rng, n, -10, 10);
      auto lp = solve_lp(both, c.coefficients(), Sense::Maximize);
      Objective neg(std::vector<Rational>(c.coefficients().size()));
      std::vector<Rational> negated;
      for (const auto &v : c.coefficients())
        negated.push_back(-v);
      auto want = testing::brute_min(truth, Objective(negated));
      if (!lp.optimal() || lp.value != -*want)
        failures.add("n=" + std::to_string(n) + " X1=" + str(x1) + " X2=" + str(x2) + " c=" + str(c));
    }
  }
  return failures.outcome("100 instances x 20 directions, n in 2..5");
}

Verdict criterion_6() {
  std::mt19937 rng(606);
  Failures failures;
  std::size_t sets = 0;
  auto check = [&](int n, const std::vector<BinaryPoint> &x) {
    ++sets;
    HPolytope p = HPolytope::unit_cube(n);
    for (const auto &v : x)
      p.rows.push_back(no_good_cut(v));
    for (const auto &u : testing::all_binary(n)) {
      std::vector<Rational> point;
      for (int i = 1; i <= n; ++i)
        point.emplace_back(u[i] ? 1 : 0);
      const bool forbidden = std::find(x.begin(), x.end(), u) != x.end();
      if (p.contains(point) == forbidden)
        failures.add("n=" + std::to_string(n) + " X=" + str(x) + " point " + u.str());
    }
  };
  for (int n = 1; n <= 6; ++n) {
    auto all = testing::all_binary(n);
    if (n <= 4) {
      // Every hamming-independent subset.
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
        std::vector<BinaryPoint> x;
        for (std::size_t i = 0; i < all.size(); ++i)
          if ((mask >> i) & 1U)
            x.push_back(all[i]);
        if (hamming_independent(x))
          check(n, x);
      }
    } else {
      for (int rep = 0; rep < 400; ++rep) {
        std::vector<BinaryPoint> x;
        for (const auto &v : testing::random_subset(rng, all, all.size())) {
          x.push_back(v);
          if (!hamming_independent(x) || x.size() > 1 + rng() % 12)
            x.pop_back();
        }
        check(n, x);
      }
    }
  }
  return failures.outcome(std::to_string(sets) + " independent sets (all of them for n<=4), every binary point checked");
}

Verdict criterion_7() {
  std::mt19937 rng(707);
  Failures failures;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rep % 4;
    const int k = 1 + static_cast<int>(rng() % 10);
    Objective c = testing::random_objective(rng, n, -10, 10);
    std::unique_ptr<BinaryOracle> oracle;
    if (rep % 2 == 0)
      oracle = cube_oracle(n);
    else
      oracle = cardinality_oracle(n, static_cast<int>(rng() % static_cast<unsigned>(n + 1)));
    auto vertices = enumerate_vertices(*oracle);
    auto best = kbest(*oracle, c, k);

    std::vector<Rational> sorted;
    for (const auto &v : vertices)
      sorted.push_back(c.value(v));
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(k), vertices.size());
    std::vector<Rational> got;
    for (const auto &v : best.points)
      got.push_back(c.value(v));
    std::vector<Rational> got_sorted = got;
    std::sort(got_sorted.begin(), got_sorted.end());
    const std::string label = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " c=" + str(c);
    if (got_sorted != std::vector<Rational>(sorted.begin(), sorted.begin() + static_cast<long>(m)))
      failures.add(label + ": value multiset differs");
    std::set<std::uint64_t> distinct;
    for (const auto &v : best.points)
      distinct.insert(v.bits());
    if (distinct.size() != best.points.size())
      failures.add(label + ": repeated vertex");
    auto rest = testing::brute_min(testing::minus(vertices, best.points), c);
    if (rest && !got.empty() && *std::max_element(got.begin(), got.end()) > *rest)
      failures.add(label + ": dominance violated");
    if (best.exhausted != (static_cast<std::size_t>(k) >= vertices.size()))
      failures.add(label + ": exhausted flag wrong");
  }
  return failures.outcome("100 objectives, n<=4, k<=10, cube and cardinality oracles");
}

Verdict criterion_8() {
  std::mt19937 rng(808);
  Failures failures;
  int infeasible = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<std::unique_ptr<BinaryOracle>> owned;
    std::vector<std::vector<BinaryPoint>> vertices;
    BinaryAlldiffInstance inst;
    for (int i = 0; i < k; ++i) {
      switch (rng() % 3) {
      case 0:
        owned.push_back(cube_oracle(n));
        break;
      case 1:
        owned.push_back(cardinality_oracle(n, static_cast<int>(rng() % static_cast<unsigned>(n + 1))));
        break;
      default:
        if (n == 3)
          owned.push_back(spanning_tree_oracle(3, {{0, 1}, {1, 2}, {0, 2}}));
        else
          owned.push_back(cube_oracle(n));
      }
      vertices.push_back(enumerate_vertices(*owned.back()));
      inst.oracles.push_back(owned.back().get());
      inst.objectives.push_back(testing::random_objective(rng, n, -8, 8));
    }
    auto got = solve_alldiff(inst);
    auto want = testing::brute_alldiff(vertices, inst.objectives);
    const std::string label = "n=" + std::to_string(n) + " k=" + std::to_string(k);
    if (got.has_value() != want.has_value()) {
      failures.add(label + ": feasibility disagrees");
      continue;
    }
    if (!got) {
      ++infeasible;
      continue;
    }
    if (got->total != *want)
      failures.add(label + ": total " + got->total.str() + " vs " + want->str());
    for (std::size_t i = 0; i < got->vertices.size(); ++i) {
      if (std::find(vertices[i].begin(), vertices[i].end(), got->vertices[i]) == vertices[i].end())
        failures.add(label + ": slot vertex not in its polytope");
      for (std::size_t j = i + 1; j < got->vertices.size(); ++j)
        if (got->vertices[i] == got->vertices[j])
          failures.add(label + ": repeated vertex");
    }
  }
  return failures.outcome("100 instances, k<=3, n<=3, " + std::to_string(infeasible) + " infeasible");
}

HPolytope random_box_integral(std::mt19937 &rng, int n, int r, std::string &name) {
  HPolytope p{n, {}};
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> a(static_cast<std::size_t>(n), Rational(0));
    a[static_cast<std::size_t>(i)] = 1;
    p.rows.push_back(hrow(a, Relation::GreaterEqual, 0));
    p.rows.push_back(hrow(a, Relation::LessEqual, r - 1));
  }
  switch (rng() % 3) {
  case 0:
    name = "box";
    break;
  case 1: {
    int s = static_cast<int>(rng() % static_cast<unsigned>(n * (r - 1) + 1));
    name = "box+sum<=" + std::to_string(s);
    p.rows.push_back(hrow(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)), Relation::LessEqual, s));
    break;
  }
  default:
    name = "box+order";
    if (n >= 2) {
      std::vector<Rational> a(static_cast<std::size_t>(n), Rational(0));
      a[0] = 1;
      a[1] = -1;
      p.rows.push_back(hrow(a, Relation::LessEqual, 0));
    }
  }
  return p;
}

Verdict criterion_9() {
  std::mt19937 rng(909);
  Failures failures;
  std::size_t max_boxes_ratio = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + rep % 4;
    const int r = 1 + static_cast<int>(rng() % 4);
    LatticeBox ambient = testing::origin_box(n, r);
    auto all = lattice_points(ambient);
    auto x = lattice_subset(rng, all, 1 + rng() % all.size());
    auto family = box_decomposition(x, ambient);
    const std::string label = "r=" + std::to_string(r) + " n=" + std::to_string(n) + " |X|=" + std::to_string(x.size());
    if (family.boxes.size() > 2 * static_cast<std::size_t>(n) * x.size())
      failures.add(label + ": too many boxes");
    max_boxes_ratio = std::max(max_boxes_ratio, family.boxes.size() * 100 / (2 * static_cast<std::size_t>(n) * x.size()));
    std::set<std::vector<Integer>> covered;
    bool disjoint = true;
    for (const auto &b : family.boxes)
      for (const auto &p : lattice_points(b))
        disjoint = covered.insert(p.coords).second && disjoint;
    std::set<std::vector<Integer>> expected;
    for (const auto &p : testing::minus(all, x))
      expected.insert(p.coords);
    if (!disjoint || covered != expected)
      failures.add(label + ": not a partition of the complement");

    Objective c = testing::random_objective(rng, n, -9, 9);
    auto oracle = lattice_box_oracle(ambient.lower(), ambient.upper());
    auto got = solve_forbidden_integral(*oracle, x, ambient, c);
    auto want = testing::brute_min(testing::minus(all, x), c);
    if (got.infeasible() != !want.has_value() || (want && got.optimum->value != *want))
      failures.add(label + ": solver disagrees with brute force");
  }
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + rep % 3;
    const int r = 2 + static_cast<int>(rng() % 2);
    std::string name;
    HPolytope p = random_box_integral(rng, n, r, name);
    LatticeBox ambient = testing::origin_box(n, r);
    std::vector<LatticePoint> points;
    for (const auto &q : lattice_points(ambient)) {
      std::vector<Rational> v(q.coords.begin(), q.coords.end());
      if (p.contains(v))
        points.push_back(q);
    }
    auto x = lattice_subset(rng, points, rng() % std::min<std::size_t>(5, points.size()));
    auto truth = testing::minus(points, x);
    exact_report(verify_formulation(forbI_formulation(p, x, ambient), truth, x, 50, static_cast<std::uint64_t>(rep)),
                 "forbI " + name + " n=" + std::to_string(n) + " r=" + std::to_string(r), failures);
  }
  return failures.outcome("200 decompositions (peak " + std::to_string(max_boxes_ratio) +
                          "% of 2n|X|) + 200 solves + 50 forbI verifications");
}

Verdict criterion_10() {
  Failures failures;
  std::mt19937 rng(1010);
  int fixtures = 0;
  while (fixtures < 20) {
    const int n = 2 + fixtures % 3;
    HPolytope p = HPolytope::unit_cube(n);
    std::string kind;
    if (fixtures % 2 == 0) {
      kind = "interval";
      for (int rows = 0; rows < 2; ++rows) {
        int a = static_cast<int>(rng() % static_cast<unsigned>(n));
        int b = a + static_cast<int>(rng() % static_cast<unsigned>(n - a));
        std::vector<Rational> coeffs(static_cast<std::size_t>(n), Rational(0));
        for (int i = a; i <= b; ++i)
          coeffs[static_cast<std::size_t>(i)] = 1;
        p.rows.push_back(hrow(coeffs, Relation::LessEqual, static_cast<long>(rng() % static_cast<unsigned>(b - a + 1))));
      }
    } else {
      kind = "network";
      for (int rows = 0; rows < 2; ++rows) {
        int u = static_cast<int>(rng() % static_cast<unsigned>(n));
        int v = static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        if (v >= u)
          ++v;
        std::vector<Rational> coeffs(static_cast<std::size_t>(n), Rational(0));
        coeffs[static_cast<std::size_t>(u)] = 1;
        coeffs[static_cast<std::size_t>(v)] = -1;
        p.rows.push_back(hrow(coeffs, Relation::LessEqual, 0));
      }
    }
    auto before = testing::binary_vertices(p);
    const std::size_t row = rng() % p.rows.size();
    std::vector<BinaryPoint> on_face;
    for (const auto &v : before) {
      std::vector<Rational> point;
      for (int i = 1; i <= n; ++i)
        point.emplace_back(v[i] ? 1 : 0);
      if (p.rows[row].tight_at(point))
        on_face.push_back(v);
    }
    if (on_face.empty() || on_face.size() == before.size())
      continue; // the face must be proper and nonempty
    ++fixtures;
    HPolytope q = remove_facet_tu(p, row);
    std::vector<BinaryPoint> after;
    try {
      after = testing::binary_vertices(q);
    } catch (const std::exception &) {
      failures.add(kind + " n=" + std::to_string(n) + ": fractional vertex after removal");
      continue;
    }
    if (after != testing::minus(before, on_face))
      failures.add(kind + " n=" + std::to_string(n) + " row " + std::to_string(row + 1) + ": vertex sets differ");
  }
  return failures.outcome("20 fixtures (interval and network matrices), vertex sets compared exactly");
}

std::string lp_fingerprint(const LpResult &r) {
  std::string out = to_string(r.status) + ":" + r.value.str() + ":";
  for (const auto &v : r.point)
    out += v.str() + ",";
  return out;
}

Verdict criterion_11() {
  Failures failures;
  auto run_all = [&](bool check) {
    std::mt19937 rng(1111);
    std::string transcript;
    for (int rep = 0; rep < 100; ++rep) {
      const int n = 1 + rep % 4;
      HPolytope p{n, {}};
      std::uniform_int_distribution<int> coef(-4, 4);
      for (int i = 0; i < n; ++i) {
        std::vector<Rational> a(static_cast<std::size_t>(n), Rational(0));
        a[static_cast<std::size_t>(i)] = 1;
        p.rows.push_back(hrow(a, Relation::GreaterEqual, -3));
        p.rows.push_back(hrow(a, Relation::LessEqual, 3));
      }
      const int extra = 1 + static_cast<int>(rng() % 4);
      for (int e = 0; e < extra; ++e) {
        HRow row;
        for (int i = 0; i < n; ++i)
          row.a.emplace_back(coef(rng));
        row.rel = static_cast<Relation>(rng() % 3 == 0 ? 1 : (rng() % 2 ? 0 : 2));
        row.b = Rational(coef(rng), 1 + static_cast<long>(rng() % 3));
        p.rows.push_back(row);
      }
      std::vector<Rational> c;
      for (int i = 0; i < n; ++i)
        c.emplace_back(coef(rng));
      LinearSystem sys = LinearSystem::from_hpolytope(p);
      auto verts = testing::hpolytope_vertices(p);
      for (Sense sense : {Sense::Minimize, Sense::Maximize}) {
        auto lp = solve_lp(sys, c, sense);
        transcript += lp_fingerprint(lp) + "\n";
        if (!check)
          continue;
        std::vector<Rational> oriented = c;
        if (sense == Sense::Maximize)
          for (auto &v : oriented)
            v = -v;
        auto want = testing::brute_min(verts, oriented);
        if (want && sense == Sense::Maximize)
          want = -*want;
        const std::string label = "LP #" + std::to_string(rep);
        if (lp.optimal() != want.has_value())
          failures.add(label + ": status " + to_string(lp.status) + " vs " + (want ? "optimal" : "infeasible"));
        else if (want && lp.value != *want)
          failures.add(label + ": value " + lp.value.str() + " vs " + want->str());
        else if (want && !p.contains(std::vector<Rational>(lp.point.begin(), lp.point.begin() + n)))
          failures.add(label + ": point violates a row");
      }
    }
    return transcript;
  };
  const std::string first = run_all(true);
  const std::string second = run_all(false);
  if (first != second)
    failures.add("two runs differ");
  return failures.outcome("100 LPs x {min,max} against vertex enumeration; transcripts byte-identical (" +
                          std::to_string(first.size()) + " bytes)");
}

// ---------------------------------------------------------------- CLI

int run_cli(const std::string &args, const fs::path &out) {
  const std::string cmd = "\"" + cli_path + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1)
    return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict criterion_12() {
  Failures failures;
  if (cli_path.empty())
    return {false, "no --cli path given"};
  fs::path dir = fs::temp_directory_path() / ("fvx-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::mt19937 rng(1212);
  int trips = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rep % 4;
    auto all = testing::all_binary(n);
    nlohmann::ordered_json problem;
    problem["kind"] = "binary";
    problem["n"] = n;
    std::vector<std::string> methods;
    std::size_t max_x = 4;
    if (rep % 2 == 0) {
      problem["polytope"] = {{"type", "cube"}};
      methods = {"interval", "recursive", "faces", "facet-intersection"};
    } else {
      BinaryFixture f = random_binary_hrep(rng, n);
      if (f.vertices.size() < 2)
        f = BinaryFixture{"cube", HPolytope::unit_cube(n), all};
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto &r : f.p.rows) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto &v : r.a)
          a.push_back(v.str());
        rows.push_back({{"a", a}, {"rel", to_string(r.rel)}, {"b", r.b.str()}});
      }
      problem["polytope"] = {{"type", "hrep"}, {"rows", rows}};
      methods = {"faces", "facet-intersection"};
      all = f.vertices;
    }
    auto x = testing::random_subset(rng, all, rng() % std::min<std::size_t>(max_x + 1, all.size()));
    for (const auto &method : methods) {
      auto xm = x;
      if (method == "facet-intersection" && xm.size() > 2)
        xm.resize(2);
      nlohmann::ordered_json forbidden = nlohmann::ordered_json::array();
      for (const auto &v : xm)
        forbidden.push_back(v.str());
      problem["forbidden"] = forbidden;
      const fs::path file = dir / "problem.json", lp = dir / "out.lp", log = dir / "log.txt";
      std::ofstream(file) << problem.dump();
      ++trips;
      int code = run_cli("compile \"" + file.string() + "\" --method " + method + " -o \"" + lp.string() + "\"", log);
      if (code != 0) {
        failures.add(method + " compile exit " + std::to_string(code) + ": " + slurp(log));
        continue;
      }
      code = run_cli("verify \"" + lp.string() + "\" --seed " + std::to_string(rep), log);
      if (code != 0)
        failures.add(method + " n=" + std::to_string(n) + " X=" + str(xm) + " verify exit " + std::to_string(code));
    }
  }
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 1 + rep % 3;
    const int r = 2 + static_cast<int>(rng() % 3);
    std::string name;
    HPolytope p = random_box_integral(rng, n, r, name);
    LatticeBox ambient = testing::origin_box(n, r);
    std::vector<LatticePoint> points;
    for (const auto &q : lattice_points(ambient))
      if (p.contains(std::vector<Rational>(q.coords.begin(), q.coords.end())))
        points.push_back(q);
    nlohmann::ordered_json problem;
    problem["kind"] = "integral";
    problem["n"] = n;
    auto coords = [](const LatticePoint &q) {
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto &v : q.coords)
        out.push_back(v.get_si());
      return out;
    };
    if (rep % 2 == 0) {
      problem["polytope"] = {{"type", "lattice-box"}, {"l", coords(ambient.lower())}, {"u", coords(ambient.upper())}};
      points = lattice_points(ambient);
    } else {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto &row : p.rows) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto &v : row.a)
          a.push_back(v.str());
        rows.push_back({{"a", a}, {"rel", to_string(row.rel)}, {"b", row.b.str()}});
      }
      problem["polytope"] = {{"type", "hrep"}, {"rows", rows}};
      problem["ambient"] = {{"l", coords(ambient.lower())}, {"u", coords(ambient.upper())}};
    }
    nlohmann::ordered_json forbidden = nlohmann::ordered_json::array();
    for (const auto &q : lattice_subset(rng, points, rng() % std::min<std::size_t>(5, points.size())))
      forbidden.push_back(coords(q));
    problem["forbidden"] = forbidden;
    const fs::path file = dir / "problem.json", lp = dir / "out.lp", log = dir / "log.txt";
    std::ofstream(file) << problem.dump();
    ++trips;
    int code = run_cli("compile \"" + file.string() + "\" --method boxes -o \"" + lp.string() + "\"", log);
    if (code != 0) {
      failures.add("boxes compile exit " + std::to_string(code) + ": " + slurp(log));
      continue;
    }
    code = run_cli("verify \"" + lp.string() + "\" --seed " + std::to_string(rep), log);
    if (code != 0)
      failures.add("boxes " + name + " n=" + std::to_string(n) + " verify exit " + std::to_string(code));
  }
  const fs::path corrupted = fs::path(fixtures_dir) / "corrupted_recursive.lp";
  const fs::path log = dir / "log.txt";
  int code = run_cli("verify \"" + corrupted.string() + "\"", log);
  if (code != 3)
    failures.add("corrupted fixture exited " + std::to_string(code) + ", expected 3");
  const fs::path again = dir / "again.txt";
  run_cli("verify \"" + corrupted.string() + "\"", again);
  if (slurp(log) != slurp(again))
    failures.add("repeated verify output differs");
  fs::remove_all(dir);
  return failures.outcome(std::to_string(trips) + " compile->verify round trips (all five methods) exit 0; corrupted fixture exits " +
                          std::to_string(code));
}

} // namespace

int main(int argc, char **argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc)
      cli_path = argv[++i];
    else if (arg == "--fixtures" && i + 1 < argc)
      fixtures_dir = argv[++i];
    else
      only.insert(std::atoi(arg.c_str()));
  }
  const std::vector<Criterion> criteria{
      {1, "separating family size and coverage", 10, criterion_1},
      {2, "forbidden-vertex solver vs brute force", 60, criterion_2},
      {3, "size certificates", 0, criterion_3},
      {4, "projection exactness of every builder", 300, criterion_4},
      {5, "intersection identity on the cube", 0, criterion_5},
      {6, "no-good cuts for independent sets", 0, criterion_6},
      {7, "k-best", 0, criterion_7},
      {8, "all-different", 0, criterion_8},
      {9, "box decomposition, integral solver, forbI", 0, criterion_9},
      {10, "TU facet removal", 0, criterion_10},
      {11, "exact LP soundness and determinism", 0, criterion_11},
      {12, "CLI round trip", 0, criterion_12},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    if (!only.empty() && !only.count(c.id))
      continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    char timing[64];
    if (c.limit_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.1fs of %.0fs", seconds, c.limit_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.1fs", seconds);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " [" << timing << "]: " << o.detail
              << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
