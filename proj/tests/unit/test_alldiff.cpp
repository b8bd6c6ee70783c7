#include "support/brute.hpp"

#include "fvx/alldiff.hpp"

#include <doctest.h>

#include <random>

using namespace fvx;

namespace {

Objective obj(std::vector<Rational> c) { return Objective(std::move(c)); }
BinaryPoint bp(const char *s) { return BinaryPoint::parse(s); }

} // namespace

TEST_CASE("candidate graph") {
  auto cube1 = cube_oracle(1);
  auto g = build_candidates(BinaryAlldiffInstance{{cube1.get(), cube1.get()}, {obj({3}), obj({-1})}});
  CHECK(g.points.size() == 2);
  std::size_t edges = 0;
  for (const auto &row : g.weight)
    for (const auto &w : row)
      edges += w.has_value();
  CHECK(edges == 4);

  auto cube2 = cube_oracle(2);
  g = build_candidates(BinaryAlldiffInstance{{cube2.get(), cube2.get()}, {obj({1, 2}), obj({-1, -1})}});
  CHECK(g.slot_sets[0] == std::vector<BinaryPoint>{bp("00"), bp("10")});
  CHECK(g.slot_sets[1] == std::vector<BinaryPoint>{bp("11"), bp("01")});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < g.points.size(); ++j)
      if (g.weight[i][j])
        CHECK(*g.weight[i][j] == (i == 0 ? obj({1, 2}) : obj({-1, -1})).value(g.points[j]));

  g = build_candidates(BinaryAlldiffInstance{{cube1.get(), cube1.get(), cube1.get()}, {obj({1}), obj({1}), obj({1})}});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(g.slot_sets[i].size() == 2);
    CHECK(g.exhausted[i]);
  }
}

TEST_CASE("matching examples") {
  auto cube1 = cube_oracle(1);
  auto sol = solve_alldiff(BinaryAlldiffInstance{{cube1.get(), cube1.get()}, {obj({1}), obj({2})}});
  REQUIRE(sol);
  CHECK(sol->vertices == std::vector<BinaryPoint>{bp("1"), bp("0")});
  CHECK(sol->total == Rational(1));

  CHECK_FALSE(solve_alldiff(BinaryAlldiffInstance{{cube1.get(), cube1.get(), cube1.get()},
                                                  {obj({1}), obj({1}), obj({1})}}));

  auto cube3 = cube_oracle(3);
  sol = solve_alldiff(BinaryAlldiffInstance{{cube3.get()}, {obj({2, -1, 3})}});
  REQUIRE(sol);
  CHECK(sol->total == Rational(-1));
}

TEST_CASE("alldiff examples") {
  auto cube2 = cube_oracle(2);
  auto sol = solve_alldiff(BinaryAlldiffInstance{{cube2.get(), cube2.get()}, {obj({1, 1}), obj({1, 1})}});
  REQUIRE(sol);
  CHECK(sol->total == Rational(1));
  CHECK(sol->vertices[0] != sol->vertices[1]);

  auto card = cardinality_oracle(2, 1);
  sol = solve_alldiff(BinaryAlldiffInstance{{card.get(), card.get()}, {obj({1, 5}), obj({1, 5})}});
  REQUIRE(sol);
  CHECK(sol->total == Rational(6));

  std::vector<const BinaryOracle *> five(5, cube2.get());
  CHECK_FALSE(solve_alldiff(BinaryAlldiffInstance{five, std::vector<Objective>(5, obj({0, 0}))}));
}

TEST_CASE("matching handles negative weights and missing edges") {
  using W = std::vector<std::vector<std::optional<Rational>>>;
  W w{{Rational(-5), std::nullopt, Rational(2)}, {Rational(-4), Rational(-1), std::nullopt}};
  auto m = min_weight_R_matching(w);
  REQUIRE(m);
  CHECK(m->total == Rational(-5 + -1));
  W blocked{{Rational(1), std::nullopt}, {Rational(1), std::nullopt}};
  CHECK_FALSE(min_weight_R_matching(blocked));
}

TEST_CASE("alldiff agrees with brute force and is permutation invariant") {
  std::mt19937 rng(10);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<std::unique_ptr<BinaryOracle>> owned;
    std::vector<std::vector<BinaryPoint>> verts;
    BinaryAlldiffInstance inst;
    for (int i = 0; i < k; ++i) {
      if (rng() % 2) {
        owned.push_back(cube_oracle(n));
      } else {
        int s = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
        owned.push_back(cardinality_oracle(n, s));
      }
      verts.push_back(enumerate_vertices(*owned.back()));
      inst.oracles.push_back(owned.back().get());
      inst.objectives.push_back(testing::random_objective(rng, n, -5, 5));
    }
    auto sol = solve_alldiff(inst);
    auto want = testing::brute_alldiff(verts, inst.objectives);
    REQUIRE(sol.has_value() == want.has_value());
    if (!sol)
      continue;
    CHECK(sol->total == *want);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        CHECK(sol->vertices[static_cast<std::size_t>(i)] != sol->vertices[static_cast<std::size_t>(j)]);
    BinaryAlldiffInstance reversed{{inst.oracles.rbegin(), inst.oracles.rend()},
                                   {inst.objectives.rbegin(), inst.objectives.rend()}};
    auto rev = solve_alldiff(reversed);
    REQUIRE(rev);
    CHECK(rev->total == sol->total);
  }
}

TEST_CASE("integral alldiff") {
  auto line = lattice_box_oracle(LatticePoint{{0}}, LatticePoint{{2}});
  IntegralAlldiffInstance inst{{line.get(), line.get(), line.get()},
                               {obj({1}), obj({1}), obj({-1})},
                               LatticeBox(LatticePoint{{0}}, LatticePoint{{2}})};
  auto sol = solve_alldiff(inst);
  REQUIRE(sol);
  CHECK(sol->total == Rational(0 + 1 - 2));
  inst.oracles.push_back(line.get());
  inst.objectives.push_back(obj({0}));
  CHECK_FALSE(solve_alldiff(inst));
}
