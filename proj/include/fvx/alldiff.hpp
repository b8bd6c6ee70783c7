#pragma once

#include "fvx/integral.hpp"
#include "fvx/oracles.hpp"
#include "fvx/separation.hpp"

#include <optional>
#include <vector>

namespace fvx {

struct BinaryAlldiffInstance {
  std::vector<const BinaryOracle *> oracles;
  std::vector<Objective> objectives;
};

struct IntegralAlldiffInstance {
  std::vector<const IntegralOracle *> oracles;
  std::vector<Objective> objectives;
  LatticeBox ambient;
};

/// Bipartite graph between the pooled k-best points S and the slots.
/// weight[i][j] is c_i . S[j] when S[j] is among slot i's k best, else empty.
template <typename Point> struct CandidateGraph {
  std::vector<Point> points;
  std::vector<std::vector<Point>> slot_sets;
  std::vector<bool> exhausted;
  std::vector<std::vector<std::optional<Rational>>> weight;
};

struct Matching {
  std::vector<std::size_t> assignment; // slot -> column
  Rational total;
};

/// Minimum-weight matching covering every row (slot) of `weight`; empty when
/// no such matching exists. Shortest augmenting paths with exact potentials.
std::optional<Matching> min_weight_R_matching(
    const std::vector<std::vector<std::optional<Rational>>> &weight);

template <typename Point> struct AlldiffSolution {
  std::vector<Point> vertices; // one per slot
  Rational total;
};

CandidateGraph<BinaryPoint> build_candidates(const BinaryAlldiffInstance &instance);
CandidateGraph<LatticePoint> build_candidates(const IntegralAlldiffInstance &instance);

std::optional<AlldiffSolution<BinaryPoint>> solve_alldiff(const BinaryAlldiffInstance &instance);
std::optional<AlldiffSolution<LatticePoint>> solve_alldiff(const IntegralAlldiffInstance &instance);

} // namespace fvx
