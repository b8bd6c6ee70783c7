#include "fvx/alldiff.hpp"

#include "fvx/errors.hpp"

#include <algorithm>

namespace fvx {

namespace {

template <typename Instance> void check_instance(const Instance &instance) {
  if (instance.oracles.empty())
    throw DomainError("all-different needs at least one slot");
  if (instance.oracles.size() != instance.objectives.size())
    throw DomainError("slot count differs from objective count");
  const int n = instance.oracles.front()->dimension();
  for (std::size_t i = 0; i < instance.oracles.size(); ++i) {
    if (instance.oracles[i]->dimension() != n)
      throw DomainError("slot oracles differ in dimension");
    if (instance.objectives[i].dimension() != n)
      throw DomainError("objective " + std::to_string(i + 1) + " has the wrong dimension");
  }
}

template <typename Point, typename Less, typename KBest>
CandidateGraph<Point> assemble(std::size_t slots, KBest &&run, Less less,
                               const std::vector<Objective> &objectives) {
  CandidateGraph<Point> graph;
  for (std::size_t i = 0; i < slots; ++i) {
    KBestResult<Point> best = run(i, static_cast<int>(slots));
    graph.slot_sets.push_back(std::move(best.points));
    graph.exhausted.push_back(best.exhausted);
  }
  for (const auto &set : graph.slot_sets)
    graph.points.insert(graph.points.end(), set.begin(), set.end());
  std::sort(graph.points.begin(), graph.points.end(), less);
  graph.points.erase(std::unique(graph.points.begin(), graph.points.end()), graph.points.end());
  graph.weight.assign(slots, std::vector<std::optional<Rational>>(graph.points.size()));
  for (std::size_t i = 0; i < slots; ++i)
    for (const auto &v : graph.slot_sets[i]) {
      auto at = std::lower_bound(graph.points.begin(), graph.points.end(), v, less);
      graph.weight[i][static_cast<std::size_t>(at - graph.points.begin())] = objectives[i].value(v);
    }
  return graph;
}

template <typename Point>
std::optional<AlldiffSolution<Point>> finish(const CandidateGraph<Point> &graph) {
  auto matching = min_weight_R_matching(graph.weight);
  if (!matching)
    return std::nullopt;
  AlldiffSolution<Point> out;
  for (std::size_t column : matching->assignment)
    out.vertices.push_back(graph.points[column]);
  out.total = matching->total;
  return out;
}

} // namespace

std::optional<Matching> min_weight_R_matching(
    const std::vector<std::vector<std::optional<Rational>>> &weight) {
  const std::size_t rows = weight.size();
  const std::size_t cols = rows == 0 ? 0 : weight.front().size();
  if (rows > cols)
    return std::nullopt;
  // Hungarian method, 1-based with column 0 as the virtual root.
  std::vector<Rational> u(rows + 1), v(cols + 1);
  std::vector<std::size_t> match(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(cols + 1);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      std::optional<Rational> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j])
          continue;
        if (const auto &w = weight[i0 - 1][j - 1]) {
          Rational cur = *w - u[i0] - v[j];
          if (!minv[j] || cur < *minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] && (!delta || *minv[j] < *delta)) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (!delta)
        return std::nullopt;
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[match[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Matching out;
  out.assignment.assign(rows, 0);
  for (std::size_t j = 1; j <= cols; ++j)
    if (match[j] != 0) {
      out.assignment[match[j] - 1] = j - 1;
      out.total += *weight[match[j] - 1][j - 1];
    }
  return out;
}

CandidateGraph<BinaryPoint> build_candidates(const BinaryAlldiffInstance &instance) {
  check_instance(instance);
  return assemble<BinaryPoint>(
      instance.oracles.size(),
      [&](std::size_t i, int k) { return kbest(*instance.oracles[i], instance.objectives[i], k); },
      BinaryLexLess{}, instance.objectives);
}

CandidateGraph<LatticePoint> build_candidates(const IntegralAlldiffInstance &instance) {
  check_instance(instance);
  if (instance.ambient.dimension() != instance.oracles.front()->dimension())
    throw DomainError("ambient box has the wrong dimension");
  return assemble<LatticePoint>(
      instance.oracles.size(),
      [&](std::size_t i, int k) {
        return kbest_integral(*instance.oracles[i], instance.ambient, instance.objectives[i], k);
      },
      LatticeLexLess{}, instance.objectives);
}

std::optional<AlldiffSolution<BinaryPoint>> solve_alldiff(const BinaryAlldiffInstance &instance) {
  return finish(build_candidates(instance));
}

std::optional<AlldiffSolution<LatticePoint>> solve_alldiff(const IntegralAlldiffInstance &instance) {
  return finish(build_candidates(instance));
}

} // namespace fvx
