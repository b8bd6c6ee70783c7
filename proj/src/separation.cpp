#include "fvx/separation.hpp"

#include "fvx/errors.hpp"

#include <algorithm>

namespace fvx {

namespace {

void check_points(std::span<const BinaryPoint> points, int n) {
  if (n < 1 || n > kMaxBinaryDimension)
    throw DomainError("dimension outside 1..64");
  for (const auto &p : points)
    if (p.dimension() != n)
      throw DomainError("forbidden point " + p.str() + " has dimension " +
                        std::to_string(p.dimension()) + ", expected " + std::to_string(n));
}

// Lexicographic order on length-`len` prefixes: coordinate 1 first.
bool prefix_lex_less(std::uint64_t a, std::uint64_t b) {
  std::uint64_t diff = a ^ b;
  if (diff == 0)
    return false;
  return (a & (diff & (~diff + 1))) == 0;
}

} // namespace

PrefixSets prefix_sets(std::span<const BinaryPoint> forbidden, int n) {
  check_points(forbidden, n);
  PrefixSets out;
  out.n = n;
  std::vector<std::uint64_t> previous{0}; // X^0 = {empty prefix}
  for (int i = 1; i <= n; ++i) {
    const std::uint64_t mask = low_mask(i);
    std::set<std::uint64_t> proj;
    for (const auto &p : forbidden)
      proj.insert(p.bits() & mask);
    PrefixLevel level;
    level.projection.assign(proj.begin(), proj.end());
    for (std::uint64_t prefix : previous)
      for (std::uint64_t bit = 0; bit < 2; ++bit) {
        std::uint64_t extended = prefix | (bit << (i - 1));
        if (!proj.count(extended))
          level.missing.push_back(extended);
      }
    std::sort(level.projection.begin(), level.projection.end(), prefix_lex_less);
    std::sort(level.missing.begin(), level.missing.end(), prefix_lex_less);
    previous = level.projection;
    out.levels.push_back(std::move(level));
  }
  return out;
}

SeparatingFamily separating_faces(std::span<const BinaryPoint> forbidden, int n) {
  SeparatingFamily family;
  family.n = n;
  family.source.assign(forbidden.begin(), forbidden.end());
  if (forbidden.empty()) {
    check_points(forbidden, n);
    family.faces.emplace_back(n);
    return family;
  }
  PrefixSets sets = prefix_sets(forbidden, n);
  for (int i = 1; i <= n; ++i)
    for (std::uint64_t prefix : sets.levels[static_cast<std::size_t>(i - 1)].missing)
      family.faces.emplace_back(n, low_mask(i), prefix);
  return family;
}

BinaryOutcome solve_forbidden(const BinaryOracle &oracle, std::span<const BinaryPoint> forbidden,
                              const Objective &c) {
  const int n = oracle.dimension();
  SeparatingFamily family = separating_faces(forbidden, n);
  BinaryOutcome best;
  for (const auto &face : family.faces) {
    BinaryOutcome candidate = oracle.minimize(c, face);
    if (!candidate.infeasible() && !face.contains(candidate.optimum->vertex))
      throw DomainError("oracle returned " + candidate.optimum->vertex.str() +
                        " outside the queried face");
    keep_better(best, std::move(candidate), BinaryLexLess{});
  }
  return best;
}

KBestResult<BinaryPoint> kbest(const BinaryOracle &oracle, const Objective &c, int k) {
  if (k < 1)
    throw DomainError("k must be positive");
  KBestResult<BinaryPoint> result;
  // One extra solve past k decides whether the vertex set is exhausted.
  for (int i = 0; i <= k; ++i) {
    BinaryOutcome next = solve_forbidden(oracle, result.points, c);
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

} // namespace fvx
