#include "fvx/verify.hpp"

#include "fvx/errors.hpp"
#include "fvx/exact_lp.hpp"

#include <map>
#include <random>
#include <set>
#include <type_traits>

namespace fvx {

namespace {

struct Probe {
  std::vector<Rational> coords;
  std::string label;
};

Probe to_probe(const BinaryPoint &p) {
  Probe out{{}, p.str()};
  for (int i = 1; i <= p.dimension(); ++i)
    out.coords.emplace_back(p[i] ? 1 : 0);
  return out;
}

Probe to_probe(const LatticePoint &p) {
  Probe out{{}, p.str()};
  for (const auto &c : p.coords)
    out.coords.emplace_back(c);
  return out;
}

// Whether p is a convex combination of the truth points, by an LP over the
// multipliers alone.
bool in_hull(const std::vector<Probe> &truth, const Probe &p) {
  if (truth.empty())
    return false;
  const int n = static_cast<int>(p.coords.size());
  LinearSystem hull(n);
  for (int i = 0; i < n; ++i)
    hull.variables()[static_cast<std::size_t>(i)].lower = hull.variables()[static_cast<std::size_t>(i)].upper =
        p.coords[static_cast<std::size_t>(i)];
  std::vector<Constraint> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)].rel = Relation::Equal;
    rows[static_cast<std::size_t>(i)].terms.push_back({static_cast<std::size_t>(i), Rational(-1)});
  }
  Constraint total{{}, Relation::Equal, Rational(1)};
  for (std::size_t t = 0; t < truth.size(); ++t) {
    const std::size_t lam = hull.add_variable("l" + std::to_string(t + 1), Rational(0));
    total.terms.push_back({lam, Rational(1)});
    for (int i = 0; i < n; ++i)
      if (truth[t].coords[static_cast<std::size_t>(i)].sign() != 0)
        rows[static_cast<std::size_t>(i)].terms.push_back({lam, truth[t].coords[static_cast<std::size_t>(i)]});
  }
  for (auto &r : rows)
    hull.add_constraint(std::move(r));
  hull.add_constraint(std::move(total));
  return feasible(hull);
}

bool admits(const LinearSystem &system, const Probe &p) {
  std::map<int, Rational> fixings;
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    fixings.emplace(static_cast<int>(i + 1), p.coords[i]);
  return feasible_with_fixings(system, fixings);
}

// `hull_check` is false for 0-1 points: a binary point outside the truth set
// is never a convex combination of other binary points.
VerificationReport run(const LinearSystem &system, const std::vector<Probe> &truth,
                       const std::vector<Probe> &forbidden, std::size_t forbidden_count,
                       std::size_t trials, std::uint64_t seed, bool hull_check) {
  if (truth.size() > kMaxGroundTruth)
    throw GuardExceeded("ground truth has " + std::to_string(truth.size()) + " points, limit " +
                        std::to_string(kMaxGroundTruth));
  const int n = system.original();
  for (const auto &p : truth)
    if (static_cast<int>(p.coords.size()) != n)
      throw DomainError("truth point " + p.label + " has the wrong dimension");
  for (const auto &p : forbidden)
    if (static_cast<int>(p.coords.size()) != n)
      throw DomainError("forbidden point " + p.label + " has the wrong dimension");

  VerificationReport report;
  report.trials = trials;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-100, 100);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Rational> c;
    for (int i = 0; i < n; ++i)
      c.emplace_back(coeff(rng));
    std::optional<Rational> brute;
    for (const auto &p : truth) {
      Rational value;
      for (int i = 0; i < n; ++i)
        value += c[static_cast<std::size_t>(i)] * p.coords[static_cast<std::size_t>(i)];
      if (!brute || value < *brute)
        brute = value;
    }
    LpResult lp = solve_lp(system, c, Sense::Minimize);
    std::optional<Rational> lp_value;
    if (lp.optimal())
      lp_value = lp.value;
    if (lp_value != brute)
      report.support_mismatches.push_back({c, lp_value, brute, to_string(lp.status)});
  }
  for (const auto &p : truth)
    if (!admits(system, p))
      report.membership_failures.push_back(p.label);
  for (const auto &p : forbidden)
    if (admits(system, p) != (hull_check && in_hull(truth, p)))
      report.excluded_failures.push_back(p.label);
  report.size = size_audit(system, forbidden_count);
  return report;
}

template <typename Point, typename Less>
VerificationReport verify_points(const LinearSystem &system, const std::vector<Point> &truth,
                                 const std::vector<Point> &forbidden, std::size_t trials,
                                 std::uint64_t seed) {
  if (truth.size() > kMaxGroundTruth)
    throw GuardExceeded("ground truth has " + std::to_string(truth.size()) + " points, limit " +
                        std::to_string(kMaxGroundTruth));
  std::vector<Probe> t, f;
  for (const auto &p : truth)
    t.push_back(to_probe(p));
  std::set<Point, Less> distinct(forbidden.begin(), forbidden.end());
  for (const auto &p : distinct)
    f.push_back(to_probe(p));
  return run(system, t, f, distinct.size(), trials, seed, std::is_same_v<Point, LatticePoint>);
}

} // namespace

VerificationReport verify_formulation(const LinearSystem &system,
                                      const std::vector<BinaryPoint> &truth,
                                      const std::vector<BinaryPoint> &forbidden,
                                      std::size_t trials, std::uint64_t seed) {
  return verify_points<BinaryPoint, BinaryLexLess>(system, truth, forbidden, trials, seed);
}

VerificationReport verify_formulation(const LinearSystem &system,
                                      const std::vector<LatticePoint> &truth,
                                      const std::vector<LatticePoint> &forbidden,
                                      std::size_t trials, std::uint64_t seed) {
  return verify_points<LatticePoint, LatticeLexLess>(system, truth, forbidden, trials, seed);
}

} // namespace fvx
