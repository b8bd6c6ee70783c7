// Solves a dense 600 x 600 LP with coefficients up to 2^20 and checks the
// result exactly. Fails past the time limit.
#include "fvx/exact_lp.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

using namespace fvx;

namespace {

bool admits(const LinearSystem &s, const std::vector<Rational> &x) {
  for (std::size_t v = 0; v < s.variables().size(); ++v) {
    const auto &var = s.variables()[v];
    if ((var.lower && x[v] < *var.lower) || (var.upper && x[v] > *var.upper))
      return false;
  }
  for (const auto &c : s.constraints()) {
    Rational lhs;
    for (const auto &t : c.terms)
      lhs += t.coeff * x[t.var];
    if ((c.rel == Relation::LessEqual && lhs > c.rhs) || (c.rel == Relation::GreaterEqual && lhs < c.rhs) ||
        (c.rel == Relation::Equal && lhs != c.rhs))
      return false;
  }
  return true;
}

} // namespace

int main(int argc, char **argv) {
  const int m = argc > 1 ? std::atoi(argv[1]) : 600;
  const double limit = argc > 2 ? std::atof(argv[2]) : 60.0;

  std::mt19937 rng(3);
  std::uniform_int_distribution<long> coef(-(1L << 20), 1L << 20), hidden(0, 10), slack(0, 1L << 20);
  LinearSystem sys(m);
  std::vector<long> x0(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    sys.variables()[static_cast<std::size_t>(i)].lower = Rational(0);
    sys.variables()[static_cast<std::size_t>(i)].upper = Rational(20);
    x0[static_cast<std::size_t>(i)] = hidden(rng);
  }
  for (int r = 0; r < m; ++r) {
    Constraint c;
    Rational at;
    for (int i = 0; i < m; ++i) {
      const long a = coef(rng);
      c.terms.push_back({static_cast<std::size_t>(i), Rational(a)});
      at += Rational(a * x0[static_cast<std::size_t>(i)]);
    }
    // Alternating sides around a hidden point keeps the system feasible.
    c.rel = r % 2 ? Relation::LessEqual : Relation::GreaterEqual;
    c.rhs = r % 2 ? at + Rational(slack(rng)) : at - Rational(slack(rng));
    sys.add_constraint(c);
  }
  std::vector<Rational> c;
  for (int i = 0; i < m; ++i)
    c.emplace_back(coef(rng));

  const auto start = std::chrono::steady_clock::now();
  const LpResult r = solve_lp(sys, c, Sense::Maximize);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool ok = r.optimal() && admits(sys, r.point);
  if (ok) {
    Rational value;
    for (int i = 0; i < m; ++i)
      value += c[static_cast<std::size_t>(i)] * r.point[static_cast<std::size_t>(i)];
    ok = value == r.value;
  }
  ok = ok && seconds <= limit;
  std::printf("%s %dx%d lp: %s, certified %s, %.1fs of %.0fs\n", ok ? "PASS" : "FAIL", m, m,
              to_string(r.status).c_str(), r.certified ? "yes" : "no", seconds, limit);
  return ok ? 0 : 1;
}
