#include "fvx/hpolytope.hpp"

#include "fvx/errors.hpp"

namespace fvx {

std::string to_string(Relation rel) {
  switch (rel) {
  case Relation::LessEqual:
    return "<=";
  case Relation::Equal:
    return "=";
  case Relation::GreaterEqual:
    return ">=";
  }
  return "?";
}

Relation parse_relation(const std::string &text) {
  if (text == "<=" || text == "=<")
    return Relation::LessEqual;
  if (text == "=" || text == "==")
    return Relation::Equal;
  if (text == ">=" || text == "=>")
    return Relation::GreaterEqual;
  throw ParseError("unknown relation '" + text + "'");
}

namespace {
Rational dot(const std::vector<Rational> &a, const std::vector<Rational> &x) {
  if (a.size() != x.size())
    throw DomainError("row/point dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].sign() != 0)
      s += a[i] * x[i];
  return s;
}
} // namespace

bool HRow::satisfied_by(const std::vector<Rational> &x) const {
  Rational lhs = dot(a, x);
  switch (rel) {
  case Relation::LessEqual:
    return lhs <= b;
  case Relation::Equal:
    return lhs == b;
  case Relation::GreaterEqual:
    return lhs >= b;
  }
  return false;
}

bool HRow::tight_at(const std::vector<Rational> &x) const { return dot(a, x) == b; }

void HPolytope::check() const {
  if (n < 1)
    throw DomainError("polytope dimension must be positive");
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (static_cast<int>(rows[r].a.size()) != n)
      throw DomainError("row " + std::to_string(r + 1) + " has " +
                        std::to_string(rows[r].a.size()) + " coefficients, expected " +
                        std::to_string(n));
}

bool HPolytope::contains(const std::vector<Rational> &x) const {
  for (const auto &row : rows)
    if (!row.satisfied_by(x))
      return false;
  return true;
}

HPolytope HPolytope::unit_cube(int n) {
  HPolytope p;
  p.n = n;
  for (int i = 0; i < n; ++i) {
    HRow lo{std::vector<Rational>(static_cast<std::size_t>(n)), Relation::GreaterEqual, 0};
    lo.a[static_cast<std::size_t>(i)] = 1;
    HRow hi{lo.a, Relation::LessEqual, 1};
    p.rows.push_back(std::move(lo));
    p.rows.push_back(std::move(hi));
  }
  return p;
}

} // namespace fvx
