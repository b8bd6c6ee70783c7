#include "fvx/linear_system.hpp"

#include "fvx/errors.hpp"

namespace fvx {

LinearSystem::LinearSystem(int n) : n_(n) {
  if (n < 1)
    throw DomainError("a linear system needs at least one original variable");
  for (int i = 1; i <= n; ++i)
    vars_.push_back({"x" + std::to_string(i), std::nullopt, std::nullopt});
}

LinearSystem LinearSystem::from_hpolytope(const HPolytope &p) {
  p.check();
  LinearSystem sys(p.n);
  for (const auto &row : p.rows)
    sys.add_constraint(integral_constraint(row));
  sys.meta().method = "hrep";
  sys.meta().base_rows = p.rows.size();
  return sys;
}

std::size_t LinearSystem::add_variable(std::string name, std::optional<Rational> lower,
                                       std::optional<Rational> upper) {
  vars_.push_back({std::move(name), std::move(lower), std::move(upper)});
  return vars_.size() - 1;
}

void LinearSystem::add_constraint(Constraint c) { rows_.push_back(std::move(c)); }

std::size_t LinearSystem::inequality_count() const {
  std::size_t count = 0;
  for (const auto &row : rows_)
    if (row.rel != Relation::Equal)
      ++count;
  for (const auto &v : vars_) {
    if (v.is_fixed())
      continue;
    count += v.lower.has_value() + v.upper.has_value();
  }
  return count;
}

void LinearSystem::validate() const {
  if (n_ < 1 || vars_.size() < static_cast<std::size_t>(n_))
    throw DomainError("system lacks its original variables");
  for (int i = 0; i < n_; ++i)
    if (vars_[static_cast<std::size_t>(i)].name != "x" + std::to_string(i + 1))
      throw DomainError("original variable " + std::to_string(i + 1) + " is named '" +
                        vars_[static_cast<std::size_t>(i)].name + "'");
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto &t : rows_[r].terms)
      if (t.var >= vars_.size())
        throw DomainError("row " + std::to_string(r + 1) + " references undeclared variable");
}

Constraint integral_constraint(const HRow &row) {
  std::vector<Rational> all = row.a;
  all.push_back(row.b);
  Rational scale(lcm_of_denominators(all.data(), all.data() + all.size()));
  Constraint c;
  c.rel = row.rel;
  c.rhs = row.b * scale;
  for (std::size_t i = 0; i < row.a.size(); ++i)
    if (row.a[i].sign() != 0)
      c.terms.push_back({i, row.a[i] * scale});
  return c;
}

} // namespace fvx
