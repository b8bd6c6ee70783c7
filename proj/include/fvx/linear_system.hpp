#pragma once

#include "fvx/hpolytope.hpp"
#include "fvx/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fvx {

struct Variable {
  std::string name;
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  [[nodiscard]] bool is_fixed() const { return lower && upper && *lower == *upper; }
};

struct Term {
  std::size_t var = 0;
  Rational coeff;
};

struct Constraint {
  std::vector<Term> terms;
  Relation rel = Relation::LessEqual;
  Rational rhs;
};

/// How a system was built, plus the parameters its size bound depends on.
/// The bound itself is recomputed from these by `size_audit`, never stored.
struct FormulationMeta {
  std::string method;           // interval | recursive | faces | facet-intersection | boxes | hull | ...
  std::size_t forbidden = 0;    // |X|
  std::size_t base_rows = 0;    // rows of the input H-description, when there is one
  std::size_t facets = 0;       // facet list length (facet-intersection)
  std::size_t family = 0;       // candidate faces / boxes / tuples before filtering
  std::size_t blocks = 0;       // disjunctive blocks actually hulled
  std::size_t dropped = 0;      // empty blocks removed before hulling
};

/// Inequality/equality system over named variables. The first `original()`
/// variables are x1..xn; the feasible region's projection onto them is the
/// polytope the system describes.
class LinearSystem {
public:
  LinearSystem() = default;
  /// Creates free variables x1..xn.
  explicit LinearSystem(int n);

  /// x1..xn free plus one row per polytope row, each scaled to integers.
  static LinearSystem from_hpolytope(const HPolytope &p);

  [[nodiscard]] int original() const { return n_; }
  [[nodiscard]] const std::vector<Variable> &variables() const { return vars_; }
  [[nodiscard]] std::vector<Variable> &variables() { return vars_; }
  [[nodiscard]] const std::vector<Constraint> &constraints() const { return rows_; }
  [[nodiscard]] std::vector<Constraint> &constraints() { return rows_; }
  [[nodiscard]] const FormulationMeta &meta() const { return meta_; }
  [[nodiscard]] FormulationMeta &meta() { return meta_; }

  std::size_t add_variable(std::string name, std::optional<Rational> lower = std::nullopt,
                           std::optional<Rational> upper = std::nullopt);
  void add_constraint(Constraint c);

  /// Constraint rows of any relation (bounds excluded).
  [[nodiscard]] std::size_t row_count() const { return rows_.size(); }
  /// Inequality rows plus finite non-fixing variable bounds.
  [[nodiscard]] std::size_t inequality_count() const;

  /// Throws DomainError if a term references an unknown variable or the
  /// originals are not named x1..xn.
  void validate() const;

private:
  int n_ = 0;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  FormulationMeta meta_;
};

/// Scales a dense row by the lcm of its denominators so every coefficient and
/// the right-hand side are integers.
Constraint integral_constraint(const HRow &row);

} // namespace fvx
