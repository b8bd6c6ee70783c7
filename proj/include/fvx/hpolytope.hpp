#pragma once

#include "fvx/rational.hpp"

#include <string>
#include <vector>

namespace fvx {

enum class Relation { LessEqual, Equal, GreaterEqual };

std::string to_string(Relation rel);
Relation parse_relation(const std::string &text);

/// Dense row a^T x (rel) b.
struct HRow {
  std::vector<Rational> a;
  Relation rel = Relation::LessEqual;
  Rational b;

  [[nodiscard]] bool satisfied_by(const std::vector<Rational> &x) const;
  [[nodiscard]] bool tight_at(const std::vector<Rational> &x) const;
};

/// Explicit inequality description of a (presumed bounded) polytope.
struct HPolytope {
  int n = 0;
  std::vector<HRow> rows;

  /// Validates row lengths; throws DomainError otherwise.
  void check() const;
  [[nodiscard]] bool contains(const std::vector<Rational> &x) const;

  /// [0,1]^n as 2n rows: x_i >= 0 then x_i <= 1 for each i.
  static HPolytope unit_cube(int n);
};

} // namespace fvx
