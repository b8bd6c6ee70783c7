#pragma once

#include "fvx/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fvx {

inline constexpr int kMaxBinaryDimension = 64;

/// Mask with the low `n` bits set (n in 0..64).
constexpr std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// A point of {0,1}^n. Coordinate i (1-based) lives in bit i-1.
class BinaryPoint {
public:
  BinaryPoint() = default;
  BinaryPoint(int n, std::uint64_t bits);

  /// Bitstring with the leftmost character holding coordinate 1.
  static BinaryPoint parse(std::string_view bitstring);

  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] std::uint64_t bits() const { return bits_; }
  /// 1-based coordinate access.
  [[nodiscard]] bool operator[](int i) const { return (bits_ >> (i - 1)) & 1U; }
  [[nodiscard]] std::string str() const;

  friend bool operator==(const BinaryPoint &, const BinaryPoint &) = default;

private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

/// Lexicographic order on (x_1, ..., x_n).
bool lex_less(const BinaryPoint &a, const BinaryPoint &b);

struct BinaryLexLess {
  bool operator()(const BinaryPoint &a, const BinaryPoint &b) const { return lex_less(a, b); }
};

int hamming_distance(const BinaryPoint &a, const BinaryPoint &b);

/// A point of Z^n with unbounded coordinates.
struct LatticePoint {
  std::vector<Integer> coords;

  [[nodiscard]] int dimension() const { return static_cast<int>(coords.size()); }
  [[nodiscard]] std::string str() const;
  friend bool operator==(const LatticePoint &, const LatticePoint &) = default;
};

bool lex_less(const LatticePoint &a, const LatticePoint &b);

struct LatticeLexLess {
  bool operator()(const LatticePoint &a, const LatticePoint &b) const { return lex_less(a, b); }
};

/// Linear objective, always minimized.
class Objective {
public:
  Objective() = default;
  explicit Objective(std::vector<Rational> c) : c_(std::move(c)) {}

  [[nodiscard]] int dimension() const { return static_cast<int>(c_.size()); }
  [[nodiscard]] const std::vector<Rational> &coefficients() const { return c_; }
  /// 1-based.
  [[nodiscard]] const Rational &operator[](int i) const { return c_[i - 1]; }

  [[nodiscard]] Rational value(const BinaryPoint &v) const;
  [[nodiscard]] Rational value(const LatticePoint &v) const;

private:
  std::vector<Rational> c_;
};

/// Face of [0,1]^n obtained by fixing some coordinates to 0 or 1.
class CubeFace {
public:
  CubeFace() = default;
  explicit CubeFace(int n) : n_(n) {}
  /// `mask` selects fixed coordinates, `values` their settings (masked).
  CubeFace(int n, std::uint64_t mask, std::uint64_t values);

  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] std::uint64_t fixed_mask() const { return mask_; }
  [[nodiscard]] std::uint64_t fixed_values() const { return values_; }
  [[nodiscard]] bool is_fixed(int i) const { return (mask_ >> (i - 1)) & 1U; }
  [[nodiscard]] bool fixed_value(int i) const { return (values_ >> (i - 1)) & 1U; }
  [[nodiscard]] int fixed_count() const;

  [[nodiscard]] bool contains(const BinaryPoint &v) const {
    return (v.bits() & mask_) == values_;
  }

  /// Fix coordinate i (1-based); throws DomainError on a conflicting value.
  CubeFace &fix(int i, bool value);

  friend bool operator==(const CubeFace &, const CubeFace &) = default;

private:
  int n_ = 0;
  std::uint64_t mask_ = 0;
  std::uint64_t values_ = 0;
};

/// Integer box [l, u].
class LatticeBox {
public:
  LatticeBox() = default;
  LatticeBox(LatticePoint lower, LatticePoint upper);

  [[nodiscard]] int dimension() const { return lower_.dimension(); }
  [[nodiscard]] const LatticePoint &lower() const { return lower_; }
  [[nodiscard]] const LatticePoint &upper() const { return upper_; }
  [[nodiscard]] Integer point_count() const;
  [[nodiscard]] bool contains(const LatticePoint &p) const;

  /// Empty result when the boxes do not meet.
  [[nodiscard]] std::optional<LatticeBox> intersect(const LatticeBox &other) const;

  friend bool operator==(const LatticeBox &, const LatticeBox &) = default;

private:
  LatticePoint lower_, upper_;
};

/// Every lattice point of `box` in lexicographic order.
std::vector<LatticePoint> lattice_points(const LatticeBox &box);

} // namespace fvx
