#include "fvx/points.hpp"

#include "fvx/errors.hpp"

#include <bit>

namespace fvx {

BinaryPoint::BinaryPoint(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 1 || n > kMaxBinaryDimension)
    throw DomainError("binary dimension " + std::to_string(n) + " outside 1..64");
  if ((bits & ~low_mask(n)) != 0)
    throw DomainError("bits set beyond dimension " + std::to_string(n));
}

BinaryPoint BinaryPoint::parse(std::string_view bitstring) {
  const int n = static_cast<int>(bitstring.size());
  if (n < 1 || n > kMaxBinaryDimension)
    throw ParseError("bitstring length " + std::to_string(n) + " outside 1..64");
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    char ch = bitstring[static_cast<std::size_t>(i)];
    if (ch == '1')
      bits |= std::uint64_t{1} << i;
    else if (ch != '0')
      throw ParseError("bitstring '" + std::string(bitstring) + "' contains '" + ch + "'");
  }
  return BinaryPoint(n, bits);
}

std::string BinaryPoint::str() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i)
    if ((bits_ >> i) & 1U)
      s[static_cast<std::size_t>(i)] = '1';
  return s;
}

bool lex_less(const BinaryPoint &a, const BinaryPoint &b) {
  std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0)
    return false;
  std::uint64_t first = diff & (~diff + 1);
  return (a.bits() & first) == 0;
}

int hamming_distance(const BinaryPoint &a, const BinaryPoint &b) {
  return std::popcount(a.bits() ^ b.bits());
}

std::string LatticePoint::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i)
      s += ",";
    s += coords[i].get_str();
  }
  return s + ")";
}

bool lex_less(const LatticePoint &a, const LatticePoint &b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                      b.coords.end());
}

Rational Objective::value(const BinaryPoint &v) const {
  if (v.dimension() != dimension())
    throw DomainError("objective/point dimension mismatch");
  Rational total;
  for (int i = 1; i <= dimension(); ++i)
    if (v[i])
      total += c_[static_cast<std::size_t>(i - 1)];
  return total;
}

Rational Objective::value(const LatticePoint &v) const {
  if (v.dimension() != dimension())
    throw DomainError("objective/point dimension mismatch");
  Rational total;
  for (std::size_t i = 0; i < c_.size(); ++i)
    total += c_[i] * Rational(v.coords[i]);
  return total;
}

CubeFace::CubeFace(int n, std::uint64_t mask, std::uint64_t values)
    : n_(n), mask_(mask), values_(values & mask) {
  if ((mask & ~low_mask(n)) != 0)
    throw DomainError("face fixes a coordinate beyond dimension");
}

int CubeFace::fixed_count() const { return std::popcount(mask_); }

CubeFace &CubeFace::fix(int i, bool value) {
  if (i < 1 || i > n_)
    throw DomainError("coordinate " + std::to_string(i) + " out of range");
  std::uint64_t bit = std::uint64_t{1} << (i - 1);
  if ((mask_ & bit) && (((values_ & bit) != 0) != value))
    throw DomainError("coordinate " + std::to_string(i) + " fixed twice");
  mask_ |= bit;
  if (value)
    values_ |= bit;
  return *this;
}

LatticeBox::LatticeBox(LatticePoint lower, LatticePoint upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.dimension() != upper_.dimension())
    throw DomainError("box bounds differ in dimension");
  for (int i = 0; i < lower_.dimension(); ++i)
    if (lower_.coords[static_cast<std::size_t>(i)] > upper_.coords[static_cast<std::size_t>(i)])
      throw DomainError("box lower bound exceeds upper bound at coordinate " +
                        std::to_string(i + 1));
}

Integer LatticeBox::point_count() const {
  Integer count = 1;
  for (std::size_t i = 0; i < lower_.coords.size(); ++i)
    count *= upper_.coords[i] - lower_.coords[i] + 1;
  return count;
}

bool LatticeBox::contains(const LatticePoint &p) const {
  if (p.dimension() != dimension())
    return false;
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    if (p.coords[i] < lower_.coords[i] || p.coords[i] > upper_.coords[i])
      return false;
  return true;
}

std::optional<LatticeBox> LatticeBox::intersect(const LatticeBox &other) const {
  if (other.dimension() != dimension())
    throw DomainError("box dimension mismatch");
  LatticePoint lo = lower_, hi = upper_;
  for (std::size_t i = 0; i < lo.coords.size(); ++i) {
    if (other.lower_.coords[i] > lo.coords[i])
      lo.coords[i] = other.lower_.coords[i];
    if (other.upper_.coords[i] < hi.coords[i])
      hi.coords[i] = other.upper_.coords[i];
    if (lo.coords[i] > hi.coords[i])
      return std::nullopt;
  }
  return LatticeBox(std::move(lo), std::move(hi));
}

std::vector<LatticePoint> lattice_points(const LatticeBox &box) {
  std::vector<LatticePoint> out;
  LatticePoint cur = box.lower();
  const std::size_t n = cur.coords.size();
  if (n == 0)
    return out;
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (cur.coords[i] < box.upper().coords[i]) {
        ++cur.coords[i];
        break;
      }
      cur.coords[i] = box.lower().coords[i];
      if (i == 0)
        return out;
    }
  }
}

} // namespace fvx
