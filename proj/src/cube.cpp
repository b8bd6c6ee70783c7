#include "fvx/cube.hpp"

#include "fvx/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace fvx {

BinaryPoint sigma_decode(std::uint64_t k, int n) {
  if (n < 1 || n > kMaxBinaryDimension)
    throw DomainError("dimension " + std::to_string(n) + " outside 1..64");
  if ((k & ~low_mask(n)) != 0)
    throw DomainError(std::to_string(k) + " is not below 2^" + std::to_string(n));
  return BinaryPoint(n, k);
}

bool hamming_independent(std::span<const BinaryPoint> points) {
  std::unordered_set<std::uint64_t> members;
  for (const auto &p : points)
    members.insert(p.bits());
  for (const auto &p : points)
    for (int i = 0; i < p.dimension(); ++i)
      if (members.count(p.bits() ^ (std::uint64_t{1} << i)))
        return false;
  return true;
}

HRow no_good_cut(const BinaryPoint &v) {
  const int n = v.dimension();
  HRow row{std::vector<Rational>(static_cast<std::size_t>(n)), Relation::GreaterEqual, 1};
  int ones = 0;
  for (int i = 1; i <= n; ++i) {
    if (v[i]) {
      row.a[static_cast<std::size_t>(i - 1)] = -1;
      ++ones;
    } else {
      row.a[static_cast<std::size_t>(i - 1)] = 1;
    }
  }
  row.b = Rational(1 - ones);
  return row;
}

} // namespace fvx
