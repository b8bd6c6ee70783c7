#pragma once

#include "fvx/hpolytope.hpp"
#include "fvx/points.hpp"

#include <cstdint>
#include <span>

namespace fvx {

/// sigma(v) = sum_i 2^(i-1) v_i.
inline std::uint64_t sigma_encode(const BinaryPoint &v) { return v.bits(); }

/// Inverse of sigma_encode; DomainError unless 0 <= k < 2^n.
BinaryPoint sigma_decode(std::uint64_t k, int n);

/// No two points of `points` are at Hamming distance 1.
bool hamming_independent(std::span<const BinaryPoint> points);

/// The row sum_{v_i=0} x_i + sum_{v_i=1} (1 - x_i) >= 1, written as a >= b with
/// integer coefficients. Cuts off v and nothing else in {0,1}^n.
HRow no_good_cut(const BinaryPoint &v);

} // namespace fvx
