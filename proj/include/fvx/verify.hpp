#pragma once

#include "fvx/extension.hpp"
#include "fvx/linear_system.hpp"
#include "fvx/points.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fvx {

inline constexpr std::size_t kMaxGroundTruth = 4096;

struct SupportMismatch {
  std::vector<Rational> objective;
  std::optional<Rational> lp_value;    // empty when the LP is infeasible or unbounded
  std::optional<Rational> brute_value; // empty when the truth set is empty
  std::string lp_status;
};

struct VerificationReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SupportMismatch> support_mismatches;
  // Forbidden points whose membership in the projection disagrees with
  // membership in conv(truth); for 0-1 points that means "admitted".
  std::vector<std::string> excluded_failures;
  std::vector<std::string> membership_failures; // allowed points the system rejects
  SizeAudit size;

  [[nodiscard]] bool passed() const {
    return support_mismatches.empty() && excluded_failures.empty() &&
           membership_failures.empty() && size.ok;
  }
};

/// Compares the projection of `system` onto x1..xn with conv(truth): random
/// integer objectives in [-100,100]^n, then an exact feasibility probe for
/// every truth point and every forbidden point, then the size certificate.
/// A forbidden lattice point may lie inside conv(truth) (an interior point of
/// a box, say); it is then expected to be admitted.
/// GuardExceeded when the truth set exceeds kMaxGroundTruth points.
VerificationReport verify_formulation(const LinearSystem &system,
                                      const std::vector<BinaryPoint> &truth,
                                      const std::vector<BinaryPoint> &forbidden,
                                      std::size_t trials, std::uint64_t seed);

VerificationReport verify_formulation(const LinearSystem &system,
                                      const std::vector<LatticePoint> &truth,
                                      const std::vector<LatticePoint> &forbidden,
                                      std::size_t trials, std::uint64_t seed);

} // namespace fvx
