#pragma once

#include "fvx/linear_system.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace fvx::cli {

/// A parsed LP file: the constraint system plus the problem document the
/// writer embedded in its header comments, if any.
struct LpFile {
  LinearSystem system;
  std::optional<nlohmann::ordered_json> problem;
};

/// LP text with a zero objective, rows r1..rm, and every variable listed in
/// Bounds in system order. Header comments carry the formulation metadata and
/// the problem document so `read_lp` reproduces the system exactly.
std::string write_lp(const LinearSystem &system, const std::optional<nlohmann::ordered_json> &problem = {});

/// Parses the subset emitted by `write_lp`. ParseError on anything else.
LpFile read_lp(const std::string &text);

} // namespace fvx::cli
