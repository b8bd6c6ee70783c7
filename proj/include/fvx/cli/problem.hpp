#pragma once

#include "fvx/hpolytope.hpp"
#include "fvx/oracles.hpp"
#include "fvx/points.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fvx::cli {

using json = nlohmann::ordered_json;

enum class Kind { Binary, Integral };

struct PolytopeSpec {
  std::string type; // cube | cardinality | hrep | spanning-tree | lattice-box
  int cardinality = 0;
  HPolytope hrep;
  std::vector<std::size_t> facets; // 0-based; read as 1-based row numbers
  int nodes = 0;
  std::vector<Edge> edges;
  std::optional<LatticeBox> box;
};

struct Slot {
  PolytopeSpec polytope;
  Objective objective;
};

struct Problem {
  Kind kind = Kind::Binary;
  int n = 0;
  PolytopeSpec polytope;
  Objective objective;
  std::vector<BinaryPoint> forbidden_binary;
  std::vector<LatticePoint> forbidden_lattice;
  std::optional<LatticeBox> ambient;
  std::optional<int> k;
  std::vector<Slot> slots; // all-different files
  json source;
};

/// Validates a problem document. ParseError names the offending field.
Problem parse_problem(const json &doc);
Problem load_problem(const std::string &path);

/// H-description of the polytope (IncompatibleMethod for spanning trees).
HPolytope explicit_polytope(const PolytopeSpec &spec, int n);

std::unique_ptr<BinaryOracle> binary_oracle(const PolytopeSpec &spec, int n);
std::unique_ptr<IntegralOracle> integral_oracle(const PolytopeSpec &spec, int n);

/// The ambient box of an integral problem: the "ambient" field, else the
/// polytope's own box.
LatticeBox ambient_box(const Problem &p);

/// Binary or integral points of the problem polytope, minus X, in lex order.
/// GuardExceeded beyond n = 12 for binary problems.
std::vector<BinaryPoint> allowed_binary(const Problem &p);
std::vector<LatticePoint> allowed_lattice(const Problem &p);

inline constexpr int kEnumerationMaxDimension = 12;

json to_json(const BinaryPoint &p);
json to_json(const LatticePoint &p);

} // namespace fvx::cli
