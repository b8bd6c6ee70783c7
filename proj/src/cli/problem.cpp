#include "fvx/cli/problem.hpp"

#include "fvx/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fvx::cli {

namespace {

[[noreturn]] void fail(const std::string &field, const std::string &what) {
  throw ParseError("field '" + field + "': " + what);
}

const json &require(const json &obj, const std::string &key, const std::string &path) {
  if (!obj.is_object() || !obj.contains(key))
    fail(path + key, "missing");
  return obj.at(key);
}

long integer_field(const json &v, const std::string &field) {
  if (!v.is_number_integer())
    fail(field, "expected an integer");
  return v.get<long>();
}

Integer big_integer(const json &v, const std::string &field) {
  if (v.is_number_integer())
    return Integer(v.get<long>());
  if (v.is_string()) {
    try {
      Rational r = Rational::parse(v.get<std::string>());
      if (r.is_integer())
        return r.numerator();
    } catch (const ParseError &) {
    }
  }
  fail(field, "expected an integer");
}

Rational rational_field(const json &v, const std::string &field) {
  if (v.is_number_integer())
    return Rational(v.get<long>());
  if (!v.is_string())
    fail(field, "expected a rational string \"p\" or \"p/q\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error &e) {
    fail(field, e.what());
  }
}

std::vector<Rational> rational_list(const json &v, const std::string &field, int n) {
  if (!v.is_array())
    fail(field, "expected an array");
  if (n >= 0 && static_cast<int>(v.size()) != n)
    fail(field, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(rational_field(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

LatticePoint lattice_point(const json &v, const std::string &field, int n) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    fail(field, "expected an array of " + std::to_string(n) + " integers");
  LatticePoint p;
  for (std::size_t i = 0; i < v.size(); ++i)
    p.coords.push_back(big_integer(v[i], field + "[" + std::to_string(i) + "]"));
  return p;
}

LatticeBox box_field(const json &v, const std::string &field, int n) {
  LatticePoint l = lattice_point(require(v, "l", field + "."), field + ".l", n);
  LatticePoint u = lattice_point(require(v, "u", field + "."), field + ".u", n);
  try {
    return LatticeBox(std::move(l), std::move(u));
  } catch (const Error &e) {
    fail(field, e.what());
  }
}

PolytopeSpec parse_polytope(const json &v, const std::string &field, int n) {
  PolytopeSpec spec;
  if (!v.is_object())
    fail(field, "expected an object");
  const json &type = require(v, "type", field + ".");
  if (!type.is_string())
    fail(field + ".type", "expected a string");
  spec.type = type.get<std::string>();
  if (spec.type == "cube") {
  } else if (spec.type == "cardinality") {
    spec.cardinality = static_cast<int>(integer_field(require(v, "s", field + "."), field + ".s"));
    if (spec.cardinality < 0 || spec.cardinality > n)
      fail(field + ".s", "must lie in 0.." + std::to_string(n));
  } else if (spec.type == "hrep") {
    const json &rows = require(v, "rows", field + ".");
    if (!rows.is_array())
      fail(field + ".rows", "expected an array");
    spec.hrep.n = n;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string at = field + ".rows[" + std::to_string(r) + "]";
      HRow row;
      row.a = rational_list(require(rows[r], "a", at + "."), at + ".a", n);
      const json &rel = require(rows[r], "rel", at + ".");
      if (!rel.is_string())
        fail(at + ".rel", "expected \"<=\", \"=\" or \">=\"");
      try {
        row.rel = parse_relation(rel.get<std::string>());
      } catch (const Error &e) {
        fail(at + ".rel", e.what());
      }
      row.b = rational_field(require(rows[r], "b", at + "."), at + ".b");
      spec.hrep.rows.push_back(std::move(row));
    }
    if (v.contains("facets")) {
      const json &facets = v.at("facets");
      if (!facets.is_array())
        fail(field + ".facets", "expected an array of row numbers");
      for (std::size_t i = 0; i < facets.size(); ++i) {
        const std::string at = field + ".facets[" + std::to_string(i) + "]";
        long row = integer_field(facets[i], at);
        if (row < 1 || row > static_cast<long>(spec.hrep.rows.size()))
          fail(at, "row number out of range");
        spec.facets.push_back(static_cast<std::size_t>(row - 1));
      }
    }
  } else if (spec.type == "spanning-tree") {
    spec.nodes = static_cast<int>(integer_field(require(v, "nodes", field + "."), field + ".nodes"));
    const json &edges = require(v, "edges", field + ".");
    if (!edges.is_array() || static_cast<int>(edges.size()) != n)
      fail(field + ".edges", "expected " + std::to_string(n) + " edges, one per coordinate");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string at = field + ".edges[" + std::to_string(i) + "]";
      if (!edges[i].is_array() || edges[i].size() != 2)
        fail(at, "expected a pair of node ids");
      spec.edges.push_back({static_cast<int>(integer_field(edges[i][0], at)),
                            static_cast<int>(integer_field(edges[i][1], at))});
    }
  } else if (spec.type == "lattice-box") {
    spec.box = box_field(v, field, n);
  } else {
    fail(field + ".type", "unknown polytope type '" + spec.type + "'");
  }
  return spec;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

Problem parse_problem(const json &doc) {
  Problem p;
  p.source = doc;
  if (!doc.is_object())
    throw ParseError("problem file must be a JSON object");
  const json &kind = require(doc, "kind", "");
  if (kind == "binary")
    p.kind = Kind::Binary;
  else if (kind == "integral")
    p.kind = Kind::Integral;
  else
    fail("kind", "expected \"binary\" or \"integral\"");
  long n = integer_field(require(doc, "n", ""), "n");
  const long max_n = p.kind == Kind::Binary ? kMaxBinaryDimension : 1024;
  if (n < 1 || n > max_n)
    fail("n", "must lie in 1.." + std::to_string(max_n));
  p.n = static_cast<int>(n);

  if (doc.contains("slots")) {
    const json &slots = doc.at("slots");
    if (!slots.is_array() || slots.empty())
      fail("slots", "expected a nonempty array");
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const std::string at = "slots[" + std::to_string(i) + "]";
      Slot slot;
      slot.polytope = parse_polytope(require(slots[i], "polytope", at + "."), at + ".polytope", p.n);
      slot.objective = Objective(rational_list(require(slots[i], "objective", at + "."), at + ".objective", p.n));
      p.slots.push_back(std::move(slot));
    }
  } else {
    p.polytope = parse_polytope(require(doc, "polytope", ""), "polytope", p.n);
  }
  if (doc.contains("objective"))
    p.objective = Objective(rational_list(doc.at("objective"), "objective", p.n));
  else
    p.objective = Objective(std::vector<Rational>(static_cast<std::size_t>(p.n), Rational(0)));

  if (doc.contains("forbidden")) {
    const json &forbidden = doc.at("forbidden");
    if (!forbidden.is_array())
      fail("forbidden", "expected an array");
    for (std::size_t i = 0; i < forbidden.size(); ++i) {
      const std::string at = "forbidden[" + std::to_string(i) + "]";
      if (p.kind == Kind::Binary) {
        if (!forbidden[i].is_string())
          fail(at, "expected a bitstring");
        const std::string bits = forbidden[i].get<std::string>();
        if (static_cast<int>(bits.size()) != p.n)
          fail(at, "bitstring '" + bits + "' has length " + std::to_string(bits.size()) +
                       ", expected " + std::to_string(p.n));
        try {
          p.forbidden_binary.push_back(BinaryPoint::parse(bits));
        } catch (const Error &e) {
          fail(at, e.what());
        }
      } else {
        p.forbidden_lattice.push_back(lattice_point(forbidden[i], at, p.n));
      }
    }
  }
  if (doc.contains("ambient"))
    p.ambient = box_field(doc.at("ambient"), "ambient", p.n);
  if (doc.contains("k")) {
    long k = integer_field(doc.at("k"), "k");
    if (k < 1)
      fail("k", "must be positive");
    p.k = static_cast<int>(k);
  }
  if (p.kind == Kind::Integral) {
    if (p.slots.empty()) {
      if (!p.ambient && p.polytope.type != "lattice-box" && p.polytope.type != "cube")
        fail("ambient", "required for integral problems over this polytope type");
    }
    if (p.ambient || p.slots.empty()) {
      LatticeBox box = ambient_box(p);
      for (std::size_t i = 0; i < p.forbidden_lattice.size(); ++i)
        if (!box.contains(p.forbidden_lattice[i]))
          fail("forbidden[" + std::to_string(i) + "]", "point lies outside the ambient box");
    }
  }
  return p;
}

Problem load_problem(const std::string &path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error &e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_problem(doc);
}

HPolytope explicit_polytope(const PolytopeSpec &spec, int n) {
  if (spec.type == "cube")
    return HPolytope::unit_cube(n);
  if (spec.type == "cardinality") {
    HPolytope p = HPolytope::unit_cube(n);
    p.rows.push_back({std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)), Relation::Equal,
                      Rational(spec.cardinality)});
    return p;
  }
  if (spec.type == "hrep")
    return spec.hrep;
  if (spec.type == "lattice-box") {
    HPolytope p{n, {}};
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> a(static_cast<std::size_t>(n), Rational(0));
      a[static_cast<std::size_t>(i)] = 1;
      p.rows.push_back({a, Relation::GreaterEqual, Rational(spec.box->lower().coords[static_cast<std::size_t>(i)])});
      p.rows.push_back({a, Relation::LessEqual, Rational(spec.box->upper().coords[static_cast<std::size_t>(i)])});
    }
    return p;
  }
  throw IncompatibleMethod("polytope type '" + spec.type + "' has no explicit description");
}

std::unique_ptr<BinaryOracle> binary_oracle(const PolytopeSpec &spec, int n) {
  if (spec.type == "cube")
    return cube_oracle(n);
  if (spec.type == "cardinality")
    return cardinality_oracle(n, spec.cardinality);
  if (spec.type == "spanning-tree")
    return spanning_tree_oracle(spec.nodes, spec.edges);
  if (spec.type == "hrep")
    return hrep_binary_oracle(spec.hrep);
  throw IncompatibleMethod("polytope type '" + spec.type + "' is not available for binary problems");
}

std::unique_ptr<IntegralOracle> integral_oracle(const PolytopeSpec &spec, int n) {
  if (spec.type == "lattice-box")
    return lattice_box_oracle(spec.box->lower(), spec.box->upper());
  if (spec.type == "cube")
    return lattice_box_oracle(LatticePoint{std::vector<Integer>(static_cast<std::size_t>(n), Integer(0))},
                              LatticePoint{std::vector<Integer>(static_cast<std::size_t>(n), Integer(1))});
  if (spec.type == "hrep" || spec.type == "cardinality")
    return hrep_integral_oracle(explicit_polytope(spec, n));
  throw IncompatibleMethod("polytope type '" + spec.type + "' is not available for integral problems");
}

LatticeBox ambient_box(const Problem &p) {
  if (p.ambient)
    return *p.ambient;
  const PolytopeSpec &spec = p.slots.empty() ? p.polytope : p.slots.front().polytope;
  if (spec.type == "lattice-box")
    return *spec.box;
  if (spec.type == "cube" || spec.type == "cardinality")
    return LatticeBox(LatticePoint{std::vector<Integer>(static_cast<std::size_t>(p.n), Integer(0))},
                      LatticePoint{std::vector<Integer>(static_cast<std::size_t>(p.n), Integer(1))});
  throw ParseError("field 'ambient': missing");
}

std::vector<BinaryPoint> allowed_binary(const Problem &p) {
  if (p.n > kEnumerationMaxDimension)
    throw GuardExceeded("enumeration is limited to n <= " + std::to_string(kEnumerationMaxDimension));
  auto oracle = binary_oracle(p.polytope, p.n);
  std::set<std::uint64_t> forbidden;
  for (const auto &x : p.forbidden_binary)
    forbidden.insert(x.bits());
  std::vector<BinaryPoint> out;
  for (const auto &v : enumerate_vertices(*oracle))
    if (!forbidden.count(v.bits()))
      out.push_back(v);
  return out;
}

std::vector<LatticePoint> allowed_lattice(const Problem &p) {
  auto oracle = integral_oracle(p.polytope, p.n);
  std::vector<LatticePoint> out;
  for (auto &v : enumerate_points(*oracle, ambient_box(p)))
    if (std::find(p.forbidden_lattice.begin(), p.forbidden_lattice.end(), v) == p.forbidden_lattice.end())
      out.push_back(std::move(v));
  return out;
}

json to_json(const BinaryPoint &p) { return p.str(); }

json to_json(const LatticePoint &p) {
  json out = json::array();
  for (const auto &c : p.coords) {
    if (c.fits_slong_p())
      out.push_back(c.get_si());
    else
      out.push_back(c.get_str());
  }
  return out;
}

} // namespace fvx::cli
