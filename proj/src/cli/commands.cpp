#include "fvx/cli/commands.hpp"

#include "fvx/alldiff.hpp"
#include "fvx/cli/lp_format.hpp"
#include "fvx/errors.hpp"
#include "fvx/extension.hpp"
#include "fvx/integral.hpp"
#include "fvx/separation.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace fvx::cli {

namespace {

class CountingBinaryOracle final : public BinaryOracle {
public:
  explicit CountingBinaryOracle(const BinaryOracle &inner) : inner_(inner) {}
  int dimension() const override { return inner_.dimension(); }
  BinaryOutcome minimize(const Objective &c, const CubeFace &face) const override {
    ++calls_;
    return inner_.minimize(c, face);
  }
  bool is_vertex(const BinaryPoint &v) const override { return inner_.is_vertex(v); }
  std::size_t calls() const { return calls_; }

private:
  const BinaryOracle &inner_;
  mutable std::size_t calls_ = 0;
};

class CountingIntegralOracle final : public IntegralOracle {
public:
  explicit CountingIntegralOracle(const IntegralOracle &inner) : inner_(inner) {}
  int dimension() const override { return inner_.dimension(); }
  LatticeOutcome minimize(const Objective &c, const LatticeBox &box) const override {
    ++calls_;
    return inner_.minimize(c, box);
  }
  bool contains(const LatticePoint &p) const override { return inner_.contains(p); }
  std::size_t calls() const { return calls_; }

private:
  const IntegralOracle &inner_;
  mutable std::size_t calls_ = 0;
};

std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_plain(const Problem &p) {
  if (!p.slots.empty())
    throw ParseError("field 'slots': only the alldiff command accepts multi-slot files");
}

json optional_rational(const std::optional<Rational> &r) { return r ? json(r->str()) : json(nullptr); }

json optional_size(const std::optional<std::size_t> &s) { return s ? json(*s) : json(nullptr); }

template <typename Point> json points_with_values(const std::vector<Point> &points, const Objective &c) {
  json out = json::array();
  for (const auto &p : points)
    out.push_back({{"vertex", to_json(p)}, {"value", c.value(p).str()}});
  return out;
}

} // namespace

LinearSystem compile_problem(const Problem &problem, const std::string &method) {
  require_plain(problem);
  const auto &spec = problem.polytope;
  if (method == "boxes") {
    if (problem.kind != Kind::Integral)
      throw IncompatibleMethod("method 'boxes' requires an integral problem");
    return forbI_formulation(explicit_polytope(spec, problem.n), problem.forbidden_lattice,
                             ambient_box(problem));
  }
  if (method != "interval" && method != "recursive" && method != "faces" && method != "facet-intersection")
    throw IncompatibleMethod("unknown method '" + method + "'");
  if (problem.kind != Kind::Binary)
    throw IncompatibleMethod("method '" + method + "' requires a binary problem");
  const auto &x = problem.forbidden_binary;
  if (method == "interval" || method == "recursive") {
    if (spec.type != "cube")
      throw IncompatibleMethod("method '" + method + "' requires the cube polytope");
    return method == "interval" ? interval_formulation(x, problem.n) : recursive_formulation(x, problem.n);
  }
  HPolytope p = explicit_polytope(spec, problem.n);
  if (method == "faces")
    return face_formulation(p, x);
  std::vector<std::size_t> facets = spec.facets;
  if (facets.empty())
    for (std::size_t r = 0; r < p.rows.size(); ++r)
      if (p.rows[r].rel != Relation::Equal)
        facets.push_back(r);
  return facet_intersection_formulation(p, facets, x);
}

VerificationReport verify_against_problem(const LinearSystem &system, const Problem &problem,
                                          std::size_t trials, std::uint64_t seed) {
  require_plain(problem);
  if (system.original() != problem.n)
    throw DomainError("system has " + std::to_string(system.original()) + " original variables, problem n = " +
                      std::to_string(problem.n));
  if (problem.kind == Kind::Binary)
    return verify_formulation(system, allowed_binary(problem), problem.forbidden_binary, trials, seed);
  return verify_formulation(system, allowed_lattice(problem), problem.forbidden_lattice, trials, seed);
}

json report_to_json(const VerificationReport &report) {
  json mismatches = json::array();
  for (const auto &m : report.support_mismatches) {
    json c = json::array();
    for (const auto &v : m.objective)
      c.push_back(v.str());
    mismatches.push_back({{"objective", c},
                          {"lp", optional_rational(m.lp_value)},
                          {"lp_status", m.lp_status},
                          {"brute", optional_rational(m.brute_value)}});
  }
  const auto &s = report.size;
  return {{"verdict", report.passed() ? "pass" : "fail"},
          {"trials", report.trials},
          {"seed", report.seed},
          {"support_mismatches", mismatches},
          {"excluded_failures", report.excluded_failures},
          {"membership_failures", report.membership_failures},
          {"size",
           {{"ok", s.ok},
            {"rows", s.rows},
            {"inequalities", s.inequalities},
            {"blocks", s.blocks},
            {"row_bound", optional_size(s.row_bound)},
            {"inequality_bound", optional_size(s.inequality_bound)},
            {"block_bound", optional_size(s.block_bound)},
            {"detail", s.detail}}}};
}

int cmd_solve(const std::string &path, std::ostream &out) {
  Problem p = load_problem(path);
  require_plain(p);
  json result;
  bool found = false;
  if (p.kind == Kind::Binary) {
    auto base = binary_oracle(p.polytope, p.n);
    CountingBinaryOracle oracle(*base);
    BinaryOutcome r = solve_forbidden(oracle, p.forbidden_binary, p.objective);
    found = !r.infeasible();
    result["status"] = found ? "optimal" : "infeasible";
    result["value"] = found ? json(r.optimum->value.str()) : json(nullptr);
    result["vertex"] = found ? to_json(r.optimum->vertex) : json(nullptr);
    result["oracle_calls"] = oracle.calls();
  } else {
    auto base = integral_oracle(p.polytope, p.n);
    CountingIntegralOracle oracle(*base);
    LatticeOutcome r = solve_forbidden_integral(oracle, p.forbidden_lattice, ambient_box(p), p.objective);
    found = !r.infeasible();
    result["status"] = found ? "optimal" : "infeasible";
    result["value"] = found ? json(r.optimum->value.str()) : json(nullptr);
    result["vertex"] = found ? to_json(r.optimum->vertex) : json(nullptr);
    result["oracle_calls"] = oracle.calls();
  }
  out << result.dump(2) << '\n';
  return found ? kOk : kInfeasible;
}

int cmd_kbest(const std::string &path, std::optional<int> k, std::ostream &out) {
  Problem p = load_problem(path);
  require_plain(p);
  if (!k)
    k = p.k;
  if (!k)
    throw ParseError("field 'k': missing (pass -k or set \"k\" in the file)");
  if (*k < 1)
    throw ParseError("k must be positive");
  json result;
  if (p.kind == Kind::Binary) {
    auto base = binary_oracle(p.polytope, p.n);
    CountingBinaryOracle oracle(*base);
    auto best = kbest(oracle, p.objective, *k);
    result["points"] = points_with_values(best.points, p.objective);
    result["exhausted"] = best.exhausted;
    result["oracle_calls"] = oracle.calls();
  } else {
    auto base = integral_oracle(p.polytope, p.n);
    CountingIntegralOracle oracle(*base);
    auto best = kbest_integral(oracle, ambient_box(p), p.objective, *k);
    result["points"] = points_with_values(best.points, p.objective);
    result["exhausted"] = best.exhausted;
    result["oracle_calls"] = oracle.calls();
  }
  out << result.dump(2) << '\n';
  return kOk;
}

int cmd_alldiff(const std::string &path, std::ostream &out) {
  Problem p = load_problem(path);
  if (p.slots.empty())
    throw ParseError("field 'slots': missing");
  json result;
  auto emit = [&](const auto &solution) {
    if (!solution) {
      result = {{"status", "infeasible"}, {"total", nullptr}, {"assignment", json::array()}};
      return false;
    }
    json assignment = json::array();
    for (std::size_t i = 0; i < solution->vertices.size(); ++i)
      assignment.push_back({{"slot", i + 1},
                            {"vertex", to_json(solution->vertices[i])},
                            {"value", p.slots[i].objective.value(solution->vertices[i]).str()}});
    result = {{"status", "optimal"}, {"total", solution->total.str()}, {"assignment", assignment}};
    return true;
  };
  bool found = false;
  if (p.kind == Kind::Binary) {
    std::vector<std::unique_ptr<BinaryOracle>> owned;
    BinaryAlldiffInstance instance;
    for (const auto &slot : p.slots) {
      owned.push_back(binary_oracle(slot.polytope, p.n));
      instance.oracles.push_back(owned.back().get());
      instance.objectives.push_back(slot.objective);
    }
    found = emit(solve_alldiff(instance));
  } else {
    std::vector<std::unique_ptr<IntegralOracle>> owned;
    IntegralAlldiffInstance instance;
    instance.ambient = ambient_box(p);
    for (const auto &slot : p.slots) {
      owned.push_back(integral_oracle(slot.polytope, p.n));
      instance.oracles.push_back(owned.back().get());
      instance.objectives.push_back(slot.objective);
    }
    found = emit(solve_alldiff(instance));
  }
  out << result.dump(2) << '\n';
  return found ? kOk : kInfeasible;
}

int cmd_compile(const std::string &path, const std::string &method,
                const std::optional<std::string> &output, std::ostream &out) {
  Problem p = load_problem(path);
  const std::string text = write_lp(compile_problem(p, method), p.source);
  if (!output) {
    out << text;
    return kOk;
  }
  std::ofstream file(*output, std::ios::binary);
  if (!file)
    throw ParseError("cannot write '" + *output + "'");
  file << text;
  return kOk;
}

int cmd_verify(const std::string &path, const std::optional<std::string> &method, std::size_t trials,
               std::uint64_t seed, std::ostream &out) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  LinearSystem system;
  Problem problem;
  if (first != std::string::npos && text[first] == '{') {
    if (!method)
      throw ParseError("verifying a problem file needs --method");
    try {
      problem = parse_problem(json::parse(text));
    } catch (const json::parse_error &e) {
      throw ParseError(path + ": " + e.what());
    }
    system = compile_problem(problem, *method);
  } else {
    LpFile lp = read_lp(text);
    if (!lp.problem)
      throw ParseError(path + ": LP file carries no embedded problem to verify against");
    problem = parse_problem(*lp.problem);
    system = std::move(lp.system);
  }
  VerificationReport report = verify_against_problem(system, problem, trials, seed);
  out << report_to_json(report).dump(2) << '\n';
  return report.passed() ? kOk : kVerifyFailed;
}

int cmd_enumerate(const std::string &path, std::ostream &out) {
  Problem p = load_problem(path);
  require_plain(p);
  json points = json::array();
  if (p.kind == Kind::Binary) {
    for (const auto &v : allowed_binary(p))
      points.push_back(to_json(v));
  } else {
    for (const auto &v : allowed_lattice(p))
      points.push_back(to_json(v));
  }
  out << json{{"count", points.size()}, {"points", points}}.dump(2) << '\n';
  return kOk;
}

int guarded(const std::function<int()> &command, std::ostream &err) {
  try {
    return command();
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
  } catch (const json::exception &e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

} // namespace fvx::cli
