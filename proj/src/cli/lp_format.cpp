#include "fvx/cli/lp_format.hpp"

#include "fvx/errors.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace fvx::cli {

namespace {

constexpr const char *kMetaTag = "\\ fvx-meta ";
constexpr const char *kProblemTag = "\\ fvx-problem ";

std::string relation_token(Relation rel) {
  switch (rel) {
  case Relation::LessEqual:
    return "<=";
  case Relation::Equal:
    return "=";
  case Relation::GreaterEqual:
    return ">=";
  }
  return "=";
}

void write_terms(std::ostream &out, const LinearSystem &sys, const std::vector<Term> &terms) {
  if (terms.empty()) {
    out << "0 " << sys.variables().front().name;
    return;
  }
  bool first = true;
  for (const auto &t : terms) {
    const bool negative = t.coeff.sign() < 0;
    const Rational magnitude = negative ? -t.coeff : t.coeff;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    if (magnitude != Rational(1))
      out << magnitude.str() << ' ';
    out << sys.variables()[t.var].name;
    first = false;
  }
}

std::vector<std::string> tokens(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok)
    out.push_back(tok);
  return out;
}

bool is_relation(const std::string &tok) { return tok == "<=" || tok == ">=" || tok == "="; }

Relation relation_of(const std::string &tok) {
  if (tok == "<=")
    return Relation::LessEqual;
  if (tok == ">=")
    return Relation::GreaterEqual;
  return Relation::Equal;
}

struct RawRow {
  std::vector<std::pair<std::string, Rational>> terms;
  Relation rel = Relation::Equal;
  Rational rhs;
};

RawRow parse_row(const std::string &body, int line_no) {
  auto toks = tokens(body);
  RawRow row;
  Rational sign(1);
  std::optional<Rational> coeff;
  std::size_t i = 0;
  auto bad = [&](const std::string &why) {
    throw ParseError("LP line " + std::to_string(line_no) + ": " + why);
  };
  for (; i < toks.size(); ++i) {
    const std::string &tok = toks[i];
    if (is_relation(tok))
      break;
    if (tok == "+" || tok == "-") {
      sign = tok == "-" ? Rational(-1) : Rational(1);
      continue;
    }
    std::string name = tok;
    if (name.front() == '-') {
      sign = -sign;
      name.erase(0, 1);
    }
    if (!name.empty() && (std::isdigit(static_cast<unsigned char>(name.front())) != 0)) {
      coeff = Rational::parse(name);
      continue;
    }
    if (name.empty())
      bad("dangling sign");
    Rational c = sign * coeff.value_or(Rational(1));
    row.terms.emplace_back(name, c);
    sign = Rational(1);
    coeff.reset();
  }
  if (i + 2 != toks.size())
    bad("expected '<relation> <rhs>' at the end of the row");
  row.rel = relation_of(toks[i]);
  row.rhs = Rational::parse(toks[i + 1]);
  return row;
}

std::optional<Rational> bound_value(const std::string &tok) {
  if (tok == "-inf" || tok == "+inf" || tok == "inf")
    return std::nullopt;
  return Rational::parse(tok);
}

} // namespace

std::string write_lp(const LinearSystem &system, const std::optional<nlohmann::ordered_json> &problem) {
  system.validate();
  std::ostringstream out;
  const auto &m = system.meta();
  out << kMetaTag << "n=" << system.original() << " method=" << (m.method.empty() ? "-" : m.method)
      << " forbidden=" << m.forbidden << " base_rows=" << m.base_rows << " facets=" << m.facets
      << " family=" << m.family << " blocks=" << m.blocks << " dropped=" << m.dropped << '\n';
  if (problem)
    out << kProblemTag << problem->dump() << '\n';
  out << "Minimize\n obj: 0 " << system.variables().front().name << "\nSubject To\n";
  std::size_t r = 0;
  for (const auto &c : system.constraints()) {
    out << " r" << ++r << ": ";
    write_terms(out, system, c.terms);
    out << ' ' << relation_token(c.rel) << ' ' << c.rhs.str() << '\n';
  }
  out << "Bounds\n";
  for (const auto &v : system.variables()) {
    out << ' ';
    if (v.is_fixed())
      out << v.name << " = " << v.lower->str();
    else if (v.lower && v.upper)
      out << v.lower->str() << " <= " << v.name << " <= " << v.upper->str();
    else if (v.lower)
      out << v.name << " >= " << v.lower->str();
    else if (v.upper)
      out << "-inf <= " << v.name << " <= " << v.upper->str();
    else
      out << v.name << " free";
    out << '\n';
  }
  out << "End\n";
  return out.str();
}

LpFile read_lp(const std::string &text) {
  enum class Section { Header, Objective, Rows, Bounds, Done } section = Section::Header;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  LpFile file;
  FormulationMeta meta;
  std::optional<int> n;
  std::vector<RawRow> rows;
  std::vector<Variable> vars;
  std::map<std::string, std::size_t> index;

  auto bad = [&](const std::string &why) {
    throw ParseError("LP line " + std::to_string(line_no) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind(kMetaTag, 0) == 0) {
      for (const auto &kv : tokens(line.substr(std::string(kMetaTag).size()))) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
          bad("malformed metadata '" + kv + "'");
        const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "method")
          meta.method = value == "-" ? "" : value;
        else if (key == "n")
          n = std::stoi(value);
        else {
          const std::size_t num = std::stoul(value);
          if (key == "forbidden")
            meta.forbidden = num;
          else if (key == "base_rows")
            meta.base_rows = num;
          else if (key == "facets")
            meta.facets = num;
          else if (key == "family")
            meta.family = num;
          else if (key == "blocks")
            meta.blocks = num;
          else if (key == "dropped")
            meta.dropped = num;
        }
      }
      continue;
    }
    if (line.rfind(kProblemTag, 0) == 0) {
      try {
        file.problem = nlohmann::ordered_json::parse(line.substr(std::string(kProblemTag).size()));
      } catch (const nlohmann::ordered_json::parse_error &e) {
        bad(std::string("embedded problem: ") + e.what());
      }
      continue;
    }
    auto toks = tokens(line);
    if (toks.empty() || toks.front().front() == '\\')
      continue;
    if (toks.size() == 1) {
      const std::string &word = toks.front();
      if (word == "Minimize" || word == "Maximize") {
        section = Section::Objective;
        continue;
      }
      if (word == "End") {
        section = Section::Done;
        continue;
      }
    }
    if (toks.size() == 2 && toks[0] == "Subject" && toks[1] == "To") {
      section = Section::Rows;
      continue;
    }
    if (toks.size() == 1 && toks[0] == "Bounds") {
      section = Section::Bounds;
      continue;
    }
    switch (section) {
    case Section::Header:
    case Section::Done:
      bad("unexpected content outside a section");
    case Section::Objective:
      break;
    case Section::Rows: {
      auto colon = line.find(':');
      if (colon == std::string::npos)
        bad("constraint without a name");
      try {
        rows.push_back(parse_row(line.substr(colon + 1), line_no));
      } catch (const DomainError &e) {
        bad(e.what());
      }
      break;
    }
    case Section::Bounds: {
      Variable v;
      try {
        if (toks.size() == 2 && toks[1] == "free") {
          v.name = toks[0];
        } else if (toks.size() == 3 && toks[1] == "=") {
          v.name = toks[0];
          v.lower = v.upper = Rational::parse(toks[2]);
        } else if (toks.size() == 3 && toks[1] == ">=") {
          v.name = toks[0];
          v.lower = Rational::parse(toks[2]);
        } else if (toks.size() == 3 && toks[1] == "<=") {
          v.name = toks[0];
          v.upper = Rational::parse(toks[2]);
        } else if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
          v.name = toks[2];
          v.lower = bound_value(toks[0]);
          v.upper = bound_value(toks[4]);
        } else {
          bad("unsupported bound syntax");
        }
      } catch (const DomainError &e) {
        bad(e.what());
      }
      if (index.count(v.name))
        bad("variable '" + v.name + "' bounded twice");
      index.emplace(v.name, vars.size());
      vars.push_back(std::move(v));
      break;
    }
    }
  }
  if (section != Section::Done)
    throw ParseError("LP file does not end with 'End'");
  if (!n) {
    int count = 0;
    while (count < static_cast<int>(vars.size()) && vars[static_cast<std::size_t>(count)].name == "x" + std::to_string(count + 1))
      ++count;
    n = count;
  }
  if (*n < 1 || *n > static_cast<int>(vars.size()))
    throw ParseError("LP file declares " + std::to_string(*n) + " original variables but bounds " +
                     std::to_string(vars.size()));

  LinearSystem sys(*n);
  for (int i = 0; i < *n; ++i) {
    auto &dst = sys.variables()[static_cast<std::size_t>(i)];
    if (vars[static_cast<std::size_t>(i)].name != dst.name)
      throw ParseError("variable " + std::to_string(i + 1) + " must be named " + dst.name);
    dst.lower = vars[static_cast<std::size_t>(i)].lower;
    dst.upper = vars[static_cast<std::size_t>(i)].upper;
  }
  for (std::size_t i = static_cast<std::size_t>(*n); i < vars.size(); ++i)
    sys.add_variable(vars[i].name, vars[i].lower, vars[i].upper);
  for (const auto &raw : rows) {
    Constraint c;
    c.rel = raw.rel;
    c.rhs = raw.rhs;
    for (const auto &[name, coeff] : raw.terms) {
      auto it = index.find(name);
      if (it == index.end())
        throw ParseError("variable '" + name + "' appears in a row but not in Bounds");
      if (coeff.sign() != 0)
        c.terms.push_back({it->second, coeff});
    }
    sys.add_constraint(std::move(c));
  }
  sys.meta() = meta;
  file.system = std::move(sys);
  return file;
}

} // namespace fvx::cli
