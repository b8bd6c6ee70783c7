#include "fvx/exact_lp.hpp"

#include "fvx/errors.hpp"
#include "lp_certified.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>

namespace fvx {

std::string to_string(LpStatus status) {
  switch (status) {
  case LpStatus::Optimal:
    return "optimal";
  case LpStatus::Infeasible:
    return "infeasible";
  case LpStatus::Unbounded:
    return "unbounded";
  }
  return "?";
}

namespace {

// How a system variable is expressed through nonnegative tableau columns:
//   Fixed:   x = offset
//   Lower:   x = offset + z[col]
//   Upper:   x = offset - z[col]
//   Free:    x = z[col] - z[col2]
enum class Mapping { Fixed, Lower, Upper, Free };

struct ColumnMap {
  Mapping kind = Mapping::Free;
  std::size_t col = 0;
  std::size_t col2 = 0;
  mpq_class offset;
};

using detail::StdRow;

// Standard-form row count from which floating-point pivoting with an exact
// basis certificate replaces the rational tableau.
constexpr std::size_t kCertifiedRows = 64;

/// Dense simplex tableau in standard form: min d^T z, T z = rhs, z >= 0.
class Tableau {
public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows, std::vector<mpq_class>(cols)), rhs_(rows), basis_(rows), cost_(cols),
        cols_(cols) {}

  std::vector<std::vector<mpq_class>> rows_;
  std::vector<mpq_class> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<mpq_class> cost_; // reduced costs
  mpq_class neg_value_;         // -(objective value)
  std::size_t cols_;
  std::size_t allowed_cols_ = 0; // columns >= this never enter

  void pivot(std::size_t r, std::size_t c) {
    auto &prow = rows_[r];
    mpq_class piv = prow[c];
    if (piv != 1) {
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(prow[j]) != 0)
          prow[j] /= piv;
      rhs_[r] /= piv;
    }
    nz_.clear();
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(prow[j]) != 0)
        nz_.push_back(j);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || sgn(rows_[i][c]) == 0)
        continue;
      eliminate(rows_[i], rhs_[i], r, c);
    }
    if (sgn(cost_[c]) != 0)
      eliminate(cost_, neg_value_, r, c);
    basis_[r] = c;
  }

  enum class Step { Optimal, Pivoted, Unbounded };

  /// Bland's rule: lowest-index improving column, then the lowest basic
  /// index among minimum-ratio rows.
  Step step() {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < allowed_cols_; ++j)
      if (sgn(cost_[j]) < 0) {
        enter = j;
        break;
      }
    if (!enter)
      return Step::Optimal;
    const std::size_t c = *enter;
    std::optional<std::size_t> leave;
    mpq_class best, ratio;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (sgn(rows_[i][c]) <= 0)
        continue;
      ratio = rhs_[i] / rows_[i][c];
      if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave)
      return Step::Unbounded;
    pivot(*leave, c);
    return Step::Pivoted;
  }

  Step run() {
    while (true) {
      Step s = step();
      if (s != Step::Pivoted)
        return s;
    }
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  void truncate_columns(std::size_t cols) {
    for (auto &row : rows_)
      row.resize(cols);
    cost_.resize(cols);
    cols_ = cols;
    allowed_cols_ = std::min(allowed_cols_, cols);
  }

private:
  std::vector<std::size_t> nz_;
  mpq_class factor_, tmp_;

  // row -= row[c] * rows_[r], touching only the pivot row's nonzeros.
  void eliminate(std::vector<mpq_class> &row, mpq_class &rhs, std::size_t r, std::size_t c) {
    const auto &prow = rows_[r];
    factor_ = row[c];
    for (std::size_t j : nz_) {
      mpq_mul(tmp_.get_mpq_t(), factor_.get_mpq_t(), prow[j].get_mpq_t());
      mpq_sub(row[j].get_mpq_t(), row[j].get_mpq_t(), tmp_.get_mpq_t());
    }
    if (sgn(rhs_[r]) != 0) {
      mpq_mul(tmp_.get_mpq_t(), factor_.get_mpq_t(), rhs_[r].get_mpq_t());
      mpq_sub(rhs.get_mpq_t(), rhs.get_mpq_t(), tmp_.get_mpq_t());
    }
  }
};

class SimplexSolver {
public:
  SimplexSolver(const LinearSystem &sys, const std::map<std::size_t, Rational> &pins)
      : sys_(sys) {
    build(pins);
  }

  bool trivially_infeasible() const { return infeasible_; }
  bool large() const { return std_rows_.size() >= kCertifiedRows; }

  // Runs phase 1; false if infeasible.
  bool phase_one();
  LpStatus phase_two(std::span<const Term> objective, Sense sense);
  std::vector<Rational> point() const;

  std::vector<mpq_class> structural_cost(std::span<const Term> objective, Sense sense) const;
  detail::CertifiedResult certified(const std::vector<mpq_class> *cost) const {
    return detail::solve_certified(structural_, std_rows_, cost);
  }
  std::vector<Rational> point_from(const std::vector<mpq_class> &z) const;

private:
  const LinearSystem &sys_;
  std::vector<ColumnMap> map_;
  std::size_t structural_ = 0;
  std::vector<StdRow> std_rows_;
  std::optional<Tableau> tab_;
  std::size_t artificial_begin_ = 0;
  bool infeasible_ = false;

  void build(const std::map<std::size_t, Rational> &pins);
};

void SimplexSolver::build(const std::map<std::size_t, Rational> &pins) {
  const auto &vars = sys_.variables();
  map_.resize(vars.size());
  std::vector<StdRow> bound_rows;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    std::optional<mpq_class> lo, hi;
    if (vars[v].lower)
      lo = vars[v].lower->raw();
    if (vars[v].upper)
      hi = vars[v].upper->raw();
    if (auto it = pins.find(v); it != pins.end()) {
      const mpq_class &val = it->second.raw();
      if ((lo && val < *lo) || (hi && val > *hi))
        infeasible_ = true;
      lo = hi = val;
    }
    if (lo && hi && *hi < *lo) {
      infeasible_ = true;
      hi = lo;
    }
    auto &m = map_[v];
    if (lo && hi && *lo == *hi) {
      m.kind = Mapping::Fixed;
      m.offset = *lo;
    } else if (lo) {
      m.kind = Mapping::Lower;
      m.offset = *lo;
      m.col = structural_++;
      if (hi) {
        StdRow r;
        r.coeffs.emplace_back(m.col, 1);
        r.rel = Relation::LessEqual;
        r.rhs = *hi - *lo;
        bound_rows.push_back(std::move(r));
      }
    } else if (hi) {
      m.kind = Mapping::Upper;
      m.offset = *hi;
      m.col = structural_++;
    } else {
      m.kind = Mapping::Free;
      m.col = structural_++;
      m.col2 = structural_++;
    }
  }

  for (const auto &c : sys_.constraints()) {
    StdRow r;
    r.rel = c.rel;
    r.rhs = c.rhs.raw();
    std::map<std::size_t, mpq_class> acc;
    for (const auto &t : c.terms) {
      const auto &m = map_[t.var];
      const mpq_class &a = t.coeff.raw();
      switch (m.kind) {
      case Mapping::Fixed:
        r.rhs -= a * m.offset;
        break;
      case Mapping::Lower:
        r.rhs -= a * m.offset;
        acc[m.col] += a;
        break;
      case Mapping::Upper:
        r.rhs -= a * m.offset;
        acc[m.col] -= a;
        break;
      case Mapping::Free:
        acc[m.col] += a;
        acc[m.col2] -= a;
        break;
      }
    }
    for (auto &[col, a] : acc)
      if (sgn(a) != 0)
        r.coeffs.emplace_back(col, std::move(a));
    if (r.coeffs.empty()) {
      // Constant row: decide it now.
      int s = sgn(r.rhs);
      bool ok = (r.rel == Relation::LessEqual && s >= 0) || (r.rel == Relation::Equal && s == 0) ||
                (r.rel == Relation::GreaterEqual && s <= 0);
      if (!ok)
        infeasible_ = true;
      continue;
    }
    std_rows_.push_back(std::move(r));
  }
  for (auto &r : bound_rows)
    std_rows_.push_back(std::move(r));

  // Normalize to rhs >= 0.
  for (auto &r : std_rows_) {
    if (sgn(r.rhs) < 0) {
      r.rhs = -r.rhs;
      for (auto &[col, a] : r.coeffs)
        a = -a;
      if (r.rel == Relation::LessEqual)
        r.rel = Relation::GreaterEqual;
      else if (r.rel == Relation::GreaterEqual)
        r.rel = Relation::LessEqual;
    }
  }
}

bool SimplexSolver::phase_one() {
  if (infeasible_)
    return false;
  const std::size_t m = std_rows_.size();
  std::size_t slacks = 0, artificials = 0;
  for (const auto &r : std_rows_) {
    if (r.rel != Relation::Equal)
      ++slacks;
    if (r.rel != Relation::LessEqual)
      ++artificials;
  }
  const std::size_t cols = structural_ + slacks + artificials;
  artificial_begin_ = structural_ + slacks;
  tab_.emplace(m, cols);
  auto &t = *tab_;
  std::size_t next_slack = structural_, next_art = artificial_begin_;
  for (std::size_t i = 0; i < m; ++i) {
    const auto &r = std_rows_[i];
    for (const auto &[col, a] : r.coeffs)
      t.rows_[i][col] = a;
    t.rhs_[i] = r.rhs;
    if (r.rel == Relation::LessEqual) {
      t.rows_[i][next_slack] = 1;
      t.basis_[i] = next_slack++;
    } else {
      if (r.rel == Relation::GreaterEqual)
        t.rows_[i][next_slack++] = -1;
      t.rows_[i][next_art] = 1;
      t.basis_[i] = next_art++;
    }
  }
  // Phase-1 reduced costs: minimize the sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis_[i] < artificial_begin_)
      continue;
    for (std::size_t j = 0; j < artificial_begin_; ++j)
      if (sgn(t.rows_[i][j]) != 0)
        t.cost_[j] -= t.rows_[i][j];
    t.neg_value_ -= t.rhs_[i];
  }
  t.allowed_cols_ = artificial_begin_;
  if (artificials > 0) {
    auto s = t.run();
    (void)s; // phase 1 is bounded below by zero
    if (sgn(t.neg_value_) != 0)
      return false;
    // Drive zero-valued artificials out of the basis.
    for (std::size_t i = 0; i < t.rows_.size();) {
      if (t.basis_[i] < artificial_begin_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < artificial_begin_; ++j)
        if (sgn(t.rows_[i][j]) != 0) {
          col = j;
          break;
        }
      if (col) {
        t.pivot(i, *col);
        ++i;
      } else {
        t.drop_row(i);
      }
    }
  }
  t.truncate_columns(artificial_begin_);
  return true;
}

std::vector<mpq_class> SimplexSolver::structural_cost(std::span<const Term> objective, Sense sense) const {
  std::vector<mpq_class> c(structural_);
  for (const auto &term : objective) {
    if (term.var >= map_.size())
      throw DomainError("objective references undeclared variable");
    mpq_class a = term.coeff.raw();
    if (sense == Sense::Maximize)
      a = -a;
    const auto &m = map_[term.var];
    switch (m.kind) {
    case Mapping::Fixed:
      break;
    case Mapping::Lower:
      c[m.col] += a;
      break;
    case Mapping::Upper:
      c[m.col] -= a;
      break;
    case Mapping::Free:
      c[m.col] += a;
      c[m.col2] -= a;
      break;
    }
  }
  return c;
}

LpStatus SimplexSolver::phase_two(std::span<const Term> objective, Sense sense) {
  auto &t = *tab_;
  std::vector<mpq_class> c = structural_cost(objective, sense);
  c.resize(t.cols_);
  t.cost_ = c;
  t.neg_value_ = 0;
  for (std::size_t i = 0; i < t.rows_.size(); ++i) {
    const mpq_class &cb = c[t.basis_[i]];
    if (sgn(cb) == 0)
      continue;
    for (std::size_t j = 0; j < t.cols_; ++j)
      if (sgn(t.rows_[i][j]) != 0)
        t.cost_[j] -= cb * t.rows_[i][j];
    t.neg_value_ -= cb * t.rhs_[i];
  }
  t.allowed_cols_ = t.cols_;
  return t.run() == Tableau::Step::Optimal ? LpStatus::Optimal : LpStatus::Unbounded;
}

std::vector<Rational> SimplexSolver::point() const {
  std::vector<mpq_class> z(structural_);
  const auto &t = *tab_;
  for (std::size_t i = 0; i < t.rows_.size(); ++i)
    if (t.basis_[i] < structural_)
      z[t.basis_[i]] = t.rhs_[i];
  return point_from(z);
}

std::vector<Rational> SimplexSolver::point_from(const std::vector<mpq_class> &z) const {
  std::vector<Rational> x;
  x.reserve(map_.size());
  for (const auto &m : map_) {
    switch (m.kind) {
    case Mapping::Fixed:
      x.emplace_back(m.offset);
      break;
    case Mapping::Lower:
      x.emplace_back(mpq_class(m.offset + z[m.col]));
      break;
    case Mapping::Upper:
      x.emplace_back(mpq_class(m.offset - z[m.col]));
      break;
    case Mapping::Free:
      x.emplace_back(mpq_class(z[m.col] - z[m.col2]));
      break;
    }
  }
  return x;
}

LpResult run(const LinearSystem &system, std::span<const Term> objective, Sense sense,
             const std::map<std::size_t, Rational> &pins, LpEngine engine) {
  if (system.variables().empty())
    throw DomainError("linear program without variables");
  SimplexSolver solver(system, pins);
  LpResult result;
  if (engine == LpEngine::Automatic && !solver.trivially_infeasible() && solver.large()) {
    const std::vector<mpq_class> cost = solver.structural_cost(objective, sense);
    auto certified = solver.certified(&cost);
    result.certified = certified.status != detail::CertifiedStatus::Unavailable;
    switch (certified.status) {
    case detail::CertifiedStatus::Optimal:
      result.status = LpStatus::Optimal;
      result.point = solver.point_from(certified.z);
      for (const auto &term : objective)
        result.value += term.coeff * result.point[term.var];
      return result;
    case detail::CertifiedStatus::Infeasible:
      result.status = LpStatus::Infeasible;
      return result;
    case detail::CertifiedStatus::Unbounded:
      result.status = LpStatus::Unbounded;
      return result;
    case detail::CertifiedStatus::Unavailable:
      break;
    }
  }
  if (!solver.phase_one()) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  result.status = solver.phase_two(objective, sense);
  if (result.status != LpStatus::Optimal)
    return result;
  result.point = solver.point();
  for (const auto &term : objective)
    result.value += term.coeff * result.point[term.var];
  return result;
}

} // namespace

LpResult solve_lp(const LinearSystem &system, std::span<const Term> objective, Sense sense, LpEngine engine) {
  return run(system, objective, sense, {}, engine);
}

LpResult solve_lp(const LinearSystem &system, const std::vector<Rational> &original_objective,
                  Sense sense, LpEngine engine) {
  if (original_objective.size() != static_cast<std::size_t>(system.original()))
    throw DomainError("objective length does not match the original variables");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < original_objective.size(); ++i)
    if (original_objective[i].sign() != 0)
      terms.push_back({i, original_objective[i]});
  return run(system, terms, sense, {}, engine);
}

static bool feasible_impl(const LinearSystem &system, const std::map<std::size_t, Rational> &pins,
                          LpEngine engine) {
  SimplexSolver solver(system, pins);
  if (engine == LpEngine::Automatic && !solver.trivially_infeasible() && solver.large()) {
    auto certified = solver.certified(nullptr);
    if (certified.status == detail::CertifiedStatus::Optimal)
      return true;
    if (certified.status == detail::CertifiedStatus::Infeasible)
      return false;
  }
  return solver.phase_one();
}

bool feasible(const LinearSystem &system, LpEngine engine) { return feasible_impl(system, {}, engine); }

bool feasible_with_fixings(const LinearSystem &system, const std::map<int, Rational> &fixings) {
  std::map<std::size_t, Rational> pins;
  for (const auto &[i, value] : fixings) {
    if (i < 1 || i > system.original())
      throw DomainError("fixing key x" + std::to_string(i) + " is not an original variable");
    pins.emplace(static_cast<std::size_t>(i - 1), value);
  }
  return feasible_impl(system, pins, LpEngine::Automatic);
}

} // namespace fvx
