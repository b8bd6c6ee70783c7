#include "lp_certified.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>

namespace fvx::detail {
namespace {

using i128 = __int128;

// ------------------------------------------------------------ integer data

// Standard form  A z = b, 0 <= z <= u  with integer rows. Rows of the shape
// a z_j <= r with a > 0 become upper bounds. Columns are structural, then one
// slack per remaining inequality, then one artificial per row that is not <=.
struct IntegerForm {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t structural = 0;
  std::size_t art_begin = 0;
  std::vector<std::int64_t> a; // row-major m x n
  std::vector<mpz_class> b;
  std::vector<std::optional<mpq_class>> upper;
  std::vector<mpz_class> cost;  // phase 2, zero outside the structural columns
  std::vector<mpz_class> cost1; // phase 1, positive on artificials only
  std::vector<int> exponent;    // float row i = integer row i * 2^-exponent[i]

  [[nodiscard]] std::int64_t at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

bool fits_entry(const mpz_class &v) { return mpz_sizeinbase(v.get_mpz_t(), 2) <= 62; }

mpz_class scaled(const mpq_class &q, const mpz_class &scale) {
  return q.get_num() * (scale / q.get_den());
}

bool is_upper_bound(const StdRow &r) {
  return r.rel == Relation::LessEqual && r.coeffs.size() == 1 && sgn(r.coeffs.front().second) > 0;
}

std::optional<IntegerForm> integerize(std::size_t structural, const std::vector<StdRow> &all_rows,
                                      const std::vector<mpq_class> *cost) {
  IntegerForm f;
  f.structural = structural;
  f.upper.resize(structural);
  std::vector<const StdRow *> rows;
  for (const auto &r : all_rows) {
    if (!is_upper_bound(r)) {
      rows.push_back(&r);
      continue;
    }
    const auto &[col, coeff] = r.coeffs.front();
    mpq_class u = r.rhs / coeff;
    if (!f.upper[col] || u < *f.upper[col])
      f.upper[col] = u;
  }
  f.m = rows.size();
  std::size_t slacks = 0, arts = 0;
  for (const StdRow *r : rows) {
    slacks += r->rel != Relation::Equal ? 1 : 0;
    arts += r->rel != Relation::LessEqual ? 1 : 0;
  }
  f.art_begin = structural + slacks;
  f.n = f.art_begin + arts;
  f.upper.resize(f.n);
  f.a.assign(f.m * f.n, 0);
  f.b.resize(f.m);
  f.exponent.resize(f.m);
  f.cost1.assign(f.n, 0);
  std::size_t next_slack = structural, next_art = f.art_begin;
  std::vector<std::size_t> art_of_row(f.m, f.n);
  for (std::size_t i = 0; i < f.m; ++i) {
    const StdRow &r = *rows[i];
    mpz_class scale = r.rhs.get_den();
    for (const auto &[col, v] : r.coeffs)
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
    std::int64_t largest = 1;
    for (const auto &[col, v] : r.coeffs) {
      mpz_class s = scaled(v, scale);
      if (!fits_entry(s))
        return std::nullopt;
      const std::int64_t e = s.get_si();
      f.a[i * f.n + col] = e;
      largest = std::max(largest, e < 0 ? -e : e);
    }
    f.b[i] = scaled(r.rhs, scale);
    if (mpz_sizeinbase(f.b[i].get_mpz_t(), 2) > 900)
      return std::nullopt;
    f.exponent[i] = std::ilogb(static_cast<double>(largest));
    if (r.rel == Relation::LessEqual) {
      f.a[i * f.n + next_slack++] = 1;
    } else {
      if (r.rel == Relation::GreaterEqual)
        f.a[i * f.n + next_slack++] = -1;
      art_of_row[i] = next_art;
      f.a[i * f.n + next_art++] = 1;
    }
  }
  // The float phase 1 weighs every artificial by 1 in scaled units, which is
  // 2^-exponent in integer units; shift everything to integers.
  int top = 0;
  for (int e : f.exponent)
    top = std::max(top, e);
  for (std::size_t i = 0; i < f.m; ++i)
    if (art_of_row[i] < f.n)
      f.cost1[art_of_row[i]] = mpz_class(1) << static_cast<mp_bitcnt_t>(top - f.exponent[i]);
  f.cost.assign(f.n, 0);
  if (cost) {
    mpz_class scale = 1;
    for (const auto &c : *cost)
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
    for (std::size_t j = 0; j < cost->size(); ++j)
      f.cost[j] = scaled((*cost)[j], scale);
  }
  return f;
}

// ------------------------------------------------------------ exact solves

struct RationalVector {
  std::vector<mpz_class> num;
  mpz_class den = 1;
};

constexpr std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1U)
      r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return r;
}

template <std::uint64_t P> class ModularLU {
public:
  // Factors the k x k row-major matrix modulo P; false if singular.
  bool factor(const std::vector<std::int64_t> &mat, std::size_t k) {
    k_ = k;
    lu_.resize(k * k);
    perm_.resize(k);
    inv_diag_.resize(k);
    for (std::size_t i = 0; i < k * k; ++i) {
      const std::int64_t v = mat[i] % static_cast<std::int64_t>(P);
      lu_[i] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<std::int64_t>(P) : v);
    }
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t r = c;
      while (r < k && lu_[r * k + c] == 0)
        ++r;
      if (r == k)
        return false;
      if (r != c) {
        std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(r * k),
                         lu_.begin() + static_cast<std::ptrdiff_t>(r * k + k),
                         lu_.begin() + static_cast<std::ptrdiff_t>(c * k));
        std::swap(perm_[r], perm_[c]);
      }
      const std::uint64_t inv = pow_mod(lu_[c * k + c], P - 2, P);
      inv_diag_[c] = inv;
      const std::uint64_t *prow = &lu_[c * k];
      for (std::size_t i = c + 1; i < k; ++i) {
        std::uint64_t *row = &lu_[i * k];
        if (row[c] == 0)
          continue;
        row[c] = row[c] * inv % P;
        const std::uint64_t neg = P - row[c];
        for (std::size_t j = c + 1; j < k; ++j)
          row[j] = (row[j] + neg * prow[j]) % P;
      }
    }
    return true;
  }

  // Overwrites r with the solution of  B x = r  (mod P).
  void solve(std::vector<std::uint64_t> &r) const {
    tmp_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i)
      tmp_[i] = r[perm_[i]];
    for (std::size_t i = 0; i < k_; ++i) {
      const std::uint64_t *row = &lu_[i * k_];
      std::uint64_t s = tmp_[i];
      for (std::size_t j = 0; j < i; ++j)
        if (row[j])
          s = (s + (P - row[j]) * tmp_[j]) % P;
      tmp_[i] = s;
    }
    for (std::size_t i = k_; i-- > 0;) {
      const std::uint64_t *row = &lu_[i * k_];
      std::uint64_t s = tmp_[i];
      for (std::size_t j = i + 1; j < k_; ++j)
        if (row[j])
          s = (s + (P - row[j]) * r[j]) % P;
      r[i] = s * inv_diag_[i] % P;
    }
  }

private:
  std::size_t k_ = 0;
  std::vector<std::uint64_t> lu_;
  std::vector<std::size_t> perm_;
  std::vector<std::uint64_t> inv_diag_;
  mutable std::vector<std::uint64_t> tmp_;
};

void add_i128(mpz_class &acc, i128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class m(static_cast<unsigned long>(mag >> 64));
  m <<= 64;
  m += static_cast<unsigned long>(mag & ~std::uint64_t{0});
  if (negative)
    acc -= m;
  else
    acc += m;
}

void addmul_si(mpz_class &acc, const mpz_class &x, std::int64_t a) {
  if (a > 0)
    mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(a));
  else if (a < 0)
    mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-a));
}

// n/d with |n|, d <= bound and n ≡ u d (mod m).
std::optional<std::pair<mpz_class, mpz_class>> rational_reconstruction(const mpz_class &u, const mpz_class &m,
                                                                       const mpz_class &bound) {
  mpz_class r0 = m, r1 = u, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (sgn(t1) == 0 || abs(t1) > bound)
    return std::nullopt;
  if (sgn(t1) < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  return std::make_pair(r1, t1);
}

std::optional<RationalVector> reconstruct(const std::vector<mpz_class> &x, const mpz_class &m) {
  mpz_class half = m / 2, bound;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  RationalVector out;
  out.num.resize(x.size());
  mpz_class a;
  for (std::size_t j = 0; j < x.size(); ++j) {
    a = x[j] * out.den;
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (a > half)
      a -= m;
    if (abs(a) <= bound) {
      out.num[j] = a;
      continue;
    }
    auto nd = rational_reconstruction(x[j], m, bound);
    if (!nd)
      return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), out.den.get_mpz_t(), nd->second.get_mpz_t());
    const mpz_class grow = nd->second / g;
    if (grow != 1) {
      for (std::size_t i = 0; i < j; ++i)
        out.num[i] *= grow;
      out.den *= grow;
    }
    out.num[j] = nd->first * (out.den / nd->second);
  }
  return out;
}

bool satisfies(const std::vector<std::int64_t> &mat, std::size_t k, const RationalVector &x,
               const std::vector<mpz_class> &v) {
  mpz_class acc;
  for (std::size_t i = 0; i < k; ++i) {
    acc = 0;
    for (std::size_t j = 0; j < k; ++j)
      addmul_si(acc, x.num[j], mat[i * k + j]);
    if (acc != x.den * v[i])
      return false;
  }
  return true;
}

// Dixon's p-adic lifting for  mat x = v  with a nonsingular integer matrix.
template <std::uint64_t P>
std::optional<RationalVector> dixon(const std::vector<std::int64_t> &mat, std::size_t k,
                                    const std::vector<mpz_class> &v) {
  ModularLU<P> lu;
  if (!lu.factor(mat, k))
    return std::nullopt;
  // Hadamard bounds on the determinant and the Cramer numerators.
  double log_cols = 0, log_rows = 0;
  for (std::size_t j = 0; j < k; ++j) {
    long double cs = 0, rs = 0;
    for (std::size_t i = 0; i < k; ++i) {
      cs += static_cast<long double>(mat[i * k + j]) * static_cast<long double>(mat[i * k + j]);
      rs += static_cast<long double>(mat[j * k + i]) * static_cast<long double>(mat[j * k + i]);
    }
    log_cols += 0.5 * std::log2(static_cast<double>(std::max<long double>(cs, 1)));
    log_rows += 0.5 * std::log2(static_cast<double>(std::max<long double>(rs, 1)));
  }
  double log_v = 0;
  for (const auto &e : v)
    log_v = std::max(log_v, static_cast<double>(mpz_sizeinbase(e.get_mpz_t(), 2)));
  log_v += 0.5 * std::log2(static_cast<double>(k) + 1) + 1;
  const double log_bound = std::min(log_cols, log_rows) + log_v;
  const auto digits = static_cast<std::size_t>(std::ceil((2 * log_bound + 2) / std::log2(static_cast<double>(P)))) + 1;

  std::vector<mpz_class> r = v, x(k);
  std::vector<std::uint64_t> digit(k);
  mpz_class pk = 1;
  std::size_t next_check = 1;
  for (std::size_t d = 1; d <= digits; ++d) {
    for (std::size_t i = 0; i < k; ++i)
      digit[i] = mpz_fdiv_ui(r[i].get_mpz_t(), P);
    lu.solve(digit);
    for (std::size_t i = 0; i < k; ++i)
      if (digit[i])
        mpz_addmul_ui(x[i].get_mpz_t(), pk.get_mpz_t(), digit[i]);
    pk *= static_cast<unsigned long>(P);
    for (std::size_t i = 0; i < k; ++i) {
      i128 s = 0;
      const std::int64_t *row = &mat[i * k];
      for (std::size_t j = 0; j < k; ++j)
        s += static_cast<i128>(row[j]) * static_cast<i128>(digit[j]);
      add_i128(r[i], -s);
      mpz_divexact_ui(r[i].get_mpz_t(), r[i].get_mpz_t(), P);
    }
    if (d == next_check || d == digits) {
      next_check *= 2;
      auto candidate = reconstruct(x, pk);
      if (candidate && satisfies(mat, k, *candidate, v))
        return candidate;
    }
  }
  return std::nullopt;
}

std::optional<RationalVector> solve_exact(const std::vector<std::int64_t> &mat, std::size_t k,
                                          const std::vector<mpz_class> &v) {
  if (k == 0)
    return RationalVector{};
  if (auto x = dixon<2147483647ULL>(mat, k, v))
    return x;
  if (auto x = dixon<2147483629ULL>(mat, k, v))
    return x;
  return dixon<2147483587ULL>(mat, k, v);
}


// ------------------------------------------------------------ float simplex

// Bounded primal simplex on a dense tableau. Nonbasic columns sit at zero or
// at their upper bound.
class FloatSimplex {
public:
  enum class Result { Optimal, Unbounded, Stalled };

  explicit FloatSimplex(const IntegerForm &f) : f_(f), n_(f.n) {
    data_.resize(f.m * n_);
    rhs_data_.resize(f.m);
    upper_.assign(n_, std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < n_; ++j)
      if (f.upper[j])
        upper_[j] = f.upper[j]->get_d();
    for (std::size_t i = 0; i < f.m; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const std::int64_t e = f.at(i, j);
        if (e == 0)
          continue;
        // Slack and artificial columns stay unit columns.
        data_[i * n_ + j] = j < f.structural ? std::ldexp(static_cast<double>(e), -f.exponent[i]) : static_cast<double>(e);
      }
      rhs_data_[i] = std::ldexp(f.b[i].get_d(), -f.exponent[i]);
    }
  }

  void start_phase_one() {
    kept_.resize(f_.m);
    std::iota(kept_.begin(), kept_.end(), std::size_t{0});
    t_ = data_;
    x_ = rhs_data_;
    basis_.assign(f_.m, 0);
    basic_.assign(n_, 0);
    at_upper_.assign(n_, 0);
    art_row_.assign(n_, f_.m);
    std::size_t next_slack = f_.structural, next_art = f_.art_begin;
    for (std::size_t i = 0; i < f_.m; ++i) {
      if (next_slack < f_.art_begin && f_.at(i, next_slack) != 0) {
        if (f_.at(i, next_slack) == 1)
          basis_[i] = next_slack;
        ++next_slack;
      }
      if (next_art < n_ && f_.at(i, next_art) != 0) {
        art_row_[next_art] = i;
        basis_[i] = next_art++;
      }
      basic_[basis_[i]] = 1;
    }
    std::vector<double> cost(n_, 0.0);
    for (std::size_t j = f_.art_begin; j < n_; ++j)
      cost[j] = 1.0;
    set_costs(std::move(cost));
  }

  void set_costs(std::vector<double> cost) {
    cost_ = std::move(cost);
    reprice();
  }

  // Pivots artificials out of the basis; rows where that is impossible are
  // dropped as redundant.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < f_.art_begin) {
        ++i;
        continue;
      }
      std::size_t best = n_;
      double best_abs = 1e-9;
      for (std::size_t j = 0; j < f_.art_begin; ++j)
        if (!basic_[j] && std::abs(at(i, j)) > best_abs) {
          best = j;
          best_abs = std::abs(at(i, j));
        }
      if (best < n_) {
        // Degenerate exchange: the entering column keeps its value.
        basic_[basis_[i]] = 0;
        x_[i] = nonbasic_value(best);
        at_upper_[best] = 0;
        pivot(i, best);
        ++i;
      } else {
        basic_[basis_[i]] = 0;
        const std::size_t row = art_row_[basis_[i]];
        kept_.erase(std::find(kept_.begin(), kept_.end(), row));
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                 t_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
        x_.erase(x_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    reprice();
  }

  Result run(std::size_t allowed) {
    const std::size_t cap = 50 * (basis_.size() + n_) + 1000;
    std::size_t stall = 0;
    bool bland = false;
    for (std::size_t iter = 0; iter < cap; ++iter) {
      std::size_t q = n_;
      double best = tol_cost_;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (basic_[j])
          continue;
        const double gain = at_upper_[j] ? d_[j] : -d_[j];
        if (gain > best) {
          q = j;
          if (bland)
            break;
          best = gain;
        }
      }
      if (q == n_)
        return Result::Optimal;
      const double dir = at_upper_[q] ? -1.0 : 1.0;

      // Basic i moves by -theta * alpha_i.
      auto limit = [&](std::size_t i, double alpha) {
        if (alpha > 0)
          return std::max(x_[i], 0.0) / alpha;
        return std::max(upper_[basis_[i]] - x_[i], 0.0) / -alpha;
      };
      auto blocks = [&](std::size_t i, double alpha) {
        return alpha > tol_pivot_ || (alpha < -tol_pivot_ && upper_[basis_[i]] < kInf);
      };
      std::size_t r = basis_.size();
      double theta = kInf;
      if (bland) {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
          const double alpha = dir * at(i, q);
          if (!blocks(i, alpha))
            continue;
          const double l = limit(i, alpha);
          if (l < theta || (l == theta && basis_[i] < basis_[r])) {
            r = i;
            theta = l;
          }
        }
      } else {
        double relaxed = kInf;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
          const double alpha = dir * at(i, q);
          if (!blocks(i, alpha))
            continue;
          const double room = alpha > 0 ? std::max(x_[i], 0.0) : std::max(upper_[basis_[i]] - x_[i], 0.0);
          relaxed = std::min(relaxed, (room + tol_feas_) / std::abs(alpha));
        }
        double largest = 0;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
          const double alpha = dir * at(i, q);
          if (!blocks(i, alpha) || std::abs(alpha) <= largest)
            continue;
          const double l = limit(i, alpha);
          if (l <= relaxed) {
            r = i;
            theta = l;
            largest = std::abs(alpha);
          }
        }
      }
      const bool flip = upper_[q] < kInf && upper_[q] <= theta;
      if (!flip && r == basis_.size()) {
        entering_ = q;
        return Result::Unbounded;
      }
      if (flip)
        theta = upper_[q];
      const double before = obj_;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        const double alpha = dir * at(i, q);
        if (alpha != 0)
          x_[i] -= theta * alpha;
      }
      obj_ += d_[q] * dir * theta;
      if (flip) {
        at_upper_[q] = !at_upper_[q];
      } else {
        const double entering_value = nonbasic_value(q) + dir * theta;
        const std::size_t leaving = basis_[r];
        at_upper_[leaving] = dir * at(r, q) < 0 ? 1 : 0;
        basic_[leaving] = 0;
        at_upper_[q] = 0;
        x_[r] = entering_value;
        pivot(r, q);
      }
      if (obj_ < before - 1e-12 * (1 + std::abs(before))) {
        stall = 0;
        bland = false;
      } else if (++stall > 50) {
        bland = true;
      }
    }
    return Result::Stalled;
  }

  // Rebuilds the tableau and basic values from the data.
  bool refactor() {
    const std::size_t k = basis_.size();
    const std::size_t w = n_ + 1;
    std::vector<double> m(k * w);
    for (std::size_t i = 0; i < k; ++i) {
      const double *src = &data_[kept_[i] * n_];
      std::copy_n(src, n_, &m[i * w]);
      double rhs = rhs_data_[kept_[i]];
      for (std::size_t j = 0; j < n_; ++j)
        if (at_upper_[j])
          rhs -= src[j] * upper_[j];
      m[i * w + n_] = rhs;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t c = basis_[i];
      std::size_t p = i;
      for (std::size_t r = i + 1; r < k; ++r)
        if (std::abs(m[r * w + c]) > std::abs(m[p * w + c]))
          p = r;
      if (std::abs(m[p * w + c]) < 1e-12)
        return false;
      if (p != i)
        std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(p * w),
                         m.begin() + static_cast<std::ptrdiff_t>((p + 1) * w),
                         m.begin() + static_cast<std::ptrdiff_t>(i * w));
      const double piv = m[i * w + c];
      for (std::size_t j = 0; j < w; ++j)
        m[i * w + j] /= piv;
      for (std::size_t r = 0; r < k; ++r) {
        if (r == i)
          continue;
        const double factor = m[r * w + c];
        if (factor == 0)
          continue;
        for (std::size_t j = 0; j < w; ++j)
          m[r * w + j] -= factor * m[i * w + j];
        m[r * w + c] = 0;
      }
    }
    t_.resize(k * n_);
    x_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::copy_n(&m[i * w], n_, &t_[i * n_]);
      x_[i] = m[i * w + n_];
    }
    reprice();
    tol_cost_ *= 1e-3;
    tol_pivot_ *= 1e-2;
    return true;
  }

  [[nodiscard]] double objective() const { return obj_; }
  [[nodiscard]] const std::vector<std::size_t> &basis() const { return basis_; }
  [[nodiscard]] const std::vector<std::size_t> &kept() const { return kept_; }
  [[nodiscard]] const std::vector<char> &at_upper() const { return at_upper_; }
  [[nodiscard]] std::size_t entering() const { return entering_; }

private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  const IntegerForm &f_;
  std::size_t n_;
  std::vector<double> data_, rhs_data_, upper_;
  std::vector<double> t_, x_, cost_, d_;
  std::vector<std::size_t> basis_, kept_, art_row_, nz_;
  std::vector<char> basic_, at_upper_;
  double obj_ = 0;
  std::size_t entering_ = 0;
  double tol_cost_ = 1e-9, tol_pivot_ = 1e-9, tol_feas_ = 1e-9;

  double &at(std::size_t i, std::size_t j) { return t_[i * n_ + j]; }

  double nonbasic_value(std::size_t j) const { return at_upper_[j] ? upper_[j] : 0.0; }

  void reprice() {
    d_ = cost_;
    obj_ = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0)
        continue;
      for (std::size_t j = 0; j < n_; ++j)
        d_[j] -= cb * at(i, j);
      obj_ += cb * x_[i];
    }
    for (std::size_t j = 0; j < n_; ++j)
      if (at_upper_[j])
        obj_ += cost_[j] * upper_[j];
    for (std::size_t b : basis_)
      d_[b] = 0;
  }

  // Tableau and reduced costs only; basic values are updated by the caller.
  void pivot(std::size_t r, std::size_t q) {
    double *prow = &t_[r * n_];
    const double piv = prow[q];
    nz_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      if (prow[j] == 0)
        continue;
      prow[j] /= piv;
      nz_.push_back(j);
    }
    prow[q] = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (i == r)
        continue;
      double *row = &t_[i * n_];
      const double factor = row[q];
      if (factor == 0)
        continue;
      for (std::size_t j : nz_)
        row[j] -= factor * prow[j];
      row[q] = 0;
    }
    const double dq = d_[q];
    if (dq != 0) {
      for (std::size_t j : nz_)
        d_[j] -= dq * prow[j];
      d_[q] = 0;
    }
    basis_[r] = q;
    basic_[q] = 1;
  }
};

// ------------------------------------------------------------ certificates

struct Basis {
  const std::vector<std::size_t> &kept;
  const std::vector<std::size_t> &columns;
  const std::vector<char> &at_upper;
};

std::vector<std::int64_t> basis_matrix(const IntegerForm &f, const Basis &basis, bool transpose) {
  const std::size_t k = basis.columns.size();
  std::vector<std::int64_t> mat(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      mat[transpose ? j * k + i : i * k + j] = f.at(basis.kept[i], basis.columns[j]);
  return mat;
}

bool is_basic(const Basis &basis, std::size_t j) {
  return std::find(basis.columns.begin(), basis.columns.end(), j) != basis.columns.end();
}

// Common denominator of the upper bounds of the columns at their bound.
mpz_class upper_denominator(const IntegerForm &f, const Basis &basis) {
  mpz_class d = 1;
  for (std::size_t j = 0; j < f.n; ++j)
    if (basis.at_upper[j] && !is_basic(basis, j)) {
      if (!f.upper[j])
        return 0;
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), f.upper[j]->get_den_mpz_t());
    }
  return d;
}

// Basic values within their bounds, with every row satisfied.
std::optional<RationalVector> certified_primal(const IntegerForm &f, const Basis &basis) {
  const mpz_class scale = upper_denominator(f, basis);
  if (sgn(scale) == 0)
    return std::nullopt;
  std::vector<std::size_t> raised;
  std::vector<mpz_class> raised_value; // u_j * scale
  for (std::size_t j = 0; j < f.n; ++j)
    if (basis.at_upper[j] && !is_basic(basis, j)) {
      raised.push_back(j);
      raised_value.push_back(scaled(*f.upper[j], scale));
    }
  std::vector<mpz_class> v;
  for (std::size_t i : basis.kept) {
    mpz_class e = f.b[i] * scale;
    for (std::size_t t = 0; t < raised.size(); ++t)
      addmul_si(e, raised_value[t], -f.at(i, raised[t]));
    v.push_back(e);
  }
  auto x = solve_exact(basis_matrix(f, basis, false), basis.columns.size(), v);
  if (!x)
    return std::nullopt;
  x->den *= scale;
  for (std::size_t t = 0; t < basis.columns.size(); ++t) {
    if (sgn(x->num[t]) < 0)
      return std::nullopt;
    const auto &u = f.upper[basis.columns[t]];
    if (u && mpq_class(x->num[t], x->den) > *u)
      return std::nullopt;
  }
  // Every row, including any dropped as redundant.
  mpz_class acc;
  const mpz_class ratio = x->den / scale;
  for (std::size_t i = 0; i < f.m; ++i) {
    acc = 0;
    for (std::size_t t = 0; t < basis.columns.size(); ++t)
      addmul_si(acc, x->num[t], f.at(i, basis.columns[t]));
    for (std::size_t t = 0; t < raised.size(); ++t)
      addmul_si(acc, raised_value[t] * ratio, f.at(i, raised[t]));
    if (acc != x->den * f.b[i])
      return std::nullopt;
  }
  return x;
}

// Reduced costs on [0, columns) have the sign optimality asks for: >= 0 at
// zero, <= 0 at the upper bound.
bool certified_dual(const IntegerForm &f, const Basis &basis, const std::vector<mpz_class> &cost,
                    std::size_t columns) {
  std::vector<mpz_class> v;
  for (std::size_t b : basis.columns)
    v.push_back(cost[b]);
  auto y = solve_exact(basis_matrix(f, basis, true), basis.columns.size(), v);
  if (!y)
    return false;
  std::vector<mpz_class> reduced(columns);
  for (std::size_t j = 0; j < columns; ++j)
    reduced[j] = y->den * cost[j];
  for (std::size_t t = 0; t < basis.kept.size(); ++t) {
    if (sgn(y->num[t]) == 0)
      continue;
    for (std::size_t j = 0; j < columns; ++j)
      addmul_si(reduced[j], y->num[t], -f.at(basis.kept[t], j));
  }
  for (std::size_t j = 0; j < columns; ++j) {
    if (is_basic(basis, j))
      continue;
    if (basis.at_upper[j] ? sgn(reduced[j]) > 0 : sgn(reduced[j]) < 0)
      return false;
  }
  return true;
}

std::vector<mpq_class> structural_values(const IntegerForm &f, const Basis &basis, const RationalVector &x) {
  std::vector<mpq_class> z(f.structural);
  for (std::size_t j = 0; j < f.structural; ++j)
    if (basis.at_upper[j])
      z[j] = *f.upper[j];
  for (std::size_t t = 0; t < basis.columns.size(); ++t)
    if (basis.columns[t] < f.structural) {
      z[basis.columns[t]] = mpq_class(x.num[t], x.den);
      z[basis.columns[t]].canonicalize();
    }
  return z;
}

// Raising column q from zero never leaves the region and lowers the cost.
bool certified_ray(const IntegerForm &f, const Basis &basis, std::size_t q) {
  if (q >= f.art_begin || is_basic(basis, q) || basis.at_upper[q] || f.upper[q])
    return false;
  std::vector<mpz_class> v;
  for (std::size_t i : basis.kept)
    v.push_back(f.at(i, q));
  auto w = solve_exact(basis_matrix(f, basis, false), basis.columns.size(), v);
  if (!w)
    return false;
  // Direction: +1 on q, -w on the basis.
  for (std::size_t t = 0; t < basis.columns.size(); ++t)
    if (sgn(w->num[t]) > 0 || (sgn(w->num[t]) < 0 && f.upper[basis.columns[t]]))
      return false;
  mpz_class acc;
  for (std::size_t i = 0; i < f.m; ++i) {
    acc = w->den * f.at(i, q);
    for (std::size_t t = 0; t < basis.columns.size(); ++t)
      addmul_si(acc, w->num[t], -f.at(i, basis.columns[t]));
    if (sgn(acc) != 0)
      return false;
  }
  acc = w->den * f.cost[q];
  for (std::size_t t = 0; t < basis.columns.size(); ++t)
    acc -= w->num[t] * f.cost[basis.columns[t]];
  return sgn(acc) < 0;
}

bool has_artificial(const IntegerForm &f, const std::vector<std::size_t> &columns) {
  return std::any_of(columns.begin(), columns.end(), [&](std::size_t b) { return b >= f.art_begin; });
}

} // namespace

CertifiedResult solve_certified(std::size_t structural, const std::vector<StdRow> &rows,
                                const std::vector<mpq_class> *cost) {
  auto form = integerize(structural, rows, cost);
  if (!form)
    return {};
  const IntegerForm &f = *form;
  FloatSimplex simplex(f);
  simplex.start_phase_one();

  constexpr int kAttempts = 3;
  for (int attempt = 0;; ++attempt) {
    if (simplex.run(f.art_begin) != FloatSimplex::Result::Optimal)
      return {};
    const bool looks_infeasible = simplex.objective() > 1e-7;
    if (!looks_infeasible && cost)
      break;
    const Basis basis{simplex.kept(), simplex.basis(), simplex.at_upper()};
    if (auto x = certified_primal(f, basis)) {
      mpz_class value;
      for (std::size_t t = 0; t < basis.columns.size(); ++t)
        value += x->num[t] * f.cost1[basis.columns[t]];
      if (sgn(value) == 0 && !cost)
        return {CertifiedStatus::Optimal, structural_values(f, basis, *x)};
      // Farkas: the multipliers certify the positive minimum even though
      // artificials that left the basis are ignored.
      if (sgn(value) > 0 && certified_dual(f, basis, f.cost1, f.art_begin))
        return {CertifiedStatus::Infeasible, {}};
    }
    if (attempt + 1 == kAttempts || !simplex.refactor())
      return {};
  }

  simplex.drive_out_artificials();
  double scale = 0;
  for (std::size_t j = 0; j < f.structural; ++j)
    scale = std::max(scale, std::abs(f.cost[j].get_d()));
  std::vector<double> c(f.n, 0.0);
  for (std::size_t j = 0; j < f.structural; ++j)
    c[j] = scale > 0 ? f.cost[j].get_d() / scale : 0.0;
  simplex.set_costs(std::move(c));

  for (int attempt = 0;; ++attempt) {
    const auto result = simplex.run(f.art_begin);
    if (result == FloatSimplex::Result::Stalled)
      return {};
    const Basis basis{simplex.kept(), simplex.basis(), simplex.at_upper()};
    if (!has_artificial(f, basis.columns)) {
      auto x = certified_primal(f, basis);
      if (x && result == FloatSimplex::Result::Optimal && certified_dual(f, basis, f.cost, f.art_begin))
        return {CertifiedStatus::Optimal, structural_values(f, basis, *x)};
      if (x && result == FloatSimplex::Result::Unbounded && certified_ray(f, basis, simplex.entering()))
        return {CertifiedStatus::Unbounded, {}};
    }
    if (attempt + 1 == kAttempts || !simplex.refactor())
      return {};
  }
}

} // namespace fvx::detail
