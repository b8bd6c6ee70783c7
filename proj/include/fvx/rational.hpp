#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fvx {

using Integer = mpz_class;

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
public:
  Rational() = default;
  Rational(long v) : q_(v) {}
  Rational(int v) : q_(v) {}
  Rational(const Integer &v) : q_(v) {}
  Rational(const Integer &num, const Integer &den);
  explicit Rational(const mpq_class &q) : q_(q) { q_.canonicalize(); }

  /// Accepts "p" or "p/q" with optional sign; rejects q == 0.
  static Rational parse(std::string_view text);

  [[nodiscard]] Integer numerator() const { return q_.get_num(); }
  [[nodiscard]] Integer denominator() const { return q_.get_den(); }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] const mpq_class &raw() const { return q_; }

  /// "p" when integral, otherwise "p/q".
  [[nodiscard]] std::string str() const;

  Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
  Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
  Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
  Rational &operator/=(const Rational &o);

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
  friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class q_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

/// Least common multiple of the denominators, used to scale rows to integers.
Integer lcm_of_denominators(const Rational *begin, const Rational *end);

} // namespace fvx
