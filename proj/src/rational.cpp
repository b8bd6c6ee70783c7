#include "fvx/rational.hpp"

#include "fvx/errors.hpp"

#include <cctype>
#include <ostream>

namespace fvx {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-'))
    ++i;
  if (i == text.size())
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

} // namespace

Rational::Rational(const Integer &num, const Integer &den) {
  if (den == 0)
    throw DomainError("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Integer den = parse_integer(den_text, text);
  if (den == 0)
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer())
    return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational &Rational::operator/=(const Rational &o) {
  if (o.q_ == 0)
    throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

Integer lcm_of_denominators(const Rational *begin, const Rational *end) {
  Integer l = 1;
  for (auto it = begin; it != end; ++it)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), it->raw().get_den_mpz_t());
  return l;
}

} // namespace fvx
