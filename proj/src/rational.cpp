#include "peano/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace peano {

Rational make_rational(const Integer& n, const Integer& d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Integer to_integer(std::int64_t v) {
  Integer z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
  return z;
}

Rational make_rational(std::int64_t n, std::int64_t d) {
  return make_rational(to_integer(n), to_integer(d));
}

Integer int_pow(const Integer& base, unsigned exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Rational rat_pow(const Rational& base, unsigned exp) {
  return make_rational(int_pow(base.get_num(), exp), int_pow(base.get_den(), exp));
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

std::string to_mixed_string(const Rational& r) {
  if (r.get_den() == 1 || r < 0) return to_string(r);
  Integer whole = r.get_num() / r.get_den();
  Rational frac = r - Rational(whole);
  if (whole == 0) return to_string(r);
  return whole.get_str() + " " + to_string(frac);
}

namespace {

Integer parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bad integer: " + std::string(s));
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw std::invalid_argument("bad integer: " + std::string(s));
  std::string body(s[0] == '+' ? s.substr(1) : s);
  return Integer(body);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos)
    return make_rational(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));

  // decimal with optional exponent
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = std::stol(std::string(s.substr(e + 1)));
    s = s.substr(0, e);
  }
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad rational: " + std::string(text));
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("bad rational: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad rational: " + std::string(text));
  Integer num(digits);
  if (negative) num = -num;
  long shift = exponent - frac_digits;
  if (shift >= 0) return make_rational(num * int_pow(10, static_cast<unsigned>(shift)), 1);
  return make_rational(num, int_pow(10, static_cast<unsigned>(-shift)));
}

}  // namespace peano
