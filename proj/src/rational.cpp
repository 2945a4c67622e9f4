#include "subexp/rational.hpp"

namespace subexp {

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Integer parse_integer_token(const std::string& s) {
  // GMP rejects a leading '+'.
  return Integer(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer_token(text)) return std::nullopt;
    return Rational(parse_integer_token(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!valid_integer_token(num) || !valid_integer_token(den)) return std::nullopt;
  Integer d = parse_integer_token(den);
  if (d == 0) return std::nullopt;
  Rational q(parse_integer_token(num), d);
  q.canonicalize();
  return q;
}

std::string fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string decimal_string(const Rational& q, int digits) {
  if (digits < 0) digits = 0;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // Round half away from zero on the scaled value.
  Integer twice_num = q.get_num() * scale * 2;
  Integer den = q.get_den();
  Integer scaled;  // round(q * scale)
  if (twice_num >= 0)
    scaled = (twice_num + den) / (2 * den);
  else
    scaled = -(((-twice_num) + den) / (2 * den));
  const bool negative = scaled < 0;
  Integer mag = negative ? Integer(-scaled) : scaled;
  Integer whole = mag / scale;
  Integer frac = mag % scale;
  std::string out = negative ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += ".";
    out += std::string(static_cast<std::size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base == 0) {
    if (exp < 0) fail_precondition("zero cannot be raised to a negative power");
    return Rational(0);
  }
  const unsigned long mag = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), mag);
  Rational out = exp > 0 ? Rational(num, den) : Rational(den, num);
  out.canonicalize();
  return out;
}

Integer floor_to_integer(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

Integer ceil_to_integer(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

}  // namespace subexp
