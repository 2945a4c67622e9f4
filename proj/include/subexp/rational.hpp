#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace subexp {

using Rational = mpq_class;
using Integer = mpz_class;

/// Error carrying a machine-checkable kind alongside the message.
class Error : public std::runtime_error {
 public:
  enum class Kind { Input, Precondition, Overflow, Internal };

  Error(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] inline void fail_input(const std::string& message) {
  throw Error(Error::Kind::Input, message);
}
[[noreturn]] inline void fail_precondition(const std::string& message) {
  throw Error(Error::Kind::Precondition, message);
}
[[noreturn]] inline void fail_overflow(const std::string& message) {
  throw Error(Error::Kind::Overflow, message);
}

/// Parses "3", "-7/2", "+1/3". Decimal points and exponents are rejected.
std::optional<Rational> parse_rational(const std::string& text);

/// Canonical "p" or "p/q" rendering.
std::string fraction_string(const Rational& q);

/// Nearest decimal rendering with exactly `digits` fractional digits.
std::string decimal_string(const Rational& q, int digits = 12);

Rational rational_pow(const Rational& base, long exp);

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_to_integer(const Rational& q);
Integer ceil_to_integer(const Rational& q);

inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline const Rational& rational_min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& rational_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline int sign_of(const Rational& q) { return sgn(q); }

}  // namespace subexp
