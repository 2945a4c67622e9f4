#include "subexp/rates.hpp"

namespace subexp {

int parity_sign(Parity parity) { return parity == Parity::Even ? +1 : -1; }

Parity parity_of(const Integer& n) {
  return mpz_even_p(n.get_mpz_t()) ? Parity::Even : Parity::Odd;
}

const char* family_name(RateFamily f) {
  switch (f) {
    case RateFamily::Power: return "power";
    case RateFamily::Geometric: return "geometric";
    case RateFamily::LogPow: return "logpow";
    case RateFamily::Constant: return "constant";
  }
  return "?";
}

void Rate::validate() const {
  switch (family) {
    case RateFamily::Power:
      if (param == 0) fail_input("power rate requires nonzero exponent");
      break;
    case RateFamily::Geometric:
      if (!(param > 0 && param < 1)) fail_input("geometric rate requires 0 < r < 1");
      break;
    case RateFamily::LogPow:
      if (!(param > 0)) fail_input("logpow rate requires q > 0");
      break;
    case RateFamily::Constant:
      break;
  }
}

LimitVal Rate::limit_along(Parity parity) const {
  const int sign = alternating ? parity_sign(parity) : +1;
  switch (family) {
    case RateFamily::Power:
      if (param > 0) return LimitVal::finite(Rational(0));
      return sign > 0 ? LimitVal::plus_inf() : LimitVal::minus_inf();
    case RateFamily::Geometric:
    case RateFamily::LogPow:
      return LimitVal::finite(Rational(0));
    case RateFamily::Constant:
      return LimitVal::finite(sign > 0 ? param : Rational(-param));
  }
  return LimitVal::finite(Rational(0));
}

std::optional<Rational> Rate::full_limit() const {
  const LimitVal even = limit_along(Parity::Even);
  const LimitVal odd = limit_along(Parity::Odd);
  if (even.is_finite() && even == odd) return even.value;
  return std::nullopt;
}

bool Rate::decays_to_zero() const {
  switch (family) {
    case RateFamily::Power: return param > 0;
    case RateFamily::Geometric:
    case RateFamily::LogPow: return true;
    case RateFamily::Constant: return param == 0;
  }
  return false;
}

std::optional<Rational> Rate::exact_value_at(const Integer& n) const {
  if (n < 1) fail_precondition("rate index must be >= 1");
  const int sign = alternating && parity_of(n) == Parity::Odd ? -1 : +1;
  std::optional<Rational> mag;
  switch (family) {
    case RateFamily::Power: {
      // n^(-p) with p = a/b is rational only when n is a perfect b-th power.
      const Rational& p = param;
      if (!p.get_num().fits_slong_p() || !p.get_den().fits_ulong_p()) return std::nullopt;
      const unsigned long b = p.get_den().get_ui();
      auto root = exact_root(Rational(n), b);
      if (!root) return std::nullopt;
      const long a = p.get_num().get_si();
      mag = rational_pow(*root, -a);
      break;
    }
    case RateFamily::Geometric: {
      // Exact powers only while the representation stays manageable.
      if (!n.fits_slong_p() || n > (1L << 20)) return std::nullopt;
      mag = rational_pow(param, n.get_si());
      break;
    }
    case RateFamily::LogPow:
      return std::nullopt;
    case RateFamily::Constant:
      mag = param;
      break;
  }
  if (!mag) return std::nullopt;
  return sign > 0 ? *mag : Rational(-*mag);
}

Enclosure Rate::abs_value_at(const Integer& n, const Rational& tol) const {
  if (n < 1) fail_precondition("rate index must be >= 1");
  switch (family) {
    case RateFamily::Power:
      if (n == 1) return Enclosure::exact(Rational(1));
      return enclose_rational_pow(Rational(n), -param, tol);
    case RateFamily::Geometric: {
      if (n.fits_slong_p() && n < 4096) return Enclosure::exact(rational_pow(param, n.get_si()));
      return enclose_shrinking_power(param, n, tol);
    }
    case RateFamily::LogPow: {
      const Enclosure lg = enclose_log_integer(n + 1, rational_min(tol, make_rational(1, 1000)));
      return enclose_pow_of(lg, -param, tol);
    }
    case RateFamily::Constant:
      return Enclosure::exact(rational_abs(param));
  }
  return Enclosure::exact(Rational(0));
}

Enclosure Rate::value_at(const Integer& n, const Rational& tol) const {
  const Enclosure mag = abs_value_at(n, tol);
  int sign = alternating && parity_of(n) == Parity::Odd ? -1 : +1;
  if (family == RateFamily::Constant && param < 0) sign = -sign;
  return sign > 0 ? mag : -mag;
}

std::optional<Rational> Rate::abs_sup_upper(const Rational& tol) const {
  switch (family) {
    case RateFamily::Power:
      if (param < 0) return std::nullopt;
      return Rational(1);
    case RateFamily::Geometric:
      return param;
    case RateFamily::LogPow:
      // |a_n| peaks at n = 1.
      return abs_value_at(Integer(1), tol).hi;
    case RateFamily::Constant:
      return rational_abs(param);
  }
  return std::nullopt;
}

bool Rate::series_abs_converges(const Rational& s) const {
  if (!(s > 0)) fail_precondition("series exponent must be positive");
  switch (family) {
    case RateFamily::Power: return param * s > 1;
    case RateFamily::Geometric: return true;
    case RateFamily::LogPow: return false;
    case RateFamily::Constant: return param == 0;
  }
  return false;
}

}  // namespace subexp
