#include "subexp/enclosure.hpp"

#include <mpfr.h>

namespace subexp {

namespace {

constexpr mpfr_prec_t kStartPrec = 96;
constexpr mpfr_prec_t kMaxPrec = 1 << 16;
constexpr long kMaxExpArgument = 4'000'000;  // e^x beyond this would not materialize

class Mpf {
 public:
  explicit Mpf(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpf() { mpfr_clear(v_); }
  Mpf(const Mpf&) = delete;
  Mpf& operator=(const Mpf&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

Rational mpfr_to_rational(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rational(0);
  if (!mpfr_number_p(x)) fail_overflow("non-finite value in certified evaluation");
  Integer mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rational out(mant);
  if (e >= 0) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
    out *= Rational(p);
  } else {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    out /= Rational(p);
  }
  return out;
}

// Runs a directed-rounding pipeline at increasing precision until the
// enclosure width drops at or below tol.
template <typename Fn>
Enclosure refine(const Rational& tol, Fn&& eval) {
  for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
    Mpf lo(prec), hi(prec);
    eval(lo.get(), hi.get(), prec);
    Rational l = mpfr_to_rational(lo.get());
    Rational h = mpfr_to_rational(hi.get());
    if (l > h) std::swap(l, h);
    if (h - l <= tol) return Enclosure(l, h);
  }
  fail_overflow("certified evaluation did not reach the requested width");
}

}  // namespace

std::optional<int> enclosure_compare(const Enclosure& a, const Enclosure& b) {
  if (a.hi < b.lo) return 1;
  if (a.lo > b.hi) return -1;
  if (a.is_exact() && b.is_exact() && a.lo == b.lo) return 0;
  return std::nullopt;
}

Enclosure enclose_log_integer(const Integer& n, const Rational& tol) {
  if (n < 1) fail_precondition("log requires n >= 1");
  if (n == 1) return Enclosure::exact(Rational(0));
  return refine(tol, [&](mpfr_ptr lo, mpfr_ptr hi, mpfr_prec_t prec) {
    Mpf t(prec);
    mpfr_set_z(t.get(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_log(lo, t.get(), MPFR_RNDD);
    mpfr_set_z(t.get(), n.get_mpz_t(), MPFR_RNDU);
    mpfr_log(hi, t.get(), MPFR_RNDU);
  });
}

std::optional<Rational> exact_root(const Rational& x, unsigned long k) {
  if (x < 0) return std::nullopt;
  if (k == 0) fail_precondition("zeroth root");
  if (k == 1 || x == 0 || x == 1) return x;
  Integer rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), x.get_num().get_mpz_t(), k);
  if (!exact_n) return std::nullopt;
  int exact_d = mpz_root(rd.get_mpz_t(), x.get_den().get_mpz_t(), k);
  if (!exact_d) return std::nullopt;
  Rational out(rn, rd);
  out.canonicalize();
  return out;
}

Enclosure enclose_root(const Rational& x, unsigned long k, const Rational& tol) {
  if (x < 0) fail_precondition("root of a negative value");
  if (auto r = exact_root(x, k)) return Enclosure::exact(*r);
  return refine(tol, [&](mpfr_ptr lo, mpfr_ptr hi, mpfr_prec_t prec) {
    Mpf t(prec);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_rootn_ui(lo, t.get(), k, MPFR_RNDD);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
    mpfr_rootn_ui(hi, t.get(), k, MPFR_RNDU);
  });
}

Enclosure enclose_rational_pow(const Rational& x, const Rational& e, const Rational& tol) {
  if (x <= 0) fail_precondition("power base must be positive");
  if (!e.get_num().fits_slong_p() || !e.get_den().fits_ulong_p())
    fail_overflow("exponent too large for certified power");
  const long a = e.get_num().get_si();
  const unsigned long b = e.get_den().get_ui();
  const Rational xa = rational_pow(x, a);
  return enclose_root(xa, b, tol);
}

Enclosure enclose_pow_of(const Enclosure& x, const Rational& e, const Rational& tol) {
  if (x.lo <= 0) fail_precondition("enclosed power base must be positive");
  const Rational half = tol / 2;
  Enclosure at_lo = enclose_rational_pow(x.lo, e, half);
  Enclosure at_hi = enclose_rational_pow(x.hi, e, half);
  // t^e is monotone in t with direction given by sign(e).
  if (e >= 0) return Enclosure(at_lo.lo, at_hi.hi);
  return Enclosure(at_hi.lo, at_lo.hi);
}

Enclosure enclose_exp(const Rational& x, const Rational& tol) {
  if (x > kMaxExpArgument) fail_overflow("exp argument too large to materialize");
  return refine(tol, [&](mpfr_ptr lo, mpfr_ptr hi, mpfr_prec_t prec) {
    Mpf t(prec);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_exp(lo, t.get(), MPFR_RNDD);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(hi, t.get(), MPFR_RNDU);
  });
}

Enclosure enclose_shrinking_power(const Rational& x, const Integer& n, const Rational& tol) {
  if (!(x > 0 && x < 1)) fail_precondition("shrinking power needs 0 < x < 1");
  if (n == 0) return Enclosure::exact(Rational(1));
  // Past n0 with n0 * ln(1/x) >= 1024 ln 2 the value sits below 2^-1024.
  {
    Mpf t(96), l(96);
    mpfr_set_q(t.get(), Rational(1 / x).get_mpq_t(), MPFR_RNDD);
    mpfr_log(l.get(), t.get(), MPFR_RNDD);
    const Rational ln_lower = mpfr_to_rational(l.get());
    if (ln_lower > 0) {
      const Rational threshold = Rational(1024) / ln_lower;  // ln2 < 1
      if (Rational(n) >= threshold + 1) {
        Integer tiny_den;
        mpz_ui_pow_ui(tiny_den.get_mpz_t(), 2, 1024);
        return Enclosure(Rational(0), Rational(Integer(1), tiny_den));
      }
    }
  }
  if (!n.fits_slong_p()) fail_overflow("geometric exponent out of range");
  return refine(tol, [&](mpfr_ptr lo, mpfr_ptr hi, mpfr_prec_t prec) {
    Mpf t(prec);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_pow_si(lo, t.get(), n.get_si(), MPFR_RNDD);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
    mpfr_pow_si(hi, t.get(), n.get_si(), MPFR_RNDU);
  });
}

Integer exp_upper_integer(const Rational& x) {
  if (x <= 0) return Integer(1);
  if (x > kMaxExpArgument) fail_overflow("index threshold of order exp(" + decimal_string(x, 2) + ") is too large to materialize");
  Mpf t(128), r(128);
  mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(r.get(), t.get(), MPFR_RNDU);
  Rational upper = mpfr_to_rational(r.get());
  return ceil_to_integer(upper) + 1;
}

}  // namespace subexp
