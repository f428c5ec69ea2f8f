#include "dirdisc/real.hpp"

#include <cmath>

namespace dirdisc {

unsigned bits_to_digits10(unsigned bits) {
  // digits10 slightly over bits*log10(2) so the backend allocates >= bits.
  return static_cast<unsigned>(bits * 0.3010299956639812) + 3;
}

namespace {
struct DefaultPrecisionInit {
  DefaultPrecisionInit() { Real::default_precision(bits_to_digits10(kDefaultBits)); }
};
DefaultPrecisionInit g_default_precision_init;
}  // namespace

ScopedPrecision::ScopedPrecision(unsigned bits) : saved_digits_(Real::default_precision()) {
  unsigned want = bits_to_digits10(bits);
  if (want > saved_digits_) Real::default_precision(want);
}

ScopedPrecision::~ScopedPrecision() { Real::default_precision(saved_digits_); }

Real to_real(const Rat& q) { return Real(q); }

Real to_real(const Rat& q, unsigned bits) {
  ScopedPrecision prec(bits);
  return Real(q);
}

double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

Int floor_rat(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.backend().data(), mpq_numref(q.backend().data()),
             mpq_denref(q.backend().data()));
  return out;
}

Int ceil_rat(const Rat& q) {
  Int out;
  mpz_cdiv_q(out.backend().data(), mpq_numref(q.backend().data()),
             mpq_denref(q.backend().data()));
  return out;
}

Rat frac_rat(const Rat& q) { return q - Rat(floor_rat(q)); }

// x = z * 2^e with z, e read off the raw mantissa, so rounding into dyadics
// is pure integer arithmetic.
Rat exact_value(const Real& x) {
  if (x == 0) return Rat(0);
  Int z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.backend().data(), x.backend().data());
  Rat v(z);
  if (e >= 0)
    v *= Rat(Int(1) << e);
  else
    v /= Rat(Int(1) << -e);
  return v;
}

namespace {

Rat scaled_round(const Rat& v, long shift, bool up) {
  Rat scaled = v;
  if (shift >= 0)
    scaled *= Rat(Int(1) << shift);
  else
    scaled /= Rat(Int(1) << -shift);
  Int m = up ? ceil_rat(scaled) : floor_rat(scaled);
  Rat out(m);
  if (shift >= 0)
    out /= Rat(Int(1) << shift);
  else
    out *= Rat(Int(1) << -shift);
  return out;
}

// Keep `sig_bits` significant bits of v, rounding down (toward -inf) or up.
Rat dyadic_round(const Rat& v, unsigned sig_bits, bool up) {
  if (v == 0) return Rat(0);
  if (v < 0) return -dyadic_round(-v, sig_bits, !up);
  long k = static_cast<long>(mpz_sizeinbase(mpq_numref(v.backend().data()), 2)) -
           static_cast<long>(mpz_sizeinbase(mpq_denref(v.backend().data()), 2));
  // 2^(k-1) <= v < 2^(k+1); one slack bit is harmless.
  return scaled_round(v, static_cast<long>(sig_bits) - k, up);
}

}  // namespace

Rat rat_below(const Real& x, unsigned sig_bits) {
  return dyadic_round(exact_value(x), sig_bits, false);
}
Rat rat_above(const Real& x, unsigned sig_bits) {
  return dyadic_round(exact_value(x), sig_bits, true);
}

Rat rat_near(const Real& x, unsigned frac_bits) {
  Rat v = exact_value(x) + Rat(1, Int(1) << (frac_bits + 1));
  return scaled_round(v, static_cast<long>(frac_bits), false);
}

Rat simplest_in(const Rat& lo, const Rat& hi) {
  if (lo > hi) throw DomainError("simplest_in: empty interval");
  Int cl = ceil_rat(lo);
  if (Rat(cl) <= hi) return Rat(cl);
  Int a = floor_rat(lo);  // equals floor(hi) since no integer inside
  Rat inner = simplest_in(Rat(1) / (hi - Rat(a)), Rat(1) / (lo - Rat(a)));
  return Rat(a) + Rat(1) / inner;
}

Real pi_value() {
  Real out;
  mpfr_const_pi(out.backend().data(), MPFR_RNDN);
  return out;
}

Real log2_floor1(const Real& x) {
  if (x <= 0) throw DomainError("log2_floor1: nonpositive argument");
  Real l = log2(x);
  return l < 1 ? Real(1) : l;
}

double log2_floor1(double x) {
  if (x <= 0) throw DomainError("log2_floor1: nonpositive argument");
  return std::max(1.0, std::log2(x));
}

}  // namespace dirdisc
