#pragma once

// Arbitrary-precision scalar types shared by the whole library.
//
// Real is an MPFR-backed float with per-variable precision; Rat and Int are
// exact GMP rationals/integers.  Everything that certifies an inequality runs
// on Rat; Real is only used to evaluate transcendentals, always followed by a
// directed rounding into Rat.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace dirdisc {

using Real = boost::multiprecision::mpfr_float;  // variable precision
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline constexpr unsigned kDefaultBits = 128;

unsigned bits_to_digits10(unsigned bits);

// Temporarily raises the thread default precision (in bits).  Restores the
// previous value on destruction.  Newly constructed Reals inherit it.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_digits_;
};

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Real to_real(const Rat& q);
Real to_real(const Rat& q, unsigned bits);
double rat_to_double(const Rat& q);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);
Rat frac_rat(const Rat& q);  // in [0,1)

// Directed dyadic rounding keeping `sig_bits` significant bits.
// round_down: result <= x, round_up: result >= x.  x may have any magnitude.
Rat rat_below(const Real& x, unsigned sig_bits);
Rat rat_above(const Real& x, unsigned sig_bits);
// Nearest dyadic with denominator 2^frac_bits.
Rat rat_near(const Real& x, unsigned frac_bits);

// The exact rational value of an mpfr number (mantissa times power of two).
Rat exact_value(const Real& x);

// Minimal-denominator fraction in the closed interval [lo, hi].
// Among q=1 candidates picks ceil(lo); otherwise the fraction is unique.
Rat simplest_in(const Rat& lo, const Rat& hi);

Real pi_value();  // at current default precision

// Paper convention: log n stands for max(1, log2 n).
Real log2_floor1(const Real& x);
double log2_floor1(double x);

}  // namespace dirdisc
