#pragma once

// Scalar number-theoretic primitives: nearest-integer distance, sawtooth,
// continued fractions, diophantine margins, reciprocal sums, and the
// geometric-series exponential sum used by the L2 machinery.

#include "dirdisc/real.hpp"

#include <cstdint>
#include <vector>

namespace dirdisc {

Real nearest_int_dist(const Real& x);
Rat nearest_int_dist(const Rat& x);
double nearest_int_dist(double x);

// saw(x) = {x} - 1/2, 1-periodic, values in [-1/2, 1/2).
Real sawtooth(const Real& x);
Rat sawtooth(const Rat& x);
double sawtooth(double x);

struct ContinuedFraction {
  std::vector<Int> quotients;   // [a0; a1, a2, ...]
  std::size_t certified;        // how many entries survived the precision budget
  bool terminated;              // expansion ended exactly (rational input)
};

ContinuedFraction continued_fraction(const Rat& x, std::size_t depth);
ContinuedFraction continued_fraction(const Real& x, std::size_t depth);

// Non-decreasing positive weight on [1, oo).  log means max(1, log2 q).
class PsiFunction {
 public:
  enum class Kind { Constant, LogPower, Power };

  static PsiFunction constant(Rat c);
  static PsiFunction log_power(Rat coeff, int power);
  static PsiFunction power(Rat coeff, Rat exponent);

  double operator()(double q) const;
  Real eval(const Real& q) const;

  Kind kind() const { return kind_; }
  const Rat& coeff() const { return coeff_; }
  int log_exponent() const { return log_power_; }
  const Rat& power_exponent() const { return exponent_; }

  // sup over q >= 1 of psi(q*q0)/psi(q), the loss when denominators are
  // multiplied by a factor up to q0.  Used by the small-q extension.
  double growth_factor(double q0) const;

 private:
  Kind kind_;
  Rat coeff_{1};
  int log_power_ = 0;
  Rat exponent_{0};
};

struct PsiMargin {
  double margin;        // min over q of q * ||q theta|| * psi(q)
  std::uint64_t witness_q;
};

PsiMargin type_psi_margin(const Real& theta, std::uint64_t Q, const PsiFunction& psi);

// Sum over h = 1..m of 1/(h * ||h theta||).  Throws DomainError when some
// ||h theta|| vanishes (rational direction at denominator h).
Real weighted_reciprocal_sum(const Real& theta, std::uint64_t m);

enum class ReciprocalBoundVariant { Sharp, ByParts };
Real reciprocal_sum_bound(const PsiFunction& psi, std::uint64_t m,
                          ReciprocalBoundVariant variant);

// Half-open run of consecutive integers {first, ..., first + length - 1}.
struct IntRun {
  long long first = 0;
  long long length = 1;
};

// | sum over n in I of e(-nu n slope) | via the sine quotient; the degenerate
// case nu*slope integer returns |I|.
Real exp_sum_magnitude(const IntRun& I, const Real& slope, std::uint64_t nu);

struct FourierWeightSum {
  Real value;       // sum over nu <= nu_max of nu^-2 |S_nu|^2
  Real tail_bound;  // |I|^2 / nu_max bound on the dropped tail
};

FourierWeightSum fourier_weight_sum(const IntRun& I, const Real& slope,
                                    std::uint64_t nu_max);

}  // namespace dirdisc
