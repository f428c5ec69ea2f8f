#include "dirdisc/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dirdisc {

Real nearest_int_dist(const Real& x) {
  Real f = x - floor(x);
  Real g = 1 - f;
  return f < g ? f : g;
}

Rat nearest_int_dist(const Rat& x) {
  Rat f = frac_rat(x);
  Rat g = Rat(1) - f;
  return f < g ? f : g;
}

double nearest_int_dist(double x) {
  double f = x - std::floor(x);
  return std::min(f, 1.0 - f);
}

Real sawtooth(const Real& x) { return x - floor(x) - Real(0.5); }
Rat sawtooth(const Rat& x) { return frac_rat(x) - Rat(1, 2); }
double sawtooth(double x) { return x - std::floor(x) - 0.5; }

ContinuedFraction continued_fraction(const Rat& x, std::size_t depth) {
  if (depth < 1) throw DomainError("continued_fraction: depth must be >= 1");
  ContinuedFraction out;
  Rat r = x;
  for (std::size_t i = 0; i < depth; ++i) {
    Int a = floor_rat(r);
    out.quotients.push_back(a);
    Rat rem = r - Rat(a);
    if (rem == 0) {
      out.terminated = true;
      break;
    }
    r = Rat(1) / rem;
  }
  out.certified = out.quotients.size();
  return out;
}

ContinuedFraction continued_fraction(const Real& x, std::size_t depth) {
  if (depth < 1) throw DomainError("continued_fraction: depth must be >= 1");
  long prec = mpfr_get_prec(x.backend().data());
  ContinuedFraction out = continued_fraction(exact_value(x), depth);
  // The expansion of the dyadic snapshot agrees with the underlying number
  // while the convergent denominators stay well below 2^(prec/2).
  Int qprev = 0, qcur = 1;  // q_{-1}, q_0
  Int limit = Int(1) << std::max<long>(8, prec - 4);
  std::size_t certified = 0;
  for (std::size_t i = 0; i < out.quotients.size(); ++i) {
    if (i > 0) {
      Int qnext = out.quotients[i] * qcur + qprev;
      qprev = qcur;
      qcur = qnext;
    }
    if (qcur * qcur > limit) break;
    certified = i + 1;
  }
  if (out.terminated && certified < out.quotients.size()) out.terminated = false;
  out.certified = certified;
  return out;
}

PsiFunction PsiFunction::constant(Rat c) {
  PsiFunction f;
  f.kind_ = Kind::Constant;
  f.coeff_ = std::move(c);
  return f;
}

PsiFunction PsiFunction::log_power(Rat coeff, int power) {
  PsiFunction f;
  f.kind_ = Kind::LogPower;
  f.coeff_ = std::move(coeff);
  f.log_power_ = power;
  return f;
}

PsiFunction PsiFunction::power(Rat coeff, Rat exponent) {
  PsiFunction f;
  f.kind_ = Kind::Power;
  f.coeff_ = std::move(coeff);
  f.exponent_ = std::move(exponent);
  return f;
}

double PsiFunction::operator()(double q) const {
  double c = rat_to_double(coeff_);
  switch (kind_) {
    case Kind::Constant:
      return c;
    case Kind::LogPower:
      return c * std::pow(log2_floor1(q), log_power_);
    case Kind::Power:
      return c * std::pow(q, rat_to_double(exponent_));
  }
  return c;
}

Real PsiFunction::eval(const Real& q) const {
  Real c = to_real(coeff_);
  switch (kind_) {
    case Kind::Constant:
      return c;
    case Kind::LogPower:
      return c * pow(log2_floor1(q), log_power_);
    case Kind::Power:
      return c * exp(to_real(exponent_) * log(q));
  }
  return c;
}

double PsiFunction::growth_factor(double q0) const {
  switch (kind_) {
    case Kind::Constant:
      return 1.0;
    case Kind::LogPower:
      // log(q q0) <= log q * (1 + log2 q0), worst when log q = 1.
      return std::pow(1.0 + std::max(0.0, std::log2(q0)), log_power_);
    case Kind::Power:
      return std::pow(q0, rat_to_double(exponent_));
  }
  return 1.0;
}

PsiMargin type_psi_margin(const Real& theta, std::uint64_t Q, const PsiFunction& psi) {
  if (Q < 1) throw DomainError("type_psi_margin: Q must be >= 1");
  ScopedPrecision prec(256);
  Real step = theta;
  Real qtheta = 0;
  PsiMargin best{std::numeric_limits<double>::infinity(), 0};
  for (std::uint64_t q = 1; q <= Q; ++q) {
    qtheta += step;
    Real d = nearest_int_dist(qtheta);
    double margin = static_cast<double>(q) * d.convert_to<double>() *
                    psi(static_cast<double>(q));
    if (margin < best.margin) best = {margin, q};
    if (d == 0) {
      best = {0.0, q};
      break;
    }
  }
  return best;
}

Real weighted_reciprocal_sum(const Real& theta, std::uint64_t m) {
  if (m < 1) throw DomainError("weighted_reciprocal_sum: m must be >= 1");
  ScopedPrecision prec(256);
  Real htheta = 0;
  Real sum = 0;
  for (std::uint64_t h = 1; h <= m; ++h) {
    htheta += theta;
    Real d = nearest_int_dist(htheta);
    if (d == 0)
      throw DomainError("rational direction at denominator " + std::to_string(h));
    sum += Real(1) / (Real(h) * d);
  }
  return sum;
}

Real reciprocal_sum_bound(const PsiFunction& psi, std::uint64_t m,
                          ReciprocalBoundVariant variant) {
  if (m < 2) throw DomainError("reciprocal_sum_bound: m must be >= 2");
  Real sum = 0;
  if (variant == ReciprocalBoundVariant::Sharp) {
    Real lg = log2_floor1(Real(m));
    sum = lg * lg + psi.eval(Real(m));
    for (std::uint64_t h = 1; h <= m; ++h) sum += psi.eval(Real(h)) / Real(h);
  } else {
    Real lg = log2_floor1(Real(m));
    sum = psi.eval(Real(2 * m)) * lg;
    for (std::uint64_t h = 1; h <= m; ++h)
      sum += psi.eval(Real(2 * h)) * log2_floor1(Real(h)) / Real(h);
  }
  return sum;
}

namespace {

// sin(pi y), with y reduced mod 2 at enough precision that large arguments
// stay accurate.
Real sin_pi(const Real& y) {
  Real r = y - 2 * floor(y / 2);  // in [0, 2)
  return sin(pi_value() * r);
}

}  // namespace

Real exp_sum_magnitude(const IntRun& I, const Real& slope, std::uint64_t nu) {
  if (I.length < 1) throw DomainError("exp_sum_magnitude: empty interval");
  if (nu < 1) throw DomainError("exp_sum_magnitude: nu must be >= 1");
  long base = mpfr_get_prec(slope.backend().data());
  double magnitude = std::log2(static_cast<double>(nu)) +
                     std::log2(static_cast<double>(I.length) + 1.0);
  ScopedPrecision prec(static_cast<unsigned>(base + magnitude) + 64);
  Real ns = Real(nu) * slope;
  if (nearest_int_dist(ns) == 0) return Real(I.length);
  Real denom = sin_pi(ns);
  Real numer = sin_pi(Real(nu) * Real(I.length) * slope);
  return abs(numer / denom);
}

FourierWeightSum fourier_weight_sum(const IntRun& I, const Real& slope,
                                    std::uint64_t nu_max) {
  if (nu_max < 1) throw DomainError("fourier_weight_sum: nu_max must be >= 1");
  Real sum = 0;
  for (std::uint64_t nu = 1; nu <= nu_max; ++nu) {
    Real s = exp_sum_magnitude(I, slope, nu);
    sum += s * s / (Real(nu) * Real(nu));
  }
  Real len(I.length);
  return {sum, len * len / Real(nu_max)};
}

}  // namespace dirdisc
