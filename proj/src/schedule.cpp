#include "dirdisc/schedule.hpp"

#include <cmath>
#include <sstream>

namespace dirdisc {

namespace {

constexpr unsigned kEvalBits = 2048;

Real lgf(const Real& x) { return log2_floor1(x); }

Rat rat_pow_int(const Rat& b, int k) {
  Rat out = 1;
  Rat base = b;
  int e = k < 0 ? -k : k;
  for (; e; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return k < 0 ? Rat(1) / out : out;
}

Int int_pow(Int b, int e) {
  Int out = 1;
  for (; e; e >>= 1) {
    if (e & 1) out *= b;
    b *= b;
  }
  return out;
}

}  // namespace

Schedule Schedule::finite_set(std::size_t covering_count) {
  if (covering_count < 1) throw DomainError("finite_set: empty covering");
  Schedule s;
  s.kind_ = ScheduleKind::FiniteSet;
  s.finite_count_ = covering_count;
  Int R0 = 2;
  while (R0 * R0 < Int(4 * (covering_count + 1))) R0 *= 2;
  s.R0_ = R0;
  s.eps0_ = Rat(1, 16 * R0 * R0);
  s.c0_ = Rat(3, 2048 * Int(covering_count) * int_pow(R0, 4));
  return s;
}

Schedule Schedule::lacunary(Rat c0, Rat eps0) {
  Schedule s;
  s.kind_ = ScheduleKind::Lacunary;
  s.order_ = 1;
  s.kappa_ = 2;
  s.c0_ = std::move(c0);
  s.eps0_ = std::move(eps0);
  return s;
}

Schedule Schedule::lacunary_order(int M, int kappa, Rat c0, Rat eps0) {
  if (M < 1) throw DomainError("lacunary_order: M must be >= 1");
  if (kappa < 2) throw DomainError("lacunary_order: kappa must be >= 2");
  Schedule s;
  s.kind_ = ScheduleKind::LacunaryOrderM;
  s.order_ = M;
  s.kappa_ = kappa;
  s.c0_ = std::move(c0);
  s.eps0_ = std::move(eps0);
  return s;
}

Schedule Schedule::minkowski(const Rat& d) {
  Rat t = (d + 1) / 2;
  Rat s = (d + t) / 2;
  return minkowski(d, t, s);
}

Schedule Schedule::minkowski(const Rat& d, const Rat& t, const Rat& s, Rat c0,
                             Rat eps1, Rat eps2) {
  if (!(d < t && t < 1 && d < s && s < t))
    throw DomainError("minkowski: need d < s < t < 1");
  Schedule out;
  out.kind_ = ScheduleKind::Minkowski;
  out.t_ = t;
  out.s_ = s;
  out.c0_ = std::move(c0);
  out.eps0_ = std::move(eps1);
  out.eps2_ = std::move(eps2);
  return out;
}

Rat Schedule::mink_a() const { return Rat(1) / (1 - t_); }

Rat Schedule::mink_exponent() const {
  Rat a = mink_a();
  return 2 * (a * a - 1);
}

Int Schedule::R(int n) const {
  if (n <= 0) return 1;
  switch (kind_) {
    case ScheduleKind::FiniteSet:
      return int_pow(R0_, n);
    case ScheduleKind::Lacunary:
    case ScheduleKind::LacunaryOrderM: {
      ScopedPrecision prec(kEvalBits);
      Real mn(order_ * n);
      Real half(Rat(order_ * n, 2));
      Real v = pow(mn, half) * pow(lgf(Real(n)), half);
      return ceil_rat(exact_value(v));
    }
    case ScheduleKind::Minkowski: {
      ScopedPrecision prec(kEvalBits);
      Rat an = rat_pow_int(mink_a(), n);
      return ceil_rat(exact_value(exp2(to_real(an))));
    }
  }
  return 1;
}

Rat Schedule::c(int n) const {
  switch (kind_) {
    case ScheduleKind::FiniteSet:
      return c0_;
    case ScheduleKind::Lacunary:
    case ScheduleKind::LacunaryOrderM: {
      ScopedPrecision prec(kEvalBits);
      Real denom = pow(Real(order_ * (n + 1)), 2 * order_) *
                   pow(lgf(Real(n + 1)), 2 * order_);
      return rat_below(Real(to_real(c0_) / denom), 96);
    }
    case ScheduleKind::Minkowski: {
      ScopedPrecision prec(kEvalBits);
      Rat e = rat_pow_int(mink_a(), n) * (mink_a() * mink_a() - 1) * 2;
      return rat_below(Real(to_real(c0_) * exp2(-to_real(e))), 96);
    }
  }
  return c0_;
}

Rat Schedule::I_len(int n) const {
  switch (kind_) {
    case ScheduleKind::FiniteSet:
      return eps0_ * Rat(1, int_pow(R0_, 2 * (n + 1)));
    case ScheduleKind::Lacunary:
    case ScheduleKind::LacunaryOrderM: {
      ScopedPrecision prec(kEvalBits);
      int m = order_ * (n + 2);
      Real denom = pow(Real(m), m) * pow(lgf(Real(n + 2)), m);
      return rat_below(Real(to_real(eps0_) / denom), 96);
    }
    case ScheduleKind::Minkowski: {
      ScopedPrecision prec(kEvalBits);
      Rat e = rat_pow_int(mink_a(), n + 2) * 2;
      return rat_below(Real(to_real(eps0_) * exp2(-to_real(e))), 96);
    }
  }
  return eps0_;
}

Rat Schedule::delta(int n) const {
  switch (kind_) {
    case ScheduleKind::FiniteSet:
      return Rat(0);
    case ScheduleKind::Lacunary:
    case ScheduleKind::LacunaryOrderM:
      // M (n+1)^(-kappa M (n+1)), exact.
      return Rat(order_) * Rat(1, int_pow(Int(n + 1), kappa_ * order_ * (n + 1)));
    case ScheduleKind::Minkowski: {
      ScopedPrecision prec(kEvalBits);
      Rat e = rat_pow_int(mink_a(), n + 2) * 2;
      return rat_above(Real(to_real(eps2_) * exp2(-to_real(e))), 96);
    }
  }
  return Rat(0);
}

double Schedule::N_bound(int n) const {
  switch (kind_) {
    case ScheduleKind::FiniteSet:
      return static_cast<double>(finite_count_);
    case ScheduleKind::Lacunary:
    case ScheduleKind::LacunaryOrderM: {
      double J = kappa_ * order_ * (n + 1) * log2_floor1(double(n + 1)) + 3;
      return std::pow(J, order_) + 2;
    }
    case ScheduleKind::Minkowski: {
      // Two-branch cantor covering: 2^ceil(log2(W/delta)/log2(1/r)) with
      // r = 2^(-1/d), so the count is about 2 * (W/delta)^d.
      double dim = rat_to_double(2 * t_ - 1);
      double a = rat_to_double(mink_a());
      double log2_delta =
          std::log2(rat_to_double(eps2_)) - 2 * std::pow(a, n + 2);
      double bits = dim * (1.0 - log2_delta) + 1;
      if (bits > 900) return 1e300;
      return std::exp2(bits);
    }
  }
  return 0;
}

Schedule::IneqCheck Schedule::check_inequalities(int n, std::size_t covering_count) const {
  IneqCheck out;
  Rat Rn(R(n)), Rn1(R(n + 1));
  Rat lhs1 = 2 * c(n) / (Rn * Rn) + kCDeriv * (I_len(n - 1) + delta(n));
  Rat rhs1 = Rat(1) / (Rn1 * Rn1);
  out.ok1 = lhs1 < rhs1;

  Rat N{Int(covering_count)};
  Rat lhs2 = I_len(n - 1) - N * (2 * c(n) / (Rn * Rn) + delta(n));
  Rat rhs2 = (N + 1) * I_len(n);
  out.ok2 = lhs2 >= rhs2;

  Rat slack1 = (rhs1 - lhs1) / rhs1;
  Rat slack2 = (lhs2 - rhs2) / I_len(n - 1);
  out.slack = std::min(rat_to_double(slack1), rat_to_double(slack2));
  return out;
}

bool Schedule::feasible_stage(int n, double covering_count) const {
  if (n < 1) return false;
  Rat Rn(R(n)), Rn1(R(n + 1));
  Rat margin2 = 2 * c(n) / (Rn * Rn);
  if (!(margin2 + kCDeriv * (I_len(n - 1) + delta(n)) < Rat(1) / (Rn1 * Rn1)))
    return false;
  Rat N{Int(std::ceil(covering_count))};
  Rat removed = N * kCDeriv * (margin2 + delta(n));
  return I_len(n - 1) - removed >= (N + 1) * I_len(n);
}

int Schedule::find_n0(int scan_limit) const {
  for (int n = 1; n <= scan_limit; ++n)
    if (feasible_stage(n, N_bound(n))) return n;
  throw InfeasibleScheduleError("no feasible starting stage below n = " +
                                std::to_string(scan_limit));
}

int Schedule::find_n_max(int n0, double q_target, double covering_budget) const {
  Int goal_sq = R(n0) * R(n0);
  for (int n = n0;; ++n) {
    if (n > n0 + 64) return n - 1;
    bool fits = N_bound(n) <= covering_budget &&
                I_len(n) >= rat_pow_int(Rat(1, 2), 4096);
    if (!fits) {
      if (n == n0)
        throw InfeasibleScheduleError("first stage exceeds covering budget");
      return n - 1;
    }
    Int r_next = R(n + 1);
    if (Rat(r_next) >= Rat(goal_sq) && rat_to_double(Rat(r_next)) >= q_target)
      return n;
  }
}

std::string Schedule::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ScheduleKind::FiniteSet:
      os << "finite(R0=" << R0_ << ", count=" << finite_count_ << ")";
      break;
    case ScheduleKind::Lacunary:
      os << "lacunary";
      break;
    case ScheduleKind::LacunaryOrderM:
      os << "lacunary_order(M=" << order_ << ", kappa=" << kappa_ << ")";
      break;
    case ScheduleKind::Minkowski:
      os << "minkowski(t=" << t_ << ", s=" << s_ << ")";
      break;
  }
  os << " c0=" << c0_ << " eps0=" << eps0_;
  return os.str();
}

}  // namespace dirdisc
