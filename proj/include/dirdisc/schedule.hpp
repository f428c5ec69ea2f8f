#pragma once

// Stage parameter schedules for the nested-interval search: per stage n a
// denominator threshold R(n), margin c(n), interval length I_len(n), covering
// resolution delta(n) and covering count bound.  All stage values are exact
// rationals (formulas evaluated in high precision, then rounded in the safe
// direction: c and I_len down, delta up, R up to an integer).

#include "dirdisc/numtheory.hpp"

#include <cstddef>
#include <string>

namespace dirdisc {

enum class ScheduleKind { FiniteSet, Lacunary, LacunaryOrderM, Minkowski };

struct InfeasibleScheduleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Schedule {
 public:
  // covering_count: number of covering entries for the finite set, axes
  // included.  R0, eps0, c0 derived so both stage inequalities hold with the
  // tangent-derivative factor for every n >= 1.
  static Schedule finite_set(std::size_t covering_count);

  static Schedule lacunary(Rat c0 = Rat(1, 1 << 20), Rat eps0 = Rat(1, 8));

  // kappa sharpens the covering resolution exponent; kappa = 2 with M = 1 is
  // the plain lacunary schedule.  Feasible stages appear at desk scale for
  // M = 2 with kappa = 3.
  static Schedule lacunary_order(int M, int kappa = 3,
                                 Rat c0 = Rat(1, 1 << 24), Rat eps0 = Rat(1, 8));

  // d < 1: dimension of the target set; t = (d+1)/2, s = (d+t)/2, a = 1/(1-t).
  static Schedule minkowski(const Rat& d);
  static Schedule minkowski(const Rat& d, const Rat& t, const Rat& s,
                            Rat c0 = Rat(1, 1 << 20), Rat eps1 = Rat(1, 16),
                            Rat eps2 = Rat(1, 256));

  ScheduleKind kind() const { return kind_; }
  int order() const { return order_; }
  int kappa() const { return kappa_; }
  const Rat& c0() const { return c0_; }
  const Rat& eps0() const { return eps0_; }
  const Rat& eps2() const { return eps2_; }
  const Rat& mink_t() const { return t_; }
  const Rat& mink_s() const { return s_; }
  Rat mink_a() const;         // 1/(1-t)
  Rat mink_exponent() const;  // 2(a^2 - 1)
  Int finite_R0() const { return R0_; }
  std::size_t finite_count() const { return finite_count_; }

  Int R(int n) const;
  Rat c(int n) const;
  Rat I_len(int n) const;
  Rat delta(int n) const;  // 0 for FiniteSet
  double N_bound(int n) const;

  struct IneqCheck {
    bool ok1 = false, ok2 = false;
    double slack = 0;  // smaller relative margin of the two
  };
  // The two stage inequalities in their published angle-space form, with the
  // supplied covering count and derivative constant C_deriv = 4.
  IneqCheck check_inequalities(int n, std::size_t covering_count) const;

  // Stricter feasibility used to start the chain: the full exclusion budget
  // (margin and covering resolution) is charged with the slope-space
  // derivative factor.
  bool feasible_stage(int n, double covering_count) const;

  // Smallest feasible stage under the strict check; throws when none exists
  // below the scan limit.
  int find_n0(int scan_limit = 64) const;

  // Last stage to run: stages advance until R(n_max + 1) covers both
  // R(n0)^2 (small-q extension) and q_target, subject to the per-stage
  // covering budget and interval-length floor.
  int find_n_max(int n0, double q_target, double covering_budget) const;

  std::string describe() const;

  static constexpr int kCDeriv = 4;

 private:
  ScheduleKind kind_ = ScheduleKind::Lacunary;
  int order_ = 1;
  int kappa_ = 2;
  Rat c0_, eps0_, eps2_;
  Rat t_, s_;
  Int R0_ = 0;
  std::size_t finite_count_ = 0;
};

}  // namespace dirdisc
