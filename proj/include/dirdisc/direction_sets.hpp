#pragma once

// Models of the direction set: finite lists of angles, lacunary sequences,
// lacunary sets of higher order, and two-branch Cantor-type sets of
// prescribed box dimension.  Each model yields delta-coverings by short
// closed intervals and a deterministic list of representative angles.

#include "dirdisc/real.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dirdisc {

enum class DirKind { Finite, Lacunary, LacunaryOrderM, CantorLike };

struct AngleInterval {
  Real lo, hi;  // closed, lo <= hi
};

struct Covering {
  Real delta;
  std::vector<AngleInterval> intervals;
  bool has_vertical = false;  // the pi/2 direction, kept out of tangent space

  std::size_t count() const { return intervals.size() + (has_vertical ? 1 : 0); }
};

class DirectionSet {
 public:
  static DirectionSet finite(std::vector<Real> angles);
  static DirectionSet lacunary(const Rat& base = Rat(2));
  static DirectionSet lacunary_order(int M, const Rat& base = Rat(2));
  // Two-branch self-similar set of ratio r mapped into
  // [pi/16, pi/2 - pi/16] by default.
  static DirectionSet cantor_like(const Rat& ratio);
  static DirectionSet cantor_like(const Rat& ratio, const Real& window_lo,
                                  const Real& window_width);

  DirKind kind() const { return kind_; }
  bool include_axes() const { return include_axes_; }
  int order() const { return order_; }
  const Rat& base() const { return base_; }
  const Rat& ratio() const { return ratio_; }
  const std::vector<Real>& finite_angles() const { return finite_angles_; }

  // Same set with the coordinate directions 0 and pi/2 adjoined.
  DirectionSet with_axes() const;

  // Deterministic densest-first probe angles, at most `budget` of them.
  std::vector<Real> representatives(std::size_t budget) const;

  Covering cover(const Real& delta) const;

  // Upper bound on the covering count for resolution delta, per model family.
  double covering_count_bound(double delta) const;

  double dimension() const;
  std::optional<Rat> dimension_exact() const;

  // Largest representative angle of the un-augmented set.
  Real max_angle() const;

 private:
  DirKind kind_ = DirKind::Finite;
  bool include_axes_ = false;
  std::vector<Real> finite_angles_;
  Rat base_{2};
  int order_ = 1;
  Rat ratio_{0};
  Real window_lo_ = 0;
  Real window_width_ = 0;
};

struct TauResult {
  Real tau;
  bool meaningful;    // tau < 1
  Real exponent;      // tau / (2 (tau + 1))
};

TauResult tau(const Real& d);
Rat tau_rational(const Rat& d);

}  // namespace dirdisc
