#pragma once

// Mean-square (shift-averaged) discrepancy machinery: exact shift-grid
// averages, the Parseval check for the column sawtooth sums, and shift
// selection for the rotated-lattice constructions.

#include "dirdisc/discrepancy.hpp"

#include <cstdint>
#include <vector>

namespace dirdisc {

// Mean of D_w(R)^2 over the Q x Q midpoint grid of lattice shifts w, with
// D_w(R) = #((w + Z^2) inside R) - |R| counted exactly.
Rat l2_shift_discrepancy(const Rectangle& R, int Q);

struct FourierSideIdentity {
  double lhs = 0;         // shift-quadrature mean of the squared column sum
  double rhs = 0;         // (2 pi^2)^-1 times the truncated frequency sum
  double tail_bound = 0;  // (2 pi^2)^-1 |I|^2 / nu_max
};

// Both sides of the Parseval identity for f(w) = sum_{n in I}
// saw(a2 + (n - a1) slope - w): lhs by midpoint quadrature over w, rhs from
// the exponential sums.  |lhs - rhs| <= tail_bound + quadrature error.
FourierSideIdentity l2_fourier_side_identity(const SideSpec& side,
                                             const IntRun& I,
                                             std::uint64_t nu_max, int Q);

// A finite rectangle family: all (direction, width, height) combinations
// anchored on a midpoint grid of centers.  In contained mode members that
// leave the unit square are dropped; torus mode wraps instead.
struct RectangleFamilySpec {
  std::vector<double> thetas;
  std::vector<double> widths;
  std::vector<double> heights;
  RectMode mode = RectMode::Contained;
  int center_grid = 4;
};

// Mean of D(R)^2 over the family members.  Throws when the family is empty
// after the containment filter.
double family_mean_square(const PointSet& P, const RectangleFamilySpec& family);

struct BestShift {
  double w1 = 0, w2 = 0;
  double value = 0;    // family mean square at the minimizer
  double average = 0;  // mean over the candidate shifts
};

// Evaluates family_mean_square of shifted_rotated_lattice(N, slope, w) at K
// deterministic candidate shifts ((0,0), then a Hammersley sequence) and
// returns the minimizer; value <= average by construction.
BestShift best_shift(const Rat& slope, long N, const RectangleFamilySpec& family,
                     int K);

}  // namespace dirdisc
