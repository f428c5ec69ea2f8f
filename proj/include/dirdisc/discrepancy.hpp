#pragma once

// Discrepancy functionals: exact rotated-rectangle discrepancy of a point
// set, exact 1-D star discrepancy, exponential-sum upper bounds, a sweep
// estimator for the directional sup, and the exact lattice-cell
// decompositions (column sawtooth sums, additive cell splitting).

#include "dirdisc/direction_sets.hpp"
#include "dirdisc/geometry.hpp"
#include "dirdisc/numtheory.hpp"
#include "dirdisc/pointsets.hpp"

#include <cstdint>
#include <vector>

namespace dirdisc {

enum class RectMode { Contained, Torus };

// #(P inside R) - N * |R|, exact over the rationals.  Contained mode
// requires R inside the closed unit square; torus mode requires
// w^2 + h^2 <= 1 and counts points through the nine unit translates.
Rat rect_discrepancy(const PointSet& P, const Rectangle& R,
                     RectMode mode = RectMode::Contained);

// Unnormalized: sup over x in [0,1] of |#{w_i < x} - N x|, via the sorted
// closed form N * (1/(2N) + max_i |w_(i) - (2i-1)/(2N)|).
double star_discrepancy_1d(const std::vector<double>& omega);

// star_discrepancy_1d of {n theta mod 1 : n = 1..N}.
double seq_discrepancy_ntheta(const Real& theta, long N);

// c_et * (N/m + sum_{h<=m} (1/h) |sum_n e(h w_n)|) for an explicit sequence.
double erdos_turan_bound(const std::vector<double>& omega, long m,
                         double c_et = 6.0);

// Same bound for w_n = n theta with the exponential sum replaced by the
// 1/(2||h theta||) envelope.  Throws DomainError when ||h theta|| vanishes.
double erdos_turan_bound_ntheta(const Real& theta, long N, long m,
                                double c_et = 6.0);

struct DirectionSup {
  double sup = 0;
  Rectangle witness;   // original frame, orientation snapped to rationals
  double theta = 0;
  int resolution = 0;
};

// Lower-bound estimate of sup |count - N area| over rectangles of
// orientation theta contained in the unit square.  Corner candidates are a
// uniform grid of the given resolution in the rotated frame, augmented with
// the rotated point coordinates while N + resolution stays small; one-sided
// limits are realized by strict/non-strict counting branches.  Doubling the
// resolution never decreases the result (nested candidate grids).
DirectionSup sup_discrepancy_direction(const PointSet& P, double theta,
                                       int resolution);

struct DirectionRecord {
  std::size_t index = 0;
  double theta = 0;
  double sup = 0;
  Rectangle witness;
  int resolution = 0;
};

struct DiscrepancyReport {
  std::vector<DirectionRecord> records;  // sorted by direction index
  double aggregate = 0;                  // max of the per-direction sups
  std::size_t budget = 0;
  int resolution = 0;
  GeneratorKind generator = GeneratorKind::Random;
  long n = 0;
  Rat slope;
};

// Evaluates sup_discrepancy_direction over representatives of the
// direction set with the axes adjoined.  threads = 0 picks the hardware
// count; the record order is independent of the thread count.
DiscrepancyReport sup_discrepancy(const PointSet& P, const DirectionSet& omega,
                                  std::size_t budget, int resolution,
                                  unsigned threads = 1);

// Splits D(R) = #((shift + Z^2) inside R) - |R| over the unit cells
// centered at the lattice points and returns |direct - decomposed|, which
// is identically zero; the two sides exercise independent counting and
// clipping code paths.  Throws DomainError on degenerate positions (lattice
// point on the boundary of R, or a corner of R on a cell boundary).
Rat square_decomposition_check(const Rectangle& R, const Vec2& shift);

// A line through (a1, a2) with |slope| <= 1; steeper sides are handled by
// the caller swapping coordinate roles.
struct SideSpec {
  Rat a1, a2;
  Rat slope;
};

struct SawtoothSum {
  Rat psi_sum;     // sum over columns of saw(c - n * slope)
  Rat direct_sum;  // strict below-line count minus trapezoid area
  long base = 0;   // bottom row of the counted trapezoid
};

// Per-column discrepancy of the region under the side across the columns
// of I, against the lattice shift + Z^2.  With the half-open convention
// and strict below-line counting the sawtooth form is exact:
// psi_sum == direct_sum, including integer-height columns (both -1/2).
SawtoothSum sawtooth_side_sum(const SideSpec& side, const IntRun& I,
                              const Vec2& shift);

}  // namespace dirdisc
