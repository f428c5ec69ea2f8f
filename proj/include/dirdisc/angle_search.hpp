#pragma once

// Nested-interval construction in slope space.  The target variable is
// t = tan(alpha) with alpha restricted to [pi/6, pi/3]; for a direction at
// angle theta with slope s the relevant quantity is
// u = tan(alpha - theta) = (t - s)/(1 + t s).  Each stage removes, per
// covering interval of the direction set, the at most one fraction p/q with
// R(n) <= q < R(n+1) that comes too close to the image interval, then keeps
// the leftmost surviving subinterval of length I_len(n).  Everything after
// the covering's tangent rationalization is exact rational arithmetic.

#include "dirdisc/direction_sets.hpp"
#include "dirdisc/schedule.hpp"

#include <string>
#include <vector>

namespace dirdisc {

struct SlopeInterval {
  Rat lo, hi;
  Rat length() const { return hi - lo; }
  bool contains(const SlopeInterval& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }
};

// One removed fraction: covering interval index, the fraction p/q, and the
// slope-space interval that was carved out of the chain.
struct Exclusion {
  int cover_index = 0;
  Int p, q;
  SlopeInterval removed;
};

struct StageRecord {
  int n = 0;
  Int R;                 // threshold R(n); exclusion denominators lie in [R(n), R(n+1))
  Rat c, stage_len, stage_delta;
  std::size_t covering_count = 0;
  SlopeInterval interval;  // the surviving interval, length exactly stage_len
  std::vector<Exclusion> exclusions;
};

struct NestedIntervalCertificate {
  // Enough schedule state to rebuild it exactly.
  ScheduleKind sched_kind = ScheduleKind::Lacunary;
  int order = 1, kappa = 2;
  Rat c0, eps0, eps2, mink_t, mink_s;
  std::size_t finite_count = 0;

  int n0 = 0, n_max = 0;
  std::vector<StageRecord> stages;  // seed record (n0 - 1) first, no exclusions

  Rat slope;        // midpoint of the final interval
  Int q_min, q_max;  // denominators certified by the chain: [R(n0), R(n_max+1))
  PsiFunction::Kind psi_kind = PsiFunction::Kind::Constant;
  int psi_log_power = 0;
  Rat psi_exponent;
  Rat c_prime;           // margin: q^2 psi(q) |u - p/q| > c_prime on [q_min, q_max]
  Rat global_constant;   // c'' after the small-q extension, 0 until extended

  std::string describe;

  Schedule rebuild_schedule() const;
  PsiFunction psi() const;
};

// Serialization: rationals as "num/den" strings, integers as decimal strings.
std::string certificate_to_text(const NestedIntervalCertificate& cert);
NestedIntervalCertificate certificate_from_text(const std::string& text);
void save_certificate(const NestedIntervalCertificate& cert, const std::string& path);
NestedIntervalCertificate load_certificate(const std::string& path);

// Covering intervals converted to closed rational slope intervals, outward by
// a fixed pad of 2^-160 so directed rounding errors always fall inside.
// A vertical direction is appended as a marker with cover_index = -1.
struct SlopeCover {
  std::vector<SlopeInterval> intervals;
  bool has_vertical = false;
};
SlopeCover rationalize_cover(const Covering& cov);

// One stage of the construction.  `current` must have length sched.I_len(n-1).
// Returns the record for stage n.  Throws InfeasibleScheduleError when no
// surviving subinterval of length I_len(n) exists, PrecisionError when the
// image interval plus margins is too wide for the pigeonhole argument.
StageRecord refine_step(const SlopeInterval& current, const Schedule& sched,
                        const DirectionSet& omega, int n);

struct AngleSearchResult {
  Rat slope;
  NestedIntervalCertificate cert;
};

// Runs the chain from stage n0 (sched.find_n0() when n0 < 0) through n_max
// and fills in the psi-scaled margin constant for the certified q-range.
AngleSearchResult find_angle(const DirectionSet& omega, const Schedule& sched,
                             int n_max, int n0 = -1);

// Margin constant valid for all q >= 2 (and checked at q = 1 by the
// verifier): c'' = c' / (q0^2 * growth(q0)) where growth is the psi loss
// factor for denominator multipliers up to q0.  Stores c'' in the
// certificate and returns it.  q_min = 1 returns c' unchanged.
Rat extend_small_q(NestedIntervalCertificate& cert);

struct MarginReport {
  double min_margin = 0;       // min over reps and q of q^2 psi(q) |u - p/q|
  Int witness_q, witness_p;
  int witness_rep = -1;        // index into rep_slopes; -1 if nothing scanned
  std::vector<Rat> rep_slopes;
};

// Brute-force oracle, independent of the chain: for each representative
// direction and every q in [q_lo, q_hi], the distance from q*u to the nearest
// integer, scaled by q psi(q).  Exact incremental modular arithmetic; only
// the reported minimum is a double.
MarginReport verify_certificate(const Rat& slope, const DirectionSet& omega,
                                const Int& q_lo, const Int& q_hi,
                                const PsiFunction& psi, std::size_t rep_budget);

}  // namespace dirdisc
