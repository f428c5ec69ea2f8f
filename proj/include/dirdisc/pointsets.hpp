#pragma once

// N-point sets in the half-open unit square: rotated and shifted-rotated
// scaled integer lattices, plus a seeded uniform baseline.  Generation uses
// high-precision arithmetic internally; the stored coordinates are doubles
// (17 significant digits round-trip through the file format).

#include "dirdisc/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dirdisc {

enum class GeneratorKind { RotatedLattice, ShiftedRotatedLattice, Random };

struct Point {
  double x, y;
};

struct PointSet {
  std::vector<Point> pts;
  GeneratorKind kind = GeneratorKind::Random;
  Rat slope;                    // tan(alpha) for the lattice generators
  double shift_x = 0, shift_y = 0;
  std::uint64_t seed = 0;
  long pre_adjust_count = 0;    // lattice points before forcing exactly N
  long adjustment = 0;          // |pre_adjust_count - N|

  long n() const { return long(pts.size()); }
};

// (N^{-1/2} Z)^2 rotated by arctan(slope), intersected with [0,1)^2, then
// forced to exactly N points: excess removed farthest from the center first
// (ties lexicographically), deficit filled with unoccupied dyadic cell
// centers.  Row-major in the pre-rotation lattice; additions appended last.
PointSet rotated_lattice(long N, const Rat& slope);

// Same with the integer lattice replaced by omega + Z^2 before scaling.
PointSet shifted_rotated_lattice(long N, const Rat& slope, double w1, double w2);

PointSet random_points(long N, std::uint64_t seed);

std::string generator_name(GeneratorKind k);

void save_pointset(const PointSet& ps, const std::string& path);
PointSet load_pointset(const std::string& path);

}  // namespace dirdisc
