#pragma once

// Exact rational plane geometry: rotated rectangles with a half-open
// convention in their own frame, integer-lattice counting by per-row
// interval arithmetic, and convex polygon clipping for cell decompositions.

#include "dirdisc/real.hpp"

#include <array>
#include <vector>

namespace dirdisc {

struct Vec2 {
  Rat x, y;
};

// Exact point on the unit circle: c^2 + s^2 = 1.
struct Rotation {
  Rat c{1}, s{0};

  Rotation inverse() const { return {c, -s}; }
  Vec2 apply(const Vec2& p) const { return {c * p.x - s * p.y, s * p.x + c * p.y}; }
};

// Rational rotation near angle phi via the half-angle substitution:
// u = tan(phi/2) rounded to `bits` fractional bits, then
// (cos, sin) = ((1-u^2)/(1+u^2), 2u/(1+u^2)), exactly on the circle.
Rotation snap_rotation(const Real& phi, unsigned bits = 200);

// Angle of the snapped rotation, for reporting.
double rotation_angle(const Rotation& r);

struct Rectangle {
  Vec2 center;
  Rat w, h;        // w, h > 0
  Rotation rot;    // orientation of the w-axis

  Rat area() const { return w * h; }
  // Half-open in the rectangle's frame: lower and left edges included.
  bool contains(const Vec2& p) const;
  // Closed corners, counterclockwise from the (-w/2, -h/2) corner.
  std::array<Vec2, 4> corners() const;
};

// Axis-aligned [x0, x0+w) x [y0, y0+h).
Rectangle axis_rect(const Rat& x0, const Rat& y0, const Rat& w, const Rat& h);

// Exact number of points of shift + Z^2 inside R (half-open per R's frame).
// Per-row rational interval arithmetic; no floating point.
Int lattice_count_in_rect(const Vec2& shift, const Rectangle& R);

using Polygon = std::vector<Vec2>;

// Keep the side a x + b y <= t of a convex polygon.
Polygon clip_halfplane(const Polygon& poly, const Rat& a, const Rat& b, const Rat& t);

// R intersected with the unit cell [lo.x, lo.x+1) x [lo.y, lo.y+1).
// Open/closed edges do not affect the area, which is what callers use.
Polygon rect_cell_intersection(const Rectangle& R, const Vec2& cell_lo);

// Absolute shoelace area.
Rat polygon_area(const Polygon& poly);

}  // namespace dirdisc
