#include "dirdisc/geometry.hpp"

#include <algorithm>

namespace dirdisc {

Rotation snap_rotation(const Real& phi, unsigned bits) {
  ScopedPrecision prec(bits + 64);
  Rat u = rat_near(Real(tan(phi / 2)), bits);
  Rat den = 1 + u * u;
  return {(1 - u * u) / den, 2 * u / den};
}

double rotation_angle(const Rotation& r) {
  return std::atan2(rat_to_double(r.s), rat_to_double(r.c));
}

bool Rectangle::contains(const Vec2& p) const {
  Rat dx = p.x - center.x, dy = p.y - center.y;
  Rat X = rot.c * dx + rot.s * dy;
  Rat Y = -rot.s * dx + rot.c * dy;
  Rat hw = w / 2, hh = h / 2;
  return -hw <= X && X < hw && -hh <= Y && Y < hh;
}

std::array<Vec2, 4> Rectangle::corners() const {
  Rat hw = w / 2, hh = h / 2;
  std::array<Vec2, 4> out;
  const Rat sx[4] = {-hw, hw, hw, -hw};
  const Rat sy[4] = {-hh, -hh, hh, hh};
  for (int i = 0; i < 4; ++i) {
    out[i] = {center.x + rot.c * sx[i] - rot.s * sy[i],
              center.y + rot.s * sx[i] + rot.c * sy[i]};
  }
  return out;
}

Rectangle axis_rect(const Rat& x0, const Rat& y0, const Rat& w, const Rat& h) {
  return {{x0 + w / 2, y0 + h / 2}, w, h, Rotation{}};
}

namespace {

// Count of integers m with m in the interval; flags say whether the
// endpoints belong to it.
Int integers_in(const Rat& lo, bool lo_incl, const Rat& hi, bool hi_incl) {
  Int top = hi_incl ? floor_rat(hi) : ceil_rat(hi) - 1;
  Int bot = lo_incl ? ceil_rat(lo) : floor_rat(lo) + 1;
  if (top < bot) return 0;
  return top - bot + 1;
}

struct RatInterval {
  Rat lo, hi;
  bool lo_incl = true, hi_incl = true;
  bool empty = false;
  bool all = false;  // the whole line (degenerate constraint)
};

// Solve L <= a x + b < U (L included, U excluded) for x.
RatInterval solve_band(const Rat& a, const Rat& b, const Rat& L, const Rat& U) {
  RatInterval out;
  if (a == 0) {
    out.empty = !(L <= b && b < U);
    out.all = !out.empty;
    return out;
  }
  if (a > 0) {
    out.lo = (L - b) / a;
    out.hi = (U - b) / a;
    out.lo_incl = true;
    out.hi_incl = false;
  } else {
    out.lo = (U - b) / a;
    out.hi = (L - b) / a;
    out.lo_incl = false;
    out.hi_incl = true;
  }
  return out;
}

void intersect(RatInterval& acc, const RatInterval& other) {
  if (acc.empty || other.empty) {
    acc.empty = true;
    return;
  }
  if (other.all) return;
  if (acc.all) {
    acc = other;
    return;
  }
  if (other.lo > acc.lo || (other.lo == acc.lo && !other.lo_incl)) {
    acc.lo = other.lo;
    acc.lo_incl = other.lo_incl;
  }
  if (other.hi < acc.hi || (other.hi == acc.hi && !other.hi_incl)) {
    acc.hi = other.hi;
    acc.hi_incl = other.hi_incl;
  }
  if (acc.lo > acc.hi || (acc.lo == acc.hi && !(acc.lo_incl && acc.hi_incl)))
    acc.empty = true;
}

}  // namespace

Int lattice_count_in_rect(const Vec2& shift, const Rectangle& R) {
  Rat ymin, ymax;
  auto cs = R.corners();
  for (int i = 0; i < 4; ++i) {
    if (i == 0 || cs[i].y < ymin) ymin = cs[i].y;
    if (i == 0 || cs[i].y > ymax) ymax = cs[i].y;
  }
  Int n_lo = ceil_rat(Rat(ymin - shift.y));
  Int n_hi = floor_rat(Rat(ymax - shift.y));
  Rat hw = R.w / 2, hh = R.h / 2;

  Int total = 0;
  for (Int n = n_lo; n <= n_hi; ++n) {
    Rat dy = shift.y + n - R.center.y;
    // x = shift.x + m; dx = x - cx.  Frame coords are affine in dx:
    //   X = c dx + s dy in [-hw, hw), Y = -s dx + c dy in [-hh, hh).
    RatInterval ix = solve_band(R.rot.c, Rat(R.rot.s * dy), -hw, hw);
    intersect(ix, solve_band(Rat(-R.rot.s), Rat(R.rot.c * dy), -hh, hh));
    if (ix.empty) continue;
    Rat off = R.center.x - shift.x;  // m = dx + cx - shift.x
    total += integers_in(Rat(ix.lo + off), ix.lo_incl, Rat(ix.hi + off), ix.hi_incl);
  }
  return total;
}

Polygon clip_halfplane(const Polygon& poly, const Rat& a, const Rat& b, const Rat& t) {
  Polygon out;
  std::size_t n = poly.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    Rat fp = a * p.x + b * p.y - t;
    Rat fq = a * q.x + b * q.y - t;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      Rat lam = fp / (fp - fq);
      out.push_back({p.x + lam * (q.x - p.x), p.y + lam * (q.y - p.y)});
    }
  }
  return out;
}

Polygon rect_cell_intersection(const Rectangle& R, const Vec2& cell_lo) {
  auto cs = R.corners();
  Polygon poly(cs.begin(), cs.end());
  poly = clip_halfplane(poly, Rat(-1), Rat(0), Rat(-cell_lo.x));
  poly = clip_halfplane(poly, Rat(1), Rat(0), Rat(cell_lo.x + 1));
  poly = clip_halfplane(poly, Rat(0), Rat(-1), Rat(-cell_lo.y));
  poly = clip_halfplane(poly, Rat(0), Rat(1), Rat(cell_lo.y + 1));
  return poly;
}

Rat polygon_area(const Polygon& poly) {
  Rat twice = 0;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  if (twice < 0) twice = -twice;
  return twice / 2;
}

}  // namespace dirdisc
