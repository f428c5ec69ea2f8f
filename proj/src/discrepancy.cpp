#include "dirdisc/discrepancy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace dirdisc {

namespace {

// Below this size the rotated point coordinates join the corner candidate
// grid; larger sets use the uniform grid only.
constexpr long kCoordCandidateLimit = 200;

constexpr double kWindowSlack = 1e-12;

}  // namespace

Rat rect_discrepancy(const PointSet& P, const Rectangle& R, RectMode mode) {
  if (mode == RectMode::Contained) {
    for (const Vec2& c : R.corners())
      if (c.x < 0 || c.x > 1 || c.y < 0 || c.y > 1)
        throw DomainError("contained mode: rectangle leaves the unit square");
    Int cnt = 0;
    for (const Point& p : P.pts)
      if (R.contains({Rat(p.x), Rat(p.y)})) ++cnt;
    return Rat(cnt) - Rat(P.n()) * R.area();
  }
  if (R.w * R.w + R.h * R.h > 1)
    throw DomainError("torus mode needs w^2 + h^2 <= 1");
  Int cnt = 0;
  for (const Point& p : P.pts)
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        if (R.contains({Rat(p.x) + dx, Rat(p.y) + dy})) ++cnt;
  return Rat(cnt) - Rat(P.n()) * R.area();
}

double star_discrepancy_1d(const std::vector<double>& omega) {
  if (omega.empty()) throw DomainError("empty sequence");
  std::vector<double> w(omega);
  std::sort(w.begin(), w.end());
  const double N = double(w.size());
  double worst = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double dev = std::abs(N * w[i] - (double(i) + 0.5));
    if (dev > worst) worst = dev;
  }
  return 0.5 + worst;
}

double seq_discrepancy_ntheta(const Real& theta, long N) {
  if (N < 1) throw DomainError("sequence length must be positive");
  std::vector<double> w;
  w.reserve(std::size_t(N));
  Real acc = 0;
  for (long n = 1; n <= N; ++n) {
    acc += theta;
    acc -= floor(acc);
    w.push_back(acc.convert_to<double>());
  }
  return star_discrepancy_1d(w);
}

double erdos_turan_bound(const std::vector<double>& omega, long m, double c_et) {
  if (m < 1) throw DomainError("frequency cutoff must be positive");
  if (omega.empty()) throw DomainError("empty sequence");
  const double N = double(omega.size());
  double total = N / double(m);
  for (long h = 1; h <= m; ++h) {
    double re = 0, im = 0;
    for (double x : omega) {
      double a = 2 * M_PI * double(h) * x;
      re += std::cos(a);
      im += std::sin(a);
    }
    total += std::sqrt(re * re + im * im) / double(h);
  }
  return c_et * total;
}

double erdos_turan_bound_ntheta(const Real& theta, long N, long m, double c_et) {
  if (m < 1) throw DomainError("frequency cutoff must be positive");
  if (N < 1) throw DomainError("sequence length must be positive");
  double total = double(N) / double(m);
  Real acc = 0;
  for (long h = 1; h <= m; ++h) {
    acc += theta;
    acc -= floor(acc);
    Real dist = acc <= Real(0.5) ? acc : Real(1 - acc);
    if (dist == 0)
      throw DomainError("||h theta|| vanishes at h = " + std::to_string(h));
    total += 1.0 / (2 * double(h) * dist.convert_to<double>());
  }
  return c_et * total;
}

namespace {

struct SweepBest {
  double val = -1;
  double xa = 0, xb = 0, ya = 0, yb = 0;
};

// One strictness branch of the corner sweep: closed_x selects [xa, xb)
// versus (xa, xb] slabs, closed_y the same for the vertical side.  All four
// combinations together realize the one-sided limits at every corner;
// containment in the unit square is enforced through the per-slab window.
void sweep_branch(const std::vector<double>& X, const std::vector<double>& Y,
                  const std::vector<double>& xs, const std::vector<double>& ys,
                  double c, double s, long N, bool closed_x, bool closed_y,
                  SweepBest& best) {
  const std::size_t kx = xs.size(), ky = ys.size();
  if (kx < 2 || ky < 2) return;

  std::vector<std::size_t> order(X.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return X[a] < X[b]; });

  std::vector<long> cnt(ky - 1);
  std::vector<double> pre(ky);

  for (std::size_t i = 0; i + 1 < kx; ++i) {
    const double xa = xs[i];
    std::fill(cnt.begin(), cnt.end(), 0L);
    std::size_t p = 0;
    if (closed_x) {
      while (p < order.size() && X[order[p]] < xa) ++p;
    } else {
      while (p < order.size() && X[order[p]] <= xa) ++p;
    }
    for (std::size_t j = i + 1; j < kx; ++j) {
      const double xb = xs[j];
      while (p < order.size() &&
             (closed_x ? X[order[p]] < xb : X[order[p]] <= xb)) {
        double y = Y[order[p]];
        long m;
        if (closed_y)
          m = long(std::upper_bound(ys.begin(), ys.end(), y) - ys.begin()) - 1;
        else
          m = long(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()) - 1;
        if (m >= 0 && m < long(ky) - 1) ++cnt[std::size_t(m)];
        ++p;
      }

      // Vertical extent keeping all four corners inside the unit square.
      double ylo = -std::numeric_limits<double>::infinity();
      double yhi = std::numeric_limits<double>::infinity();
      if (c > 0) {
        ylo = std::max(ylo, -s * xa / c);
        yhi = std::min(yhi, (1 - s * xb) / c);
      }
      if (s > 0) {
        ylo = std::max(ylo, (c * xb - 1) / s);
        yhi = std::min(yhi, c * xa / s);
      }
      ylo -= kWindowSlack;
      yhi += kWindowSlack;
      long a_min =
          long(std::lower_bound(ys.begin(), ys.end(), ylo) - ys.begin());
      long a_max =
          long(std::upper_bound(ys.begin(), ys.end(), yhi) - ys.begin()) - 1;
      if (a_max - a_min < 1) continue;

      const double dx = xb - xa;
      // Prefix sums of count - N * area over the window's cells, then the
      // extreme subarray in either sign gives the best |D| for this slab.
      pre[std::size_t(a_min)] = 0;
      for (long mcell = a_min; mcell < a_max; ++mcell)
        pre[std::size_t(mcell + 1)] =
            pre[std::size_t(mcell)] + double(cnt[std::size_t(mcell)]) -
            double(N) * dx * (ys[std::size_t(mcell + 1)] - ys[std::size_t(mcell)]);
      double lo_pre = 0, hi_pre = 0;
      long lo_i = a_min, hi_i = a_min;
      for (long mcell = a_min + 1; mcell <= a_max; ++mcell) {
        double v = pre[std::size_t(mcell)];
        if (v - lo_pre > best.val) {
          best.val = v - lo_pre;
          best.xa = xa;
          best.xb = xb;
          best.ya = ys[std::size_t(lo_i)];
          best.yb = ys[std::size_t(mcell)];
        }
        if (hi_pre - v > best.val) {
          best.val = hi_pre - v;
          best.xa = xa;
          best.xb = xb;
          best.ya = ys[std::size_t(hi_i)];
          best.yb = ys[std::size_t(mcell)];
        }
        if (v < lo_pre) {
          lo_pre = v;
          lo_i = mcell;
        }
        if (v > hi_pre) {
          hi_pre = v;
          hi_i = mcell;
        }
      }
    }
  }
}

}  // namespace

DirectionSup sup_discrepancy_direction(const PointSet& P, double theta,
                                       int resolution) {
  if (resolution < 2) throw DomainError("resolution must be at least 2");
  double c = std::cos(theta), s = std::sin(theta);
  if (std::abs(s) < 1e-12) {
    s = 0;
    c = 1;
  } else if (std::abs(c) < 1e-12) {
    c = 0;
    s = 1;
  }
  const long N = P.n();
  std::vector<double> X(static_cast<std::size_t>(N));
  std::vector<double> Y(static_cast<std::size_t>(N));
  for (long i = 0; i < N; ++i) {
    const Point& p = P.pts[std::size_t(i)];
    X[std::size_t(i)] = c * p.x + s * p.y;
    Y[std::size_t(i)] = -s * p.x + c * p.y;
  }

  // Frame ranges of the rotated unit square: X in [0, c+s], Y in [-s, c].
  const double span = c + s;
  std::vector<double> xs, ys;
  xs.reserve(std::size_t(resolution) + 1 + X.size());
  ys.reserve(std::size_t(resolution) + 1 + Y.size());
  for (int i = 0; i <= resolution; ++i) {
    xs.push_back(span * double(i) / double(resolution));
    ys.push_back(-s + span * double(i) / double(resolution));
  }
  if (N <= kCoordCandidateLimit) {
    xs.insert(xs.end(), X.begin(), X.end());
    ys.insert(ys.end(), Y.begin(), Y.end());
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  SweepBest best;
  for (bool cx : {true, false})
    for (bool cy : {true, false})
      sweep_branch(X, Y, xs, ys, c, s, N, cx, cy, best);

  DirectionSup out;
  out.theta = theta;
  out.resolution = resolution;
  Rotation rot = snap_rotation(Real(theta), 96);

  bool degenerate_witness = false;
  double deg_x = 0, deg_y = 0;
  if (N <= kCoordCandidateLimit) {
    // Coincident points: a vanishing rectangle around them realizes the
    // one-sided limit count / area -> multiplicity.
    std::vector<std::pair<double, double>> sorted_pts;
    sorted_pts.reserve(std::size_t(N));
    for (const Point& p : P.pts) sorted_pts.push_back({p.x, p.y});
    std::sort(sorted_pts.begin(), sorted_pts.end());
    std::size_t i = 0;
    while (i < sorted_pts.size()) {
      std::size_t j = i;
      while (j < sorted_pts.size() && sorted_pts[j] == sorted_pts[i]) ++j;
      if (double(j - i) > best.val) {
        best.val = double(j - i);
        degenerate_witness = true;
        deg_x = sorted_pts[i].first;
        deg_y = sorted_pts[i].second;
      }
      i = j;
    }
  }

  out.sup = std::max(best.val, 0.0);
  if (degenerate_witness) {
    Rat eps(1, Int(1) << 40);
    out.witness = Rectangle{{Rat(deg_x), Rat(deg_y)}, eps, eps, rot};
  } else if (best.val >= 0) {
    Rat Xc = (Rat(best.xa) + Rat(best.xb)) / 2;
    Rat Yc = (Rat(best.ya) + Rat(best.yb)) / 2;
    Vec2 center{rot.c * Xc - rot.s * Yc, rot.s * Xc + rot.c * Yc};
    Rat w = Rat(best.xb) - Rat(best.xa);
    Rat h = Rat(best.yb) - Rat(best.ya);
    out.witness = Rectangle{center, w, h, rot};
  } else {
    out.witness = Rectangle{{Rat(1, 2), Rat(1, 2)}, Rat(1), Rat(1), rot};
  }
  return out;
}

DiscrepancyReport sup_discrepancy(const PointSet& P, const DirectionSet& omega,
                                  std::size_t budget, int resolution,
                                  unsigned threads) {
  if (budget < 1) throw DomainError("budget must be positive");
  auto reps = omega.with_axes().representatives(budget);
  DiscrepancyReport rep;
  rep.budget = budget;
  rep.resolution = resolution;
  rep.generator = P.kind;
  rep.n = P.n();
  rep.slope = P.slope;
  rep.records.resize(reps.size());

  auto work = [&](std::size_t i) {
    double th = reps[i].convert_to<double>();
    DirectionSup ds = sup_discrepancy_direction(P, th, resolution);
    rep.records[i] = DirectionRecord{i, th, ds.sup, ds.witness, resolution};
  };

  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || reps.size() <= 1) {
    for (std::size_t i = 0; i < reps.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    unsigned n_threads = std::min<unsigned>(threads, unsigned(reps.size()));
    for (unsigned t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < reps.size();
             i = next.fetch_add(1))
          work(i);
      });
    for (auto& th : pool) th.join();
  }

  rep.aggregate = 0;
  for (const auto& r : rep.records) rep.aggregate = std::max(rep.aggregate, r.sup);
  return rep;
}

Rat square_decomposition_check(const Rectangle& R, const Vec2& shift) {
  auto cs = R.corners();
  Rat xmin = cs[0].x, xmax = cs[0].x, ymin = cs[0].y, ymax = cs[0].y;
  for (const Vec2& v : cs) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }

  // Corner of R on a cell edge.
  for (const Vec2& v : cs)
    if (frac_rat(Rat(v.x - shift.x + Rat(1, 2))) == 0 ||
        frac_rat(Rat(v.y - shift.y + Rat(1, 2))) == 0)
      throw DomainError("degenerate position; perturb inputs");

  // Lattice point on the boundary of R.
  Rat hw = R.w / 2, hh = R.h / 2;
  for (Int m = floor_rat(Rat(xmin - shift.x)) - 1;
       m <= ceil_rat(Rat(xmax - shift.x)) + 1; ++m)
    for (Int n = floor_rat(Rat(ymin - shift.y)) - 1;
         n <= ceil_rat(Rat(ymax - shift.y)) + 1; ++n) {
      Rat dx = shift.x + m - R.center.x;
      Rat dy = shift.y + n - R.center.y;
      Rat fx = R.rot.c * dx + R.rot.s * dy;
      Rat fy = -R.rot.s * dx + R.rot.c * dy;
      Rat ax = fx < 0 ? Rat(-fx) : fx;
      Rat ay = fy < 0 ? Rat(-fy) : fy;
      if ((ax == hw && ay <= hh) || (ay == hh && ax <= hw))
        throw DomainError("degenerate position; perturb inputs");
    }

  Rat direct = Rat(lattice_count_in_rect(shift, R)) - R.area();

  Rat decomposed = 0;
  for (Int m = floor_rat(Rat(xmin - shift.x)) - 1;
       m <= ceil_rat(Rat(xmax - shift.x)) + 1; ++m)
    for (Int n = floor_rat(Rat(ymin - shift.y)) - 1;
         n <= ceil_rat(Rat(ymax - shift.y)) + 1; ++n) {
      Vec2 cell_lo{Rat(shift.x + m - Rat(1, 2)), Rat(shift.y + n - Rat(1, 2))};
      Rat a = polygon_area(rect_cell_intersection(R, cell_lo));
      bool inside = R.contains({Rat(shift.x + m), Rat(shift.y + n)});
      if (a == 0 && !inside) continue;
      decomposed += Rat(inside ? 1 : 0) - a;
    }

  Rat res = direct - decomposed;
  if (res < 0) res = -res;
  return res;
}

SawtoothSum sawtooth_side_sum(const SideSpec& side, const IntRun& I,
                              const Vec2& shift) {
  if (side.slope > 1 || side.slope < -1)
    throw DomainError("side too steep; swap coordinate roles first");
  if (I.length < 1) throw DomainError("empty column range");

  const Rat t = side.slope;
  auto height = [&](long long n) {
    return Rat(side.a2 - shift.y + (shift.x + n - side.a1) * t);
  };
  Rat y_first = height(I.first);
  Rat y_last = height(I.first + I.length - 1);
  Int h = floor_rat(std::min(y_first, y_last)) - 2;

  SawtoothSum out;
  out.base = h.convert_to<long>();
  out.psi_sum = 0;
  out.direct_sum = 0;
  for (long long k = 0; k < I.length; ++k) {
    Rat y = height(I.first + k);
    Rat z = y - Rat(h);  // z >= 2 by the choice of base row
    out.psi_sum += sawtooth(Rat(-z));
    // Strict below-line count of rows h, h+1, ... minus the exact column
    // area of the trapezoid above the base line y = h - 1/2 (in lattice
    // coordinates), which is z + 1/2 per unit-width column.
    Int cnt = ceil_rat(z);
    out.direct_sum += Rat(cnt) - (z + Rat(1, 2));
  }
  return out;
}

}  // namespace dirdisc
