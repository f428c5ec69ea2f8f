#include "dirdisc/pointsets.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace dirdisc {

namespace {

PointSet lattice_impl(long N, const Rat& slope, double w1, double w2,
                      bool shifted) {
  if (N < 1) throw DomainError("point set size must be positive");
  ScopedPrecision prec(192);
  Real t = to_real(slope);
  Real c = 1 / sqrt(1 + t * t);
  Real s = t * c;
  Real rt = sqrt(Real(N));
  Real o1(w1), o2(w2);

  PointSet ps;
  ps.kind = shifted ? GeneratorKind::ShiftedRotatedLattice
                    : GeneratorKind::RotatedLattice;
  ps.slope = slope;
  ps.shift_x = w1;
  ps.shift_y = w2;

  // Lattice index (m, n) maps to ((u c - v s)/rt, (u s + v c)/rt) with
  // u = m + w1, v = n + w2; rows n, then columns m, both ascending.
  long n_lo = long(Real(-s * rt).convert_to<double>()) - 2;
  long n_hi = long(Real(c * rt).convert_to<double>()) + 2;
  for (long n = n_lo; n <= n_hi; ++n) {
    Real v = n + o2;
    // x in [0,1): u in [v s / c, v s / c + rt / c); y in [0,1) similar.
    Real lo = v * s / c;
    Real hi = lo + rt / c;
    if (s > 0) {
      Real ylo = -v * c / s;
      Real yhi = (rt - v * c) / s;
      if (ylo > lo) lo = ylo;
      if (yhi < hi) hi = yhi;
    } else {
      Real y = v * c / rt;
      if (y < 0 || y >= 1) continue;
    }
    long m_lo = long(lo.convert_to<double>()) - 2;
    long m_hi = long(hi.convert_to<double>()) + 2;
    for (long m = m_lo; m <= m_hi; ++m) {
      Real u = m + o1;
      Real x = (u * c - v * s) / rt;
      Real y = (u * s + v * c) / rt;
      if (x >= 0 && x < 1 && y >= 0 && y < 1)
        ps.pts.push_back({x.convert_to<double>(), y.convert_to<double>()});
    }
  }

  ps.pre_adjust_count = long(ps.pts.size());
  ps.adjustment = std::abs(ps.pre_adjust_count - N);

  if (ps.pre_adjust_count > N) {
    // Drop the points farthest from the center, ties lexicographically.
    std::vector<std::size_t> order(ps.pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t i) {
      double dx = ps.pts[i].x - 0.5, dy = ps.pts[i].y - 0.5;
      return dx * dx + dy * dy;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      double ka = key(a), kb = key(b);
      if (ka != kb) return ka > kb;
      if (ps.pts[a].x != ps.pts[b].x) return ps.pts[a].x < ps.pts[b].x;
      return ps.pts[a].y < ps.pts[b].y;
    });
    std::set<std::size_t> drop(order.begin(),
                               order.begin() + (ps.pre_adjust_count - N));
    std::vector<Point> kept;
    kept.reserve(std::size_t(N));
    for (std::size_t i = 0; i < ps.pts.size(); ++i)
      if (!drop.count(i)) kept.push_back(ps.pts[i]);
    ps.pts = std::move(kept);
  } else if (ps.pre_adjust_count < N) {
    // Fill from dyadic subdivision centers, finest-needed level last.
    std::set<std::pair<double, double>> occupied;
    for (const Point& p : ps.pts) occupied.insert({p.x, p.y});
    for (int level = 1; long(ps.pts.size()) < N && level < 32; ++level) {
      long side = 1L << level;
      for (long j = 0; j < side && long(ps.pts.size()) < N; ++j)
        for (long i = 0; i < side && long(ps.pts.size()) < N; ++i) {
          double x = (2 * i + 1) / double(2 * side);
          double y = (2 * j + 1) / double(2 * side);
          if (occupied.insert({x, y}).second) ps.pts.push_back({x, y});
        }
    }
  }
  return ps;
}

}  // namespace

PointSet rotated_lattice(long N, const Rat& slope) {
  return lattice_impl(N, slope, 0, 0, false);
}

PointSet shifted_rotated_lattice(long N, const Rat& slope, double w1, double w2) {
  if (w1 < 0 || w1 >= 1 || w2 < 0 || w2 >= 1)
    throw DomainError("shift must lie in [0,1)^2");
  return lattice_impl(N, slope, w1, w2, true);
}

PointSet random_points(long N, std::uint64_t seed) {
  if (N < 1) throw DomainError("point set size must be positive");
  PointSet ps;
  ps.kind = GeneratorKind::Random;
  ps.seed = seed;
  ps.pre_adjust_count = N;
  std::mt19937_64 rng(seed);
  auto unif = [&] { return double(rng() >> 11) * 0x1p-53; };
  ps.pts.reserve(std::size_t(N));
  for (long i = 0; i < N; ++i) {
    double x = unif(), y = unif();
    ps.pts.push_back({x, y});
  }
  return ps;
}

std::string generator_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::RotatedLattice: return "rotated";
    case GeneratorKind::ShiftedRotatedLattice: return "shifted";
    case GeneratorKind::Random: return "random";
  }
  return "unknown";
}

void save_pointset(const PointSet& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[160];
  std::snprintf(buf, sizeof buf, "N=%ld slope=%s/%s shift=%.17g,%.17g generator=%s\n",
                ps.n(), numerator(ps.slope).str().c_str(),
                denominator(ps.slope).str().c_str(), ps.shift_x, ps.shift_y,
                generator_name(ps.kind).c_str());
  out << buf;
  for (const Point& p : ps.pts) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
}

PointSet load_pointset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string header;
  std::getline(in, header);
  PointSet ps;
  long N = 0;
  char num[64], den[64], gen[32];
  if (std::sscanf(header.c_str(), "N=%ld slope=%63[^/]/%63s shift=%lg,%lg generator=%31s",
                  &N, num, den, &ps.shift_x, &ps.shift_y, gen) != 6)
    throw std::runtime_error("bad point-set header in " + path);
  ps.slope = Rat(Int(num), Int(den));
  std::string g(gen);
  if (g == "rotated") ps.kind = GeneratorKind::RotatedLattice;
  else if (g == "shifted") ps.kind = GeneratorKind::ShiftedRotatedLattice;
  else ps.kind = GeneratorKind::Random;
  ps.pts.reserve(std::size_t(N));
  double x, y;
  while (in >> x >> y) ps.pts.push_back({x, y});
  if (long(ps.pts.size()) != N)
    throw std::runtime_error("point count mismatch in " + path);
  ps.pre_adjust_count = N;
  return ps;
}

}  // namespace dirdisc
