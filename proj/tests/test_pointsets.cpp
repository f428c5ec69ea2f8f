#include "doctest.h"

#include "dirdisc/geometry.hpp"
#include "dirdisc/pointsets.hpp"

#include <cmath>
#include <random>

using namespace dirdisc;

namespace {

Int brute_count(const Vec2& shift, const Rectangle& R) {
  auto cs = R.corners();
  Rat xmin = cs[0].x, xmax = cs[0].x, ymin = cs[0].y, ymax = cs[0].y;
  for (const auto& c : cs) {
    xmin = std::min(xmin, c.x);
    xmax = std::max(xmax, c.x);
    ymin = std::min(ymin, c.y);
    ymax = std::max(ymax, c.y);
  }
  Int total = 0;
  for (Int m = floor_rat(Rat(xmin - shift.x)) - 1; m <= ceil_rat(Rat(xmax - shift.x)) + 1; ++m)
    for (Int n = floor_rat(Rat(ymin - shift.y)) - 1; n <= ceil_rat(Rat(ymax - shift.y)) + 1; ++n)
      if (R.contains({shift.x + m, shift.y + n})) ++total;
  return total;
}

}  // namespace

TEST_CASE("rotation snapping stays exactly on the circle") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Real phi = Real(3.14159) * double(rng() % 10000) / 10000.0;
    Rotation r = snap_rotation(phi);
    CHECK(Rat(r.c * r.c + r.s * r.s) == Rat(1));
    CHECK(std::abs(rotation_angle(r) -
                   std::remainder(phi.convert_to<double>(), 2 * M_PI)) < 1e-55 + 1e-12);
  }
}

TEST_CASE("axis-aligned lattice counts") {
  auto R = axis_rect(Rat(0), Rat(0), Rat(5, 2), Rat(3, 2));
  CHECK(lattice_count_in_rect({Rat(0), Rat(0)}, R) == 6);

  auto unit = axis_rect(Rat(0), Rat(0), Rat(1), Rat(1));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Vec2 w{Rat(long(rng() % 1000), 1000), Rat(long(rng() % 1000), 1000)};
    CHECK(lattice_count_in_rect(w, unit) == 1);
  }
  for (int n = 1; n <= 50; ++n) {
    auto big = axis_rect(Rat(0), Rat(0), Rat(n), Rat(n));
    Vec2 w{Rat(3, 7), Rat(5, 11)};
    CHECK(lattice_count_in_rect(w, big) == n * n);
  }
}

TEST_CASE("rotated lattice counts match brute force") {
  // 45-degree square of side sqrt(2) centered at the origin.
  {
    Rotation r{Rat(3, 5), Rat(4, 5)};  // exact rational rotation
    Rectangle R{{Rat(0), Rat(0)}, Rat(7, 5), Rat(7, 5), r};
    CHECK(lattice_count_in_rect({Rat(0), Rat(0)}, R) == brute_count({Rat(0), Rat(0)}, R));
  }
  std::mt19937_64 rng(17);
  auto frac = [&](long den) { return Rat(long(rng() % (2 * den + 1)) - den, den); };
  for (int i = 0; i < 1000; ++i) {
    Rotation rot = snap_rotation(Real(double(rng() % 3142) / 1000.0), 48);
    Rectangle R{{frac(13), frac(13)}, Rat(1 + long(rng() % 80), 10),
                Rat(1 + long(rng() % 80), 10), rot};
    Vec2 w{Rat(long(rng() % 97), 97), Rat(long(rng() % 89), 89)};
    CHECK(lattice_count_in_rect(w, R) == brute_count(w, R));
  }
}

TEST_CASE("cell clipping partitions the rectangle area") {
  Rotation rot = snap_rotation(Real(0.7), 64);
  Rectangle R{{Rat(1, 3), Rat(2, 7)}, Rat(9, 4), Rat(13, 8), rot};
  Rat total = 0;
  for (int cx = -4; cx <= 4; ++cx)
    for (int cy = -4; cy <= 4; ++cy) {
      auto poly = rect_cell_intersection(R, {Rat(cx), Rat(cy)});
      total += polygon_area(poly);
    }
  CHECK(total == R.area());
}

TEST_CASE("generators return exactly N points inside the square") {
  for (long N : {1L, 2L, 3L, 10L, 100L, 1024L, 4096L}) {
    auto a = rotated_lattice(N, Rat(7, 9));
    auto b = shifted_rotated_lattice(N, Rat(7, 9), 0.3, 0.6);
    auto c = random_points(N, 42);
    for (const auto* ps : {&a, &b, &c}) {
      CHECK(ps->n() == N);
      for (const auto& p : ps->pts) {
        CHECK(p.x >= 0);
        CHECK(p.x < 1);
        CHECK(p.y >= 0);
        CHECK(p.y < 1);
      }
    }
  }
}

TEST_CASE("small axis-aligned lattices are the expected grids") {
  auto g4 = rotated_lattice(4, Rat(0));
  REQUIRE(g4.n() == 4);
  CHECK(g4.adjustment == 0);
  std::vector<std::pair<double, double>> got;
  for (auto& p : g4.pts) got.push_back({p.x, p.y});
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::pair<double, double>>{{0, 0}, {0, 0.5}, {0.5, 0}, {0.5, 0.5}});

  // 2/sqrt(5) < 1, so the raw intersection has 9 points and 4 are removed.
  auto g5 = rotated_lattice(5, Rat(0));
  REQUIRE(g5.n() == 5);
  CHECK(g5.pre_adjust_count == 9);
  CHECK(g5.adjustment == 4);

  // When the rotated intersection falls short, dyadic centers are appended.
  bool saw_addition = false;
  for (long N = 5; N <= 200 && !saw_addition; ++N) {
    auto ps = rotated_lattice(N, Rat(2, 7));
    if (ps.pre_adjust_count >= N) continue;
    saw_addition = true;
    for (long i = ps.pre_adjust_count; i < N; ++i) {
      const auto& p = ps.pts[std::size_t(i)];
      // Coordinates of the form (2k+1)/2^(level+1).
      double sx = p.x * 4, sy = p.y * 4;
      for (int it = 0; it < 60 && (sx != std::floor(sx) || sy != std::floor(sy)); ++it) {
        sx *= 2;
        sy *= 2;
      }
      CHECK(std::fmod(sx, 2.0) == 1.0);
      CHECK(std::fmod(sy, 2.0) == 1.0);
    }
  }
  CHECK(saw_addition);

  auto sh = shifted_rotated_lattice(4, Rat(0), 0.25, 0.25);
  std::vector<std::pair<double, double>> sgot;
  for (auto& p : sh.pts) sgot.push_back({p.x, p.y});
  std::sort(sgot.begin(), sgot.end());
  CHECK(sgot == std::vector<std::pair<double, double>>{
                    {0.125, 0.125}, {0.125, 0.625}, {0.625, 0.125}, {0.625, 0.625}});

  auto z = shifted_rotated_lattice(7, Rat(5, 8), 0.0, 0.0);
  auto r = rotated_lattice(7, Rat(5, 8));
  REQUIRE(z.n() == r.n());
  for (long i = 0; i < z.n(); ++i) {
    CHECK(z.pts[std::size_t(i)].x == r.pts[std::size_t(i)].x);
    CHECK(z.pts[std::size_t(i)].y == r.pts[std::size_t(i)].y);
  }
}

TEST_CASE("pre-adjustment count obeys the perimeter bound") {
  for (long N : {4L, 16L, 100L, 1000L, 4096L, 16384L, 65536L}) {
    auto ps = rotated_lattice(N, Rat(5, 8));
    CHECK(double(std::abs(ps.pre_adjust_count - N)) <= 4 * (std::sqrt(double(N)) + 1));
  }
}

TEST_CASE("random baseline is reproducible and uniform-ish") {
  auto a = random_points(1000, 9);
  auto b = random_points(1000, 9);
  for (std::size_t i = 0; i < a.pts.size(); ++i) {
    CHECK(a.pts[i].x == b.pts[i].x);
    CHECK(a.pts[i].y == b.pts[i].y);
  }
  auto big = random_points(100000, 1);
  double mean = 0;
  for (auto& p : big.pts) mean += p.x;
  mean /= double(big.n());
  CHECK(std::abs(mean - 0.5) < 0.01);
  CHECK(random_points(1, 123).n() == 1);
}

TEST_CASE("point-set file round-trip") {
  auto ps = shifted_rotated_lattice(64, Rat(5, 8), 0.125, 0.375);
  save_pointset(ps, "ps_roundtrip.tmp");
  auto back = load_pointset("ps_roundtrip.tmp");
  REQUIRE(back.n() == ps.n());
  CHECK(back.slope == ps.slope);
  CHECK(back.shift_x == ps.shift_x);
  CHECK(back.kind == GeneratorKind::ShiftedRotatedLattice);
  for (long i = 0; i < ps.n(); ++i) {
    CHECK(back.pts[std::size_t(i)].x == ps.pts[std::size_t(i)].x);
    CHECK(back.pts[std::size_t(i)].y == ps.pts[std::size_t(i)].y);
  }
  std::remove("ps_roundtrip.tmp");
}
