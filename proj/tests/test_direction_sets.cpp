#include "doctest.h"

#include "dirdisc/direction_sets.hpp"

#include <cmath>

using namespace dirdisc;

namespace {
double d(const Real& x) { return x.convert_to<double>(); }

bool covered(const Covering& cov, const Real& angle) {
  Real slack = Real(1) / (Int(1) << 60);
  for (const auto& iv : cov.intervals)
    if (iv.lo - slack <= angle && angle <= iv.hi + slack) return true;
  return false;
}
}  // namespace

TEST_CASE("lacunary covering counts") {
  auto lac = DirectionSet::lacunary(2);
  auto cov = lac.cover(Real(1) / 1024);
  CHECK(cov.count() == 10);  // singletons k = 1..9 plus the tail interval
  for (int k = 1; k <= 30; ++k) {
    auto c = lac.cover(to_real(Rat(1, Int(1) << k)));
    CHECK(c.count() <= std::size_t(k) + 1);
  }
}

TEST_CASE("finite covering") {
  auto fin = DirectionSet::finite({Real(0.1), Real(0.2), Real(0.3)});
  CHECK(fin.cover(Real(0.5)).count() <= 3);
  CHECK(fin.cover(Real(1) / 100000).count() <= 3);
}

TEST_CASE("cantor covering at its own scales") {
  auto cantor = DirectionSet::cantor_like(Rat(1, 3), Real(0), Real(1));
  auto cov = cantor.cover(to_real(Rat(1, 9)));
  CHECK(cov.count() == 4);  // level-2 construction: 4 pieces of length 1/9
  double dim = cantor.dimension();
  double worst = 0;
  for (int k = 1; k <= 12; ++k) {
    double delta = std::pow(1.0 / 3.0, k);
    auto c = cantor.cover(to_real(rat_below(Real(delta), 64)));
    worst = std::max(worst, double(c.count()) * std::pow(delta, dim));
  }
  CHECK(worst <= 4.0);
}

TEST_CASE("order-M covering matches lacunary at M=1") {
  auto lac = DirectionSet::lacunary(2);
  auto m1 = DirectionSet::lacunary_order(1, 2);
  for (int k = 2; k <= 20; ++k) {
    Real delta = to_real(Rat(1, Int(1) << k));
    CHECK(m1.cover(delta).count() == lac.cover(delta).count());
  }
}

TEST_CASE("order-2 covering is log-squared sized") {
  auto m2 = DirectionSet::lacunary_order(2, 2);
  for (int k = 4; k <= 20; k += 4) {
    Real delta = to_real(Rat(1, Int(1) << k));
    double J = std::ceil(std::log2(2.0 * (Int(1) << k).convert_to<double>()));
    CHECK(double(m2.cover(delta).count()) <= J * J);
  }
}

TEST_CASE("representatives") {
  auto lac = DirectionSet::lacunary(2);
  auto reps = lac.representatives(3);
  REQUIRE(reps.size() == 3);
  CHECK(d(reps[0]) == 0.5);
  CHECK(d(reps[1]) == 0.25);
  CHECK(d(reps[2]) == 0.125);

  auto fin = DirectionSet::finite({Real(0.3), Real(0.1)});
  auto freps = fin.representatives(10);
  REQUIRE(freps.size() == 2);
  CHECK(d(freps[0]) == 0.3);

  auto m2 = DirectionSet::lacunary_order(2, 2);
  auto mreps = m2.representatives(3);
  REQUIRE(mreps.size() == 3);
  CHECK(d(mreps[0]) == 1.0);     // 1/2 + 1/2
  CHECK(d(mreps[1]) == 0.75);    // 1/2 + 1/4
  CHECK(d(mreps[2]) == 0.625);   // 1/2 + 1/8

  // Deterministic: repeated calls identical.
  auto again = m2.representatives(3);
  for (int i = 0; i < 3; ++i) CHECK(d(mreps[i]) == d(again[i]));
}

TEST_CASE("axes augmentation") {
  auto empty = DirectionSet::finite({}).with_axes();
  auto reps = empty.representatives(5);
  REQUIRE(reps.size() == 2);
  CHECK(d(reps[0]) == 0.0);
  CHECK(d(reps[1]) == doctest::Approx(M_PI / 2));

  auto one = DirectionSet::finite({Real(0.4)}).with_axes();
  auto oreps = one.representatives(5);
  REQUIRE(oreps.size() == 3);
  CHECK(d(oreps[0]) == 0.0);
  CHECK(d(oreps[1]) == 0.4);
  CHECK(d(oreps[2]) == doctest::Approx(M_PI / 2));

  auto lac = DirectionSet::lacunary(2);
  Real delta = to_real(Rat(1, 256));
  auto plain = lac.cover(delta);
  auto aug = lac.with_axes().cover(delta);
  CHECK(aug.count() <= 2 * plain.count() + 2);
  CHECK(aug.has_vertical);
}

TEST_CASE("representatives lie inside coverings") {
  std::vector<DirectionSet> models = {
      DirectionSet::lacunary(2),
      DirectionSet::lacunary_order(2, 2),
      DirectionSet::cantor_like(Rat(1, 3)),
      DirectionSet::finite({Real(0.1), Real(0.7), Real(1.2)}),
  };
  for (const auto& m : models) {
    auto reps = m.representatives(m.kind() == DirKind::CantorLike ? 64 : 200);
    for (int k = 2; k <= 21; ++k) {
      if (m.kind() == DirKind::CantorLike && k > 16) break;
      Real delta = to_real(Rat(1, Int(1) << k));
      auto cov = m.cover(delta);
      for (const auto& a : reps) CHECK(covered(cov, a));
    }
  }
}

TEST_CASE("dimension") {
  CHECK(DirectionSet::finite({Real(0.5)}).dimension() == 0.0);
  CHECK(DirectionSet::lacunary(2).dimension() == 0.0);
  auto c6 = DirectionSet::cantor_like(Rat(1, 64));
  REQUIRE(c6.dimension_exact().has_value());
  CHECK(*c6.dimension_exact() == Rat(1, 6));
  CHECK(c6.dimension() == doctest::Approx(1.0 / 6));
  auto c3 = DirectionSet::cantor_like(Rat(1, 3));
  CHECK(c3.dimension() == doctest::Approx(0.63092975).epsilon(1e-6));
  CHECK(!c3.dimension_exact().has_value());
}

TEST_CASE("tau arithmetic") {
  CHECK(d(tau(Real(0)).tau) == 0.0);
  CHECK(tau_rational(Rat(0)) == 0);
  CHECK(tau_rational(Rat(1, 6)) == Rat(22, 25));
  ScopedPrecision prec(256);
  Real threshold = 1 - sqrt(Real(2) / 3);
  CHECK(d(tau(threshold).tau) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(!tau(threshold).meaningful);
  CHECK(tau(Real(threshold - Real("0.001"))).meaningful);
  double prev = -1;
  for (int i = 0; i < 1000; ++i) {
    double x = i / 1001.0;
    double t = d(tau(Real(x)).tau);
    CHECK(t > prev);
    prev = t;
  }
  CHECK_THROWS_AS(tau(Real(1)), DomainError);
}
