#include "doctest.h"

#include "dirdisc/schedule.hpp"

using namespace dirdisc;

TEST_CASE("schedule values are monotone in the stage index") {
  std::vector<Schedule> scheds = {
      Schedule::lacunary(),
      Schedule::lacunary_order(2),
      Schedule::minkowski(Rat(1, 6)),
      Schedule::finite_set(12),
  };
  for (const auto& s : scheds) {
    for (int n = 1; n <= 8; ++n) {
      CHECK(s.R(n + 1) > s.R(n));
      CHECK(s.I_len(n + 1) < s.I_len(n));
      CHECK(s.c(n) > 0);
      CHECK(s.I_len(n) > 0);
      CHECK(s.delta(n) >= 0);
      CHECK(s.delta(n + 1) <= s.delta(n));
      CHECK(s.N_bound(n + 1) >= s.N_bound(n));
    }
  }
}

TEST_CASE("published stage inequalities at generous constants") {
  // With tiny c0 and eps0 the plain schedule satisfies both inequalities
  // deep into the chain.
  auto s = Schedule::lacunary(Rat(1, 1000000), Rat(1, 1000));
  auto chk = s.check_inequalities(20, std::size_t(s.N_bound(20)));
  CHECK(chk.ok1);
  CHECK(chk.ok2);
  CHECK(chk.slack > 0);

  // c0 = 1 overwhelms the early pigeonhole gap.
  auto bad = Schedule::lacunary(Rat(1), Rat(1, 8));
  CHECK(!bad.check_inequalities(3, 8).ok1);
}

TEST_CASE("feasible stage windows at the default constants") {
  auto lac = Schedule::lacunary();
  CHECK(lac.find_n0() == 8);
  CHECK(!lac.feasible_stage(7, lac.N_bound(7)));
  CHECK(lac.R(8) == 331776);
  int lac_max = lac.find_n_max(8, 1e6, 1e6);
  CHECK(lac_max == 13);
  CHECK(lac.R(lac_max + 1) >= lac.R(8) * lac.R(8));

  auto m2 = Schedule::lacunary_order(2);
  CHECK(m2.find_n0() == 4);
  CHECK(m2.R(4) == 65536);
  CHECK(m2.find_n_max(4, 1e6, 1e6) == 6);

  auto mink = Schedule::minkowski(Rat(1, 6));
  CHECK(mink.mink_t() == Rat(7, 12));
  CHECK(mink.mink_a() == Rat(12, 5));
  CHECK(mink.mink_exponent() == Rat(238, 25));
  CHECK(mink.find_n0() == 1);
  CHECK(mink.find_n_max(1, 1e6, 1e6) == 2);
  CHECK(mink.R(3) >= mink.R(1) * mink.R(1));

  for (std::size_t ncov : {1, 2, 4, 9, 18}) {
    auto fin = Schedule::finite_set(ncov);
    CHECK(fin.find_n0() == 1);
    for (int n = 1; n <= 10; ++n) CHECK(fin.feasible_stage(n, double(ncov)));
  }
}

TEST_CASE("schedule feasibility implies the published inequalities") {
  std::vector<Schedule> scheds = {
      Schedule::lacunary(),
      Schedule::lacunary_order(2),
      Schedule::minkowski(Rat(1, 6)),
      Schedule::finite_set(6),
  };
  for (const auto& s : scheds) {
    int n0 = s.find_n0();
    int nm = s.find_n_max(n0, 1e6, 1e6);
    for (int n = n0; n <= nm; ++n) {
      REQUIRE(s.feasible_stage(n, s.N_bound(n)));
      auto chk = s.check_inequalities(n, std::size_t(s.N_bound(n)));
      CHECK(chk.ok1);
      CHECK(chk.ok2);
    }
  }
}

#include "dirdisc/angle_search.hpp"

#include <cstdio>
#include <random>

namespace {
double d(const dirdisc::Real& x) { return x.convert_to<double>(); }
}

TEST_CASE("slope transform agrees with direct tangent evaluation") {
  ScopedPrecision prec(256);
  Real pi = pi_value();
  std::mt19937_64 rng(7);
  auto unif = [&] { return double(rng()) / 18446744073709551616.0; };
  Real tol = Real(1) / (Int(1) << 80);
  for (int i = 0; i < 1000; ++i) {
    Real alpha = Real(pi / 6) + Real(pi / 6) * unif();
    Real theta = Real(pi / 2) * unif();
    Rat t = rat_near(Real(tan(alpha)), 200);
    Rat s = rat_near(Real(tan(theta)), 200);
    Real direct = tan(atan(to_real(t)) - atan(to_real(s)));
    Real via = to_real((t - s) / (1 + t * s));
    CHECK(d(abs(direct - via)) <= d(tol));
  }
}

TEST_CASE("single horizontal direction: stages succeed and exclusions are the unique dangerous fractions") {
  auto omega = DirectionSet::finite({Real(0)});
  auto sched = Schedule::finite_set(1);
  auto res = find_angle(omega, sched, 4, 1);
  const auto& stages = res.cert.stages;
  REQUIRE(stages.size() == 5);  // seed plus stages 1..4

  for (std::size_t i = 1; i < stages.size(); ++i) {
    const auto& st = stages[i];
    CHECK(stages[i - 1].interval.contains(st.interval));
    CHECK(st.interval.length() == st.stage_len);
    CHECK(st.exclusions.size() <= st.covering_count);

    // Brute force: every fraction p/q with R(n) <= q < R(n+1) whose
    // c/q^2-neighborhood meets the previous interval must appear, and at
    // most one per covering interval can exist.
    const auto& prev = stages[i - 1].interval;
    Int Rn = st.R, Rn1 = sched.R(st.n + 1);
    int dangerous = 0;
    for (Int q = Rn; q < Rn1; ++q) {
      Rat radius = st.c / Rat(q * q);
      Int plo = floor_rat(Rat((prev.lo - radius) * q));
      Int phi = ceil_rat(Rat((prev.hi + radius) * q));
      for (Int p = plo; p <= phi; ++p) {
        Rat f(p, q);
        if (denominator(f) != q) continue;  // only lowest terms
        if (f + radius < prev.lo || f - radius > prev.hi) continue;
        ++dangerous;
        bool recorded = false;
        for (const auto& e : st.exclusions)
          if (e.p == p && e.q == q) recorded = true;
        CHECK(recorded);
      }
    }
    CHECK(dangerous <= 1);
    // Surviving interval avoids every removed band.
    for (const auto& e : st.exclusions) {
      bool clear = e.removed.hi <= st.interval.lo || e.removed.lo >= st.interval.hi;
      CHECK(clear);
    }
  }

  // The final slope is badly approximable over the certified range.
  Rat t = res.slope;
  for (Int q = res.cert.q_min; q <= res.cert.q_max; ++q) {
    Rat qt = t * q;
    Int fl = floor_rat(qt);
    Rat dist = std::min(Rat(qt - fl), Rat(fl + 1 - qt));
    int n = res.cert.n0;
    while (sched.R(n + 1) <= q) ++n;
    CHECK(Rat(dist * q) > Rat(sched.c(n) / q));  // ||q t|| > c(n)/q
  }
}

TEST_CASE("stage with no dangerous fraction keeps the left end") {
  auto omega = DirectionSet::finite({Real(0)});
  auto sched = Schedule::finite_set(1);
  auto res = find_angle(omega, sched, 4, 1);
  for (std::size_t i = 1; i < res.cert.stages.size(); ++i) {
    const auto& st = res.cert.stages[i];
    if (st.exclusions.empty())
      CHECK(st.interval.lo == res.cert.stages[i - 1].interval.lo);
  }
}

TEST_CASE("brute-force margin scan on classic slopes") {
  auto omega = DirectionSet::finite({Real(0)});
  auto one = PsiFunction::constant(Rat(1));

  ScopedPrecision prec(256);
  Rat golden = rat_near(Real((1 + sqrt(Real(5))) / 2), 200);
  auto rep = verify_certificate(golden, omega, 1, 1000, one, 4);
  CHECK(rep.min_margin == doctest::Approx(0.3819660112501051).epsilon(1e-12));
  CHECK(rep.witness_q == 1);
  CHECK(rep.witness_p == 2);

  auto rat = verify_certificate(Rat(1, 2), omega, 1, 100, one, 4);
  CHECK(rat.min_margin == 0.0);
  CHECK(rat.witness_q == 2);
  CHECK(rat.witness_p == 1);
}

TEST_CASE("small-denominator extension formula") {
  NestedIntervalCertificate cert;
  cert.psi_kind = PsiFunction::Kind::LogPower;
  cert.psi_log_power = 2;
  cert.c_prime = Rat(1);
  cert.q_min = 4;
  cert.q_max = 1000;
  CHECK(extend_small_q(cert) == Rat(1, 144));

  cert.q_min = 1;
  CHECK(extend_small_q(cert) == Rat(1));

  // Larger starting denominator gives a smaller constant.
  cert.c_prime = Rat(1);
  cert.q_min = 4;
  Rat at4 = extend_small_q(cert);
  cert.q_min = 16;
  CHECK(extend_small_q(cert) < at4);
}

TEST_CASE("lacunary chain certifies its whole denominator range") {
  auto omega = DirectionSet::lacunary(2).with_axes();
  auto sched = Schedule::lacunary();
  auto res = find_angle(omega, sched, 9);  // short chain for speed
  const auto& cert = res.cert;
  CHECK(cert.n0 == 8);
  CHECK(Rat(cert.q_min) == Rat(sched.R(8)));
  CHECK(cert.c_prime > 0);

  // Margin scan scaled by psi stays above c_prime on a slice of the range.
  auto psi = cert.psi();
  Int hi = cert.q_min + 200000;
  auto rep = verify_certificate(cert.slope, omega, cert.q_min, hi, psi, 16);
  CHECK(rep.min_margin > rat_to_double(cert.c_prime));

  // And after the extension, over all small q too.
  NestedIntervalCertificate ext = cert;
  Rat cpp = extend_small_q(ext);
  CHECK(cpp > 0);
  CHECK(cpp < cert.c_prime);
  auto small = verify_certificate(cert.slope, omega, 1, 2000, psi, 16);
  CHECK(small.min_margin > rat_to_double(cpp));
}

TEST_CASE("certificate text round-trip") {
  auto omega = DirectionSet::finite({Real(0), Real(1)});
  auto sched = Schedule::finite_set(2);
  auto res = find_angle(omega, sched, 3, 1);
  extend_small_q(res.cert);
  std::string text = certificate_to_text(res.cert);
  auto back = certificate_from_text(text);
  CHECK(back.slope == res.cert.slope);
  CHECK(back.c_prime == res.cert.c_prime);
  CHECK(back.global_constant == res.cert.global_constant);
  CHECK(back.q_min == res.cert.q_min);
  CHECK(back.q_max == res.cert.q_max);
  REQUIRE(back.stages.size() == res.cert.stages.size());
  for (std::size_t i = 0; i < back.stages.size(); ++i) {
    CHECK(back.stages[i].interval.lo == res.cert.stages[i].interval.lo);
    CHECK(back.stages[i].interval.hi == res.cert.stages[i].interval.hi);
    CHECK(back.stages[i].exclusions.size() == res.cert.stages[i].exclusions.size());
  }
  CHECK(certificate_to_text(back) == text);
  auto rebuilt = back.rebuild_schedule();
  CHECK(rebuilt.R(3) == sched.R(3));
}
