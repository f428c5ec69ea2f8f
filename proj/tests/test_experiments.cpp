#include "doctest.h"

#include "dirdisc/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace dirdisc;

TEST_CASE("config template parses back to the defaults") {
  auto cfg = parse_config_text(config_template());
  ExperimentConfig def;
  CHECK(cfg.dir_kind == def.dir_kind);
  CHECK(cfg.base == def.base);
  CHECK(cfg.order == def.order);
  CHECK(Rat(cfg.cantor_d) == Rat(def.cantor_d));
  CHECK(cfg.n_values == def.n_values);
  CHECK(cfg.seed == def.seed);
  CHECK(cfg.budget == def.budget);
  CHECK(cfg.resolution == def.resolution);
  CHECK(cfg.q == def.q);
  CHECK(cfg.nu_max == def.nu_max);
  CHECK(cfg.shift_candidates == def.shift_candidates);
  CHECK(cfg.fit_min_n == def.fit_min_n);
  CHECK(cfg.threads == def.threads);
}

TEST_CASE("config validation rejects bad input") {
  CHECK_THROWS_AS(parse_config_text("[directions]\nkind = pentagonal\n"),
                  DomainError);
  CHECK_THROWS_AS(parse_config_text("[points]\nn = 64 64\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("[points]\nn =\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("[measure]\nwibble = 3\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("[measure]\nresolution = one\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("no equals sign here\n"), DomainError);
}

TEST_CASE("growth fits recover planted exponents") {
  std::vector<std::pair<long, double>> logcube, quarter, flat;
  for (long n = 64; n <= 65536; n *= 2) {
    double l = std::log2(double(n));
    logcube.push_back({n, 2.0 * l * l * l});
    quarter.push_back({n, 3.0 * std::pow(double(n), 0.25)});
    flat.push_back({n, 5.0});
  }
  auto a = fit_growth(logcube, GrowthModel::LogPower);
  CHECK(a.exponent == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(a.coeff == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(a.residual < 1e-9);
  auto b = fit_growth(quarter, GrowthModel::Power);
  CHECK(b.exponent == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(b.coeff == doctest::Approx(3.0).epsilon(1e-6));
  auto c = fit_growth(flat, GrowthModel::LogPower);
  CHECK(std::abs(c.exponent) < 1e-9);

  CHECK_THROWS_AS(fit_growth({{64, 1.0}, {128, 2.0}}, GrowthModel::Power),
                  DomainError);
  CHECK_THROWS_AS(
      fit_growth({{64, 1.0}, {128, 0.0}, {256, 2.0}}, GrowthModel::Power),
      DomainError);
  // Cutoff drops the pre-asymptotic points.
  auto d = fit_growth(quarter, GrowthModel::Power, 1024);
  CHECK(d.n_min == 1024);
  CHECK(d.exponent == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("baseline comparison") {
  std::vector<std::pair<long, double>> s1{{64, 2.0}, {128, 4.0}};
  auto cmp = compare_baselines({{"a", s1}, {"b", s1}});
  CHECK(cmp.ratios[1][0] == 1.0);
  CHECK(cmp.ratios[1][1] == 1.0);
  std::vector<std::pair<long, double>> s2{{64, 6.0}, {128, 4.0}};
  auto cmp2 = compare_baselines({{"a", s1}, {"b", s2}});
  CHECK(cmp2.ratios[1][0] == 3.0);
  std::vector<std::pair<long, double>> bad{{64, 2.0}, {256, 4.0}};
  CHECK_THROWS_AS(compare_baselines({{"a", s1}, {"b", bad}}), DomainError);
}

TEST_CASE("content digest is stable") {
  CHECK(content_digest("") == "cbf29ce484222325");
  CHECK(content_digest("abc") == content_digest("abc"));
  CHECK(content_digest("abc") != content_digest("abd"));
}

TEST_CASE("experiment pipeline end to end") {
  ExperimentConfig cfg;
  cfg.dir_kind = "finite";
  cfg.finite_angles = {0.0};
  cfg.n_values = {64, 128, 256, 512};
  cfg.budget = 2;
  cfg.resolution = 16;
  cfg.q = 16;
  cfg.nu_max = 200;
  cfg.fit_min_n = 64;
  cfg.seed = 7;

  auto res = run_experiment(cfg);
  CHECK(res.certificate.stages.size() > 1);
  CHECK(Rat(res.certificate.c_prime) > Rat(0));
  CHECK(Rat(res.certificate.global_constant) > Rat(0));
  // Three generators, four N values each.
  CHECK(res.reports.size() == 12);
  CHECK(res.l2_rows.size() == 4);
  REQUIRE(res.fits.size() == 3);
  for (const auto& f : res.fits) CHECK(std::isfinite(f.exponent));
  // Random points grow roughly like a power; the lattice does not.
  for (const auto& f : res.fits)
    if (f.label == "random") CHECK(f.exponent > 0.1);
  // The Parseval rows satisfy their own contract.
  for (const auto& r : res.l2_rows)
    CHECK(std::abs(r.mean_square - r.fourier_bound) <=
          r.tail_bound + 4.0 / r.q);

  // Determinism: identical config gives byte-identical outputs.
  auto res2 = run_experiment(cfg);
  CHECK(report_csv_text(res.reports) == report_csv_text(res2.reports));
  CHECK(l2_csv_text(res.l2_rows) == l2_csv_text(res2.l2_rows));
  CHECK(fits_json_text(res) == fits_json_text(res2));

  // Reusing the certificate skips the search but reproduces the rest.
  auto res3 = run_experiment(cfg, &res.certificate);
  CHECK(report_csv_text(res3.reports) == report_csv_text(res.reports));

  // File bundle and manifest digests.
  std::string dir = "exp_out_tmp";
  auto manifest = write_experiment(res, cfg, dir);
  REQUIRE(manifest.size() == 4);
  for (const auto& [name, digest] : manifest) {
    std::ifstream in(std::filesystem::path(dir) / name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(content_digest(buf.str()) == digest);
  }
  CHECK(std::filesystem::exists(std::filesystem::path(dir) / "manifest.json"));
  auto cert_back =
      load_certificate((std::filesystem::path(dir) / "certificate.cert").string());
  CHECK(Rat(cert_back.slope) == Rat(res.certificate.slope));
  std::filesystem::remove_all(dir);
}

TEST_CASE("tau warning for large cantor dimension") {
  ExperimentConfig base;
  base.dir_kind = "finite";
  base.finite_angles = {0.0};
  base.n_values = {64};
  base.budget = 1;
  base.resolution = 4;
  base.q = 4;
  base.nu_max = 10;
  auto seeded = run_experiment(base);

  ExperimentConfig cfg = base;
  cfg.dir_kind = "cantor";
  cfg.cantor_d = Rat(2, 5);  // above the meaningfulness threshold
  auto res = run_experiment(cfg, &seeded.certificate);
  bool warned = false;
  for (const auto& w : res.warnings)
    warned = warned || w.find("tau") != std::string::npos;
  CHECK(warned);

  ExperimentConfig ok = cfg;
  ok.cantor_d = Rat(1, 6);
  auto res2 = run_experiment(ok, &seeded.certificate);
  for (const auto& w : res2.warnings)
    CHECK(w.find("tau") == std::string::npos);
}
