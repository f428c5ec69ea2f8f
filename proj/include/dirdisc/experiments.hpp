#pragma once

// Batch orchestration: config parsing, the angle-search -> point sets ->
// measurement -> growth-fit pipeline, and the CSV/JSON report writers.

#include "dirdisc/angle_search.hpp"
#include "dirdisc/l2.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dirdisc {

enum class GrowthModel { LogPower, Power };

struct GrowthFit {
  GrowthModel model = GrowthModel::LogPower;
  std::string label;
  double coeff = 0;     // C in C * log^p N or C * N^p
  double exponent = 0;  // p
  double residual = 0;  // rms residual of the log-transformed fit
  long n_min = 0, n_max = 0;
};

// Least squares on the log-transformed model.  Points with N below min_n
// are dropped; fewer than 3 surviving points or non-positive values throw.
GrowthFit fit_growth(const std::vector<std::pair<long, double>>& series,
                     GrowthModel model, long min_n = 0);

struct BaselineComparison {
  std::vector<long> n_values;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // [name][n index]
  std::vector<std::vector<double>> ratios;  // relative to the first series
};

// Requires every series to share the same N grid.
BaselineComparison compare_baselines(
    const std::vector<std::pair<std::string, std::vector<std::pair<long, double>>>>&
        reports);

struct ExperimentConfig {
  // [directions]
  std::string dir_kind = "lacunary";  // finite | lacunary | lacunary-order | cantor
  std::vector<double> finite_angles{0.0};
  Rat base{2};
  int order = 2;
  Rat cantor_d{1, 6};
  // [schedule]
  double q_target = 100000;
  double covering_budget = 100000;
  // [points]
  std::vector<long> n_values{256, 1024, 4096};
  std::uint64_t seed = 1;
  // [measure]
  std::size_t budget = 16;
  int resolution = 64;
  int q = 64;  // L2 shift quadrature
  std::uint64_t nu_max = 1000;
  int shift_candidates = 4;
  long fit_min_n = 64;
  unsigned threads = 1;

  void validate() const;  // throws DomainError with an actionable message
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_template();

// Building blocks shared with the command-line front end.
DirectionSet directions_from_config(const ExperimentConfig& cfg,
                                    std::vector<std::string>& warnings);
Schedule schedule_from_config(const ExperimentConfig& cfg,
                              const DirectionSet& with_axes);
// Runs the nested-interval search per the config and extends the margin
// constant down to q = 1.
NestedIntervalCertificate search_certificate(const ExperimentConfig& cfg,
                                             std::vector<std::string>& warnings);

struct L2Row {
  long n = 0;
  Rat slope;
  int q = 0;
  double mean_square = 0;   // quadrature side of the identity
  double fourier_bound = 0; // frequency-sum side
  double tail_bound = 0;
};

struct ExperimentResult {
  NestedIntervalCertificate certificate;
  std::vector<DiscrepancyReport> reports;  // generator-major, then N ascending
  std::vector<L2Row> l2_rows;
  std::vector<GrowthFit> fits;
  std::vector<std::pair<std::string, double>> stats;
  std::vector<std::string> warnings;
};

// Deterministic given the config; pass a certificate to skip the search.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const NestedIntervalCertificate* reuse = nullptr);

std::string report_csv_text(const std::vector<DiscrepancyReport>& reports);
std::string l2_csv_text(const std::vector<L2Row>& rows);
std::string fits_json_text(const ExperimentResult& res);

// FNV-1a 64 content digest, reported as 16 hex digits.
std::string content_digest(const std::string& bytes);

// Writes certificate.cert, report.csv, l2.csv, fits.json and manifest.json
// into out_dir (created if missing); returns (file, digest) pairs, which the
// manifest also lists.
std::vector<std::pair<std::string, std::string>> write_experiment(
    const ExperimentResult& res, const ExperimentConfig& cfg,
    const std::string& out_dir);

}  // namespace dirdisc
