// Batch front door: certified angle search, point-set generation,
// discrepancy measurement and experiment orchestration.
//
// Exit codes: 0 success, 2 configuration error, 3 infeasible schedule,
// 4 precision exhaustion.

#include "CLI11.hpp"

#include "dirdisc/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace dirdisc;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string cert_path;
  long long seed = -1;
  int threads = -1;
};

ExperimentConfig load_effective_config(const CommonOpts& opts) {
  ExperimentConfig cfg =
      opts.config_path.empty() ? ExperimentConfig{} : load_config(opts.config_path);
  if (opts.seed >= 0) cfg.seed = std::uint64_t(opts.seed);
  if (opts.threads >= 0) cfg.threads = unsigned(opts.threads);
  cfg.validate();
  return cfg;
}

NestedIntervalCertificate obtain_certificate(const CommonOpts& opts,
                                             const ExperimentConfig& cfg,
                                             std::vector<std::string>& warnings) {
  if (!opts.cert_path.empty()) return load_certificate(opts.cert_path);
  return search_certificate(cfg, warnings);
}

void write_text(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << bytes;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_init(const std::string& file) {
  if (file == "-") {
    std::cout << config_template();
  } else {
    write_text(file, config_template());
    std::cout << "wrote " << file << "\n";
  }
  return 0;
}

int cmd_angle_search(const CommonOpts& opts) {
  auto cfg = load_effective_config(opts);
  std::vector<std::string> warnings;
  auto cert = search_certificate(cfg, warnings);
  print_warnings(warnings);
  fs::create_directories(opts.out_dir);
  std::string path = (fs::path(opts.out_dir) / "certificate.cert").string();
  save_certificate(cert, path);
  std::cout << cert.describe << "\n"
            << "slope = " << cert.slope << "\n"
            << "certified q range = [" << cert.q_min << ", " << cert.q_max << "]\n"
            << "margin constant c' = " << cert.c_prime.str() << "\n"
            << "extended constant c'' = " << cert.global_constant.str() << "\n"
            << "wrote " << path << "\n";
  return 0;
}

int cmd_pointset(const CommonOpts& opts, long n, const std::string& generator,
                 const std::string& slope_text, double w1, double w2,
                 const std::string& out_file) {
  Rat slope(0);
  if (!slope_text.empty()) {
    auto slash = slope_text.find('/');
    slope = slash == std::string::npos
                ? Rat(Int(slope_text))
                : Rat(Int(slope_text.substr(0, slash)),
                      Int(slope_text.substr(slash + 1)));
  } else if (!opts.cert_path.empty()) {
    slope = load_certificate(opts.cert_path).slope;
  }

  PointSet ps;
  if (generator == "rotated") {
    ps = rotated_lattice(n, slope);
  } else if (generator == "shifted") {
    ps = shifted_rotated_lattice(n, slope, w1, w2);
  } else if (generator == "random") {
    ps = random_points(n, opts.seed >= 0 ? std::uint64_t(opts.seed) : 1);
  } else {
    throw DomainError("generator must be rotated, shifted or random");
  }
  save_pointset(ps, out_file);
  std::cout << "wrote " << out_file << " (" << ps.n() << " points, adjustment "
            << ps.adjustment << ")\n";
  return 0;
}

int cmd_measure(const CommonOpts& opts) {
  auto cfg = load_effective_config(opts);
  std::vector<std::string> warnings;
  auto cert = obtain_certificate(opts, cfg, warnings);
  auto res = run_experiment(cfg, &cert);
  print_warnings(res.warnings);
  fs::create_directories(opts.out_dir);
  std::string path = (fs::path(opts.out_dir) / "report.csv").string();
  write_text(path, report_csv_text(res.reports));
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_l2(const CommonOpts& opts) {
  auto cfg = load_effective_config(opts);
  std::vector<std::string> warnings;
  auto cert = obtain_certificate(opts, cfg, warnings);
  print_warnings(warnings);
  std::vector<L2Row> rows;
  for (long N : cfg.n_values) {
    SideSpec side{Rat(0), Rat(1, 3), cert.slope};
    IntRun I{0, std::lround(std::sqrt(double(N)))};
    if (I.length < 1) I.length = 1;
    auto out = l2_fourier_side_identity(side, I, cfg.nu_max, cfg.q);
    rows.push_back({N, cert.slope, cfg.q, out.lhs, out.rhs, out.tail_bound});
  }
  fs::create_directories(opts.out_dir);
  std::string path = (fs::path(opts.out_dir) / "l2.csv").string();
  write_text(path, l2_csv_text(rows));
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_experiment(const CommonOpts& opts) {
  auto cfg = load_effective_config(opts);
  ExperimentResult res;
  if (!opts.cert_path.empty()) {
    auto cert = load_certificate(opts.cert_path);
    res = run_experiment(cfg, &cert);
  } else {
    res = run_experiment(cfg);
  }
  print_warnings(res.warnings);
  auto manifest = write_experiment(res, cfg, opts.out_dir);
  for (const auto& [name, digest] : manifest)
    std::cout << name << "  " << digest << "\n";
  std::cout << "wrote " << manifest.size() + 1 << " files to " << opts.out_dir
            << "\n";
  return 0;
}

int cmd_fit(const std::string& in_file, const std::string& model, long min_n,
            const std::string& out_file) {
  std::ifstream in(in_file);
  if (!in) throw DomainError("cannot read " + in_file);
  std::vector<std::pair<long, double>> series;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || !std::isdigit((unsigned char)line[0])) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) continue;
    series.push_back({std::stol(a), std::stod(b)});
  }
  GrowthModel m;
  if (model == "log") {
    m = GrowthModel::LogPower;
  } else if (model == "power") {
    m = GrowthModel::Power;
  } else {
    throw DomainError("model must be log or power");
  }
  auto fit = fit_growth(series, m, min_n);
  ExperimentResult wrap;
  fit.label = in_file;
  wrap.fits.push_back(fit);
  std::string text = fits_json_text(wrap);
  if (out_file == "-") {
    std::cout << text;
  } else {
    write_text(out_file, text);
    std::cout << "wrote " << out_file << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified-direction discrepancy toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOpts opts;
  app.add_option("--config", opts.config_path, "configuration file");
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--seed", opts.seed, "override the configured seed");
  app.add_option("--threads", opts.threads, "worker threads (0 = auto)");
  app.add_option("--certificate", opts.cert_path, "reuse a saved certificate");

  std::string init_file = "experiment.cfg";
  auto* init = app.add_subcommand("init", "write a commented config template");
  init->add_option("--file", init_file, "target path ('-' for stdout)");

  auto* angle = app.add_subcommand("angle-search", "run the certified search");

  long ps_n = 64;
  std::string ps_gen = "rotated", ps_slope, ps_file = "points.txt";
  double ps_w1 = 0, ps_w2 = 0;
  auto* pointset = app.add_subcommand("pointset", "generate a point set file");
  pointset->add_option("--n", ps_n, "number of points")->required();
  pointset->add_option("--generator", ps_gen, "rotated | shifted | random");
  pointset->add_option("--slope", ps_slope, "exact slope num/den");
  pointset->add_option("--shift-x", ps_w1, "lattice shift");
  pointset->add_option("--shift-y", ps_w2, "lattice shift");
  pointset->add_option("--file", ps_file, "output file");

  auto* measure = app.add_subcommand("measure", "directional sup report");
  auto* l2cmd = app.add_subcommand("l2", "mean-square identity report");
  auto* exper = app.add_subcommand("experiment", "full report bundle");

  std::string fit_in, fit_model = "log", fit_out = "-";
  long fit_min = 0;
  auto* fit = app.add_subcommand("fit", "growth fit of an N,value CSV");
  fit->add_option("--in", fit_in, "input CSV")->required();
  fit->add_option("--model", fit_model, "log | power");
  fit->add_option("--min-n", fit_min, "drop N below this");
  fit->add_option("--file", fit_out, "output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (init->parsed()) return cmd_init(init_file);
    if (angle->parsed()) return cmd_angle_search(opts);
    if (pointset->parsed())
      return cmd_pointset(opts, ps_n, ps_gen, ps_slope, ps_w1, ps_w2, ps_file);
    if (measure->parsed()) return cmd_measure(opts);
    if (l2cmd->parsed()) return cmd_l2(opts);
    if (exper->parsed()) return cmd_experiment(opts);
    if (fit->parsed()) return cmd_fit(fit_in, fit_model, fit_min, fit_out);
  } catch (const InfeasibleScheduleError& e) {
    std::cerr << "infeasible schedule: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 4;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
