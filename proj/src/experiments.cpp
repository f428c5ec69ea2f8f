#include "dirdisc/experiments.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace dirdisc {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void config_error(const std::string& msg) {
  throw DomainError("config: " + msg);
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long out = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    config_error(key + " expects an integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    config_error(key + " expects a number, got '" + v + "'");
  }
}

Rat to_rat(const std::string& key, const std::string& v) {
  try {
    auto slash = v.find('/');
    if (slash == std::string::npos) return Rat(Int(v));
    return Rat(Int(v.substr(0, slash)), Int(v.substr(slash + 1)));
  } catch (const std::exception&) {
    config_error(key + " expects an integer or num/den fraction, got '" + v + "'");
  }
}

std::vector<std::string> split_ws(const std::string& v) {
  std::vector<std::string> out;
  std::istringstream in(v);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        config_error("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      config_error("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = section + "." + trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));

    if (key == "directions.kind") {
      cfg.dir_kind = val;
    } else if (key == "directions.angles") {
      cfg.finite_angles.clear();
      for (const auto& t : split_ws(val))
        cfg.finite_angles.push_back(to_double(key, t));
    } else if (key == "directions.base") {
      cfg.base = to_rat(key, val);
    } else if (key == "directions.order") {
      cfg.order = int(to_long(key, val));
    } else if (key == "directions.d") {
      cfg.cantor_d = to_rat(key, val);
    } else if (key == "schedule.q_target") {
      cfg.q_target = to_double(key, val);
    } else if (key == "schedule.covering_budget") {
      cfg.covering_budget = to_double(key, val);
    } else if (key == "points.n") {
      cfg.n_values.clear();
      for (const auto& t : split_ws(val)) cfg.n_values.push_back(to_long(key, t));
    } else if (key == "points.seed") {
      cfg.seed = std::uint64_t(to_long(key, val));
    } else if (key == "measure.budget") {
      cfg.budget = std::size_t(to_long(key, val));
    } else if (key == "measure.resolution") {
      cfg.resolution = int(to_long(key, val));
    } else if (key == "measure.q") {
      cfg.q = int(to_long(key, val));
    } else if (key == "measure.nu_max") {
      cfg.nu_max = std::uint64_t(to_long(key, val));
    } else if (key == "measure.shift_candidates") {
      cfg.shift_candidates = int(to_long(key, val));
    } else if (key == "measure.fit_min_n") {
      cfg.fit_min_n = to_long(key, val);
    } else if (key == "measure.threads") {
      cfg.threads = unsigned(to_long(key, val));
    } else {
      config_error("unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_template() {
  return
      "# Experiment configuration.  All keys are optional; the values below\n"
      "# are the defaults.\n"
      "\n"
      "[directions]\n"
      "kind = lacunary            # finite | lacunary | lacunary-order | cantor\n"
      "angles = 0.0               # finite kind: angles in [0, pi/2]\n"
      "base = 2                   # lacunary ratio bound (rational)\n"
      "order = 2                  # lacunary-order kind\n"
      "d = 1/6                    # cantor kind: box dimension (rational in (0,1))\n"
      "\n"
      "[schedule]\n"
      "q_target = 100000          # certify denominators at least this far\n"
      "covering_budget = 100000   # per-stage covering interval budget\n"
      "\n"
      "[points]\n"
      "n = 256 1024 4096          # increasing point-set sizes\n"
      "seed = 1\n"
      "\n"
      "[measure]\n"
      "budget = 16                # direction representatives\n"
      "resolution = 64            # corner grid for the sup sweep\n"
      "q = 64                     # shift quadrature for the mean square\n"
      "nu_max = 1000              # frequency cutoff for the identity check\n"
      "shift_candidates = 4\n"
      "fit_min_n = 64             # growth fits ignore smaller N\n"
      "threads = 1                # 0 = hardware count\n";
}

void ExperimentConfig::validate() const {
  if (dir_kind != "finite" && dir_kind != "lacunary" &&
      dir_kind != "lacunary-order" && dir_kind != "cantor")
    config_error("directions.kind must be finite, lacunary, lacunary-order or cantor");
  if (dir_kind == "finite" && finite_angles.empty())
    config_error("finite direction set needs at least one angle");
  if (base <= 1) config_error("directions.base must exceed 1");
  if (order < 2) {
    if (dir_kind == "lacunary-order")
      config_error("directions.order must be at least 2");
  }
  if (cantor_d <= 0 || cantor_d >= 1)
    config_error("directions.d must lie in (0, 1)");
  if (q_target < 10) config_error("schedule.q_target too small");
  if (covering_budget < 1) config_error("schedule.covering_budget too small");
  if (n_values.empty()) config_error("points.n must be non-empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) config_error("points.n entries must be positive");
    if (i && n_values[i] <= n_values[i - 1])
      config_error("points.n must be strictly increasing");
  }
  if (budget < 1) config_error("measure.budget must be positive");
  if (resolution < 2) config_error("measure.resolution must be at least 2");
  if (q < 2) config_error("measure.q must be at least 2");
  if (nu_max < 1) config_error("measure.nu_max must be positive");
  if (shift_candidates < 1) config_error("measure.shift_candidates must be positive");
}

GrowthFit fit_growth(const std::vector<std::pair<long, double>>& series,
                     GrowthModel model, long min_n) {
  long floor_n = model == GrowthModel::LogPower ? std::max(min_n, 4L) : min_n;
  std::vector<std::pair<double, double>> xy;
  long lo = 0, hi = 0;
  for (const auto& [n, v] : series) {
    if (n < floor_n) continue;
    if (v <= 0) throw DomainError("growth fit needs positive values");
    double x = model == GrowthModel::LogPower ? std::log(std::log2(double(n)))
                                              : std::log(double(n));
    xy.push_back({x, std::log(v)});
    if (lo == 0 || n < lo) lo = n;
    if (n > hi) hi = n;
  }
  if (xy.size() < 3)
    throw DomainError("growth fit needs at least 3 points above the cutoff");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : xy) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double k = double(xy.size());
  double denom = k * sxx - sx * sx;
  if (std::abs(denom) < 1e-12)
    throw DomainError("growth fit is degenerate (identical N values)");
  double p = (k * sxy - sx * sy) / denom;
  double logc = (sy - p * sx) / k;

  GrowthFit fit;
  fit.model = model;
  fit.coeff = std::exp(logc);
  fit.exponent = p;
  fit.n_min = lo;
  fit.n_max = hi;
  double rss = 0;
  for (const auto& [x, y] : xy) {
    double e = y - (logc + p * x);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / k);
  return fit;
}

BaselineComparison compare_baselines(
    const std::vector<std::pair<std::string, std::vector<std::pair<long, double>>>>&
        reports) {
  if (reports.empty()) throw DomainError("no series to compare");
  BaselineComparison out;
  for (const auto& [n, v] : reports.front().second) {
    (void)v;
    out.n_values.push_back(n);
  }
  if (out.n_values.empty()) throw DomainError("empty N grid");
  for (const auto& [name, series] : reports) {
    if (series.size() != out.n_values.size())
      throw DomainError("mismatched N grids between series");
    std::vector<double> vals;
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (series[i].first != out.n_values[i])
        throw DomainError("mismatched N grids between series");
      vals.push_back(series[i].second);
    }
    out.names.push_back(name);
    out.values.push_back(std::move(vals));
  }
  for (const auto& vals : out.values) {
    std::vector<double> r;
    for (std::size_t i = 0; i < vals.size(); ++i)
      r.push_back(out.values.front()[i] == 0 ? 0
                                             : vals[i] / out.values.front()[i]);
    out.ratios.push_back(std::move(r));
  }
  return out;
}

namespace {

DirectionSet make_directions(const ExperimentConfig& cfg,
                             std::vector<std::string>& warnings) {
  if (cfg.dir_kind == "finite") {
    std::vector<Real> angles;
    for (double a : cfg.finite_angles) angles.push_back(Real(a));
    return DirectionSet::finite(std::move(angles));
  }
  if (cfg.dir_kind == "lacunary") return DirectionSet::lacunary(cfg.base);
  if (cfg.dir_kind == "lacunary-order")
    return DirectionSet::lacunary_order(cfg.order, cfg.base);
  // cantor: two-branch ratio 2^(-1/d) has box dimension d.
  TauResult tr = tau(to_real(cfg.cantor_d));
  if (!tr.meaningful)
    warnings.push_back(
        "d = " + cfg.cantor_d.str() +
        " gives tau >= 1; the dimension-driven exponent is not meaningful");
  ScopedPrecision prec(128);
  Real ratio = exp2(Real(-1) / to_real(cfg.cantor_d));
  return DirectionSet::cantor_like(rat_near(ratio, 48));
}

Schedule make_schedule(const ExperimentConfig& cfg, const DirectionSet& with_axes) {
  if (cfg.dir_kind == "finite")
    return Schedule::finite_set(with_axes.cover(Real(Rat(1, 1000000))).count());
  if (cfg.dir_kind == "lacunary") return Schedule::lacunary();
  if (cfg.dir_kind == "lacunary-order") return Schedule::lacunary_order(cfg.order);
  return Schedule::minkowski(cfg.cantor_d);
}

}  // namespace

DirectionSet directions_from_config(const ExperimentConfig& cfg,
                                    std::vector<std::string>& warnings) {
  return make_directions(cfg, warnings);
}

Schedule schedule_from_config(const ExperimentConfig& cfg,
                              const DirectionSet& with_axes) {
  return make_schedule(cfg, with_axes);
}

NestedIntervalCertificate search_certificate(const ExperimentConfig& cfg,
                                             std::vector<std::string>& warnings) {
  DirectionSet with_axes = make_directions(cfg, warnings).with_axes();
  Schedule sched = make_schedule(cfg, with_axes);
  int n0 = sched.find_n0();
  int n_max = sched.find_n_max(n0, cfg.q_target, cfg.covering_budget);
  auto found = find_angle(with_axes, sched, n_max, n0);
  extend_small_q(found.cert);
  return found.cert;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const NestedIntervalCertificate* reuse) {
  cfg.validate();
  ExperimentResult res;
  DirectionSet omega = make_directions(cfg, res.warnings);

  if (reuse) {
    res.certificate = *reuse;
  } else {
    std::vector<std::string> unused;
    res.certificate = search_certificate(cfg, unused);
  }
  const Rat slope = res.certificate.slope;

  struct Gen {
    GeneratorKind kind;
    const char* name;
  };
  const Gen gens[] = {{GeneratorKind::RotatedLattice, "rotated"},
                      {GeneratorKind::ShiftedRotatedLattice, "shifted"},
                      {GeneratorKind::Random, "random"}};
  std::map<std::string, std::vector<std::pair<long, double>>> series;
  for (const Gen& g : gens) {
    for (long N : cfg.n_values) {
      PointSet P;
      switch (g.kind) {
        case GeneratorKind::RotatedLattice: P = rotated_lattice(N, slope); break;
        case GeneratorKind::ShiftedRotatedLattice:
          P = shifted_rotated_lattice(N, slope, 0.5, 0.25);
          break;
        case GeneratorKind::Random:
          P = random_points(N, cfg.seed * 1000003u + std::uint64_t(N));
          break;
      }
      auto rep = sup_discrepancy(P, omega, cfg.budget, cfg.resolution, cfg.threads);
      series[g.name].push_back({N, rep.aggregate});
      res.reports.push_back(std::move(rep));
    }
  }

  for (long N : cfg.n_values) {
    SideSpec side{Rat(0), Rat(1, 3), slope};
    IntRun I{0, std::lround(std::sqrt(double(N)))};
    if (I.length < 1) I.length = 1;
    auto out = l2_fourier_side_identity(side, I, cfg.nu_max, cfg.q);
    res.l2_rows.push_back({N, slope, cfg.q, out.lhs, out.rhs, out.tail_bound});
  }

  auto try_fit = [&](const char* name, GrowthModel model) {
    try {
      GrowthFit f = fit_growth(series[name], model, cfg.fit_min_n);
      f.label = name;
      res.fits.push_back(f);
    } catch (const DomainError& e) {
      res.warnings.push_back(std::string("fit skipped for ") + name + ": " +
                             e.what());
    }
  };
  try_fit("rotated", GrowthModel::LogPower);
  try_fit("shifted", GrowthModel::LogPower);
  try_fit("random", GrowthModel::Power);

  double worst_ratio = 0;
  for (const auto& [N, v] : series["rotated"]) {
    double l = std::log2(double(N));
    worst_ratio = std::max(worst_ratio, v / (l * l * l));
  }
  res.stats.push_back({"rotated_max_over_log2_cubed", worst_ratio});
  if (!series["rotated"].empty() && series["rotated"].back().second > 0)
    res.stats.push_back({"random_over_rotated_at_max_n",
                         series["random"].back().second /
                             series["rotated"].back().second});
  return res;
}

std::string report_csv_text(const std::vector<DiscrepancyReport>& reports) {
  std::ostringstream out;
  out << "generator,N,slope_num,slope_den,direction_index,theta,sup,"
         "witness_cx,witness_cy,witness_w,witness_h,resolution\n";
  for (const auto& rep : reports)
    for (const auto& r : rep.records) {
      out << generator_name(rep.generator) << ',' << rep.n << ','
          << numerator(rep.slope) << ',' << denominator(rep.slope) << ','
          << r.index << ',' << fmt17(r.theta) << ',' << fmt17(r.sup) << ','
          << fmt17(rat_to_double(r.witness.center.x)) << ','
          << fmt17(rat_to_double(r.witness.center.y)) << ','
          << fmt17(rat_to_double(r.witness.w)) << ','
          << fmt17(rat_to_double(r.witness.h)) << ',' << r.resolution << '\n';
    }
  return out.str();
}

std::string l2_csv_text(const std::vector<L2Row>& rows) {
  std::ostringstream out;
  out << "N,slope_num,slope_den,Q,mean_square,fourier_bound,tail_bound\n";
  for (const auto& r : rows)
    out << r.n << ',' << numerator(r.slope) << ',' << denominator(r.slope)
        << ',' << r.q << ',' << fmt17(r.mean_square) << ','
        << fmt17(r.fourier_bound) << ',' << fmt17(r.tail_bound) << '\n';
  return out.str();
}

std::string fits_json_text(const ExperimentResult& res) {
  nlohmann::json j;
  j["fits"] = nlohmann::json::array();
  for (const auto& f : res.fits) {
    nlohmann::json e;
    e["label"] = f.label;
    e["model"] = f.model == GrowthModel::LogPower ? "C*log^p(N)" : "C*N^p";
    e["coeff"] = f.coeff;
    e["exponent"] = f.exponent;
    e["residual"] = f.residual;
    e["n_min"] = f.n_min;
    e["n_max"] = f.n_max;
    j["fits"].push_back(e);
  }
  j["stats"] = nlohmann::json::object();
  for (const auto& [k, v] : res.stats) j["stats"][k] = v;
  j["warnings"] = res.warnings;
  return j.dump(1) + "\n";
}

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

namespace {

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << bytes;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> write_experiment(
    const ExperimentResult& res, const ExperimentConfig& cfg,
    const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::pair<std::string, std::string>> manifest;

  auto emit = [&](const std::string& name, const std::string& bytes) {
    write_file((fs::path(out_dir) / name).string(), bytes);
    manifest.push_back({name, content_digest(bytes)});
  };

  emit("certificate.cert", certificate_to_text(res.certificate));
  emit("report.csv", report_csv_text(res.reports));
  emit("l2.csv", l2_csv_text(res.l2_rows));
  emit("fits.json", fits_json_text(res));

  nlohmann::json j;
  j["files"] = nlohmann::json::array();
  for (const auto& [name, digest] : manifest)
    j["files"].push_back({{"name", name}, {"digest", digest}});
  j["seed"] = cfg.seed;
  j["slope"] = numerator(res.certificate.slope).str() + "/" +
               denominator(res.certificate.slope).str();
  j["directions"] = cfg.dir_kind;
  write_file((fs::path(out_dir) / "manifest.json").string(), j.dump(1) + "\n");
  return manifest;
}

}  // namespace dirdisc
