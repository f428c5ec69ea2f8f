// Python surface: point-set generators, discrepancy measures, the certified
// angle search and the experiment pipeline.  Exact rationals cross the
// boundary as "num/den" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dirdisc/experiments.hpp"

#include <sstream>

namespace py = pybind11;
using namespace dirdisc;

namespace {

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(Int(text));
  return Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
}

std::string rat_str(const Rat& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

std::vector<std::pair<double, double>> point_list(const PointSet& ps) {
  std::vector<std::pair<double, double>> out;
  out.reserve(ps.pts.size());
  for (const auto& p : ps.pts) out.push_back({p.x, p.y});
  return out;
}

PointSet from_point_list(const std::vector<std::pair<double, double>>& pts) {
  PointSet ps;
  for (const auto& [x, y] : pts) ps.pts.push_back({x, y});
  return ps;
}

py::dict sup_dict(const DirectionSup& r) {
  py::dict d;
  d["sup"] = r.sup;
  d["theta"] = r.theta;
  d["resolution"] = r.resolution;
  d["witness_center"] = std::make_pair(rat_to_double(Rat(r.witness.center.x)),
                                       rat_to_double(Rat(r.witness.center.y)));
  d["witness_size"] = std::make_pair(rat_to_double(Rat(r.witness.w)),
                                     rat_to_double(Rat(r.witness.h)));
  return d;
}

py::dict cert_dict(const NestedIntervalCertificate& cert) {
  py::dict d;
  d["slope"] = rat_str(cert.slope);
  d["q_min"] = cert.q_min.str();
  d["q_max"] = cert.q_max.str();
  d["margin_constant"] = rat_str(cert.c_prime);
  d["global_constant"] = rat_str(cert.global_constant);
  d["stages"] = cert.stages.size();
  d["describe"] = cert.describe;
  d["text"] = certificate_to_text(cert);
  return d;
}

}  // namespace

PYBIND11_MODULE(dirdisc, m) {
  m.doc() = "low-discrepancy point sets with certified directions";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InfeasibleScheduleError>(m, "InfeasibleScheduleError",
                                                  PyExc_RuntimeError);
  py::register_exception<PrecisionError>(m, "PrecisionError",
                                         PyExc_RuntimeError);

  py::class_<PointSet>(m, "PointSet")
      .def_property_readonly("n", &PointSet::n)
      .def_property_readonly("points", &point_list)
      .def_property_readonly(
          "generator", [](const PointSet& ps) { return generator_name(ps.kind); })
      .def_property_readonly(
          "slope", [](const PointSet& ps) { return rat_str(ps.slope); })
      .def_readonly("adjustment", &PointSet::adjustment);

  m.def(
      "rotated_lattice",
      [](long n, const std::string& slope) {
        return rotated_lattice(n, parse_rat(slope));
      },
      py::arg("n"), py::arg("slope"));
  m.def(
      "shifted_rotated_lattice",
      [](long n, const std::string& slope, double w1, double w2) {
        return shifted_rotated_lattice(n, parse_rat(slope), w1, w2);
      },
      py::arg("n"), py::arg("slope"), py::arg("w1"), py::arg("w2"));
  m.def("random_points", &random_points, py::arg("n"), py::arg("seed"));
  m.def("point_set", &from_point_list, py::arg("points"),
        "wrap explicit coordinates in [0,1)^2");
  m.def(
      "save_pointset",
      [](const PointSet& ps, const std::string& path) { save_pointset(ps, path); },
      py::arg("pointset"), py::arg("path"));
  m.def("load_pointset", &load_pointset, py::arg("path"));

  m.def("star_discrepancy_1d", &star_discrepancy_1d, py::arg("values"));
  m.def(
      "erdos_turan_bound",
      [](const std::vector<double>& w, long mm, double c) {
        return erdos_turan_bound(w, mm, c);
      },
      py::arg("values"), py::arg("m"), py::arg("c_et") = 6.0);
  m.def(
      "sup_direction",
      [](const PointSet& ps, double theta, int resolution) {
        return sup_dict(sup_discrepancy_direction(ps, theta, resolution));
      },
      py::arg("pointset"), py::arg("theta"), py::arg("resolution"));

  m.def(
      "tau",
      [](double d) {
        auto r = tau(Real(d));
        py::dict out;
        out["tau"] = double(r.tau);
        out["meaningful"] = r.meaningful;
        out["exponent"] = double(r.exponent);
        return out;
      },
      py::arg("d"));

  m.def("config_template", &config_template);
  m.def(
      "angle_search",
      [](const std::string& config_text) {
        auto cfg = parse_config_text(config_text);
        std::vector<std::string> warnings;
        auto cert = search_certificate(cfg, warnings);
        auto d = cert_dict(cert);
        d["warnings"] = warnings;
        return d;
      },
      py::arg("config_text"));
  m.def(
      "run_experiment",
      [](const std::string& config_text, const std::string& certificate_text) {
        auto cfg = parse_config_text(config_text);
        ExperimentResult res;
        if (certificate_text.empty()) {
          res = run_experiment(cfg);
        } else {
          auto cert = certificate_from_text(certificate_text);
          res = run_experiment(cfg, &cert);
        }
        py::dict d;
        d["certificate"] = cert_dict(res.certificate);
        d["report_csv"] = report_csv_text(res.reports);
        d["l2_csv"] = l2_csv_text(res.l2_rows);
        d["fits_json"] = fits_json_text(res);
        d["warnings"] = res.warnings;
        return d;
      },
      py::arg("config_text"), py::arg("certificate_text") = std::string());
}
