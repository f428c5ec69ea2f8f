#include "dirdisc/angle_search.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace dirdisc {

namespace {

using nlohmann::json;

// Outward widening applied to every rationalized interval; dominates the
// correctly-rounded tangent evaluation error at the precisions used below.
const Rat& pad() {
  static const Rat p(1, Int(1) << 160);
  return p;
}

bool vertical_angle(const Real& a) {
  return a.convert_to<double>() > 1.5707963267948966 - 1e-12;
}

// u = tan(alpha - theta) = (t - s)/(1 + t s); increasing in t, decreasing
// in s while 1 + t s > 0.
Rat fwd(const Rat& t, const Rat& s) {
  Rat den = 1 + t * s;
  if (den <= 0) throw PrecisionError("slope transform leaves its monotone range");
  return (t - s) / den;
}

// Inverse in t: t = (u + s)/(1 - u s); increasing in both arguments while
// 1 - u s > 0.
Rat inv(const Rat& u, const Rat& s) {
  Rat den = 1 - u * s;
  if (den <= 0) throw PrecisionError("slope transform leaves its monotone range");
  return (u + s) / den;
}

// Window for the target slope: alpha in [pi/6, pi/3], so that alpha - theta
// stays in [-pi/3, pi/3] for every theta in [0, pi/2] and the derivative of
// the tangent along the way is between 1 and 4.
SlopeInterval slope_window() {
  ScopedPrecision prec(320);
  Real pi = pi_value();
  return {rat_above(Real(tan(pi / 6)), 96), rat_below(Real(tan(pi / 3)), 96)};
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

double log2_int(const Int& v) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, v.backend().data());
  return std::log2(std::abs(m)) + double(e);
}

}  // namespace

SlopeCover rationalize_cover(const Covering& cov) {
  long delta_bits = 0;
  {
    double dd = cov.delta.convert_to<double>();
    if (dd > 0 && dd < 1) delta_bits = long(-std::log2(dd)) + 1;
    else {
      // Beyond double range: take the exponent directly.
      long e = mpfr_get_exp(cov.delta.backend().data());
      delta_bits = e < 0 ? -e : 1;
    }
  }
  unsigned frac_bits = std::max<long>(delta_bits + 64, 256);
  ScopedPrecision prec(frac_bits + 64);
  Rat widen = Rat(1, Int(1) << (frac_bits - 4)) + pad();

  SlopeCover out;
  out.has_vertical = cov.has_vertical;
  out.intervals.reserve(cov.intervals.size());
  for (const auto& iv : cov.intervals) {
    if (vertical_angle(iv.lo)) {
      out.has_vertical = true;
      continue;
    }
    Rat lo = rat_near(Real(tan(iv.lo)), frac_bits) - widen;
    Rat hi = rat_near(Real(tan(iv.hi)), frac_bits) + widen;
    if (lo < 0) lo = 0;  // directions live in [0, pi/2]
    out.intervals.push_back({lo, hi});
  }
  return out;
}

StageRecord refine_step(const SlopeInterval& current, const Schedule& sched,
                        const DirectionSet& omega, int n) {
  StageRecord rec;
  rec.n = n;
  rec.R = sched.R(n);
  rec.c = sched.c(n);
  rec.stage_len = sched.I_len(n);
  rec.stage_delta = sched.delta(n);
  Int Rn1 = sched.R(n + 1);

  Real delta_real = rec.stage_delta > 0 ? to_real(rec.stage_delta)
                                        : to_real(Rat(1, Int(1) << 200));
  Covering cov = omega.cover(delta_real);
  if (cov.count() > 2000000)
    throw InfeasibleScheduleError("covering too large at stage " + std::to_string(n));
  SlopeCover scov = rationalize_cover(cov);
  rec.covering_count = scov.intervals.size() + (scov.has_vertical ? 1 : 0);

  Rat cr = rec.c / Rat(rec.R * rec.R);      // widest exclusion radius
  Rat gap = Rat(1) / Rat(Rn1 * Rn1);        // minimal spacing of candidate fractions

  auto scan = [&](const Rat& u_lo, const Rat& u_hi, int index,
                  bool vertical) {
    Rat ilo = u_lo - cr, ihi = u_hi + cr;
    if (ihi - ilo >= gap)
      throw PrecisionError("image interval too wide for the pigeonhole at stage " +
                           std::to_string(n));
    Rat f = simplest_in(ilo, ihi);
    Int q = denominator(f);
    if (q < rec.R || q >= Rn1) return;  // not this stage's denominators
    Rat radius = rec.c / Rat(q * q);
    Exclusion ex;
    ex.cover_index = index;
    ex.p = numerator(f);
    ex.q = q;
    if (vertical) {
      // u = -1/t on the window, so the band must stay negative.
      Rat blo = f - radius, bhi = f + radius;
      if (bhi >= 0)
        throw PrecisionError("vertical exclusion band touches zero at stage " +
                             std::to_string(n));
      ex.removed = {-1 / blo - pad(), -1 / bhi + pad()};
    } else {
      const SlopeInterval& s = scov.intervals[std::size_t(index)];
      ex.removed = {inv(f - radius, s.lo) - pad(), inv(f + radius, s.hi) + pad()};
    }
    rec.exclusions.push_back(std::move(ex));
  };

  for (std::size_t k = 0; k < scov.intervals.size(); ++k) {
    const SlopeInterval& s = scov.intervals[k];
    scan(fwd(current.lo, s.hi), fwd(current.hi, s.lo), int(k), false);
  }
  if (scov.has_vertical)
    scan(-1 / current.lo, -1 / current.hi, -1, true);

  std::sort(rec.exclusions.begin(), rec.exclusions.end(),
            [](const Exclusion& a, const Exclusion& b) {
              return a.removed.lo < b.removed.lo;
            });
  Rat x = current.lo;
  for (const Exclusion& e : rec.exclusions) {
    if (e.removed.lo <= x + rec.stage_len && e.removed.hi >= x)
      x = std::max(x, e.removed.hi);
  }
  if (x + rec.stage_len > current.hi)
    throw InfeasibleScheduleError("schedule infeasible at stage " + std::to_string(n));
  rec.interval = {x, x + rec.stage_len};
  return rec;
}

AngleSearchResult find_angle(const DirectionSet& omega, const Schedule& sched,
                             int n_max, int n0) {
  if (n0 < 0) n0 = sched.find_n0();
  if (n_max < n0) throw DomainError("find_angle: n_max below the starting stage");

  NestedIntervalCertificate cert;
  cert.sched_kind = sched.kind();
  cert.order = sched.order();
  cert.kappa = sched.kappa();
  cert.c0 = sched.c0();
  cert.eps0 = sched.eps0();
  cert.eps2 = sched.eps2();
  cert.mink_t = sched.mink_t();
  cert.mink_s = sched.mink_s();
  cert.finite_count = sched.finite_count();
  cert.n0 = n0;
  cert.n_max = n_max;
  cert.describe = sched.describe();

  SlopeInterval window = slope_window();
  StageRecord seed;
  seed.n = n0 - 1;
  seed.R = sched.R(n0 - 1);
  seed.c = sched.c(n0 - 1);
  seed.stage_len = sched.I_len(n0 - 1);
  seed.stage_delta = sched.delta(n0 - 1);
  seed.interval = {window.lo, window.lo + seed.stage_len};
  if (seed.interval.hi > window.hi)
    throw InfeasibleScheduleError("seed interval does not fit the slope window");
  cert.stages.push_back(seed);

  SlopeInterval current = seed.interval;
  for (int n = n0; n <= n_max; ++n) {
    StageRecord rec = refine_step(current, sched, omega, n);
    current = rec.interval;
    cert.stages.push_back(std::move(rec));
  }

  cert.slope = (current.lo + current.hi) / 2;
  cert.q_min = sched.R(n0);
  cert.q_max = sched.R(n_max + 1) - 1;

  switch (sched.kind()) {
    case ScheduleKind::FiniteSet:
      cert.psi_kind = PsiFunction::Kind::Constant;
      break;
    case ScheduleKind::Lacunary:
    case ScheduleKind::LacunaryOrderM:
      cert.psi_kind = PsiFunction::Kind::LogPower;
      cert.psi_log_power = 2 * sched.order();
      break;
    case ScheduleKind::Minkowski:
      cert.psi_kind = PsiFunction::Kind::Power;
      cert.psi_exponent = sched.mink_exponent();
      break;
  }

  // Margin constant: for q in [R(n), R(n+1)) the chain gives c(n)/q^2, and
  // psi is nondecreasing, so c(n) psi(R(n)) bounds c' on that block.
  {
    ScopedPrecision prec(512);
    PsiFunction psi = cert.psi();
    Real best = 0;
    for (int n = n0; n <= n_max; ++n) {
      Real v = to_real(sched.c(n)) * psi.eval(to_real(sched.R(n)));
      if (n == n0 || v < best) best = v;
    }
    cert.c_prime = rat_below(best, 96);
  }

  return {cert.slope, std::move(cert)};
}

PsiFunction NestedIntervalCertificate::psi() const {
  switch (psi_kind) {
    case PsiFunction::Kind::Constant:
      return PsiFunction::constant(Rat(1));
    case PsiFunction::Kind::LogPower:
      return PsiFunction::log_power(Rat(1), psi_log_power);
    case PsiFunction::Kind::Power:
      return PsiFunction::power(Rat(1), psi_exponent);
  }
  return PsiFunction::constant(Rat(1));
}

Schedule NestedIntervalCertificate::rebuild_schedule() const {
  switch (sched_kind) {
    case ScheduleKind::FiniteSet:
      return Schedule::finite_set(finite_count);
    case ScheduleKind::Lacunary:
      return Schedule::lacunary(c0, eps0);
    case ScheduleKind::LacunaryOrderM:
      return Schedule::lacunary_order(order, kappa, c0, eps0);
    case ScheduleKind::Minkowski: {
      Rat d = 2 * mink_t - 1;
      return Schedule::minkowski(d, mink_t, mink_s, c0, eps0, eps2);
    }
  }
  throw DomainError("unknown schedule kind");
}

Rat extend_small_q(NestedIntervalCertificate& cert) {
  if (cert.q_min <= 0) throw DomainError("certificate has an empty verified range");
  if (cert.q_min == 1) {
    cert.global_constant = cert.c_prime;
    return cert.global_constant;
  }
  Rat q0{cert.q_min};
  switch (cert.psi_kind) {
    case PsiFunction::Kind::Constant:
      cert.global_constant = cert.c_prime / (q0 * q0);
      break;
    case PsiFunction::Kind::LogPower: {
      // Exact when q0 is a power of two; otherwise round the loss factor up.
      Int v = cert.q_min;
      int k = 0;
      while (v % 2 == 0) {
        v /= 2;
        ++k;
      }
      Rat growth;
      if (v == 1) {
        growth = 1;
        for (int i = 0; i < cert.psi_log_power; ++i) growth *= (k + 1);
      } else {
        ScopedPrecision prec(256);
        Real g = pow(1 + log2(to_real(q0)), cert.psi_log_power);
        growth = rat_above(g, 96);
      }
      cert.global_constant = cert.c_prime / (q0 * q0 * growth);
      break;
    }
    case PsiFunction::Kind::Power: {
      ScopedPrecision prec(256);
      Real g = exp(to_real(cert.psi_exponent) * log(to_real(q0)));
      cert.global_constant = cert.c_prime / (q0 * q0 * rat_above(g, 96));
      break;
    }
  }
  return cert.global_constant;
}

MarginReport verify_certificate(const Rat& slope, const DirectionSet& omega,
                                const Int& q_lo, const Int& q_hi,
                                const PsiFunction& psi, std::size_t rep_budget) {
  if (q_lo < 1 || q_hi < q_lo) throw DomainError("verify: bad denominator range");
  MarginReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();

  std::vector<Real> angles = omega.representatives(rep_budget);
  ScopedPrecision prec(384);

  for (std::size_t ri = 0; ri < angles.size(); ++ri) {
    Rat u, s;
    if (vertical_angle(angles[ri])) {
      u = -1 / slope;
      s = Rat(-1);  // sentinel: no finite direction slope
    } else {
      s = rat_near(Real(tan(angles[ri])), 320);
      u = fwd(slope, s);
    }
    rep.rep_slopes.push_back(s);

    Int num = numerator(u), den = denominator(u);
    Int step = num % den;
    if (step < 0) step += den;
    Int acc = (q_lo * num) % den;
    if (acc < 0) acc += den;
    double log2_den = log2_int(den);

    Int q = q_lo;
    const double qhi_d = Rat(q_hi).convert_to<double>();
    for (double qd = Rat(q_lo).convert_to<double>(); qd <= qhi_d; qd += 1.0) {
      Int dist = acc <= den - acc ? acc : den - acc;
      double margin;
      if (dist == 0) {
        margin = 0;
      } else {
        margin = std::exp2(std::log2(qd) + std::log2(psi(qd)) + log2_int(dist) -
                           log2_den);
      }
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.witness_q = q;
        rep.witness_rep = int(ri);
        // p = nearest integer to q u.
        Int qnum = q * num;
        Int fl = floor_rat(Rat(qnum, den));
        Int r = qnum - fl * den;
        rep.witness_p = 2 * r >= den ? fl + 1 : fl;
      }
      acc += step;
      if (acc >= den) acc -= den;
      q += 1;
    }
  }
  return rep;
}

std::string certificate_to_text(const NestedIntervalCertificate& cert) {
  json j;
  switch (cert.sched_kind) {
    case ScheduleKind::FiniteSet: j["schedule"] = "finite"; break;
    case ScheduleKind::Lacunary: j["schedule"] = "lacunary"; break;
    case ScheduleKind::LacunaryOrderM: j["schedule"] = "lacunary_order"; break;
    case ScheduleKind::Minkowski: j["schedule"] = "minkowski"; break;
  }
  j["order"] = cert.order;
  j["kappa"] = cert.kappa;
  j["c0"] = rat_str(cert.c0);
  j["eps0"] = rat_str(cert.eps0);
  j["eps2"] = rat_str(cert.eps2);
  j["mink_t"] = rat_str(cert.mink_t);
  j["mink_s"] = rat_str(cert.mink_s);
  j["finite_count"] = cert.finite_count;
  j["n0"] = cert.n0;
  j["n_max"] = cert.n_max;
  j["slope"] = rat_str(cert.slope);
  j["q_min"] = cert.q_min.str();
  j["q_max"] = cert.q_max.str();
  switch (cert.psi_kind) {
    case PsiFunction::Kind::Constant: j["psi"] = "constant"; break;
    case PsiFunction::Kind::LogPower: j["psi"] = "log_power"; break;
    case PsiFunction::Kind::Power: j["psi"] = "power"; break;
  }
  j["psi_log_power"] = cert.psi_log_power;
  j["psi_exponent"] = rat_str(cert.psi_exponent);
  j["c_prime"] = rat_str(cert.c_prime);
  j["global_constant"] = rat_str(cert.global_constant);
  j["describe"] = cert.describe;

  json stages = json::array();
  for (const auto& st : cert.stages) {
    json s;
    s["n"] = st.n;
    s["R"] = st.R.str();
    s["c"] = rat_str(st.c);
    s["len"] = rat_str(st.stage_len);
    s["delta"] = rat_str(st.stage_delta);
    s["covering_count"] = st.covering_count;
    s["lo"] = rat_str(st.interval.lo);
    s["hi"] = rat_str(st.interval.hi);
    json ex = json::array();
    for (const auto& e : st.exclusions) {
      ex.push_back({{"k", e.cover_index},
                    {"p", e.p.str()},
                    {"q", e.q.str()},
                    {"lo", rat_str(e.removed.lo)},
                    {"hi", rat_str(e.removed.hi)}});
    }
    s["exclusions"] = std::move(ex);
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  return j.dump(1);
}

NestedIntervalCertificate certificate_from_text(const std::string& text) {
  json j = json::parse(text);
  NestedIntervalCertificate cert;
  std::string sk = j.at("schedule");
  if (sk == "finite") cert.sched_kind = ScheduleKind::FiniteSet;
  else if (sk == "lacunary") cert.sched_kind = ScheduleKind::Lacunary;
  else if (sk == "lacunary_order") cert.sched_kind = ScheduleKind::LacunaryOrderM;
  else if (sk == "minkowski") cert.sched_kind = ScheduleKind::Minkowski;
  else throw DomainError("certificate: unknown schedule kind " + sk);
  cert.order = j.at("order");
  cert.kappa = j.at("kappa");
  cert.c0 = rat_parse(j.at("c0"));
  cert.eps0 = rat_parse(j.at("eps0"));
  cert.eps2 = rat_parse(j.at("eps2"));
  cert.mink_t = rat_parse(j.at("mink_t"));
  cert.mink_s = rat_parse(j.at("mink_s"));
  cert.finite_count = j.at("finite_count");
  cert.n0 = j.at("n0");
  cert.n_max = j.at("n_max");
  cert.slope = rat_parse(j.at("slope"));
  cert.q_min = Int(j.at("q_min").get<std::string>());
  cert.q_max = Int(j.at("q_max").get<std::string>());
  std::string pk = j.at("psi");
  if (pk == "constant") cert.psi_kind = PsiFunction::Kind::Constant;
  else if (pk == "log_power") cert.psi_kind = PsiFunction::Kind::LogPower;
  else cert.psi_kind = PsiFunction::Kind::Power;
  cert.psi_log_power = j.at("psi_log_power");
  cert.psi_exponent = rat_parse(j.at("psi_exponent"));
  cert.c_prime = rat_parse(j.at("c_prime"));
  cert.global_constant = rat_parse(j.at("global_constant"));
  cert.describe = j.at("describe");

  for (const auto& s : j.at("stages")) {
    StageRecord st;
    st.n = s.at("n");
    st.R = Int(s.at("R").get<std::string>());
    st.c = rat_parse(s.at("c"));
    st.stage_len = rat_parse(s.at("len"));
    st.stage_delta = rat_parse(s.at("delta"));
    st.covering_count = s.at("covering_count");
    st.interval = {rat_parse(s.at("lo")), rat_parse(s.at("hi"))};
    for (const auto& e : s.at("exclusions")) {
      Exclusion ex;
      ex.cover_index = e.at("k");
      ex.p = Int(e.at("p").get<std::string>());
      ex.q = Int(e.at("q").get<std::string>());
      ex.removed = {rat_parse(e.at("lo")), rat_parse(e.at("hi"))};
      st.exclusions.push_back(std::move(ex));
    }
    cert.stages.push_back(std::move(st));
  }
  return cert;
}

void save_certificate(const NestedIntervalCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << certificate_to_text(cert) << "\n";
}

NestedIntervalCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return certificate_from_text(ss.str());
}

}  // namespace dirdisc
