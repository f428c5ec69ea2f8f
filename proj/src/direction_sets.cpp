#include "dirdisc/direction_sets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace dirdisc {

namespace {

// Angles this close to pi/2 are treated as the vertical direction.
bool is_vertical(const Real& angle) {
  static const double kHalfPi = 1.5707963267948966;
  return angle.convert_to<double>() > kHalfPi - 1e-12;
}

long bits_of_reciprocal(const Real& delta) {
  long e = mpfr_get_exp(delta.backend().data());
  return e < 0 ? -e : 1;
}

Rat rat_pow(const Rat& b, int k) {
  Rat out = 1;
  for (int i = 0; i < k; ++i) out *= b;
  return out;
}

// Multisets 1 <= j_1 <= ... <= j_M with given sum, lexicographic order.
void partitions(int sum, int parts, int min_part, std::vector<int>& cur,
                const std::function<void(const std::vector<int>&)>& emit) {
  if (parts == 1) {
    if (sum >= min_part) {
      cur.push_back(sum);
      emit(cur);
      cur.pop_back();
    }
    return;
  }
  for (int j = min_part; j * parts <= sum; ++j) {
    cur.push_back(j);
    partitions(sum - j, parts - 1, j, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

DirectionSet DirectionSet::finite(std::vector<Real> angles) {
  DirectionSet s;
  s.kind_ = DirKind::Finite;
  s.finite_angles_ = std::move(angles);
  return s;
}

DirectionSet DirectionSet::lacunary(const Rat& base) {
  if (base <= 1) throw DomainError("lacunary base must exceed 1");
  DirectionSet s;
  s.kind_ = DirKind::Lacunary;
  s.base_ = base;
  return s;
}

DirectionSet DirectionSet::lacunary_order(int M, const Rat& base) {
  if (M < 1) throw DomainError("lacunary order must be >= 1");
  if (base <= 1) throw DomainError("lacunary base must exceed 1");
  DirectionSet s;
  s.kind_ = DirKind::LacunaryOrderM;
  s.base_ = base;
  s.order_ = M;
  return s;
}

DirectionSet DirectionSet::cantor_like(const Rat& ratio) {
  Real pi = pi_value();
  return cantor_like(ratio, Real(pi / 16), Real(pi / 2 - pi / 8));
}

DirectionSet DirectionSet::cantor_like(const Rat& ratio, const Real& window_lo,
                                       const Real& window_width) {
  if (ratio <= 0 || ratio >= Rat(1, 2))
    throw DomainError("cantor ratio must lie in (0, 1/2)");
  DirectionSet s;
  s.kind_ = DirKind::CantorLike;
  s.ratio_ = ratio;
  s.window_lo_ = window_lo;
  s.window_width_ = window_width;
  return s;
}

DirectionSet DirectionSet::with_axes() const {
  DirectionSet s = *this;
  s.include_axes_ = true;
  return s;
}

std::vector<Real> DirectionSet::representatives(std::size_t budget) const {
  if (budget < 1) throw DomainError("representatives: budget must be >= 1");
  std::vector<Real> out;
  std::size_t inner = include_axes_ && budget >= 2 ? budget - 2 : budget;

  switch (kind_) {
    case DirKind::Finite:
      for (const Real& a : finite_angles_) {
        if (out.size() >= inner) break;
        out.push_back(a);
      }
      break;
    case DirKind::Lacunary: {
      ScopedPrecision prec(192);
      Rat v(1);
      for (std::size_t k = 0; k < inner; ++k) {
        v /= base_;
        out.push_back(to_real(v));
      }
      break;
    }
    case DirKind::LacunaryOrderM: {
      ScopedPrecision prec(192);
      std::set<Rat> seen;
      std::vector<Rat> ordered;  // index-sum order, then lexicographic
      std::vector<int> cur;
      for (int sum = order_; ordered.size() < inner && sum < order_ * 200; ++sum) {
        partitions(sum, order_, 1, cur, [&](const std::vector<int>& js) {
          if (ordered.size() >= inner) return;
          Rat v = 0;
          for (int j : js) v += 1 / rat_pow(base_, j);
          if (seen.insert(v).second) ordered.push_back(v);
        });
      }
      for (const Rat& v : ordered) out.push_back(to_real(v));
      break;
    }
    case DirKind::CantorLike: {
      ScopedPrecision prec(256);
      Rat gap = 1 - ratio_;  // left offset of the right branch
      std::vector<Rat> endpoints{Rat(0)};
      out.push_back(window_lo_);
      Rat step = gap;
      for (int level = 1; out.size() < inner && level <= 48; ++level) {
        std::vector<Rat> fresh;
        fresh.reserve(endpoints.size());
        for (const Rat& p : endpoints) fresh.push_back(p + step);
        std::sort(fresh.begin(), fresh.end());
        for (const Rat& p : fresh) {
          if (out.size() >= inner) break;
          out.push_back(Real(window_lo_ + window_width_ * to_real(p)));
        }
        endpoints.insert(endpoints.end(), fresh.begin(), fresh.end());
        std::sort(endpoints.begin(), endpoints.end());
        step *= ratio_;
      }
      break;
    }
  }

  if (include_axes_) {
    bool has_zero = false, has_vert = false;
    for (const Real& a : out) {
      if (a == 0) has_zero = true;
      if (is_vertical(a)) has_vert = true;
    }
    if (!has_zero && out.size() < budget) out.insert(out.begin(), Real(0));
    if (!has_vert && out.size() < budget) out.push_back(Real(pi_value() / 2));
  }
  return out;
}

Covering DirectionSet::cover(const Real& delta) const {
  if (delta <= 0 || delta >= 1) throw DomainError("cover: delta must be in (0, 1)");
  ScopedPrecision prec(static_cast<unsigned>(bits_of_reciprocal(delta)) + 96);
  Covering cov;
  cov.delta = delta;
  Rat drat = exact_value(delta);

  switch (kind_) {
    case DirKind::Finite:
      for (const Real& a : finite_angles_) {
        if (is_vertical(a))
          cov.has_vertical = true;
        else
          cov.intervals.push_back({a, a});
      }
      break;
    case DirKind::Lacunary: {
      Rat v(1);
      while (true) {
        v /= base_;
        if (v <= drat) break;
        Real a = to_real(v);
        cov.intervals.push_back({a, a});
      }
      cov.intervals.push_back({Real(0), delta});  // tail of the sequence
      break;
    }
    case DirKind::LacunaryOrderM: {
      // Keep indices j with b^-j > delta/M; each dropped term costs < delta/M.
      int J = 0;
      {
        Rat v(1), lim = drat / order_;
        while (true) {
          v /= base_;
          if (v <= lim) break;
          ++J;
        }
      }
      std::set<Rat> values{Rat(0)};
      // All multisets of size <= M over {1..J}: iterate subsets of each size.
      std::function<void(int, int, Rat)> rec = [&](int depth, int minj, Rat acc) {
        if (depth == order_) return;
        for (int j = minj; j <= J; ++j) {
          Rat v = acc + 1 / rat_pow(base_, j);
          values.insert(v);
          rec(depth + 1, j, v);
        }
      };
      rec(0, 1, Rat(0));
      for (const Rat& v : values) {
        Real lo = to_real(v);
        cov.intervals.push_back({lo, Real(lo + delta)});
      }
      break;
    }
    case DirKind::CantorLike: {
      int L = 0;
      Rat piece = rat_above(window_width_, 128);
      while (piece > drat) {
        piece *= ratio_;
        if (++L > 26) throw DomainError("cover: cantor covering exceeds budget");
      }
      std::vector<Rat> endpoints{Rat(0)};
      Rat step = 1 - ratio_;
      for (int i = 0; i < L; ++i) {
        std::size_t n = endpoints.size();
        for (std::size_t k = 0; k < n; ++k) endpoints.push_back(endpoints[k] + step);
        step *= ratio_;
      }
      std::sort(endpoints.begin(), endpoints.end());
      Rat len = rat_pow(ratio_, L);
      for (const Rat& p : endpoints) {
        Real lo = Real(window_lo_ + window_width_ * to_real(p));
        Real hi = Real(window_lo_ + window_width_ * to_real(p + len));
        cov.intervals.push_back({lo, hi});
      }
      break;
    }
  }

  if (include_axes_) {
    bool zero_covered = false;
    for (const auto& iv : cov.intervals)
      if (iv.lo <= 0 && iv.hi >= 0) zero_covered = true;
    if (!zero_covered) cov.intervals.push_back({Real(0), Real(0)});
    cov.has_vertical = true;
  }
  return cov;
}

double DirectionSet::covering_count_bound(double delta) const {
  double logb = std::log(rat_to_double(base_));
  switch (kind_) {
    case DirKind::Finite:
      return static_cast<double>(finite_angles_.size()) + 2;
    case DirKind::Lacunary:
      return std::ceil(std::log(1.0 / delta) / logb) + 3;
    case DirKind::LacunaryOrderM: {
      double J = std::ceil(std::log(order_ / delta) / logb);
      return std::pow(J + 1, order_) + 2;
    }
    case DirKind::CantorLike: {
      double w = window_width_.convert_to<double>();
      double L = std::ceil(std::log(w / delta) / std::log(1.0 / rat_to_double(ratio_)));
      return std::pow(2.0, std::max(0.0, L)) + 2;
    }
  }
  return 0;
}

double DirectionSet::dimension() const {
  if (kind_ != DirKind::CantorLike) return 0.0;
  return std::log(2.0) / std::log(1.0 / rat_to_double(ratio_));
}

std::optional<Rat> DirectionSet::dimension_exact() const {
  if (kind_ != DirKind::CantorLike) return Rat(0);
  // Exact only when the ratio is a power of two: r = 2^-j gives d = 1/j.
  Rat r = ratio_;
  int j = 0;
  while (r < 1) {
    r *= 2;
    ++j;
  }
  if (r == 1) return Rat(1, j);
  return std::nullopt;
}

Real DirectionSet::max_angle() const {
  switch (kind_) {
    case DirKind::Finite: {
      Real m = 0;
      for (const Real& a : finite_angles_)
        if (a > m) m = a;
      return m;
    }
    case DirKind::Lacunary:
      return to_real(Rat(1) / base_);
    case DirKind::LacunaryOrderM:
      return to_real(Rat(order_) / base_);
    case DirKind::CantorLike:
      return Real(window_lo_ + window_width_);
  }
  return Real(0);
}

TauResult tau(const Real& d) {
  if (d < 0 || d >= 1) throw DomainError("tau: d must lie in [0, 1)");
  Real one_md = 1 - d;
  Real t = 2 / (one_md * one_md) - 2;
  return {t, t < 1, Real(t / (2 * (t + 1)))};
}

Rat tau_rational(const Rat& d) {
  if (d < 0 || d >= 1) throw DomainError("tau: d must lie in [0, 1)");
  Rat one_md = 1 - d;
  return 2 / (one_md * one_md) - 2;
}

}  // namespace dirdisc
