#include "dirdisc/l2.hpp"

#include "dirdisc/pointsets.hpp"

#include <cmath>

namespace dirdisc {

Rat l2_shift_discrepancy(const Rectangle& R, int Q) {
  if (Q < 2) throw DomainError("shift quadrature needs Q >= 2");
  Rat total = 0;
  for (int i = 0; i < Q; ++i)
    for (int j = 0; j < Q; ++j) {
      Vec2 w{Rat(2 * i + 1, 2 * Q), Rat(2 * j + 1, 2 * Q)};
      Rat d = Rat(lattice_count_in_rect(w, R)) - R.area();
      total += d * d;
    }
  return total / (Rat(Q) * Rat(Q));
}

FourierSideIdentity l2_fourier_side_identity(const SideSpec& side,
                                             const IntRun& I,
                                             std::uint64_t nu_max, int Q) {
  if (nu_max < 1) throw DomainError("frequency cutoff must be positive");
  if (Q < 2) throw DomainError("shift quadrature needs Q >= 2");
  if (I.length < 1) throw DomainError("empty column range");

  std::vector<double> heights;
  heights.reserve(std::size_t(I.length));
  for (long long k = 0; k < I.length; ++k)
    heights.push_back(
        rat_to_double(Rat(side.a2 + (Rat(I.first + k) - side.a1) * side.slope)));

  FourierSideIdentity out;
  for (int k = 0; k < Q; ++k) {
    double w = double(2 * k + 1) / double(2 * Q);
    double f = 0;
    for (double x : heights) f += sawtooth(x - w);
    out.lhs += f * f;
  }
  out.lhs /= double(Q);

  auto fw = fourier_weight_sum(I, to_real(side.slope), nu_max);
  const double two_pi_sq = 2 * M_PI * M_PI;
  out.rhs = fw.value.convert_to<double>() / two_pi_sq;
  out.tail_bound = fw.tail_bound.convert_to<double>() / two_pi_sq;
  return out;
}

namespace {

struct FamilyMember {
  Rectangle rect;
  RectMode mode;
};

std::vector<FamilyMember> family_members(const RectangleFamilySpec& family) {
  if (family.center_grid < 1) throw DomainError("center grid must be positive");
  std::vector<FamilyMember> out;
  for (double theta : family.thetas) {
    Rotation rot = snap_rotation(Real(theta), 96);
    for (double w : family.widths)
      for (double h : family.heights) {
        if (w <= 0 || h <= 0) throw DomainError("family sides must be positive");
        if (family.mode == RectMode::Torus && w * w + h * h > 1)
          throw DomainError("torus family needs w^2 + h^2 <= 1");
        for (int i = 0; i < family.center_grid; ++i)
          for (int j = 0; j < family.center_grid; ++j) {
            Vec2 center{Rat(2 * i + 1, 2 * family.center_grid),
                        Rat(2 * j + 1, 2 * family.center_grid)};
            Rectangle R{center, Rat(w), Rat(h), rot};
            if (family.mode == RectMode::Contained) {
              bool inside = true;
              for (const Vec2& c : R.corners())
                inside = inside && c.x >= 0 && c.x <= 1 && c.y >= 0 && c.y <= 1;
              if (!inside) continue;
            }
            out.push_back({R, family.mode});
          }
      }
  }
  if (out.empty()) throw DomainError("rectangle family is empty");
  return out;
}

double vdc2(unsigned long k) {
  double v = 0, base = 0.5;
  while (k) {
    if (k & 1) v += base;
    base /= 2;
    k >>= 1;
  }
  return v;
}

}  // namespace

double family_mean_square(const PointSet& P, const RectangleFamilySpec& family) {
  auto members = family_members(family);
  double total = 0;
  for (const auto& m : members) {
    double d = rat_to_double(rect_discrepancy(P, m.rect, m.mode));
    total += d * d;
  }
  return total / double(members.size());
}

BestShift best_shift(const Rat& slope, long N, const RectangleFamilySpec& family,
                     int K) {
  if (K < 1) throw DomainError("need at least one candidate shift");
  BestShift best;
  double sum = 0;
  for (int k = 0; k < K; ++k) {
    double w1 = k == 0 ? 0.0 : (double(k) - 0.5) / double(K);
    double w2 = k == 0 ? 0.0 : vdc2((unsigned long)k);
    auto P = shifted_rotated_lattice(N, slope, w1, w2);
    double v = family_mean_square(P, family);
    sum += v;
    if (k == 0 || v < best.value) {
      best.w1 = w1;
      best.w2 = w2;
      best.value = v;
    }
  }
  best.average = sum / double(K);
  return best;
}

}  // namespace dirdisc
