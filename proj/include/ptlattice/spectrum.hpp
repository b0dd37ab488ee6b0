#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "ptlattice/model.hpp"
#include "ptlattice/polyroot.hpp"

// Discrete (Siegert) spectrum: roots of the dispersion quartic
//   P(lambda) = (e1^2+G^2) l^4 + e0 (e1^2+G^2) l^3 - (1 - e1^2 - 2 e0 e1 - G^2) l^2
//             + (e0 + 2 e1) l + 1,
// their classification on the two-sheeted energy surface, the closed forms of the
// pure gain/loss case, the RIC locations, and the large-Gamma asymptotics.

namespace ptlattice {

struct QuarticCoeffs {
  double a4, a3, a2, a1, a0;

  // a4 = 0 forces a3 = 0 (a3 = eps0 * a4), so the only reduced degree is 2;
  // the two missing roots sit at lambda = infinity (E -> -+inf, second sheet).
  bool degenerate() const { return std::abs(a4) < 1e-14; }
  int effective_degree() const { return degenerate() ? 2 : 4; }

  std::array<double, 5> descending() const { return {a4, a3, a2, a1, a0}; }
  double max_abs() const {
    return std::max({std::abs(a4), std::abs(a3), std::abs(a2), std::abs(a1), std::abs(a0)});
  }
  cplx eval(cplx lambda) const {
    return ((((cplx(a4) * lambda + a3) * lambda + a2) * lambda + a1) * lambda) + a0;
  }
};

inline QuarticCoeffs quartic_coefficients(const ModelParams& p) {
  const double s = p.eps1 * p.eps1 + p.gamma * p.gamma;
  return {s, p.eps0 * s, -(1.0 - p.eps1 * p.eps1 - 2.0 * p.eps0 * p.eps1 - p.gamma * p.gamma),
          p.eps0 + 2.0 * p.eps1, 1.0};
}

struct SpectralPoint {
  cplx lambda;
  cplx k;
  cplx energy;
  Sheet sheet;
  StateClass cls;
};

// Taxonomy on the two-sheeted surface. On the branch cut E is real; inside the
// unit circle real lambda is a bound state and complex lambda a localized state
// with complex E (first sheet); outside, real lambda is virtual (anti-bound) and
// complex lambda a resonance (Im E < 0) or anti-resonance partner.
inline StateClass classify_state(const SpectralPoint& pt, double tol = 1e-9) {
  const double m = std::abs(pt.lambda);
  if (std::abs(m - 1.0) < tol) {
    if (std::abs(pt.energy.real()) >= 2.0 - tol) return StateClass::BandEdge;
    return StateClass::RIC;
  }
  const bool real_lambda = std::abs(pt.lambda.imag()) < tol * std::max(1.0, m);
  if (m < 1.0) return real_lambda ? StateClass::Bound : StateClass::ComplexLocalized;
  if (real_lambda) return StateClass::VirtualBound;
  return pt.energy.imag() < 0.0 ? StateClass::Resonance : StateClass::AntiResonance;
}

inline SpectralPoint make_spectral_point(cplx lambda, double sheet_tol = 1e-9) {
  SpectralPoint pt;
  pt.lambda = lambda;
  pt.k = wavenumber_of_lambda(lambda);
  pt.energy = energy_of_lambda(lambda);
  pt.sheet = classify_sheet(lambda, sheet_tol);
  pt.cls = classify_state(pt, std::max(sheet_tol, 1e-9));
  return pt;
}

// All roots of P (4, or 2 in the degenerate eps1 = Gamma = 0 case), sorted by
// (Re E, Im E). Root residuals satisfy |P(lambda)| < 1e-11 max|a_i|.
inline std::vector<SpectralPoint> solve_discrete_spectrum(const ModelParams& p,
                                                          double sheet_tol = 1e-9) {
  const QuarticCoeffs q = quartic_coefficients(p);
  std::vector<double> coeffs;
  if (q.degenerate())
    coeffs = {q.a2, q.a1, q.a0};
  else
    coeffs = {q.a4, q.a3, q.a2, q.a1, q.a0};
  std::vector<cplx> roots = poly_roots(std::span<const double>(coeffs));

  std::vector<SpectralPoint> out;
  out.reserve(roots.size());
  for (cplx r : roots) {
    // real coefficients: snap numerically real roots onto the axis
    if (std::abs(r.imag()) < 1e-12 * std::max(1.0, std::abs(r.real()))) r = {r.real(), 0.0};
    out.push_back(make_spectral_point(r, sheet_tol));
  }
  std::sort(out.begin(), out.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
    if (a.energy.real() != b.energy.real()) return a.energy.real() < b.energy.real();
    return a.energy.imag() < b.energy.imag();
  });
  return out;
}

// The four closed-form roots for eps0 = eps1 = 0:
//   lambda_{1,4} = +- sqrt(1 - G^2 + sqrt(1 - 6 G^2 + G^4)) / (sqrt(2) G),
//   lambda_{2,3} = +- sqrt(1 - G^2 - sqrt(1 - 6 G^2 + G^4)) / (sqrt(2) G).
inline std::array<cplx, 4> closed_form_lambdas(double gamma) {
  if (gamma == 0.0)
    throw degenerate_configuration_error(
        "closed_form_lambdas: gamma = 0 degenerates the quartic; use the general solver");
  const double g2 = gamma * gamma;
  const cplx inner = std::sqrt(cplx(1.0 - 6.0 * g2 + g2 * g2, 0.0));
  const double den = std::sqrt(2.0) * std::abs(gamma);
  const cplx l14 = std::sqrt(1.0 - g2 + inner) / den;
  const cplx l23 = std::sqrt(1.0 - g2 - inner) / den;
  return {l14, -l14, l23, -l23};
}

// Gamma_RIC^+-(eps1) = sqrt(1 +- |eps1| sqrt(2 + eps1^2)); the minus branch stops
// describing a resonance in continuum for eps1 > 1/2 (the state has crossed the
// band edge, P(-1) = 0 there) and its radicand goes negative beyond
// eps1^2 > sqrt(2) - 1.
struct RICGammas {
  double gamma_plus;
  double gamma_minus;  // NaN when the radicand is negative
  bool plus_valid;
  bool minus_valid;
};

inline RICGammas ric_gammas(double eps1) {
  const double t = std::abs(eps1) * std::sqrt(2.0 + eps1 * eps1);
  RICGammas r;
  r.gamma_plus = std::sqrt(1.0 + t);
  r.plus_valid = true;
  const double rad = 1.0 - t;
  r.gamma_minus = rad >= 0.0 ? std::sqrt(rad) : std::numeric_limits<double>::quiet_NaN();
  r.minus_valid = rad >= 0.0 && std::abs(eps1) <= 0.5;
  return r;
}

// Unit-circle content of the spectrum at fixed parameters: the RIC energies and
// (positive) wavenumbers, each doubly degenerate in E by the +-k symmetry.
struct RICRecord {
  double gamma;
  std::vector<double> energies;
  std::vector<double> wavenumbers;
  int count;
};

inline RICRecord describe_ric(const ModelParams& p, double tol = 1e-8) {
  RICRecord rec{p.gamma, {}, {}, 0};
  for (const auto& pt : solve_discrete_spectrum(p)) {
    if (std::abs(std::abs(pt.lambda) - 1.0) < tol && std::abs(pt.energy.imag()) < tol &&
        pt.k.real() > tol) {
      rec.energies.push_back(pt.energy.real());
      rec.wavenumbers.push_back(pt.k.real());
    }
  }
  rec.count = int(rec.energies.size());
  return rec;
}

// Exact Siegert RIC wave at eps0 = eps1 = 0, Gamma = 1, normalized so that
// |psi(-1)|^2 + |psi(0)|^2 + |psi(1)|^2 = 1, which gives psi(0) = 1/sqrt(3)
// exactly. The lead amplitudes follow from psi(-+1) = lambda psi0/(1 +- i lambda);
// their moduli are 1/(2^{1/4} sqrt(sqrt2 -+ 1)) / sqrt(3).
enum class RICSign { PlusSqrt2, MinusSqrt2 };

inline PiecewiseWave ric_wavefunction(RICSign sign) {
  const double k = sign == RICSign::MinusSqrt2 ? pi / 4.0 : 3.0 * pi / 4.0;
  const cplx lambda = std::polar(1.0, k);
  const ModelParams p{0.0, 0.0, 1.0};
  return siegert_wave(p, lambda, 1.0 / std::sqrt(3.0));
}

// Large-Gamma behaviour (Region IV): E_{1,4} ~ +-i (G - 2/G) localized at the
// gain/loss sites with localization length 1/log G; E_{2,3} ~ +-2i/G^2 localized
// around x = 0 with length G^2/2, bound-state-like on times t < G^2/4.
struct RegionIVAsymptotics {
  cplx e14_approx;
  cplx e23_approx;
  double loc_length_14;
  double loc_length_23;
  double qbic_timescale;
};

inline RegionIVAsymptotics region_iv_asymptotics(double gamma) {
  if (!(gamma > 2.0))
    throw out_of_regime_error("region_iv_asymptotics: requires gamma > 2");
  RegionIVAsymptotics r;
  r.e14_approx = {0.0, gamma - 2.0 / gamma};
  r.e23_approx = {0.0, 2.0 / (gamma * gamma)};
  r.loc_length_14 = 1.0 / std::log(gamma);
  r.loc_length_23 = gamma * gamma / 2.0;
  r.qbic_timescale = gamma * gamma / 4.0;
  return r;
}

enum class SweepAxis { Gamma, Eps0, Eps1 };

struct SweepRow {
  double axis_value;
  int branch;
  SpectralPoint point;
};

// Spectrum along one parameter axis with branch continuity: each grid point's
// roots are paired to the previous point's by minimal total |d lambda| over the
// 4! assignments. Rows come out in (grid, branch) order.
inline std::vector<SweepRow> sweep_spectrum(const ModelParams& base, SweepAxis axis,
                                            std::span<const double> grid) {
  if (grid.empty()) throw precondition_error("sweep_spectrum: empty grid");
  for (size_t i = 1; i < grid.size(); ++i)
    if (grid[i] < grid[i - 1]) throw precondition_error("sweep_spectrum: grid not sorted");

  std::vector<SweepRow> rows;
  std::vector<SpectralPoint> prev;
  for (double v : grid) {
    ModelParams p = base;
    switch (axis) {
      case SweepAxis::Gamma: p.gamma = v; break;
      case SweepAxis::Eps0: p.eps0 = v; break;
      case SweepAxis::Eps1: p.eps1 = v; break;
    }
    std::vector<SpectralPoint> cur = solve_discrete_spectrum(p);
    if (prev.size() == cur.size() && cur.size() <= 4) {
      // exact min-cost assignment over permutations of <= 4 branches
      std::vector<int> idx(cur.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
      std::vector<int> best = idx;
      double best_cost = std::numeric_limits<double>::infinity();
      std::sort(idx.begin(), idx.end());
      do {
        double c = 0.0;
        for (size_t i = 0; i < idx.size(); ++i) c += std::abs(cur[idx[i]].lambda - prev[i].lambda);
        if (c < best_cost) {
          best_cost = c;
          best = idx;
        }
      } while (std::next_permutation(idx.begin(), idx.end()));
      std::vector<SpectralPoint> ordered(cur.size());
      for (size_t i = 0; i < best.size(); ++i) ordered[i] = cur[best[i]];
      cur = ordered;
    }
    for (size_t i = 0; i < cur.size(); ++i) rows.push_back({v, int(i), cur[i]});
    prev = cur;
  }
  return rows;
}

}  // namespace ptlattice
