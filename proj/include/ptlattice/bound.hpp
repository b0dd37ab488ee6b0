#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ptlattice/spectrum.hpp"

// Real-lambda discrete states: bound states (0 < |lambda| < 1) and virtual
// (anti-bound) states (|lambda| > 1), their PT-symmetric boundary condition
// B = e^{-i theta} C* (theta = 0 convention throughout), and the PT-norm
// N = sum_x psi(-x)* psi(x) with its geometric-series closed form.

namespace ptlattice {

struct BoundStateForm {
  double kappa;   // k = i kappa + delta pi; kappa < 0 flags a virtual bound state
  int delta;      // 0 below the band, 1 above
  cplx psi0;
  cplx b_coeff;   // left lead B e^{-ikx}; psi(-1) = B lambda
  cplx c_coeff;   // right lead C e^{+ikx}; psi(+1) = C lambda
  double theta;   // PT phase, fixed to 0 here

  double lambda() const { return (delta ? -1.0 : 1.0) * std::exp(-kappa); }
  double energy() const {
    const double l = lambda();
    return -(l + 1.0 / l);
  }
  bool is_virtual() const { return kappa < 0.0; }

  PiecewiseWave wave() const {
    const cplx k(delta * pi, kappa);
    PiecewiseWave w;
    w.left = {{b_coeff, -k}};
    w.psi0 = psi0;
    w.right = {{c_coeff, k}};
    return w;
  }
};

// B from the defect matching rows with theta = 0: B = psi0 / (1 + (eps1 + i Gamma) lambda),
// so C = B* automatically for real lambda. The (real) denominator of Re/Im B is
// |1 + (eps1 + i Gamma) lambda|^2 = 1 + Gamma^2 lambda^2 + 2 eps1 lambda + eps1^2 lambda^2.
inline cplx bound_coefficient(const ModelParams& p, double lambda, cplx psi0) {
  if (lambda == 0.0) throw domain_error("bound_coefficient: lambda = 0");
  const cplx den = 1.0 + cplx(p.eps1, p.gamma) * lambda;
  if (std::norm(den) < 1e-14)
    throw singular_configuration_error("bound_coefficient: matching denominator vanishes");
  return psi0 / den;
}

// All real-lambda solutions of P(lambda) = 0, bound and virtual together
// (kappa's sign separates them). psi0 is taken real positive (= 1). At Gamma = 0
// the root lambda = -1/eps1 is an exact node-at-origin state (psi0 = 0,
// psi(1) = -psi(-1)); it is parametrized by B = 1 instead and carries theta = pi.
inline std::vector<BoundStateForm> find_bound_states(const ModelParams& p) {
  std::vector<BoundStateForm> out;
  for (const auto& pt : solve_discrete_spectrum(p)) {
    if (pt.lambda.imag() != 0.0) continue;
    const double l = pt.lambda.real();
    if (l == 0.0) continue;
    BoundStateForm s;
    s.kappa = -std::log(std::abs(l));
    s.delta = l > 0.0 ? 0 : 1;
    try {
      s.psi0 = 1.0;
      s.b_coeff = bound_coefficient(p, l, s.psi0);
      s.c_coeff = std::conj(s.b_coeff);
      s.theta = 0.0;
    } catch (const singular_configuration_error&) {
      s.psi0 = 0.0;
      s.b_coeff = 1.0;
      s.c_coeff = -1.0;
      s.theta = pi;
    }
    out.push_back(s);
  }
  return out;
}

// Sitewise check that PT psi = e^{i theta} psi on [-window, window]; returns the
// phase, or nothing if no single phase fits to tol (complex-E localized states).
inline std::optional<double> pt_phase(const PiecewiseWave& w, int window = 10,
                                      double tol = 1e-10) {
  // candidate phase from the largest-magnitude site
  double theta = 0.0;
  double best = 0.0;
  for (int x = -window; x <= window; ++x) {
    const cplx v = w(x);
    if (std::abs(v) > best && std::abs(v) > 1e-300) {
      best = std::abs(v);
      theta = std::arg(std::conj(w(-x)) / v);
    }
  }
  if (best == 0.0) return std::nullopt;
  const cplx phase = std::polar(1.0, theta);
  double scale = 0.0, worst = 0.0;
  for (int x = -window; x <= window; ++x) {
    scale = std::max(scale, std::abs(w(x)));
    worst = std::max(worst, std::abs(std::conj(w(-x)) - phase * w(x)));
  }
  if (worst > tol * std::max(1.0, scale)) return std::nullopt;
  return theta;
}

inline std::optional<double> pt_phase_check(const BoundStateForm& s, const ModelParams&) {
  return pt_phase(s.wave());
}

struct PTNormRecord {
  double n_pt;
  int c_eigenvalue;  // sign of the PT norm
};

// N^PT = psi0^2 + 2 Re(B* C) / (e^{2 kappa} - 1), the geometric-series closed
// form of sum_x psi(-x)* psi(x). With the theta = 0 convention C = B* and this
// is psi0^2 ( 2 (Bt_r^2 - Bt_i^2)/(e^{2 kappa} - 1) + 1 ), Bt = B/psi0.
// Requires kappa > 0; the lattice sum diverges for virtual states.
inline PTNormRecord pt_norm(const BoundStateForm& s) {
  if (!(s.kappa > 0.0)) throw divergent_sum_error("pt_norm: kappa <= 0, sum diverges");
  const double p0 = s.psi0.real();  // psi0 real (>= 0) by construction
  const double n = p0 * p0 + 2.0 * (std::conj(s.b_coeff) * s.c_coeff).real() /
                                 (std::exp(2.0 * s.kappa) - 1.0);
  if (n == 0.0) throw numeric_error("pt_norm: vanishing PT norm", 0.0);
  return {n, n > 0.0 ? +1 : -1};
}

inline bool all_roots_real(const ModelParams& p, double tol = 1e-9) {
  for (const auto& pt : solve_discrete_spectrum(p))
    if (std::abs(pt.lambda.imag()) > tol) return false;
  return true;
}

struct UnbrokenCell {
  double eps0, eps1, gamma;
  bool unbroken;
};

// Unbroken PT region: every root of P real (any mix of bound and virtual states).
inline std::vector<UnbrokenCell> unbroken_region_scan(std::span<const double> eps0_grid,
                                                      std::span<const double> eps1_grid,
                                                      std::span<const double> gamma_grid) {
  std::vector<UnbrokenCell> cells;
  cells.reserve(eps0_grid.size() * eps1_grid.size() * gamma_grid.size());
  for (double e0 : eps0_grid)
    for (double e1 : eps1_grid)
      for (double g : gamma_grid)
        cells.push_back({e0, e1, g, all_roots_real({e0, e1, g})});
  return cells;
}

}  // namespace ptlattice
