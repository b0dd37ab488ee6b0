#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ptlattice/errors.hpp"

// Infinite tight-binding chain with hopping -1 and a three-site defect:
//   V(-1) = eps1 + i*Gamma  (gain),  V(0) = eps0,  V(+1) = eps1 - i*Gamma  (loss),
// so V(x)* = V(-x) and the chain is PT-symmetric. All energies are in units of
// the hopping amplitude. The continuum is E(k) = -2 cos k with lambda = e^{ik},
// i.e. E(lambda) = -(lambda + 1/lambda); |lambda| < 1 is the first Riemann
// sheet (bounded lead waves), |lambda| > 1 the second.

namespace ptlattice {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

struct ModelParams {
  double eps0 = 0.0;
  double eps1 = 0.0;
  double gamma = 0.0;

  cplx potential(int x) const {
    if (x == -1) return {eps1, gamma};
    if (x == 0) return {eps0, 0.0};
    if (x == 1) return {eps1, -gamma};
    return {0.0, 0.0};
  }

  bool finite() const {
    return std::isfinite(eps0) && std::isfinite(eps1) && std::isfinite(gamma);
  }
};

enum class Sheet { First, Second, BranchCut };

enum class StateClass {
  Bound,
  VirtualBound,
  Resonance,
  AntiResonance,
  ComplexLocalized,
  RIC,
  BandEdge,
};

inline const char* to_string(Sheet s) {
  switch (s) {
    case Sheet::First: return "first";
    case Sheet::Second: return "second";
    default: return "branch-cut";
  }
}

inline const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::Bound: return "bound";
    case StateClass::VirtualBound: return "virtual-bound";
    case StateClass::Resonance: return "resonance";
    case StateClass::AntiResonance: return "anti-resonance";
    case StateClass::ComplexLocalized: return "complex-localized";
    case StateClass::RIC: return "ric";
    default: return "band-edge";
  }
}

// E(lambda) = -(lambda + 1/lambda)
inline cplx energy_of_lambda(cplx lambda) {
  if (lambda == cplx(0.0, 0.0)) throw domain_error("energy_of_lambda: lambda = 0");
  return -(lambda + 1.0 / lambda);
}

// k = -i log lambda with Re k in (-pi, pi]; Re k = -pi is the same Brillouin-zone
// line as +pi and is reported as +pi.
inline cplx wavenumber_of_lambda(cplx lambda) {
  if (lambda == cplx(0.0, 0.0)) throw domain_error("wavenumber_of_lambda: lambda = 0");
  double re = std::arg(lambda);
  if (re <= -pi) re = pi;
  return {re, -std::log(std::abs(lambda))};
}

inline Sheet classify_sheet(cplx lambda, double tol = 1e-9) {
  if (!(tol > 0.0)) throw domain_error("classify_sheet: tol must be positive");
  const double m = std::abs(lambda);
  if (m < 1.0 - tol) return Sheet::First;
  if (m > 1.0 + tol) return Sheet::Second;
  return Sheet::BranchCut;
}

// One exponential amp * e^{i k x} on a lead.
struct LeadTerm {
  cplx amp;
  cplx wavenumber;
};

// Closed-form wave: up to two exponentials per lead plus the defect value psi(0).
// Lead expressions are taken to hold for |x| >= 1, so psi(+-1) evaluated from the
// leads are exactly the defect-adjacent values entering the matching equations.
struct PiecewiseWave {
  std::vector<LeadTerm> left;   // x <= -1
  cplx psi0{};                  // x = 0
  std::vector<LeadTerm> right;  // x >= +1

  cplx operator()(int x) const {
    if (x == 0) return psi0;
    const auto& terms = x < 0 ? left : right;
    cplx v = 0.0;
    for (const auto& t : terms) v += t.amp * std::exp(cplx(0.0, 1.0) * t.wavenumber * double(x));
    return v;
  }
};

// max over the window of |-psi(x-1) - psi(x+1) + V(x) psi(x) - E psi(x)|.
// Exact closed-form solutions come out at machine precision (< 1e-12).
inline double schrodinger_residual(const ModelParams& params, cplx energy,
                                   const PiecewiseWave& wave, int window_lo = -8,
                                   int window_hi = 8) {
  if (window_lo > -2 || window_hi < 2)
    throw precondition_error("schrodinger_residual: window must contain [-2, 2]");
  double worst = 0.0;
  for (int x = window_lo + 1; x < window_hi; ++x) {
    const cplx r = -wave(x - 1) - wave(x + 1) + params.potential(x) * wave(x) - energy * wave(x);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

// Purely outgoing (Siegert) wave for a root lambda of the dispersion quartic:
//   psi(x) = B e^{-ikx} (x <= -1), psi0, C e^{ikx} (x >= 1)
// with psi(-+1) = lambda psi0 / (1 + (eps1 +- i Gamma) lambda) from the defect rows.
inline PiecewiseWave siegert_wave(const ModelParams& params, cplx lambda, cplx psi0 = 1.0) {
  const cplx k = wavenumber_of_lambda(lambda);
  const cplx dm = 1.0 + cplx(params.eps1, params.gamma) * lambda;
  const cplx dp = 1.0 + cplx(params.eps1, -params.gamma) * lambda;
  if (std::abs(dm) < 1e-14 || std::abs(dp) < 1e-14)
    throw singular_configuration_error("siegert_wave: defect matching denominator vanishes");
  const cplx b = psi0 / dm;  // psi(-1) = b * lambda
  const cplx c = psi0 / dp;  // psi(+1) = c * lambda
  PiecewiseWave w;
  w.left = {{b, -k}};
  w.psi0 = psi0;
  w.right = {{c, k}};
  return w;
}

}  // namespace ptlattice
