#pragma once

#include <cmath>

#include "ptlattice/scattering.hpp"

// PT-symmetric scattering states built two ways — symmetrizing an asymmetric
// solution (psi + PT psi) and superposing Jost solutions — plus the discrete
// standard current and the conserved PT-current.

namespace ptlattice {

// PT psi (x) = psi(-x)*: conjugate amplitudes and swap the leads.
inline PiecewiseWave pt_transform(const PiecewiseWave& w) {
  PiecewiseWave out;
  out.psi0 = std::conj(w.psi0);
  for (const auto& t : w.right) out.left.push_back({std::conj(t.amp), std::conj(t.wavenumber)});
  for (const auto& t : w.left) out.right.push_back({std::conj(t.amp), std::conj(t.wavenumber)});
  return out;
}

namespace detail {

inline void add_term(std::vector<LeadTerm>& terms, const LeadTerm& t) {
  for (auto& u : terms)
    if (std::abs(u.wavenumber - t.wavenumber) < 1e-12) {
      u.amp += t.amp;
      return;
    }
  terms.push_back(t);
}

inline PiecewiseWave add_waves(const PiecewiseWave& a, const PiecewiseWave& b) {
  PiecewiseWave out = a;
  out.psi0 += b.psi0;
  for (const auto& t : b.left) add_term(out.left, t);
  for (const auto& t : b.right) add_term(out.right, t);
  return out;
}

inline PiecewiseWave scale_wave(const PiecewiseWave& w, cplx c) {
  PiecewiseWave out = w;
  out.psi0 *= c;
  for (auto& t : out.left) t.amp *= c;
  for (auto& t : out.right) t.amp *= c;
  return out;
}

}  // namespace detail

// psi + PT psi, normalized to value 1 at the origin. With the closed forms'
// phase convention (reflected coefficient real) this reproduces, for the pure
// gain/loss defect, the left-incidence solution with left-lead coefficients
// (-G/(2 sin k) e^{2ik}, 1 + G/(2 sin k)) and its right-incidence mirror.
inline PiecewiseWave pt_symmetrize(const ScatteringSolution& sol) {
  if (std::sin(sol.k) == 0.0) throw band_edge_error("pt_symmetrize: sin k = 0");
  // at the phase-shifted perfect-transmission points (2 sin k = -+ Gamma for the
  // pure gain/loss defect) the reflected component vanishes and the two-term
  // symmetrized form degenerates; zero-phase points (t = 1: the invisibility
  // wavenumbers and the uniform chain) symmetrize to the traveling wave itself
  const cplx refl = sol.direction == Direction::LtoR ? sol.B : sol.C;
  const cplx in = sol.direction == Direction::LtoR ? sol.A : sol.D;
  if (std::abs(refl) < 1e-12 * std::abs(in) && std::abs(sol.t - 1.0) > 1e-9)
    throw singular_configuration_error(
        "pt_symmetrize: reflected wave vanishes (2 sin k = -+ Gamma); the two-term "
        "symmetrized form degenerates");
  PiecewiseWave sum = detail::add_waves(sol.wave(), pt_transform(sol.wave()));
  const double origin = sum.psi0.real();  // psi0 + psi0* is real by construction
  if (std::abs(origin) < 1e-12 * (1.0 + std::abs(sol.psi0)))
    throw normalization_error("pt_symmetrize: psi(0) + psi(0)* vanishes");
  return detail::scale_wave(sum, 1.0 / origin);
}

struct JostData {
  cplx alpha_plus, alpha_minus;  // lead normalizations 1 + i G e^{-+ik}
  cplx f0_plus, f0_minus;        // f_+-(0) = 1 +- 2 G sin k + G^2
  double F_plus, F_minus;        // Jost functions 2 G (G +- 2 sin k) cos k
  cplx A_plus, A_minus;          // superposition solving A+ F+ + A- F- = 0
};

// PT-symmetric scattering state from the Jost solutions (pure gain/loss defect):
//   f_+-(x) = alpha e^{+-ikx} (x >= 1), alpha* e^{+-ikx} (x <= -1), alpha = 1 + i G e^{-+ik};
// the physical combination A+ f+ + A- f- must kill the x = 0 matching defect,
// A+ F+ + A- F- = 0, and is normalized to phi(0) = 1. Both Jost functions carry
// cos k, so k = +-pi/2 leaves the combination undetermined.
inline std::pair<JostData, PiecewiseWave> jost_pt_state(double gamma, double k) {
  if (!(std::abs(k) > 0.0 && std::abs(k) < pi))
    throw band_edge_error("jost_pt_state: need 0 < |k| < pi");
  const double c = std::cos(k), s = std::sin(k);
  if (std::abs(c) < 1e-12)
    throw underdetermined_error("jost_pt_state: cos k = 0, both Jost functions vanish");

  JostData j;
  j.alpha_plus = 1.0 + cplx(0.0, gamma) * std::polar(1.0, -k);
  j.alpha_minus = 1.0 + cplx(0.0, gamma) * std::polar(1.0, +k);
  j.f0_plus = 1.0 + 2.0 * gamma * s + gamma * gamma;
  j.f0_minus = 1.0 - 2.0 * gamma * s + gamma * gamma;
  j.F_plus = 2.0 * gamma * (gamma + 2.0 * s) * c;
  j.F_minus = 2.0 * gamma * (gamma - 2.0 * s) * c;
  j.A_plus = -j.F_minus;
  j.A_minus = j.F_plus;

  const cplx kk(k, 0.0);
  PiecewiseWave phi;
  phi.left = {{j.A_plus * std::conj(j.alpha_plus), kk},
              {j.A_minus * std::conj(j.alpha_minus), -kk}};
  phi.right = {{j.A_plus * j.alpha_plus, kk}, {j.A_minus * j.alpha_minus, -kk}};
  phi.psi0 = j.A_plus * j.f0_plus + j.A_minus * j.f0_minus;
  if (std::abs(phi.psi0) < 1e-14)
    throw normalization_error("jost_pt_state: phi(0) vanishes");
  const cplx scale = 1.0 / phi.psi0;
  phi = detail::scale_wave(phi, scale);
  j.A_plus *= scale;
  j.A_minus *= scale;
  return {j, phi};
}

// j(x) = Im( psi(x)* psi(x+1) ), the bond current of the tight-binding chain.
inline double standard_current(const PiecewiseWave& w, int bond) {
  return std::imag(std::conj(w(bond)) * w(bond + 1));
}

// j_PT(x) = (1/2) ( psi(x)* psi(-x-1) - psi(-x) psi(x+1)* ): conserved along
// both leads for real-E scattering states, identically zero for PT-symmetric
// waves, divergent at the perfect-transmission loci.
inline cplx pt_current(const PiecewiseWave& w, int bond) {
  return 0.5 * (std::conj(w(bond)) * w(-bond - 1) - w(-bond) * std::conj(w(bond + 1)));
}

struct PTCurrentValue {
  cplx j_pt;
  double j_std;
  int site;
};

inline PTCurrentValue currents_at(const PiecewiseWave& w, int bond) {
  return {pt_current(w, bond), standard_current(w, bond), bond};
}

}  // namespace ptlattice
