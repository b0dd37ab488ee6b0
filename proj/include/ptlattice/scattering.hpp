#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "ptlattice/numeric.hpp"
#include "ptlattice/polyroot.hpp"
#include "ptlattice/spectrum.hpp"

// Scattering states at real k in the continuum: the 3x3 defect matching system
// for either incidence direction, the PT symmetry relations of the amplitudes,
// the RIC poles of T and R, perfect-transmission wavenumbers (roots of the
// quartics M_L/M_R), invisibility, and the band-edge delocalization coincidence.

namespace ptlattice {

enum class Direction { LtoR, RtoL };

inline const char* to_string(Direction d) { return d == Direction::LtoR ? "lr" : "rl"; }

namespace detail {

struct Solve3 {
  std::array<cplx, 3> x;
  cplx det;
  double norm;  // max absolute entry
};

inline Solve3 solve3x3(std::array<std::array<cplx, 3>, 3> m, std::array<cplx, 3> b) {
  Solve3 out;
  out.norm = 0.0;
  for (auto& row : m)
    for (auto& v : row) out.norm = std::max(out.norm, std::abs(v));
  cplx det = 1.0;
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      std::swap(b[piv], b[col]);
      det = -det;
    }
    det *= m[col][col];
    if (m[col][col] == cplx(0.0, 0.0)) {
      out.det = 0.0;
      out.x = {0.0, 0.0, 0.0};
      return out;
    }
    for (int r = col + 1; r < 3; ++r) {
      const cplx f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  out.det = det;
  for (int r = 2; r >= 0; --r) {
    cplx s = b[r];
    for (int c = r + 1; c < 3; ++c) s -= m[r][c] * out.x[c];
    out.x[r] = s / m[r][r];
  }
  return out;
}

// Defect matching system with the incoming amplitude as the source. Unknowns are
// (B, psi0, C); the system is singular exactly at a resonance in continuum
// (nontrivial purely outgoing solution).
inline Solve3 scattering_system(const ModelParams& p, double k, Direction dir) {
  const cplx lam = std::polar(1.0, k);
  const cplx vg(p.eps1, p.gamma), vl(p.eps1, -p.gamma);
  if (dir == Direction::LtoR) {
    // source A = 1:
    //   A(e1 + iG + lam) - lam psi0  + B lam (1 + (e1+iG) lam)            = 0
    //   A - (1 + e0 lam + lam^2) psi0 + (B + C) lam^2                     = 0
    //   -psi0 + C (1 + (e1-iG) lam)                                       = 0
    return solve3x3({{{lam * (1.0 + vg * lam), -lam, 0.0},
                      {lam * lam, -(1.0 + p.eps0 * lam + lam * lam), lam * lam},
                      {0.0, -1.0, 1.0 + vl * lam}}},
                    {-(vg + lam), -1.0, 0.0});
  }
  // source D = 1:
  //   B(1 + (e1+iG) lam) - psi0                                           = 0
  //   B lam - (lam + 1/lam + e0) psi0 + C lam  + D/lam                    = 0
  //   -psi0 + C(1 + (e1-iG) lam) + D(1 + (e1-iG)/lam)                     = 0
  return solve3x3({{{1.0 + vg * lam, -1.0, 0.0},
                    {lam, -(lam + 1.0 / lam + p.eps0), lam},
                    {0.0, -1.0, 1.0 + vl * lam}}},
                  {0.0, -1.0 / lam, -(1.0 + vl / lam)});
}

}  // namespace detail

struct ScatteringSolution {
  Direction direction;
  double k;
  cplx A, B, C, D, psi0;  // the slot absent for the direction stays zero
  cplx t, r;
  double T, R;

  PiecewiseWave wave() const {
    PiecewiseWave w;
    const cplx kk(k, 0.0);
    if (direction == Direction::LtoR) {
      w.left = {{A, kk}, {B, -kk}};
      w.right = {{C, kk}};
    } else {
      w.left = {{B, -kk}};
      w.right = {{C, kk}, {D, -kk}};
    }
    w.psi0 = psi0;
    return w;
  }
};

// General-parameter scattering solve (complex Gaussian elimination with partial
// pivoting). Coefficients are reported in the closed forms' phase convention:
// the reflected-wave coefficient (B for left incidence, C for right) is made
// real non-negative by a global phase. Throws pole_error when the system is
// singular (RIC) and band_edge_error at sin k = 0.
inline ScatteringSolution solve_scattering(const ModelParams& p, double k, Direction dir) {
  if (!(k > -pi && k < pi) || k == 0.0)
    throw band_edge_error("solve_scattering: k must lie strictly inside (-pi, pi), k != 0");
  const auto sol = detail::scattering_system(p, k, dir);
  if (std::abs(sol.det) < 1e-10 * sol.norm * sol.norm * sol.norm) throw pole_error(k);

  ScatteringSolution s;
  s.direction = dir;
  s.k = k;
  if (dir == Direction::LtoR) {
    s.A = 1.0;
    s.B = sol.x[0];
    s.psi0 = sol.x[1];
    s.C = sol.x[2];
    s.D = 0.0;
    if (std::abs(s.B) > 1e-14) {
      const cplx ph = std::conj(s.B) / std::abs(s.B);
      s.A *= ph;
      s.B *= ph;
      s.C *= ph;
      s.psi0 *= ph;
    }
    s.t = s.C / s.A;
    s.r = s.B / s.A;
  } else {
    s.D = 1.0;
    s.B = sol.x[0];
    s.psi0 = sol.x[1];
    s.C = sol.x[2];
    s.A = 0.0;
    if (std::abs(s.C) > 1e-14) {
      const cplx ph = std::conj(s.C) / std::abs(s.C);
      s.D *= ph;
      s.B *= ph;
      s.C *= ph;
      s.psi0 *= ph;
    }
    s.t = s.B / s.D;
    s.r = s.C / s.D;
  }
  s.T = std::norm(s.t);
  s.R = std::norm(s.r);
  return s;
}

// PT identities of the amplitudes. As functions of k the closed forms obey
// t(-k) = t(k)* and r_l(-k) = r_r(k)*, and |t|^2 + s |r_l r_r| = 1 with
// s = sign(1 - T). Residuals of all three are returned.
struct SymmetryResiduals {
  double t_parity;
  double r_swap;
  double pseudo_unitarity;
  int sign;
};

inline SymmetryResiduals symmetry_residuals(const ModelParams& p, double k) {
  const auto lr = solve_scattering(p, k, Direction::LtoR);
  const auto rl = solve_scattering(p, k, Direction::RtoL);
  const auto lrm = solve_scattering(p, -k, Direction::LtoR);
  SymmetryResiduals res;
  res.sign = lr.T < 1.0 ? +1 : -1;
  res.t_parity = std::abs(lrm.t - std::conj(lr.t));
  res.r_swap = std::abs(lrm.r - std::conj(rl.r));
  res.pseudo_unitarity = std::abs(lr.T + res.sign * std::abs(lr.r * rl.r) - 1.0);
  return res;
}

// Perfect-transmission quartics: M_L = 0 kills the reflected wave for left
// incidence, M_R = 0 for right incidence (det of the matching matrix).
inline std::array<cplx, 5> perfect_transmission_coeffs(const ModelParams& p, Direction dir) {
  const double sq = p.eps1 * p.eps1 + p.gamma * p.gamma;
  const cplx u = dir == Direction::LtoR ? cplx(p.eps1, -p.gamma) : cplx(p.eps1, p.gamma);
  const cplx v = std::conj(u);
  return {u, sq + p.eps0 * u, p.eps0 * (1.0 + sq), sq + p.eps0 * v, v};
}

inline cplx perfect_transmission_poly(const ModelParams& p, Direction dir, cplx lambda) {
  const auto c = perfect_transmission_coeffs(p, dir);
  return poly_eval(std::span<const cplx>(c), lambda);
}

struct PerfectTransmissionSet {
  Direction direction;
  std::vector<double> ktildes;            // ascending, unit-circle roots only
  std::vector<double> gamma_independent;  // the +-pi/2 subset (pure gain/loss defect)
};

// Real-k perfect transmission wavenumbers: unit-modulus roots of M_L (M_R).
// Complex roots are discarded; a double root at +-pi/2 (|Gamma| = 2 tangency)
// is reported once. A uniform chain (all coefficients zero) transmits
// perfectly at every k and yields an empty discrete set.
inline PerfectTransmissionSet perfect_transmission(const ModelParams& p, Direction dir) {
  PerfectTransmissionSet set;
  set.direction = dir;
  const auto coeffs = perfect_transmission_coeffs(p, dir);
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale < 1e-14) return set;

  std::vector<cplx> trimmed(coeffs.begin(), coeffs.end());
  while (trimmed.size() > 1 && std::abs(trimmed.front()) < 1e-14 * scale)
    trimmed.erase(trimmed.begin());
  while (trimmed.size() > 1 && std::abs(trimmed.back()) < 1e-14 * scale)
    trimmed.pop_back();  // drop lambda = 0 roots of a reduced polynomial
  if (trimmed.size() < 2) return set;

  for (const cplx& root : poly_roots(std::span<const cplx>(trimmed))) {
    if (std::abs(std::abs(root) - 1.0) > 1e-8) continue;
    const double kt = wavenumber_of_lambda(root).real();
    bool dup = false;
    for (double existing : set.ktildes) dup = dup || std::abs(existing - kt) < 1e-9;
    if (!dup) set.ktildes.push_back(kt);
  }
  std::sort(set.ktildes.begin(), set.ktildes.end());
  if (std::abs(p.eps0) < 1e-14 && std::abs(p.eps1) < 1e-14)
    for (double kt : set.ktildes)
      if (std::abs(std::abs(kt) - pi / 2.0) < 1e-9) set.gamma_independent.push_back(kt);
  return set;
}

struct InvisibilityReport {
  bool invisible;
  double phase_shift;  // transmission phase, zero for invisible propagation
  cplx response;       // psi(0) / incoming amplitude
};

// ktilde must be a perfect-transmission wavenumber (T = 1, R = 0 to 1e-9);
// invisibility additionally requires unit transmitted/incoming ratio with no
// phase shift. The defect response is (1 +- Gamma) at k = +-pi/2 for the pure
// gain/loss case.
inline InvisibilityReport invisibility_check(const ModelParams& p, double ktilde,
                                             Direction dir) {
  const auto s = solve_scattering(p, ktilde, dir);
  if (std::abs(s.T - 1.0) > 1e-9 || s.R > 1e-9)
    throw precondition_error("invisibility_check: k is not a perfect-transmission wavenumber");
  InvisibilityReport rep;
  rep.phase_shift = std::arg(s.t);
  rep.invisible = std::abs(s.t - 1.0) < 1e-10;
  rep.response = s.psi0 / (dir == Direction::LtoR ? s.A : s.D);
  return rep;
}

struct DelocalizationPoint {
  double gamma;  // non-negative representative; the spectrum is even in Gamma
  int edge;      // lambda = -1 (upper band edge) or +1 (lower)
};

// Band-edge delocalization transitions P(+-1) = 0 solved for Gamma (linear in
// Gamma^2), each verified against M_L(+-1) = M_R(+-1) = 0: the bound-state
// delocalization and the band-edge perfect-transmission state coincide.
inline std::vector<DelocalizationPoint> delocalization_coincidence(double eps0, double eps1) {
  std::vector<DelocalizationPoint> out;
  const double g2_minus =
      (eps0 + 2.0 * eps1 - 2.0 * eps0 * eps1) / (2.0 - eps0) - eps1 * eps1;  // P(-1) = 0
  const double g2_plus =
      -(eps0 + 2.0 * eps1 + 2.0 * eps0 * eps1) / (2.0 + eps0) - eps1 * eps1;  // P(+1) = 0
  for (auto [g2, edge] : {std::pair{g2_minus, -1}, std::pair{g2_plus, +1}}) {
    if (g2 < -1e-15) continue;
    const double g = std::sqrt(std::max(0.0, g2));
    const ModelParams p{eps0, eps1, g};
    const double check =
        std::max(std::abs(perfect_transmission_poly(p, Direction::LtoR, double(edge))),
                 std::abs(perfect_transmission_poly(p, Direction::RtoL, double(edge))));
    if (check > 1e-10 * std::max(1.0, std::abs(g2)))
      throw numeric_error("delocalization_coincidence: M_{L,R} check failed", check);
    out.push_back({g, edge});
  }
  std::sort(out.begin(), out.end(),
            [](const DelocalizationPoint& a, const DelocalizationPoint& b) {
              return a.gamma < b.gamma;
            });
  return out;
}

// Parameter pairs (Gamma, k) where the transmission and reflection diverge on
// the real k axis. The incoming-coefficient system determinant |det N(Gamma, k)|
// is scanned over the grid and local minima are driven to zero with nested
// golden-section refinement; each accepted pole has |det| below tol relative to
// the matrix norm cubed. (The same points are the unit-circle roots of P; that
// cross-check lives with the spectrum module and the tests.)
inline std::vector<std::pair<double, double>> ric_pole_scan(const ModelParams& base,
                                                            std::span<const double> k_grid,
                                                            Interval gamma_range = {1e-3, 3.0},
                                                            int gamma_n = 601) {
  auto det_at = [&](double g, double k) {
    const auto sys = detail::scattering_system({base.eps0, base.eps1, g}, k, Direction::LtoR);
    const double n3 = sys.norm * sys.norm * sys.norm;
    return std::abs(sys.det) / std::max(n3, 1e-300);
  };
  auto min_over_k = [&](double g, double* kbest = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    size_t arg = 0;
    for (size_t i = 0; i < k_grid.size(); ++i) {
      const double d = det_at(g, k_grid[i]);
      if (d < best) {
        best = d;
        arg = i;
      }
    }
    const double lo = arg > 0 ? k_grid[arg - 1] : k_grid[arg];
    const double hi = arg + 1 < k_grid.size() ? k_grid[arg + 1] : k_grid[arg];
    double k_ref = k_grid[arg];
    if (hi > lo)
      k_ref = detail::golden_minimize(lo, hi, 1e-12, [&](double k) { return det_at(g, k); });
    if (kbest) *kbest = k_ref;
    return det_at(g, k_ref);
  };

  std::vector<std::pair<double, double>> poles;
  std::vector<double> gs(gamma_n), ms(gamma_n);
  for (int i = 0; i < gamma_n; ++i) {
    gs[i] = gamma_range.lo + (gamma_range.hi - gamma_range.lo) * double(i) / double(gamma_n - 1);
    ms[i] = min_over_k(gs[i]);
  }
  for (int i = 1; i + 1 < gamma_n; ++i) {
    if (ms[i] > ms[i - 1] || ms[i] > ms[i + 1] || ms[i] > 1e-2) continue;
    const double gbar = detail::golden_minimize(gs[i - 1], gs[i + 1], 1e-12,
                                                [&](double g) { return min_over_k(g); });
    if (min_over_k(gbar) > 1e-9) continue;
    // a single Gamma can carry several real-k poles; pick up every k minimum
    for (size_t j = 1; j + 1 < k_grid.size(); ++j) {
      const double d0 = det_at(gbar, k_grid[j]);
      if (d0 > det_at(gbar, k_grid[j - 1]) || d0 > det_at(gbar, k_grid[j + 1])) continue;
      const double kbar = detail::golden_minimize(
          k_grid[j - 1], k_grid[j + 1], 1e-12, [&](double k) { return det_at(gbar, k); });
      if (det_at(gbar, kbar) > 1e-9) continue;
      bool dup = false;
      for (const auto& [g0, k0] : poles)
        dup = dup || (std::abs(g0 - gbar) < 1e-8 && std::abs(k0 - kbar) < 1e-8);
      if (!dup) poles.push_back({gbar, kbar});
    }
  }
  std::sort(poles.begin(), poles.end());
  return poles;
}

}  // namespace ptlattice
