#pragma once

#include <algorithm>
#include <complex>
#include <span>
#include <vector>

#include "ptlattice/errors.hpp"
#include "ptlattice/model.hpp"

// Simultaneous root iteration (Durand-Kerner) for low-degree polynomials with
// deterministic starting points lambda_m = (0.4 + 0.9i)^m, followed by one
// Newton polish per root. Coefficients are in descending degree order.

namespace ptlattice {

inline cplx poly_eval(std::span<const cplx> coeffs, cplx x) {
  cplx r = 0.0;
  for (const cplx& a : coeffs) r = r * x + a;
  return r;
}

inline cplx poly_eval_deriv(std::span<const cplx> coeffs, cplx x) {
  const int n = int(coeffs.size()) - 1;
  cplx r = 0.0;
  for (int i = 0; i < n; ++i) r = r * x + coeffs[i] * double(n - i);
  return r;
}

inline cplx poly_eval_deriv2(std::span<const cplx> coeffs, cplx x) {
  const int n = int(coeffs.size()) - 1;
  cplx r = 0.0;
  for (int i = 0; i + 2 <= n; ++i) r = r * x + coeffs[i] * double((n - i) * (n - i - 1));
  return r;
}

// Roots of a degree >= 1 polynomial; the leading coefficient must be nonzero.
// Stops when the largest update falls below update_tol; polish runs regardless.
// Convergence contract is on the root residual: if any |p(root)| exceeds
// residual_tol * max|coeff| a numeric_error carrying the worst residual is thrown.
inline std::vector<cplx> poly_roots(std::span<const cplx> coeffs,
                                    double update_tol = 1e-13, int max_iter = 200,
                                    double residual_tol = 1e-11) {
  const int n = int(coeffs.size()) - 1;
  if (n < 1 || coeffs[0] == cplx(0.0, 0.0))
    throw domain_error("poly_roots: zero leading coefficient or degree < 1");

  std::vector<cplx> monic(coeffs.begin(), coeffs.end());
  for (auto& a : monic) a /= coeffs[0];

  std::vector<cplx> z(n);
  const cplx seed(0.4, 0.9);
  cplx p = 1.0;
  for (int m = 0; m < n; ++m) {
    p *= seed;
    z[m] = p;
  }

  for (int it = 0; it < max_iter; ++it) {
    double move = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx den = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      const cplx step = poly_eval(monic, z[i]) / den;
      z[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < update_tol) break;
  }

  for (auto& zi : z) {
    // multiplicity-aware Newton: near a root of multiplicity m,
    // p p'' / p'^2 -> (m-1)/m, and the step m p/p' converges quadratically
    for (int pass = 0; pass < 12; ++pass) {
      const cplx pv = poly_eval(monic, zi);
      const cplx d1 = poly_eval_deriv(monic, zi);
      if (std::abs(d1) < 1e-300) break;
      const double denom = 1.0 - (pv * poly_eval_deriv2(monic, zi) / (d1 * d1)).real();
      const int m = denom < 1.0 / (2.0 * n) ? n
                                            : std::clamp(int(std::lround(1.0 / denom)), 1, n);
      const cplx step = double(m) * pv / d1;
      zi -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(zi))) break;
    }
  }

  double scale = 0.0;
  for (const cplx& a : coeffs) scale = std::max(scale, std::abs(a));
  double worst = 0.0;
  for (const cplx& zi : z) worst = std::max(worst, std::abs(poly_eval(coeffs, zi)));
  if (worst > residual_tol * scale)
    throw numeric_error("poly_roots: root residual contract violated", worst);

  return z;
}

inline std::vector<cplx> poly_roots(std::span<const double> coeffs,
                                    double update_tol = 1e-13, int max_iter = 200,
                                    double residual_tol = 1e-11) {
  std::vector<cplx> c(coeffs.begin(), coeffs.end());
  return poly_roots(std::span<const cplx>(c), update_tol, max_iter, residual_tol);
}

}  // namespace ptlattice
