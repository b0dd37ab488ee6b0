#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ptlattice/numeric.hpp"
#include "ptlattice/spectrum.hpp"

// Exceptional points of the dispersion quartic: closed forms for the pure
// gain/loss case (Gamma_A = sqrt2 - 1, Gamma_B = 1 + sqrt2, with square-root
// Puiseux expansions around each), and a numeric locator for general defects
// based on the quartic discriminant and root coalescence.

namespace ptlattice {

// p(E) = G^2 E^4 + (G^4 - 4 G^2 - 1) E^2 + 4, the dispersion polynomial written
// in the energy variable for eps0 = eps1 = 0.
struct EnergyQuartic {
  double c4, c2, c0;
  std::array<double, 5> descending() const { return {c4, 0.0, c2, 0.0, c0}; }
};

inline EnergyQuartic energy_polynomial(double gamma) {
  const double g2 = gamma * gamma;
  return {g2, g2 * g2 - 4.0 * g2 - 1.0, 4.0};
}

enum class EPKind { EP2A, EP2B };

inline const char* to_string(EPKind k) { return k == EPKind::EP2A ? "EP2A" : "EP2B"; }

struct EPRecord {
  double gamma_bar;
  cplx e_bar;
  EPKind kind;
  cplx puiseux_coeff;  // real for EP2A (applies to sqrt(G_bar^2 - G^2)),
                       // imaginary for EP2B (applies to sqrt(G^2 - G_bar^2))
  int branch_sign;     // sign of Re e_bar (A) or Im e_bar (B)
  int pair_count = 1;  // simultaneous pair coalescences at this gamma_bar
};

// Closed-form exceptional points for eps0 = eps1 = 0 (positive-Gamma branch;
// the spectrum is even in Gamma):
//   EP2A at G = sqrt2 - 1, E = +-sqrt(2(1+sqrt2)), coefficient 1/(2^{1/4} sqrt(sqrt2-1))
//   EP2B at G = 1 + sqrt2, E = +-i sqrt(2(sqrt2-1)), coefficient 1/(2^{1/4} sqrt(sqrt2+1))
inline std::vector<EPRecord> ep_locations_pure_imag() {
  const double s2 = std::sqrt(2.0);
  const double gA = s2 - 1.0, gB = s2 + 1.0;
  const double eA = std::sqrt(2.0 * (1.0 + s2));
  const double eB = std::sqrt(2.0 * (s2 - 1.0));
  const double alpha = 1.0 / (std::pow(2.0, 0.25) * std::sqrt(s2 - 1.0));
  const double beta = 1.0 / (std::pow(2.0, 0.25) * std::sqrt(s2 + 1.0));
  return {
      {gA, {eA, 0.0}, EPKind::EP2A, {alpha, 0.0}, +1, 2},
      {gA, {-eA, 0.0}, EPKind::EP2A, {alpha, 0.0}, -1, 2},
      {gB, {0.0, eB}, EPKind::EP2B, {0.0, beta}, +1, 2},
      {gB, {0.0, -eB}, EPKind::EP2B, {0.0, beta}, -1, 2},
  };
}

// Leading Puiseux pair around an EP. For an EP2A the radicand is
// G_bar^2 - G^2 (real pair on the unbroken side G < G_bar, conjugate pair
// beyond); for an EP2B it is G^2 - G_bar^2.
inline std::pair<cplx, cplx> puiseux_predict(const EPRecord& ep, double gamma) {
  const double d2 = ep.kind == EPKind::EP2A ? ep.gamma_bar * ep.gamma_bar - gamma * gamma
                                            : gamma * gamma - ep.gamma_bar * ep.gamma_bar;
  const cplx root = std::sqrt(cplx(d2, 0.0));
  return {ep.e_bar + ep.puiseux_coeff * root, ep.e_bar - ep.puiseux_coeff * root};
}

// Discriminant of the quartic, evaluated from the standard degree-4 closed form
// in the real coefficients (equals resultant(P, P')/a4 up to sign convention).
// Zero iff P has a multiple root.
inline double quartic_discriminant(const QuarticCoeffs& q) {
  const double a = q.a4, b = q.a3, c = q.a2, d = q.a1, e = q.a0;
  return 256.0 * a * a * a * e * e * e - 192.0 * a * a * b * d * e * e -
         128.0 * a * a * c * c * e * e + 144.0 * a * a * c * d * d * e -
         27.0 * a * a * d * d * d * d + 144.0 * a * b * b * c * e * e -
         6.0 * a * b * b * d * d * e - 80.0 * a * b * c * c * d * e +
         18.0 * a * b * c * d * d * d + 16.0 * a * c * c * c * c * e -
         4.0 * a * c * c * c * d * d - 27.0 * b * b * b * b * e * e +
         18.0 * b * b * b * c * d * e - 4.0 * b * b * b * d * d * d -
         4.0 * b * b * c * c * c * e + b * b * c * c * d * d;
}

namespace detail {

inline std::vector<cplx> lambdas_at(double eps0, double eps1, double g) {
  std::vector<cplx> out;
  for (const auto& pt : solve_discrete_spectrum({eps0, eps1, g})) out.push_back(pt.lambda);
  return out;
}

// Minimal pairwise distance between roots; ~ sqrt|G - G_bar| near a coalescence,
// which makes minimizing it a sharp locator for G_bar.
inline double min_pair_distance(double eps0, double eps1, double g, int* ia = nullptr,
                                int* ib = nullptr) {
  const auto ls = lambdas_at(eps0, eps1, g);
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < ls.size(); ++i)
    for (size_t j = i + 1; j < ls.size(); ++j) {
      const double d = std::abs(ls[i] - ls[j]);
      if (d < best) {
        best = d;
        if (ia) *ia = int(i);
        if (ib) *ib = int(j);
      }
    }
  return best;
}

}  // namespace detail

// Locate exceptional points on a Gamma interval for general real defects.
// The discriminant of P is scanned on the grid: sign changes are refined by
// bisection; near-zero local minima of |disc| (the symmetric double-EP case,
// where two pairs coalesce at once and the discriminant touches zero) are
// refined by minimizing the minimal pairwise root distance. Each candidate is
// kept only if two roots genuinely coalesce (distance < 1e-5); the kind follows
// from the coalescing pair's reality at G_bar -+ 1e-3 (re-sampled at 1e-4 on a
// tie), and the Puiseux coefficient is fitted by regressing |E - E_bar| on
// sqrt|G - G_bar| over 10 nearby points.
inline std::vector<EPRecord> find_eps_general(double eps0, double eps1, Interval gamma_range,
                                              int grid_n) {
  if (grid_n < 2) throw precondition_error("find_eps_general: grid_n >= 2 required");

  std::vector<double> gs(grid_n), ds(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    gs[i] = gamma_range.lo + (gamma_range.hi - gamma_range.lo) * double(i) / double(grid_n - 1);
    if (gs[i] == 0.0) gs[i] = std::min(1e-6, gamma_range.hi / 2.0);  // keep P non-degenerate
    ds[i] = quartic_discriminant(quartic_coefficients({eps0, eps1, gs[i]}));
  }

  double dscale = 0.0;
  for (double d : ds) dscale = std::max(dscale, std::abs(d));
  if (dscale < 1e-20)
    throw degenerate_configuration_error(
        "find_eps_general: discriminant vanishes on the whole interval");
  int tiny = 0;
  for (double d : ds) tiny += std::abs(d) < 1e-14 * dscale;
  if (tiny > grid_n / 2)
    throw degenerate_configuration_error(
        "find_eps_general: discriminant vanishes on the whole interval");

  auto pair_dist = [&](double g) { return detail::min_pair_distance(eps0, eps1, g); };

  std::vector<double> candidates;
  for (int i = 0; i + 1 < grid_n; ++i) {
    if (ds[i] == 0.0) {
      candidates.push_back(gs[i]);
      continue;
    }
    if (ds[i] * ds[i + 1] < 0.0) {
      double lo = gs[i], hi = gs[i + 1];
      double flo = ds[i];
      while (hi - lo > 1e-12) {
        const double mid = (lo + hi) / 2.0;
        const double fm = quartic_discriminant(quartic_coefficients({eps0, eps1, mid}));
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (flo * fm < 0.0)
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      candidates.push_back((lo + hi) / 2.0);
    } else if (i > 0 && std::abs(ds[i]) <= std::abs(ds[i - 1]) &&
               std::abs(ds[i]) <= std::abs(ds[i + 1]) && std::abs(ds[i]) < 1e-3 * dscale) {
      candidates.push_back(
          detail::golden_minimize(gs[i - 1], gs[i + 1], 1e-12, pair_dist));
    }
  }

  std::vector<EPRecord> out;
  for (double g0 : candidates) {
    // sharpen with the coalescence metric regardless of how we got here
    const double h = std::max(1e-4, (gamma_range.hi - gamma_range.lo) / double(grid_n));
    const double gbar = detail::golden_minimize(std::max(gamma_range.lo, g0 - h), g0 + h,
                                                1e-13, pair_dist);
    int ia = 0, ib = 0;
    if (detail::min_pair_distance(eps0, eps1, gbar, &ia, &ib) > 1e-5) continue;
    bool dup = false;
    for (const auto& r : out) dup = dup || std::abs(r.gamma_bar - gbar) < 1e-8;
    if (dup) continue;

    const auto ls = detail::lambdas_at(eps0, eps1, gbar);
    cplx lam_bar = (ls[ia] + ls[ib]) / 2.0;
    cplx e_bar = energy_of_lambda(lam_bar);
    if (std::abs(e_bar.imag()) < 1e-9) e_bar = {e_bar.real(), 0.0};
    if (std::abs(e_bar.real()) < 1e-9) e_bar = {0.0, e_bar.imag()};

    // how many pairs coalesce at this gamma (the pure-imaginary case has two)
    int pairs = 0;
    {
      std::vector<bool> used(ls.size(), false);
      for (size_t i = 0; i < ls.size(); ++i)
        for (size_t j = i + 1; j < ls.size(); ++j)
          if (!used[i] && !used[j] && std::abs(ls[i] - ls[j]) < 1e-4) {
            used[i] = used[j] = true;
            ++pairs;
          }
    }
    // with two simultaneous pairs (E and -E by symmetry) report the Re E >= 0 one
    if (pairs == 2 && (e_bar.real() < 0.0 || (e_bar.real() == 0.0 && e_bar.imag() < 0.0))) {
      e_bar = -e_bar;    // E -> -E maps lambda -> -lambda for the mirror pair
      lam_bar = -lam_bar;
    }

    // kind: reality of the coalescing pair's energies on either side
    auto pair_energies_real = [&](double g) {
      const auto l2 = detail::lambdas_at(eps0, eps1, g);
      // the two roots nearest lam_bar form the tracked pair
      std::vector<std::pair<double, cplx>> byd;
      for (const cplx& l : l2) byd.push_back({std::abs(l - lam_bar), l});
      std::sort(byd.begin(), byd.end(), [](auto& a, auto& b) { return a.first < b.first; });
      const cplx e1 = energy_of_lambda(byd[0].second), e2 = energy_of_lambda(byd[1].second);
      return std::abs(e1.imag()) < 1e-7 && std::abs(e2.imag()) < 1e-7;
    };
    EPKind kind = EPKind::EP2B;
    for (double off : {1e-3, 1e-4}) {
      const bool below = pair_energies_real(gbar - off);
      const bool above = pair_energies_real(gbar + off);
      if (below != above) {
        kind = EPKind::EP2A;
        break;
      }
      if (!below && !above) {
        kind = EPKind::EP2B;
        break;
      }
      // both sides real: tie, re-sample closer
    }

    // |E - E_bar| = c sqrt|G - G_bar| + O(|G - G_bar|): least-squares slope
    double num = 0.0, den = 0.0;
    for (int j = 1; j <= 10; ++j) {
      const double dg = j * 2e-4;
      for (double g : {gbar - dg, gbar + dg}) {
        if (g <= 0.0) continue;
        const auto l2 = detail::lambdas_at(eps0, eps1, g);
        double dev = 0.0;
        std::vector<std::pair<double, cplx>> byd;
        for (const cplx& l : l2) byd.push_back({std::abs(l - lam_bar), l});
        std::sort(byd.begin(), byd.end(), [](auto& a, auto& b) { return a.first < b.first; });
        dev = (std::abs(energy_of_lambda(byd[0].second) - e_bar) +
               std::abs(energy_of_lambda(byd[1].second) - e_bar)) /
              2.0;
        const double x = std::sqrt(dg);
        num += x * dev;
        den += x * x;
      }
    }
    const double coeff_mag = den > 0.0 ? num / den / std::sqrt(2.0 * gbar) : 0.0;
    // |E - E_bar| ~ coeff * sqrt|G^2 - G_bar^2| ~ coeff sqrt(2 G_bar) sqrt|G - G_bar|

    EPRecord rec;
    rec.gamma_bar = gbar;
    rec.e_bar = e_bar;
    rec.kind = kind;
    rec.puiseux_coeff = kind == EPKind::EP2A ? cplx(coeff_mag, 0.0) : cplx(0.0, coeff_mag);
    rec.branch_sign = kind == EPKind::EP2A ? (e_bar.real() >= 0.0 ? +1 : -1)
                                           : (e_bar.imag() >= 0.0 ? +1 : -1);
    rec.pair_count = pairs;
    out.push_back(rec);
  }

  std::sort(out.begin(), out.end(),
            [](const EPRecord& a, const EPRecord& b) { return a.gamma_bar < b.gamma_bar; });
  return out;
}

}  // namespace ptlattice
