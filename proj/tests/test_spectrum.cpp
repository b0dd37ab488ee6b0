#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <cmath>
#include <random>

#include "ptlattice/spectrum.hpp"

using namespace ptlattice;

namespace test_spectrum {

TEST_CASE("poly_roots_random_quartics") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 5> c{u(rng), u(rng), u(rng), u(rng), u(rng)};
    if (std::abs(c[0]) < 0.05) continue;
    const auto roots = poly_roots(std::span<const double>(c));
    REQUIRE(roots.size() == 4);
    double scale = 0.0;
    for (double a : c) scale = std::max(scale, std::abs(a));
    cplx prod = 1.0, sum = 0.0;
    for (const cplx& r : roots) {
      std::vector<cplx> cc(c.begin(), c.end());
      CHECK(std::abs(poly_eval(std::span<const cplx>(cc), r)) < 1e-11 * scale);
      prod *= r;
      sum += r;
      // real coefficients: conjugate of each root is also a root
      double best = 1e9;
      for (const cplx& s : roots) best = std::min(best, std::abs(std::conj(r) - s));
      CHECK(best < 1e-8);
    }
    CHECK(std::abs(prod - c[4] / c[0]) < 1e-9 * (1.0 + std::abs(c[4] / c[0])));
    CHECK(std::abs(sum + c[1] / c[0]) < 1e-9 * (1.0 + std::abs(c[1] / c[0])));
  }
}

TEST_CASE("quartic_coefficients_values") {
  auto q = quartic_coefficients({0.0, 0.0, 1.0});
  CHECK(q.a4 == 1.0);
  CHECK(q.a3 == 0.0);
  CHECK(q.a2 == 0.0);
  CHECK(q.a1 == 0.0);
  CHECK(q.a0 == 1.0);
  CHECK_FALSE(q.degenerate());

  // eps0=0.05, eps1=-1.1, Gamma=0.2 (a2 = -(1 - 1.21 + 0.11 - 0.04) = 0.14)
  q = quartic_coefficients({0.05, -1.1, 0.2});
  CHECK(q.a4 == Catch::Approx(1.25));
  CHECK(q.a3 == Catch::Approx(0.0625));
  CHECK(q.a2 == Catch::Approx(0.14));
  CHECK(q.a1 == Catch::Approx(-2.15));
  CHECK(q.a0 == 1.0);

  // Gamma = eps1 = 0 degenerates to -l^2 + eps0 l + 1
  q = quartic_coefficients({1.0, 0.0, 0.0});
  CHECK(q.degenerate());
  CHECK(q.effective_degree() == 2);
  CHECK(q.a2 == -1.0);
  CHECK(q.a1 == 1.0);
}

TEST_CASE("spectrum_ric_point_gamma_1") {
  auto pts = solve_discrete_spectrum({0.0, 0.0, 1.0});
  REQUIRE(pts.size() == 4);
  // E = -+sqrt(2), each doubly degenerate; four distinct unit-modulus lambdas
  const double s2 = std::sqrt(2.0);
  CHECK(std::abs(pts[0].energy - cplx(-s2, 0.0)) < 1e-10);
  CHECK(std::abs(pts[1].energy - cplx(-s2, 0.0)) < 1e-10);
  CHECK(std::abs(pts[2].energy - cplx(s2, 0.0)) < 1e-10);
  CHECK(std::abs(pts[3].energy - cplx(s2, 0.0)) < 1e-10);
  for (const auto& pt : pts) {
    CHECK(std::abs(std::abs(pt.lambda) - 1.0) < 1e-10);
    CHECK(pt.cls == StateClass::RIC);
    CHECK(pt.sheet == Sheet::BranchCut);
  }
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j) CHECK(std::abs(pts[i].lambda - pts[j].lambda) > 0.5);
}

TEST_CASE("spectrum_virtual_bound_gamma_0p2") {
  auto pts = solve_discrete_spectrum({0.0, 0.0, 0.2});
  REQUIRE(pts.size() == 4);
  for (const auto& pt : pts) {
    CHECK(pt.lambda.imag() == 0.0);
    CHECK(std::abs(pt.lambda) > 1.0);
    CHECK(pt.cls == StateClass::VirtualBound);
    CHECK(pt.sheet == Sheet::Second);
  }
  // |lambda| = 4.786307 and 1.044635 (both signs)
  std::vector<double> mags;
  for (const auto& pt : pts) mags.push_back(std::abs(pt.lambda));
  std::sort(mags.begin(), mags.end());
  CHECK(mags[0] == Catch::Approx(1.0446472540).epsilon(1e-9));
  CHECK(mags[3] == Catch::Approx(4.7863046408).epsilon(1e-9));
}

TEST_CASE("spectrum_region_iv_gamma_10") {
  auto pts = solve_discrete_spectrum({0.0, 0.0, 10.0});
  REQUIRE(pts.size() == 4);
  for (const auto& pt : pts) {
    CHECK(pt.sheet == Sheet::First);
    CHECK(pt.cls == StateClass::ComplexLocalized);
    CHECK(std::abs(pt.energy.real()) < 1e-10);
  }
  std::vector<double> ims;
  for (const auto& pt : pts) ims.push_back(pt.energy.imag());
  std::sort(ims.begin(), ims.end());
  CHECK(ims[3] == Catch::Approx(9.7974273811).epsilon(1e-9));
  CHECK(ims[2] == Catch::Approx(0.0204135221).epsilon(1e-7));
}

TEST_CASE("spectrum_sorted_and_residuals") {
  for (ModelParams p : {ModelParams{0.3, -0.4, 0.9}, ModelParams{-0.2, 0.7, 1.7},
                        ModelParams{0.0, 0.2, 0.5}}) {
    const auto q = quartic_coefficients(p);
    auto pts = solve_discrete_spectrum(p);
    REQUIRE(pts.size() == 4);
    for (size_t i = 1; i < pts.size(); ++i) {
      const bool ordered =
          pts[i - 1].energy.real() < pts[i].energy.real() ||
          (pts[i - 1].energy.real() == pts[i].energy.real() &&
           pts[i - 1].energy.imag() <= pts[i].energy.imag());
      CHECK(ordered);
    }
    for (const auto& pt : pts) {
      CHECK(std::abs(q.eval(pt.lambda)) < 1e-11 * q.max_abs());
      CHECK(std::abs(pt.energy - energy_of_lambda(pt.lambda)) < 1e-12);
    }
  }
}

TEST_CASE("spectrum_conjugate_closure_and_vieta") {
  for (ModelParams p : {ModelParams{0.1, 0.3, 0.8}, ModelParams{-0.6, -0.2, 1.4}}) {
    auto pts = solve_discrete_spectrum(p);
    // conjugate closure
    for (const auto& a : pts) {
      double best = 1e9;
      for (const auto& b : pts) best = std::min(best, std::abs(std::conj(a.lambda) - b.lambda));
      CHECK(best < 1e-10);
    }
    // product of roots = a0/a4 = 1/(eps1^2 + Gamma^2)
    cplx prod = 1.0;
    for (const auto& pt : pts) prod *= pt.lambda;
    CHECK(std::abs(prod - 1.0 / (p.eps1 * p.eps1 + p.gamma * p.gamma)) < 1e-10);
  }
}

TEST_CASE("spectrum_even_in_gamma") {
  for (double g : {0.3, 0.9, 2.2}) {
    auto a = solve_discrete_spectrum({0.2, -0.4, g});
    auto b = solve_discrete_spectrum({0.2, -0.4, -g});
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].lambda - b[i].lambda) < 1e-10);
  }
}

TEST_CASE("closed_form_lambdas_match_solver") {
  for (double g : {0.1, 0.3, 0.41421356237, 0.7, 1.0, 2.0, 2.41421356237, 3.0, 5.0}) {
    const auto cf = closed_form_lambdas(g);
    auto pts = solve_discrete_spectrum({0.0, 0.0, g});
    for (const cplx& l : cf) {
      double best = 1e9;
      for (const auto& pt : pts) best = std::min(best, std::abs(pt.lambda - l));
      CHECK(best < 1e-10);
    }
  }
  CHECK_THROWS_AS(closed_form_lambdas(0.0), degenerate_configuration_error);
}

TEST_CASE("closed_form_specific_values") {
  // Gamma = 1: lambda_1 = e^{i pi/4}
  const auto cf = closed_form_lambdas(1.0);
  CHECK(std::abs(cf[0] - std::polar(1.0, pi / 4.0)) < 1e-14);
  // Gamma -> 0+: lambda_{2,3} -> +-1 (band edges); the closed form
  // loses ~sqrt(eps)/Gamma digits to cancellation in this limit
  const auto small = closed_form_lambdas(1e-5);
  CHECK(std::abs(small[2] - 1.0) < 1e-6);
  CHECK(std::abs(small[3] + 1.0) < 1e-6);
  // Gamma = sqrt2 - 1: lambda_1 = lambda_2 (EP2A coalescence)
  const auto ep = closed_form_lambdas(std::sqrt(2.0) - 1.0);
  CHECK(std::abs(ep[0] - ep[2]) < 1e-7);
}

TEST_CASE("degenerate_quartic_two_roots") {
  auto pts = solve_discrete_spectrum({1.0, 0.0, 0.0});
  REQUIRE(pts.size() == 2);
  // roots of -l^2 + l + 1: (1 -+ sqrt5)/2
  std::vector<double> ls;
  for (const auto& pt : pts) ls.push_back(pt.lambda.real());
  std::sort(ls.begin(), ls.end());
  CHECK(ls[0] == Catch::Approx((1.0 - std::sqrt(5.0)) / 2.0));
  CHECK(ls[1] == Catch::Approx((1.0 + std::sqrt(5.0)) / 2.0));
  // lambda = -0.618...: bound state above the upper edge, E = sqrt5 > 2
  const auto& bound = pts.back();
  CHECK(bound.lambda.real() == Catch::Approx((1.0 - std::sqrt(5.0)) / 2.0));
  CHECK(bound.cls == StateClass::Bound);
  CHECK(bound.energy.real() == Catch::Approx(std::sqrt(5.0)));
}

TEST_CASE("classification_examples") {
  CHECK(make_spectral_point(cplx(1.3, 0.0)).cls == StateClass::VirtualBound);
  CHECK(make_spectral_point(cplx(0.3, -0.4)).cls == StateClass::ComplexLocalized);
  CHECK(make_spectral_point(cplx(-0.618, 0.0)).cls == StateClass::Bound);
  CHECK(make_spectral_point(cplx(1.0, 0.0)).cls == StateClass::BandEdge);
  // second sheet, Im E < 0 is a resonance; its partner an anti-resonance
  const auto res = make_spectral_point(cplx(1.1952, 0.2), 1e-9);
  if (res.energy.imag() < 0.0)
    CHECK(res.cls == StateClass::Resonance);
  else
    CHECK(res.cls == StateClass::AntiResonance);
}

TEST_CASE("ric_gammas_values_and_flags") {
  auto r = ric_gammas(0.0);
  CHECK(r.gamma_plus == 1.0);
  CHECK(r.gamma_minus == 1.0);
  CHECK(r.minus_valid);

  r = ric_gammas(0.2);
  CHECK(r.gamma_plus == Catch::Approx(1.1338682186).epsilon(1e-9));
  CHECK(r.gamma_minus == Catch::Approx(0.8451880636).epsilon(1e-9));
  CHECK(r.minus_valid);

  r = ric_gammas(0.5);
  CHECK(r.gamma_minus == Catch::Approx(0.5));
  CHECK(r.minus_valid);

  r = ric_gammas(0.50001);
  CHECK(r.plus_valid);
  CHECK_FALSE(r.minus_valid);

  r = ric_gammas(0.7);  // radicand negative: |eps1| > sqrt(sqrt2 - 1)
  CHECK_FALSE(r.minus_valid);
  CHECK(std::isnan(r.gamma_minus));
}

TEST_CASE("ric_band_edge_condition_eps1_half") {
  // P(-1; eps1 = 1/2, Gamma = 1/2) = 0: the minus RIC sits exactly at the edge
  const auto q = quartic_coefficients({0.0, 0.5, 0.5});
  CHECK(std::abs(q.eval(cplx(-1.0, 0.0))) < 1e-12);
}

TEST_CASE("ric_gamma_points_carry_unit_circle_roots") {
  for (double e1 : {0.2, 0.45}) {
    const auto r = ric_gammas(e1);
    for (double g : {r.gamma_plus, r.gamma_minus}) {
      const auto rec = describe_ric({0.0, e1, g});
      CHECK(rec.count >= 1);
      for (size_t i = 0; i < rec.energies.size(); ++i)
        CHECK(std::abs(rec.energies[i] + 2.0 * std::cos(rec.wavenumbers[i])) < 1e-9);
    }
  }
}

TEST_CASE("ric_wavefunction_exact") {
  for (RICSign sign : {RICSign::MinusSqrt2, RICSign::PlusSqrt2}) {
    const PiecewiseWave w = ric_wavefunction(sign);
    const double e = sign == RICSign::MinusSqrt2 ? -std::sqrt(2.0) : std::sqrt(2.0);
    CHECK(schrodinger_residual({0.0, 0.0, 1.0}, e, w, -6, 6) < 1e-12);
    // psi(0) = 1/sqrt3 under the three-site normalization
    CHECK(std::abs(w(0) - cplx(1.0 / std::sqrt(3.0), 0.0)) < 1e-14);
    const double n3 = std::norm(w(-1)) + std::norm(w(0)) + std::norm(w(1));
    CHECK(n3 == Catch::Approx(1.0));
    // lead moduli are constant and split as 1/(2^{1/4} sqrt(sqrt2 -+ 1))/sqrt3;
    // the printed uniform 1/sqrt6 form does not solve the defect rows
    CHECK(std::abs(w(-1)) == Catch::Approx(1.3065629649 / std::sqrt(3.0)));
    CHECK(std::abs(w(1)) == Catch::Approx(0.5411961001 / std::sqrt(3.0)));
    CHECK(std::abs(std::abs(w(-5)) - std::abs(w(-1))) < 1e-14);
    CHECK(std::abs(std::abs(w(4)) - std::abs(w(1))) < 1e-14);
    // |psi(-1) psi(+1)| = psi0^2 / sqrt2
    CHECK(std::abs(w(-1) * w(1)) == Catch::Approx(1.0 / (3.0 * std::sqrt(2.0))));
  }
  // branch wavenumbers: k = pi/4 for E = -sqrt2, 3pi/4 for E = +sqrt2
  CHECK(ric_wavefunction(RICSign::MinusSqrt2).right[0].wavenumber.real() ==
        Catch::Approx(pi / 4.0));
  CHECK(ric_wavefunction(RICSign::PlusSqrt2).right[0].wavenumber.real() ==
        Catch::Approx(3.0 * pi / 4.0));
}

TEST_CASE("region_iv_localization_structure") {
  // E ~ +iG state sits on the gain site: psi(-1)/psi(0) ~ -iG, psi(1)/psi(0) ~ i/(2G);
  // E ~ +2i/G^2 states center on x = 0 with psi(-+1)/psi(0) ~ -+i/G
  const double g = 10.0;
  const ModelParams p{0.0, 0.0, g};
  for (const auto& pt : solve_discrete_spectrum(p)) {
    if (pt.energy.imag() < 0.0) continue;  // mirror states by conjugation
    const auto w = siegert_wave(p, pt.lambda);
    const cplx rm = w(-1) / w(0), rp = w(1) / w(0);
    if (pt.energy.imag() > 1.0) {
      CHECK(std::abs(rm - cplx(0.0, -g)) < 0.05 * g);
      CHECK(std::abs(rp - cplx(0.0, 1.0 / (2.0 * g))) < 0.05 / (2.0 * g));
      // tight localization: amplitude drops by ~1/G per site along the leads
      CHECK(std::abs(w(-4) / w(-3)) == Catch::Approx(std::abs(pt.lambda)).epsilon(1e-10));
      CHECK(std::abs(pt.lambda) < 2.0 / g);
    } else {
      CHECK(std::abs(rm - cplx(0.0, -1.0 / g)) < 0.15 / g);
      CHECK(std::abs(rp - cplx(0.0, 1.0 / g)) < 0.15 / g);
      // broad localization: |lambda| = e^{-1/G^2} up to higher orders
      CHECK(std::abs(pt.lambda) == Catch::Approx(std::exp(-1.0 / (g * g))).epsilon(1e-3));
    }
  }
}

TEST_CASE("region_iv_asymptotics_values") {
  const auto r = region_iv_asymptotics(10.0);
  CHECK(r.e14_approx == cplx(0.0, 9.8));
  CHECK(r.e23_approx == cplx(0.0, 0.02));
  CHECK(r.loc_length_14 == Catch::Approx(0.4342944819));
  CHECK(r.loc_length_23 == 50.0);
  CHECK(r.qbic_timescale == 25.0);
  CHECK_THROWS_AS(region_iv_asymptotics(1.5), out_of_regime_error);
}

TEST_CASE("sweep_region_narrative") {
  std::vector<double> grid;
  for (double g = 0.01; g <= 3.0 + 1e-12; g += 0.01) grid.push_back(g);
  const auto rows = sweep_spectrum({0.0, 0.0, 0.0}, SweepAxis::Gamma, grid);
  const double gA = std::sqrt(2.0) - 1.0;
  for (const auto& row : rows) {
    const double g = row.axis_value;
    if (g < gA - 0.005) {
      CHECK(std::abs(row.point.energy.imag()) < 1e-9);
    } else if (g > gA + 0.005 && g < 1.0 - 0.005) {
      CHECK(row.point.sheet == Sheet::Second);
    } else if (g > 1.0 + 0.005 && g < 1.0 + std::sqrt(2.0) - 0.005) {
      CHECK(row.point.sheet == Sheet::First);
      CHECK(std::abs(row.point.energy.imag()) > 1e-9);
    }
  }
}

TEST_CASE("sweep_branch_continuity") {
  std::vector<double> grid;
  for (double g = 0.5; g <= 2.0 + 1e-12; g += 0.005) grid.push_back(g);
  const auto rows = sweep_spectrum({0.0, 0.1, 0.0}, SweepAxis::Gamma, grid);
  // consecutive lambdas on one branch stay close (a swap would jump O(1))
  std::vector<cplx> prev(4);
  bool first = true;
  size_t i = 0;
  while (i + 3 < rows.size()) {
    if (!first)
      for (int b = 0; b < 4; ++b) CHECK(std::abs(rows[i + b].point.lambda - prev[b]) < 0.25);
    for (int b = 0; b < 4; ++b) prev[b] = rows[i + b].point.lambda;
    first = false;
    i += 4;
  }
}

TEST_CASE("sweep_eps1_0p6_minus_ric_becomes_bound_virtual_pair") {
  const auto r = ric_gammas(0.6);
  REQUIRE_FALSE(r.minus_valid);
  REQUIRE_FALSE(std::isnan(r.gamma_minus));
  // at Gamma_RIC^-(0.6) (still real) the former RIC is a bound/virtual pair on
  // the negative real axis, lambda ~ -e^{-+kappa}
  int neg_real = 0;
  for (const auto& pt : solve_discrete_spectrum({0.0, 0.6, r.gamma_minus}))
    if (pt.lambda.imag() == 0.0 && pt.lambda.real() < 0.0) ++neg_real;
  CHECK(neg_real == 2);
}

TEST_CASE("sweep_rejects_bad_grid") {
  std::vector<double> empty;
  CHECK_THROWS_AS(sweep_spectrum({}, SweepAxis::Gamma, empty), precondition_error);
  std::vector<double> unsorted{1.0, 0.5};
  CHECK_THROWS_AS(sweep_spectrum({}, SweepAxis::Gamma, unsorted), precondition_error);
}

}  // namespace test_spectrum
