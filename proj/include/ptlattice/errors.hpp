#pragma once

#include <stdexcept>
#include <string>

namespace ptlattice {

// Base for everything this library throws.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument outside an operation's mathematical domain (lambda = 0, ...).
struct domain_error : error {
  using error::error;
};

// An iteration failed to meet its residual contract; carries the best residual seen.
struct numeric_error : error {
  double best_residual;
  numeric_error(const std::string& what, double residual)
      : error(what + " (best residual " + std::to_string(residual) + ")"),
        best_residual(residual) {}
};

// Scattering system singular: the requested k sits on a spectral singularity (RIC).
struct pole_error : error {
  double k;
  explicit pole_error(double k_)
      : error("scattering system singular at k = " + std::to_string(k_) +
              " (resonance in continuum)"),
        k(k_) {}
};

// sin k = 0: the two-exponential scattering ansatz degenerates.
struct band_edge_error : error {
  using error::error;
};

struct singular_configuration_error : error {
  using error::error;
};

struct degenerate_configuration_error : error {
  using error::error;
};

// gamma outside the asymptotic regime of the large-gamma expansions.
struct out_of_regime_error : error {
  using error::error;
};

struct precondition_error : error {
  using error::error;
};

// psi(0) + psi(0)* = 0: cannot normalize the symmetrized wave at the origin.
struct normalization_error : error {
  using error::error;
};

// cos k = 0: both Jost functions vanish and the superposition is undetermined.
struct underdetermined_error : error {
  using error::error;
};

// kappa <= 0: the PT-norm lattice sum diverges.
struct divergent_sum_error : error {
  using error::error;
};

}  // namespace ptlattice
