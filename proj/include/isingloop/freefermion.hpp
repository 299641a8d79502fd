#pragma once

#include <vector>

#include "isingloop/model.hpp"

namespace isingloop {

/// Antiperiodic momenta of the even-parity sector, k = 2pi(m + 1/2)/N mapped into (-pi, pi).
struct MomentumGrid {
  int num_sites = 0;
  std::vector<double> k_values;  // ascending, exact +-k pairs

  std::vector<double> positive() const;
};

MomentumGrid momentum_grid(int num_sites);

/// Ground-state energy of the even-parity sector at finite N:
/// every (k, -k) pseudo spin anti-aligns with its field, giving -2|r(k)| per pair.
struct FiniteEnergy {
  int num_sites = 0;
  double total = 0.0;

  double per_site() const { return total / num_sites; }
};

FiniteEnergy finite_ground_energy(const ModelParams& p, int num_sites);

/// Thermodynamic-limit energy density -(1/2pi) \int |r(k)| dk.
struct EnergyDensity {
  double density = 0.0;
  double error_estimate = 0.0;
  int points = 0;
  bool converged = false;
  std::vector<double> changes;  // doubling history
};

EnergyDensity energy_density(const ModelParams& p, double tol);

/// Smallest pseudo-spin flip energy 4 min_k |r(k)| over the momenta of an N-site chain.
double finite_gap(const ModelParams& p, int num_sites);

/// 4 * min_radius; zero exactly when the loop passes through the origin.
double thermodynamic_gap(const ModelParams& p);

}  // namespace isingloop
