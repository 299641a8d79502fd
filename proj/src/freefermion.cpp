#include "isingloop/freefermion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "isingloop/errors.hpp"
#include "isingloop/loopgeo.hpp"
#include "isingloop/quadrature.hpp"

namespace isingloop {

namespace {

void require_even_chain(int num_sites, const char* where) {
  if (num_sites < 2 || num_sites % 2 != 0) {
    throw InvalidArgument(std::string(where) + ": chain length must be even and >= 2, got " +
                          std::to_string(num_sites));
  }
}

}  // namespace

std::vector<double> MomentumGrid::positive() const {
  std::vector<double> out;
  for (double k : k_values) {
    if (k > 0.0) out.push_back(k);
  }
  return out;
}

MomentumGrid momentum_grid(int num_sites) {
  require_even_chain(num_sites, "momentum_grid");
  MomentumGrid grid{num_sites, {}};
  grid.k_values.reserve(num_sites);
  // m and N-1-m give k and 2pi - k; build the positive half and mirror it so
  // the pairs are exact negatives.
  std::vector<double> half;
  for (int m = 0; m < num_sites / 2; ++m) {
    half.push_back(std::numbers::pi * (2.0 * m + 1.0) / num_sites);
  }
  for (auto it = half.rbegin(); it != half.rend(); ++it) grid.k_values.push_back(-*it);
  grid.k_values.insert(grid.k_values.end(), half.begin(), half.end());
  return grid;
}

FiniteEnergy finite_ground_energy(const ModelParams& p, int num_sites) {
  validate(p);
  const MomentumGrid grid = momentum_grid(num_sites);
  double total = 0.0;
  for (double k : grid.positive()) total -= 2.0 * loop_point(p, k).radius();
  return {num_sites, total};
}

EnergyDensity energy_density(const ModelParams& p, double tol) {
  validate(p);
  if (!(tol > 0.0)) throw InvalidArgument("energy_density: tolerance must be positive");
  PeriodicQuadrature q = periodic_mean([&](double k) { return loop_point(p, k).radius(); }, tol);
  return {-q.mean, q.error_estimate, q.points, q.converged, std::move(q.changes)};
}

double finite_gap(const ModelParams& p, int num_sites) {
  validate(p);
  const MomentumGrid grid = momentum_grid(num_sites);
  double smallest = std::numeric_limits<double>::infinity();
  for (double k : grid.k_values) smallest = std::min(smallest, loop_point(p, k).radius());
  return 4.0 * smallest;
}

double thermodynamic_gap(const ModelParams& p) { return 4.0 * min_radius(p); }

}  // namespace isingloop
