#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "isingloop/errors.hpp"

namespace isingloop {

struct PeriodicQuadrature {
  double mean = 0.0;            // (1/2pi) * integral over one period
  double error_estimate = 0.0;  // |change| at the last doubling
  int points = 0;
  bool converged = false;
  std::vector<double> changes;  // |change| after every doubling, in order
};

inline constexpr int kMinQuadraturePoints = 64;
inline constexpr int kMaxQuadraturePoints = 1 << 24;

/// Trapezoid rule for a 2pi-periodic integrand on the nodes -pi + 2pi i/n,
/// doubling n (only the new midpoints are evaluated) until the mean moves by
/// less than `tol`. Spectral for analytic integrands, O(h^2) across kinks.
template <class F>
PeriodicQuadrature periodic_mean(F&& f, double tol, int min_points = kMinQuadraturePoints,
                                 int max_points = kMaxQuadraturePoints) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  constexpr double pi = std::numbers::pi;

  PeriodicQuadrature q;
  int n = min_points;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f(-pi + 2.0 * pi * i / n);
  double mean = sum / n;

  while (2 * n <= max_points) {
    double fresh = 0.0;
    const double h = 2.0 * pi / n;
    for (int i = 0; i < n; ++i) fresh += f(-pi + h * (i + 0.5));
    sum += fresh;
    n *= 2;
    const double next = sum / n;
    const double change = std::abs(next - mean);
    mean = next;
    q.changes.push_back(change);
    if (change < tol) {
      q.converged = true;
      break;
    }
  }
  q.mean = mean;
  q.points = n;
  q.error_estimate = q.changes.empty() ? 0.0 : q.changes.back();
  return q;
}

}  // namespace isingloop
