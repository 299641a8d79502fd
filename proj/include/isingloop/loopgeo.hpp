#pragma once

#include <vector>

#include "isingloop/model.hpp"

namespace isingloop {

/// A point of the auxiliary-space loop r(k) = (x(k), y(k)).
struct LoopPoint {
  double x = 0.0;
  double y = 0.0;

  double radius() const;
};

/// x = a gamma sin k + b delta sin 2k,  y = a cos k + b cos 2k - g.
LoopPoint loop_point(const ModelParams& p, double k);

/// dr/dk.
LoopPoint loop_tangent(const ModelParams& p, double k);

/// Upper bound on |dr/dk| over all k.
double loop_speed_bound(const ModelParams& p);

struct LoopSamples {
  std::vector<double> k_values;
  std::vector<LoopPoint> points;
};

/// Uniform grid over [-pi, pi] including both ends; num_points >= 8.
LoopSamples sample_loop(const ModelParams& p, int num_points);

/// max_k |r(k)|.
double loop_scale(const ModelParams& p);

/// Radius below which the loop counts as passing through the origin (1e-9 * scale).
double degeneracy_tolerance(const ModelParams& p);

inline constexpr double kRelativeDegeneracyTolerance = 1e-9;

struct WindingResult {
  int number = 0;
  double accumulated = 0.0;  // swept angle / 2pi before rounding
  double min_radius = 0.0;
  bool degenerate = false;
  int refinement_depth = 0;
};

/// Winding number N = (1/2pi) \oint (y dx - x dy) / r^2; clockwise turns count
/// positive. Accumulates the signed angle between certified samples: an
/// interval [k, k+h] is accepted once h * loop_speed_bound is small against
/// the radius at its ends, so the arc cannot sweep around the origin unseen.
/// Throws DegenerateLoop for the zero loop (a = b = g = 0).
WindingResult winding_number(const ModelParams& p);

/// The same integral by periodic trapezoid quadrature on num_points nodes.
double winding_integral(const ModelParams& p, int num_points);

struct RadiusMinimum {
  double k = 0.0;
  double radius = 0.0;
};

/// Local minima of |r(k)|: dense scan (2048 nodes) then golden-section refinement.
std::vector<RadiusMinimum> radius_minima(const ModelParams& p);

double min_radius(const ModelParams& p);

/// All k in (-pi, pi] with r(k) = 0, ascending.
std::vector<double> origin_crossings(const ModelParams& p);

struct ParamIncrement {
  double da = 0.0;
  double db = 0.0;
  double dgamma = 0.0;
  double ddelta = 0.0;
  double dg = 0.0;
};

ParamIncrement operator*(double s, const ParamIncrement& d);
ParamIncrement operator+(const ParamIncrement& l, const ParamIncrement& r);
ModelParams operator+(const ModelParams& p, const ParamIncrement& d);

/// delta r(k) for the given coupling increments (linear in the increments).
LoopPoint loop_variation(const ModelParams& p, const ParamIncrement& d, double k);

/// First variation of the energy density, -(1/2pi) \int rhat(k) . delta r(k) dk.
/// Throws DegenerateLoop when the loop touches the origin (rhat undefined).
double first_variation(const ModelParams& p, const ParamIncrement& d, double quad_tol);

}  // namespace isingloop
