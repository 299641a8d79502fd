#include "isingloop/loopgeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "isingloop/errors.hpp"
#include "isingloop/quadrature.hpp"

namespace isingloop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanPoints = 2048;
constexpr int kMaxRefinedCandidates = 32;

// Map k into (-pi, pi].
double wrap_momentum(double k) {
  k = std::remainder(k, 2.0 * kPi);
  if (k <= -kPi) k += 2.0 * kPi;
  return k;
}

double radius_at(const ModelParams& p, double k) { return loop_point(p, k).radius(); }

RadiusMinimum golden_section(const ModelParams& p, double lo, double hi, RadiusMinimum best) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = radius_at(p, c);
  double fd = radius_at(p, d);
  while (hi - lo > 1e-12) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = radius_at(p, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = radius_at(p, d);
    }
    if (fc < best.radius) best = {c, fc};
    if (fd < best.radius) best = {d, fd};
  }
  return best;
}

// Gauss-Newton on r(k) = 0.
double polish_root(const ModelParams& p, double k) {
  for (int it = 0; it < 60; ++it) {
    const LoopPoint r = loop_point(p, k);
    const LoopPoint t = loop_tangent(p, k);
    const double speed2 = t.x * t.x + t.y * t.y;
    if (speed2 == 0.0) break;
    const double step = (r.x * t.x + r.y * t.y) / speed2;
    k -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return k;
}

double turn_angle(const LoopPoint& from, const LoopPoint& to) {
  return std::atan2(from.x * to.y - from.y * to.x, from.x * to.x + from.y * to.y);
}

struct AngleSweep {
  double angle = 0.0;
  int depth = 0;
};

// Swept angle on [k0, k1]; bisect until L*h <= rho/2 with rho the larger end
// radius. The arc then stays inside a disc about that end which excludes the
// origin, so the principal angle difference is the true one.
void sweep_interval(const ModelParams& p, double speed, double k0, const LoopPoint& r0, double k1,
                    const LoopPoint& r1, int depth, int max_depth, AngleSweep& acc) {
  const double rho = std::max(r0.radius(), r1.radius());
  if (speed * (k1 - k0) <= 0.5 * rho || depth >= max_depth) {
    acc.angle += turn_angle(r0, r1);
    acc.depth = std::max(acc.depth, depth);
    return;
  }
  const double km = 0.5 * (k0 + k1);
  const LoopPoint rm = loop_point(p, km);
  sweep_interval(p, speed, k0, r0, km, rm, depth + 1, max_depth, acc);
  sweep_interval(p, speed, km, rm, k1, r1, depth + 1, max_depth, acc);
}

}  // namespace

double LoopPoint::radius() const { return std::hypot(x, y); }

LoopPoint loop_point(const ModelParams& p, double k) {
  const double s1 = std::sin(k), c1 = std::cos(k);
  const double s2 = std::sin(2.0 * k), c2 = std::cos(2.0 * k);
  return {p.a * p.gamma * s1 + p.b * p.delta * s2, p.a * c1 + p.b * c2 - p.g};
}

LoopPoint loop_tangent(const ModelParams& p, double k) {
  const double s1 = std::sin(k), c1 = std::cos(k);
  const double s2 = std::sin(2.0 * k), c2 = std::cos(2.0 * k);
  return {p.a * p.gamma * c1 + 2.0 * p.b * p.delta * c2, -p.a * s1 - 2.0 * p.b * s2};
}

double loop_speed_bound(const ModelParams& p) {
  return std::hypot(std::abs(p.a * p.gamma) + 2.0 * std::abs(p.b * p.delta),
                    std::abs(p.a) + 2.0 * std::abs(p.b));
}

LoopSamples sample_loop(const ModelParams& p, int num_points) {
  validate(p);
  if (num_points < 8) {
    throw InvalidArgument("sample_loop: need at least 8 points, got " + std::to_string(num_points));
  }
  LoopSamples out;
  out.k_values.reserve(num_points);
  out.points.reserve(num_points);
  for (int i = 0; i < num_points; ++i) {
    // Symmetric construction keeps mirrored nodes exactly opposite.
    const double k = kPi * (2.0 * i - (num_points - 1)) / (num_points - 1);
    out.k_values.push_back(k);
    out.points.push_back(loop_point(p, k));
  }
  return out;
}

double loop_scale(const ModelParams& p) {
  validate(p);
  double scale = 0.0;
  for (int i = 0; i < kScanPoints; ++i) {
    scale = std::max(scale, radius_at(p, -kPi + 2.0 * kPi * i / kScanPoints));
  }
  return scale;
}

double degeneracy_tolerance(const ModelParams& p) {
  return kRelativeDegeneracyTolerance * loop_scale(p);
}

std::vector<RadiusMinimum> radius_minima(const ModelParams& p) {
  validate(p);
  const double h = 2.0 * kPi / kScanPoints;
  std::vector<double> values(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) values[i] = radius_at(p, -kPi + h * i);

  const double grid_min = *std::min_element(values.begin(), values.end());
  // A minimum between nodes lies within speed*h of a node value.
  const double margin = loop_speed_bound(p) * h;

  std::vector<int> candidates;
  for (int i = 0; i < kScanPoints; ++i) {
    const double prev = values[(i + kScanPoints - 1) % kScanPoints];
    const double next = values[(i + 1) % kScanPoints];
    if (values[i] <= prev && values[i] <= next && values[i] <= grid_min + margin) {
      candidates.push_back(i);
    }
  }
  if (static_cast<int>(candidates.size()) > kMaxRefinedCandidates) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int l, int r) { return values[l] < values[r]; });
    candidates.resize(kMaxRefinedCandidates);
  }

  std::vector<RadiusMinimum> minima;
  for (int i : candidates) {
    const double k = -kPi + h * i;
    RadiusMinimum m = golden_section(p, k - h, k + h, {k, values[i]});
    m.k = wrap_momentum(m.k);
    const bool duplicate = std::any_of(minima.begin(), minima.end(), [&](const RadiusMinimum& o) {
      return std::abs(wrap_momentum(o.k - m.k)) < 1e-9;
    });
    if (!duplicate) minima.push_back(m);
  }
  std::sort(minima.begin(), minima.end(),
            [](const RadiusMinimum& l, const RadiusMinimum& r) { return l.k < r.k; });
  return minima;
}

double min_radius(const ModelParams& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const RadiusMinimum& m : radius_minima(p)) best = std::min(best, m.radius);
  return best;
}

std::vector<double> origin_crossings(const ModelParams& p) {
  const double scale = loop_scale(p);
  const double tol = kRelativeDegeneracyTolerance * scale;
  std::vector<double> roots;
  if (scale == 0.0) return roots;
  for (const RadiusMinimum& m : radius_minima(p)) {
    if (m.radius > 1e-6 * scale) continue;
    double k = m.radius == 0.0 ? m.k : polish_root(p, m.k);
    if (radius_at(p, k) > radius_at(p, m.k)) k = m.k;
    if (radius_at(p, k) > tol) continue;
    k = wrap_momentum(k);
    const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](double o) {
      return std::abs(wrap_momentum(o - k)) < 1e-7;
    });
    if (!duplicate) roots.push_back(k);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

WindingResult winding_number(const ModelParams& p) {
  validate(p);
  const double scale = loop_scale(p);
  if (scale == 0.0) {
    throw DegenerateLoop("winding_number: the loop collapses to the origin (a = b = g = 0)");
  }

  WindingResult out;
  out.min_radius = min_radius(p);
  out.degenerate = out.min_radius < kRelativeDegeneracyTolerance * scale;

  constexpr int kBaseDepth = 8;
  constexpr int n = 1 << kBaseDepth;
  const double speed = loop_speed_bound(p);
  const double h = 2.0 * kPi / n;
  // A loop through the origin has no winding number, and near a tangential
  // touch the bisection would never certify, so only the coarse sum is kept.
  const int max_depth = out.degenerate ? 0 : 52;

  AngleSweep acc;
  const LoopPoint first = loop_point(p, -kPi);
  LoopPoint prev = first;
  for (int i = 1; i <= n; ++i) {
    // The last node reuses the first point so the curve closes exactly.
    const double k = -kPi + h * i;
    const LoopPoint cur = i == n ? first : loop_point(p, k);
    sweep_interval(p, speed, k - h, prev, k, cur, 0, max_depth, acc);
    prev = cur;
  }

  out.accumulated = -acc.angle / (2.0 * kPi);
  out.number = static_cast<int>(std::lround(out.accumulated));
  out.refinement_depth = kBaseDepth + acc.depth;
  return out;
}

double winding_integral(const ModelParams& p, int num_points) {
  validate(p);
  if (num_points < 8) throw InvalidArgument("winding_integral: need at least 8 points");
  double sum = 0.0;
  for (int i = 0; i < num_points; ++i) {
    const double k = -kPi + 2.0 * kPi * i / num_points;
    const LoopPoint r = loop_point(p, k);
    const LoopPoint t = loop_tangent(p, k);
    sum += (r.y * t.x - r.x * t.y) / (r.x * r.x + r.y * r.y);
  }
  return sum / num_points;
}

ParamIncrement operator*(double s, const ParamIncrement& d) {
  return {s * d.da, s * d.db, s * d.dgamma, s * d.ddelta, s * d.dg};
}

ParamIncrement operator+(const ParamIncrement& l, const ParamIncrement& r) {
  return {l.da + r.da, l.db + r.db, l.dgamma + r.dgamma, l.ddelta + r.ddelta, l.dg + r.dg};
}

ModelParams operator+(const ModelParams& p, const ParamIncrement& d) {
  return {p.a + d.da, p.b + d.db, p.gamma + d.dgamma, p.delta + d.ddelta, p.g + d.dg};
}

LoopPoint loop_variation(const ModelParams& p, const ParamIncrement& d, double k) {
  const double s1 = std::sin(k), c1 = std::cos(k);
  const double s2 = std::sin(2.0 * k), c2 = std::cos(2.0 * k);
  return {s1 * (p.gamma * d.da + p.a * d.dgamma) + s2 * (p.b * d.ddelta + p.delta * d.db),
          c1 * d.da + c2 * d.db - d.dg};
}

double first_variation(const ModelParams& p, const ParamIncrement& d, double quad_tol) {
  validate(p);
  const double scale = loop_scale(p);
  if (scale == 0.0 || min_radius(p) < kRelativeDegeneracyTolerance * scale) {
    throw DegenerateLoop(
        "first_variation: the loop passes through the origin, rhat(k) is undefined there");
  }
  const PeriodicQuadrature q = periodic_mean(
      [&](double k) {
        const LoopPoint r = loop_point(p, k);
        const LoopPoint dr = loop_variation(p, d, k);
        return -(r.x * dr.x + r.y * dr.y) / r.radius();
      },
      quad_tol);
  return q.mean;
}

}  // namespace isingloop
