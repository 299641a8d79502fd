#pragma once

#include <optional>
#include <span>
#include <vector>

#include "isingloop/model.hpp"

namespace isingloop {

/// One-parameter sweep: `varied` runs over `steps` evenly spaced values in
/// [start, end]; every other coupling is taken from `fixed`.
struct SweepSpec {
  Coupling varied = Coupling::g;
  double start = 0.0;
  double end = 1.0;
  int steps = 201;
  ModelParams fixed;
  double quad_tol = 1e-10;

  double step() const { return (end - start) / (steps - 1); }
  double value(int i) const;
  ModelParams params_at(double alpha) const { return with(fixed, varied, alpha); }
};

/// Throws InvalidArgument unless start < end, steps >= 3, quad_tol > 0 and all values finite.
void validate(const SweepSpec& spec);

struct SweepRow {
  double alpha = 0.0;
  double eps_g = 0.0;
  std::optional<double> d1;  // central differences; absent at the two ends
  std::optional<double> d2;
  int winding = 0;
  bool degenerate = false;  // loop touches the origin; `winding` is not meaningful
  double min_radius = 0.0;
};

/// Rows in ascending alpha. Rows are computed in parallel; the output does not
/// depend on the thread count.
std::vector<SweepRow> sweep(const SweepSpec& spec);

struct WindingChange {
  int lo_row = 0;  // last non-degenerate row before the change
  int hi_row = 0;  // first non-degenerate row after it
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  int from = 0;
  int to = 0;
  bool matched = false;     // a |d2| peak lies within one grid step
  bool gap_closing = false; // min_radius has a local minimum on the interval
};

struct TransitionReport {
  double step = 0.0;
  std::vector<WindingChange> winding_changes;
  std::vector<double> d2_peaks;  // alpha of every local maximum of |d2|
  double d2_median = 0.0;        // median |d2| over interior rows
};

/// Throws InvalidArgument for fewer than 3 rows.
TransitionReport detect_transitions(std::span<const SweepRow> rows);

/// |d2| peaks above `factor` x median that are more than one grid step away
/// from every winding change.
std::vector<double> unmatched_peaks(std::span<const SweepRow> rows, const TransitionReport& report,
                                    double factor = 5.0);

struct CriticalPoint {
  double alpha = 0.0;
  double min_radius = 0.0;
  double tolerance = 0.0;  // degeneracy tolerance of the loop at alpha
};

/// Bisects the winding change between change.alpha_lo and change.alpha_hi down
/// to a bracket of `bracket` and reports the loop's closest approach there.
CriticalPoint refine_transition(const SweepSpec& spec, const WindingChange& change,
                                double bracket = 1e-13);

struct PhaseCell {
  int winding = 0;
  bool degenerate = false;
  double min_radius = 0.0;
};

/// Winding numbers on the grid spec_x x spec_y. The couplings not varied by
/// either axis come from spec_x.fixed.
struct PhaseDiagram {
  SweepSpec x;
  SweepSpec y;
  std::vector<PhaseCell> cells;  // row-major, cells[iy * x.steps + ix]

  const PhaseCell& at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * x.steps + ix]; }
};

/// Throws InvalidArgument when both axes vary the same coupling.
PhaseDiagram phase_diagram(const SweepSpec& spec_x, const SweepSpec& spec_y);

}  // namespace isingloop
