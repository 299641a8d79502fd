#include "isingloop/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "isingloop/errors.hpp"
#include "isingloop/freefermion.hpp"
#include "isingloop/loopgeo.hpp"

namespace isingloop {

namespace {

// Runs body(i) for i in [0, n) on a few threads. Each index writes only its own slot.
template <class F>
void parallel_for(int n, F&& body) {
  const int workers = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 16);
  if (workers == 1 || n < 2) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (int i = next++; i < n && !failed; i = next++) {
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(workers, n); ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  return 0.5 * (upper + *std::max_element(v.begin(), v.begin() + mid));
}

struct WindingSample {
  int number = 0;
  bool degenerate = false;
  double min_radius = 0.0;
};

WindingSample winding_sample(const ModelParams& p) {
  try {
    const WindingResult w = winding_number(p);
    return {w.number, w.degenerate, w.min_radius};
  } catch (const DegenerateLoop&) {
    return {0, true, 0.0};
  }
}

}  // namespace

double SweepSpec::value(int i) const {
  if (i == steps - 1) return end;
  return start + (end - start) * static_cast<double>(i) / (steps - 1);
}

void validate(const SweepSpec& spec) {
  validate(spec.fixed);
  if (!std::isfinite(spec.start) || !std::isfinite(spec.end) || !(spec.start < spec.end)) {
    throw InvalidArgument("sweep: need finite start < end");
  }
  if (spec.steps < 3) throw InvalidArgument("sweep: need at least 3 steps");
  if (!(spec.quad_tol > 0.0)) throw InvalidArgument("sweep: quadrature tolerance must be positive");
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  validate(spec);
  std::vector<SweepRow> rows(spec.steps);
  parallel_for(spec.steps, [&](int i) {
    SweepRow& row = rows[i];
    row.alpha = spec.value(i);
    const ModelParams p = spec.params_at(row.alpha);
    row.eps_g = energy_density(p, spec.quad_tol).density;
    const WindingSample w = winding_sample(p);
    row.winding = w.number;
    row.degenerate = w.degenerate;
    row.min_radius = w.min_radius;
  });
  const double h = spec.step();
  for (int i = 1; i + 1 < spec.steps; ++i) {
    const double lo = rows[i - 1].eps_g, mid = rows[i].eps_g, hi = rows[i + 1].eps_g;
    rows[i].d1 = (hi - lo) / (2.0 * h);
    rows[i].d2 = (hi - 2.0 * mid + lo) / (h * h);
  }
  return rows;
}

TransitionReport detect_transitions(std::span<const SweepRow> rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 3) throw InvalidArgument("detect_transitions: need at least 3 rows");

  TransitionReport report;
  report.step = (rows.back().alpha - rows.front().alpha) / (n - 1);

  std::vector<double> magnitude(n, -1.0);
  std::vector<double> interior;
  for (int i = 0; i < n; ++i) {
    if (rows[i].d2) {
      magnitude[i] = std::abs(*rows[i].d2);
      interior.push_back(magnitude[i]);
    }
  }
  report.d2_median = median(interior);
  for (int i = 1; i + 1 < n; ++i) {
    if (magnitude[i] < 0.0) continue;
    // Plateaus count once, at their left end.
    int j = i;
    while (j + 1 < n && magnitude[j + 1] == magnitude[i]) ++j;
    if (magnitude[i] > magnitude[i - 1] && (j + 1 >= n || magnitude[i] > magnitude[j + 1])) {
      report.d2_peaks.push_back(rows[i].alpha);
    }
  }

  int last = -1;
  for (int i = 0; i < n; ++i) {
    if (rows[i].degenerate) continue;
    if (last >= 0 && rows[i].winding != rows[last].winding) {
      WindingChange c;
      c.lo_row = last;
      c.hi_row = i;
      c.alpha_lo = rows[last].alpha;
      c.alpha_hi = rows[i].alpha;
      c.from = rows[last].winding;
      c.to = rows[i].winding;
      const double slack = report.step * (1.0 + 1e-9);
      c.matched = std::any_of(report.d2_peaks.begin(), report.d2_peaks.end(), [&](double a) {
        return a >= c.alpha_lo - slack && a <= c.alpha_hi + slack;
      });
      // Smallest min_radius on [lo, hi], including the rows next to the interval.
      const int from = std::max(0, last - 1), to = std::min(n - 1, i + 1);
      int best = from;
      for (int j = from; j <= to; ++j) {
        if (rows[j].min_radius < rows[best].min_radius) best = j;
      }
      const bool left_ok = best == 0 || rows[best].min_radius <= rows[best - 1].min_radius;
      const bool right_ok = best == n - 1 || rows[best].min_radius <= rows[best + 1].min_radius;
      c.gap_closing = left_ok && right_ok && best >= last - 1 && best <= i + 1;
      report.winding_changes.push_back(c);
    }
    last = i;
  }
  return report;
}

std::vector<double> unmatched_peaks(std::span<const SweepRow> rows, const TransitionReport& report,
                                    double factor) {
  std::vector<double> out;
  const double slack = report.step * (1.0 + 1e-9);
  for (double a : report.d2_peaks) {
    const auto row = std::find_if(rows.begin(), rows.end(), [&](const SweepRow& r) { return r.alpha == a; });
    if (row == rows.end() || !row->d2 || std::abs(*row->d2) <= factor * report.d2_median) continue;
    const bool near_change =
        std::any_of(report.winding_changes.begin(), report.winding_changes.end(),
                    [&](const WindingChange& c) { return a >= c.alpha_lo - slack && a <= c.alpha_hi + slack; });
    if (!near_change) out.push_back(a);
  }
  return out;
}

CriticalPoint refine_transition(const SweepSpec& spec, const WindingChange& change, double bracket) {
  validate(spec);
  double lo = change.alpha_lo, hi = change.alpha_hi;
  double mid = 0.5 * (lo + hi);
  while (hi - lo > bracket) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const WindingSample w = winding_sample(spec.params_at(mid));
    if (w.degenerate) break;
    if (w.number == change.from) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
  }
  const ModelParams p = spec.params_at(mid);
  return {mid, min_radius(p), degeneracy_tolerance(p)};
}

PhaseDiagram phase_diagram(const SweepSpec& spec_x, const SweepSpec& spec_y) {
  validate(spec_x);
  validate(spec_y);
  if (spec_x.varied == spec_y.varied) {
    throw InvalidArgument("phase_diagram: both axes vary '" + std::string(to_string(spec_x.varied)) + "'");
  }
  PhaseDiagram out{spec_x, spec_y, {}};
  out.cells.resize(static_cast<std::size_t>(spec_x.steps) * spec_y.steps);
  parallel_for(static_cast<int>(out.cells.size()), [&](int c) {
    const int ix = c % spec_x.steps, iy = c / spec_x.steps;
    ModelParams p = with(spec_x.fixed, spec_x.varied, spec_x.value(ix));
    p = with(p, spec_y.varied, spec_y.value(iy));
    const WindingSample w = winding_sample(p);
    out.cells[c] = {w.number, w.degenerate, w.min_radius};
  });
  return out;
}

}  // namespace isingloop
