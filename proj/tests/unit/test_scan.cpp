#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "isingloop/errors.hpp"
#include "isingloop/io.hpp"
#include "isingloop/loopgeo.hpp"
#include "isingloop/scan.hpp"
#include "oracles.hpp"

using namespace isingloop;

namespace {

SweepSpec tfim_sweep(double start, double end, int steps) {
  SweepSpec s;
  s.varied = Coupling::g;
  s.start = start;
  s.end = end;
  s.steps = steps;
  s.fixed = {1, 0, 1, 0, 0};
  s.quad_tol = 1e-10;
  return s;
}

}  // namespace

TEST_CASE("sweep spec validation") {
  SweepSpec s = tfim_sweep(0, 1, 3);
  CHECK_NOTHROW(validate(s));
  s.steps = 2;
  CHECK_THROWS_AS(validate(s), InvalidArgument);
  s = tfim_sweep(1, 1, 5);
  CHECK_THROWS_AS(sweep(s), InvalidArgument);
  s = tfim_sweep(0, 1, 5);
  s.quad_tol = 0;
  CHECK_THROWS_AS(sweep(s), InvalidArgument);
}

TEST_CASE("tfim field sweep") {
  const SweepSpec spec = tfim_sweep(0, 2, 201);
  const auto rows = sweep(spec);
  REQUIRE(rows.size() == 201);

  CHECK(rows.front().alpha == 0.0);
  CHECK(rows.back().alpha == 2.0);
  CHECK(rows[100].alpha == 1.0);
  CHECK(std::abs(rows.front().eps_g + 1.0) < 1e-6);
  CHECK(std::abs(rows[100].eps_g + 4.0 / std::numbers::pi) < 1e-6);

  CHECK_FALSE(rows.front().d1);
  CHECK_FALSE(rows.back().d2);
  REQUIRE(rows[50].d1);
  REQUIRE(rows[50].d2);

  for (const SweepRow& r : rows) {
    CAPTURE(r.alpha);
    CHECK(std::abs(r.eps_g - oracle::tfim_energy_density(r.alpha)) < 1e-9);
    if (r.alpha < 1.0) {
      CHECK_FALSE(r.degenerate);
      CHECK(r.winding == 1);
    } else if (r.alpha > 1.0) {
      CHECK_FALSE(r.degenerate);
      CHECK(r.winding == 0);
    } else {
      CHECK(r.degenerate);
    }
  }

  // central differences against the closed form at an interior point
  const double h = spec.step();
  const double expect_d1 = (oracle::tfim_energy_density(0.51) - oracle::tfim_energy_density(0.49)) / (2 * h);
  CHECK(*rows[50].d1 == doctest::Approx(expect_d1).epsilon(1e-6));

  // max |d2| sits next to g = 1
  const auto peak = std::max_element(rows.begin() + 1, rows.end() - 1, [](const SweepRow& l, const SweepRow& r) {
    return std::abs(*l.d2) < std::abs(*r.d2);
  });
  CHECK(std::abs(peak->alpha - 1.0) <= h * (1 + 1e-9));

  const TransitionReport report = detect_transitions(rows);
  REQUIRE(report.winding_changes.size() == 1);
  const WindingChange& c = report.winding_changes[0];
  CHECK(c.from == 1);
  CHECK(c.to == 0);
  CHECK(c.alpha_lo == doctest::Approx(1 - h));
  CHECK(c.alpha_hi == doctest::Approx(1 + h));
  CHECK(c.matched);
  CHECK(c.gap_closing);
  CHECK(unmatched_peaks(rows, report).empty());

  const CriticalPoint cp = refine_transition(spec, c);
  CHECK(std::abs(cp.alpha - 1.0) < 1e-12);
  CHECK(cp.min_radius < 10 * cp.tolerance);
}

TEST_CASE("constant-winding sweep gives an empty report") {
  const auto rows = sweep(tfim_sweep(0, 0.5, 51));
  const TransitionReport report = detect_transitions(rows);
  CHECK(report.winding_changes.empty());
  CHECK(unmatched_peaks(rows, report).empty());
}

TEST_CASE("double-loop anisotropy sweep flips -2 to +2 through a degenerate segment") {
  SweepSpec spec;
  spec.varied = Coupling::delta;
  spec.start = -1;
  spec.end = 1;
  spec.steps = 41;
  spec.fixed = {0, 1, 0, 0, 0};
  const auto rows = sweep(spec);
  CHECK(rows.front().winding == -2);
  CHECK(rows.back().winding == 2);
  CHECK(rows[20].alpha == 0.0);
  CHECK(rows[20].degenerate);
  int degenerate = 0;
  for (const SweepRow& r : rows) degenerate += r.degenerate;
  CHECK(degenerate == 1);

  const TransitionReport report = detect_transitions(rows);
  REQUIRE(report.winding_changes.size() == 1);
  CHECK(report.winding_changes[0].from == -2);
  CHECK(report.winding_changes[0].to == 2);
  CHECK(report.winding_changes[0].alpha_lo < 0.0);
  CHECK(report.winding_changes[0].alpha_hi > 0.0);
  CHECK(report.winding_changes[0].gap_closing);
}

TEST_CASE("coincidence of winding changes and d2 peaks on assorted sweeps") {
  struct Case {
    Coupling varied;
    double start, end;
    ModelParams fixed;
  };
  const Case cases[] = {
      {Coupling::g, -2.5, 2.5, {1, 0, 0.6, 0, 0}},      // XY chain: changes at g = +-1
      {Coupling::g, -3.0, 3.0, {1, 0.5, 1, 1, 0}},      // cardioid family
      {Coupling::b, 0.0, 2.0, {1, 0, 1, 1, 0.3}},       // three-site coupling switched on
  };
  for (const Case& k : cases) {
    SweepSpec spec;
    spec.varied = k.varied;
    spec.start = k.start;
    spec.end = k.end;
    spec.steps = 161;
    spec.fixed = k.fixed;
    const auto rows = sweep(spec);
    const TransitionReport report = detect_transitions(rows);
    CHECK_FALSE(report.winding_changes.empty());
    for (const WindingChange& c : report.winding_changes) {
      CAPTURE(c.alpha_lo);
      CHECK(c.matched);
      CHECK(c.gap_closing);
      const CriticalPoint cp = refine_transition(spec, c);
      CHECK(cp.min_radius < 10 * cp.tolerance);
    }
    CHECK(unmatched_peaks(rows, report).empty());
  }
}

TEST_CASE("detect_transitions needs three rows") {
  std::vector<SweepRow> rows(2);
  CHECK_THROWS_AS(detect_transitions(rows), InvalidArgument);
}

TEST_CASE("sweeps are bit-identical across runs") {
  SweepSpec spec = tfim_sweep(0.3, 1.7, 57);
  spec.fixed = {1, 0.4, 0.7, -0.3, 0};
  std::ostringstream a, b;
  write_sweep_csv(sweep(spec), a);
  write_sweep_csv(sweep(spec), b);
  CHECK(a.str() == b.str());
}

TEST_CASE("phase diagram in the (g, gamma) plane") {
  SweepSpec gx;
  gx.varied = Coupling::g;
  gx.start = -2;
  gx.end = 2;
  gx.steps = 41;
  gx.fixed = {1, 0, 0, 0, 0};
  SweepSpec gy = gx;
  gy.varied = Coupling::gamma;
  gy.start = -1.5;
  gy.end = 1.5;
  gy.steps = 31;

  const PhaseDiagram d = phase_diagram(gx, gy);
  REQUIRE(d.cells.size() == 41u * 31u);
  for (int iy = 0; iy < 31; ++iy) {
    for (int ix = 0; ix < 41; ++ix) {
      const double g = gx.value(ix), gamma = gy.value(iy);
      const PhaseCell& c = d.at(ix, iy);
      // gamma = 0 flattens the loop onto a segment that holds the origin for |g| <= 1
      if (std::abs(std::abs(g) - 1) < 1e-12 || (std::abs(gamma) < 1e-12 && std::abs(g) < 1)) {
        CHECK(c.degenerate);
        continue;
      }
      CAPTURE(g);
      CAPTURE(gamma);
      CHECK_FALSE(c.degenerate);
      const int expect = std::abs(g) < 1 ? (gamma > 0 ? 1 : -1) : 0;
      CHECK(c.winding == expect);
    }
  }

  CHECK_THROWS_AS(phase_diagram(gx, gx), InvalidArgument);
}

TEST_CASE("phase diagram in the (g, b) plane and boundary radii") {
  SweepSpec gx;
  gx.varied = Coupling::g;
  gx.start = -3;
  gx.end = 3;
  gx.steps = 49;
  gx.fixed = {1, 0, 1, 1, 0};
  SweepSpec by = gx;
  by.varied = Coupling::b;
  by.start = 0;
  by.end = 2;
  by.steps = 33;
  const PhaseDiagram d = phase_diagram(gx, by);

  std::set<int> seen;
  std::vector<double> interior, boundary;
  for (int iy = 0; iy < by.steps; ++iy) {
    for (int ix = 0; ix < gx.steps; ++ix) {
      const PhaseCell& c = d.at(ix, iy);
      if (!c.degenerate) seen.insert(c.winding);
      // independent check through the root count where the loop is well clear of the origin
      const ModelParams p = with(with(gx.fixed, Coupling::g, gx.value(ix)), Coupling::b, by.value(iy));
      const oracle::RootCount rc = oracle::winding_by_roots(p);
      if (rc.closest_to_circle > 1e-6 && !c.degenerate) CHECK(c.winding == rc.winding);

      bool edge = false;
      for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const int jx = ix + dx, jy = iy + dy;
        if (jx < 0 || jy < 0 || jx >= gx.steps || jy >= by.steps) continue;
        const PhaseCell& o = d.at(jx, jy);
        if (o.degenerate != c.degenerate || o.winding != c.winding) edge = true;
      }
      (edge ? boundary : interior).push_back(c.min_radius);
    }
  }
  for (int w : seen) CHECK((w == 0 || w == 1 || w == 2));
  CHECK(seen.count(0));
  CHECK(seen.count(1));
  CHECK(seen.count(2));

  REQUIRE_FALSE(boundary.empty());
  std::sort(interior.begin(), interior.end());
  const double interior_median = interior[interior.size() / 2];
  for (double r : boundary) CHECK(r < interior_median);
}
