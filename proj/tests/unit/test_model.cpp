#include <doctest.h>

#include <fstream>
#include <set>

#include "isingloop/errors.hpp"
#include "isingloop/io.hpp"
#include "isingloop/loopgeo.hpp"
#include "isingloop/model.hpp"
#include "oracles.hpp"

using namespace isingloop;

TEST_CASE("required presets carry the documented couplings") {
  CHECK(preset_lookup("tfim").params == ModelParams{1, 0, 1, 0, 0});
  const Preset& dl = preset_lookup("double-loop");
  CHECK(dl.params == ModelParams{0, 1, 0, 1, 0});
  REQUIRE(dl.expected_winding);
  CHECK(*dl.expected_winding == 2);

  const Preset& xy = preset_lookup("xy");
  CHECK(xy.params.a == 1.0);
  CHECK(xy.params.gamma > 0.0);
  CHECK(xy.params.gamma < 1.0);
  CHECK(xy.family_label == "ellipse");

  for (const char* name : {"cardioid", "limacon", "lissajous", "hypocycloid"}) {
    CHECK_NOTHROW(preset_lookup(name));
  }
}

TEST_CASE("preset names are unique") {
  std::set<std::string> names;
  for (const Preset& p : presets()) CHECK(names.insert(p.name).second);
}

TEST_CASE("unknown preset error lists the table") {
  try {
    preset_lookup("no-such-thing");
    FAIL("expected an exception");
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    for (const Preset& p : presets()) CHECK(msg.find(p.name) != std::string::npos);
  }
}

TEST_CASE("every expected winding agrees with the library and the root-count oracle") {
  for (const Preset& p : presets()) {
    if (!p.expected_winding) continue;
    CAPTURE(p.name);
    const WindingResult w = winding_number(p.params);
    CHECK_FALSE(w.degenerate);
    CHECK(w.number == *p.expected_winding);
    const oracle::RootCount rc = oracle::winding_by_roots(p.params);
    CHECK(rc.closest_to_circle > 1e-6);
    CHECK(rc.winding == *p.expected_winding);
  }
}

TEST_CASE("preset loops close") {
  for (const Preset& p : presets()) {
    const LoopSamples s = sample_loop(p.params, 101);
    CHECK(std::abs(s.points.front().x - s.points.back().x) < 1e-12);
    CHECK(std::abs(s.points.front().y - s.points.back().y) < 1e-12);
  }
}

TEST_CASE("shipped preset file matches the built-in table") {
  std::ifstream in(ISINGLOOP_PRESETS_JSON);
  REQUIRE(in);
  const Json j = Json::parse(in);
  const std::vector<Preset> shipped = presets_from_json(j);
  const auto table = presets();
  REQUIRE(shipped.size() == table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(shipped[i].name == table[i].name);
    CHECK(shipped[i].params == table[i].params);
    CHECK(shipped[i].expected_winding == table[i].expected_winding);
    CHECK(shipped[i].family_label == table[i].family_label);
  }
}

TEST_CASE("couplings by name") {
  for (Coupling c : {Coupling::a, Coupling::b, Coupling::gamma, Coupling::delta, Coupling::g}) {
    CHECK(coupling_from_string(to_string(c)) == c);
  }
  CHECK_THROWS_AS(coupling_from_string("lambda"), InvalidArgument);
  const ModelParams p{1, 2, 3, 4, 5};
  CHECK(get(p, Coupling::delta) == 4);
  CHECK(with(p, Coupling::g, -1) == ModelParams{1, 2, 3, 4, -1});
}

TEST_CASE("validate rejects non-finite couplings") {
  CHECK_NOTHROW(validate({1e300, -1e300, 0, 0, 0}));
  CHECK_THROWS_AS(validate({std::nan(""), 0, 0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(validate({0, 0, 0, 0, INFINITY}), InvalidArgument);
}

TEST_CASE("limit cases") {
  SUBCASE("h_0 is the normalized field") {
    const LimitCase h = limit_case(0, 6);
    REQUIRE(h.terms.size() == 6);
    for (int j = 0; j < 6; ++j) {
      CHECK(h.terms[j].coefficient() == doctest::Approx(1.0 / 6));
      std::string expect(6, 'I');
      expect[j] = 'Z';
      CHECK(h.terms[j].label() == expect);
    }
  }
  SUBCASE("h_+2 wraps around the ring") {
    const LimitCase h = limit_case(2, 4);
    REQUIRE(h.terms.size() == 4);
    CHECK(h.terms[0].label() == "ZXIX");
    CHECK(h.terms[1].label() == "XZXI");
    CHECK(h.terms[3].label() == "XIXZ");
  }
  SUBCASE("h_-1 and h_-2 use Y") {
    CHECK(limit_case(-1, 4).terms[0].label() == "YYII");
    CHECK(limit_case(-2, 4).terms[1].label() == "YZYI");
    CHECK(limit_case(1, 4).terms[3].label() == "XIIX");
  }
  SUBCASE("every term is Hermitian") {
    for (int l = -2; l <= 2; ++l) {
      for (const PauliString& s : limit_case(l, 8).terms) {
        const oracle::Matrix m = oracle::kron_string(s);
        const std::size_t n = 256;
        double worst = 0.0;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) worst = std::max(worst, std::abs(m[r * n + c] - std::conj(m[c * n + r])));
        CHECK(worst == 0.0);
      }
    }
  }
  CHECK_THROWS_AS(limit_case(3, 4), InvalidArgument);
  CHECK_THROWS_AS(limit_case(-3, 4), InvalidArgument);
}

TEST_CASE("limit parameters realize the five winding numbers") {
  for (int l = -2; l <= 2; ++l) {
    const WindingResult w = winding_number(limit_params(l));
    CHECK_FALSE(w.degenerate);
    // h_0 = +Z: the field loop sits at y = -1 and does not wind.
    CHECK(w.number == l);
  }
}
