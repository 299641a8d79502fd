#include "isingloop/model.hpp"

#include <array>
#include <cmath>

#include "isingloop/errors.hpp"

namespace isingloop {

namespace {

// Curve-family presets. The limiting cases store the dominant coupling as 1;
// winding is scale invariant so nothing is lost against a -> inf or b -> inf.
//
//   cardioid     y + ix = e^{ik} + 0.5 e^{2ik}, cusp at (0, -0.5)
//   limacon      y + ix = e^{ik} + e^{2ik} + 0.1, origin inside the inner loop
//   hypocycloid  y + ix = e^{ik} + 0.5 e^{-2ik}, three-cusped (deltoid-like)
//   lissajous    x = 0.9 sin 2k, y = cos k + 0.3 cos 2k, figure eight
const std::vector<Preset>& preset_table() {
  static const std::vector<Preset> table = {
      {"tfim", {1, 0, 1, 0, 0}, 1, "circle",
       "transverse-field Ising chain sum X_jX_{j+1} + g Z_j; loop x^2 + (y+g)^2 = 1"},
      {"tfim-y", {1, 0, -1, 0, 0}, -1, "circle",
       "Ising coupling along y (gamma = -1); the circle is traversed the other way"},
      {"paramagnet", {1, 0, 1, 0, 2}, 0, "circle",
       "transverse-field Ising chain at g = 2; the circle misses the origin"},
      {"xy", {1, 0, 0.5, 0, 0}, 1, "ellipse", "anisotropic XY chain, gamma = 0.5"},
      {"double-loop", {0, 1, 0, 1, 0}, 2, "doubly traced circle",
       "pure three-site X_{j-1}Z_jX_{j+1} coupling (delta = 1)"},
      {"double-loop-reversed", {0, 1, 0, -1, 0}, -2, "doubly traced circle",
       "pure three-site Y_{j-1}Z_jY_{j+1} coupling (delta = -1)"},
      {"cardioid", {1, 0.5, 1, 1, 0}, 1, "cardioid", "a = 2b with gamma = delta = 1"},
      {"limacon", {1, 1, 1, 1, -0.1}, 2, "limacon",
       "limacon with inner loop; the origin sits inside the inner loop"},
      {"hypocycloid", {1, 0.5, 1, -1, 0}, 1, "hypocycloid",
       "three-cusped hypocycloid, e^{ik} + 0.5 e^{-2ik}"},
      {"lissajous", {1, 0.3, 0, 3, 0}, 1, "lissajous",
       "figure-eight Lissajous-like curve from gamma = 0, delta = 3"},
  };
  return table;
}

}  // namespace

std::string_view to_string(Coupling c) {
  switch (c) {
    case Coupling::a:
      return "a";
    case Coupling::b:
      return "b";
    case Coupling::gamma:
      return "gamma";
    case Coupling::delta:
      return "delta";
    case Coupling::g:
      return "g";
  }
  return "?";
}

Coupling coupling_from_string(std::string_view name) {
  for (Coupling c : {Coupling::a, Coupling::b, Coupling::gamma, Coupling::delta, Coupling::g}) {
    if (name == to_string(c)) return c;
  }
  throw InvalidArgument("unknown coupling '" + std::string(name) +
                        "' (expected one of a, b, gamma, delta, g)");
}

double get(const ModelParams& p, Coupling c) {
  switch (c) {
    case Coupling::a:
      return p.a;
    case Coupling::b:
      return p.b;
    case Coupling::gamma:
      return p.gamma;
    case Coupling::delta:
      return p.delta;
    case Coupling::g:
      return p.g;
  }
  return 0.0;
}

ModelParams with(ModelParams p, Coupling c, double value) {
  switch (c) {
    case Coupling::a:
      p.a = value;
      break;
    case Coupling::b:
      p.b = value;
      break;
    case Coupling::gamma:
      p.gamma = value;
      break;
    case Coupling::delta:
      p.delta = value;
      break;
    case Coupling::g:
      p.g = value;
      break;
  }
  return p;
}

void validate(const ModelParams& p) {
  for (Coupling c : {Coupling::a, Coupling::b, Coupling::gamma, Coupling::delta, Coupling::g}) {
    if (!std::isfinite(get(p, c))) {
      throw InvalidArgument("coupling " + std::string(to_string(c)) + " is not finite");
    }
  }
}

std::span<const Preset> presets() { return preset_table(); }

const Preset& preset_lookup(std::string_view name) {
  for (const Preset& p : preset_table()) {
    if (p.name == name) return p;
  }
  std::string names;
  for (const Preset& p : preset_table()) {
    if (!names.empty()) names += ", ";
    names += p.name;
  }
  throw InvalidArgument("unknown preset '" + std::string(name) + "'; available: " + names);
}

LimitCase limit_case(int lambda, int num_sites) {
  if (lambda < -2 || lambda > 2) {
    throw InvalidArgument("limit_case: lambda must lie in {-2,...,2}, got " +
                          std::to_string(lambda));
  }
  if (num_sites < 3) {
    throw InvalidArgument("limit_case: need at least 3 sites for the three-site terms");
  }
  const double w = 1.0 / num_sites;
  LimitCase out{lambda, num_sites, {}};
  out.terms.reserve(num_sites);
  for (int j = 0; j < num_sites; ++j) {
    switch (lambda) {
      case 0:
        out.terms.push_back(PauliString::on_sites(w, num_sites, {{j, Pauli::Z}}));
        break;
      case 1:
        out.terms.push_back(PauliString::on_sites(w, num_sites, {{j, Pauli::X}, {j + 1, Pauli::X}}));
        break;
      case -1:
        out.terms.push_back(PauliString::on_sites(w, num_sites, {{j, Pauli::Y}, {j + 1, Pauli::Y}}));
        break;
      case 2:
        out.terms.push_back(PauliString::on_sites(
            w, num_sites, {{j - 1, Pauli::X}, {j, Pauli::Z}, {j + 1, Pauli::X}}));
        break;
      case -2:
        out.terms.push_back(PauliString::on_sites(
            w, num_sites, {{j - 1, Pauli::Y}, {j, Pauli::Z}, {j + 1, Pauli::Y}}));
        break;
    }
  }
  return out;
}

ModelParams limit_params(int lambda) {
  switch (lambda) {
    case -2:
      return {0, 1, 0, -1, 0};
    case -1:
      return {1, 0, -1, 0, 0};
    case 0:
      return {0, 0, 0, 0, 1};
    case 1:
      return {1, 0, 1, 0, 0};
    case 2:
      return {0, 1, 0, 1, 0};
    default:
      throw InvalidArgument("limit_params: lambda must lie in {-2,...,2}");
  }
}

}  // namespace isingloop
