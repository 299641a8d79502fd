#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isingloop/pauli.hpp"

namespace isingloop {

/// Couplings of the extended Ising chain
///   H = sum_j [ a((1+gamma)/2 XX + (1-gamma)/2 YY) + g Z
///             + b Z_j ((1+delta)/2 X_{j-1}X_{j+1} + (1-delta)/2 Y_{j-1}Y_{j+1}) ].
struct ModelParams {
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double g = 0.0;

  bool operator==(const ModelParams&) const = default;
};

enum class Coupling { a, b, gamma, delta, g };

std::string_view to_string(Coupling c);
Coupling coupling_from_string(std::string_view name);

double get(const ModelParams& p, Coupling c);
ModelParams with(ModelParams p, Coupling c, double value);

/// Throws InvalidArgument unless all five couplings are finite.
void validate(const ModelParams& p);

struct Preset {
  std::string name;
  ModelParams params;
  std::optional<int> expected_winding;
  std::string family_label;
  std::string description;
};

std::span<const Preset> presets();

/// Throws InvalidArgument listing the available names when `name` is unknown.
const Preset& preset_lookup(std::string_view name);

/// One of the five single-term Hamiltonians h_lambda (normalized by 1/N).
struct LimitCase {
  int lambda = 0;
  int num_sites = 0;
  std::vector<PauliString> terms;
};

/// h_0 = N^-1 sum Z_j, h_+-1 = N^-1 sum X_jX_{j+1} / Y_jY_{j+1},
/// h_+-2 = N^-1 sum X_{j-1}Z_jX_{j+1} / Y_{j-1}Z_jY_{j+1}; periodic chain.
LimitCase limit_case(int lambda, int num_sites);

/// The coupling set whose loop is the h_lambda limit (dominant coupling 1, rest 0).
ModelParams limit_params(int lambda);

}  // namespace isingloop
