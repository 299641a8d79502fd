#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "isingloop/edoracle.hpp"
#include "isingloop/loopgeo.hpp"
#include "isingloop/model.hpp"
#include "isingloop/scan.hpp"

namespace isingloop {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Strict parse of a whole field; throws InvalidArgument on trailing garbage.
double parse_double(const std::string& text);

Json to_json(const ModelParams& p);
ModelParams params_from_json(const Json& j);

/// Array of {name, a, b, gamma, delta, g, expected_winding?, family_label}.
Json presets_to_json(std::span<const Preset> table);
std::vector<Preset> presets_from_json(const Json& j);

/// {params, N?, value, error_estimate}
Json energy_record(const ModelParams& p, std::optional<int> num_sites, double value,
                   double error_estimate);

Json winding_to_json(const WindingResult& w);

/// {params, N, residual, parity, degeneracy_gap, ...}
Json cross_validation_to_json(const CrossValidation& cv);

Json transitions_to_json(const TransitionReport& report);
Json sweep_metadata(const SweepSpec& spec);

/// Matrix rows indexed by lambda, columns by rho, both -2..2.
Json order_matrix_to_json(const OrderParameterMatrix& m);

/// Columns k, x, y.
void write_loop_csv(const LoopSamples& samples, std::ostream& out);
LoopSamples read_loop_csv(std::istream& in);

/// Columns alpha, eps_g, d1, d2, winding, min_radius. Missing derivatives are
/// empty fields; a degenerate winding is written as `degenerate`.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

/// One line per y value (ascending), one column per x value. Degenerate cells are `degenerate`.
void write_phase_csv(const PhaseDiagram& d, std::ostream& out);

/// Axis names, ranges and grid values for the CSV matrix.
Json phase_sidecar(const PhaseDiagram& d);

}  // namespace isingloop
