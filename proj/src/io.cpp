#include "isingloop/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "isingloop/errors.hpp"

namespace isingloop {

namespace {

constexpr const char* kDegenerateMarker = "degenerate";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

void expect_header(std::istream& in, const std::string& header, const char* where) {
  std::string line;
  if (!next_data_line(in, line) || line != header) {
    throw InvalidArgument(std::string(where) + ": expected header '" + header + "'");
  }
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::string winding_field(int winding, bool degenerate) {
  return degenerate ? kDegenerateMarker : std::to_string(winding);
}

Json axis_json(const SweepSpec& s) {
  Json values = Json::array();
  for (int i = 0; i < s.steps; ++i) values.push_back(s.value(i));
  return {{"parameter", std::string(to_string(s.varied))},
          {"start", s.start},
          {"end", s.end},
          {"steps", s.steps},
          {"step", s.step()},
          {"values", values}};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  return v;
}

Json to_json(const ModelParams& p) {
  return {{"a", p.a}, {"b", p.b}, {"gamma", p.gamma}, {"delta", p.delta}, {"g", p.g}};
}

ModelParams params_from_json(const Json& j) {
  const auto field = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
      throw InvalidArgument(std::string("parameter record needs a numeric '") + key + "'");
    }
    return j.at(key).get<double>();
  };
  ModelParams p{field("a"), field("b"), field("gamma"), field("delta"), field("g")};
  validate(p);
  return p;
}

Json presets_to_json(std::span<const Preset> table) {
  Json out = Json::array();
  for (const Preset& pr : table) {
    Json e = {{"name", pr.name}};
    e.update(to_json(pr.params));
    if (pr.expected_winding) e["expected_winding"] = *pr.expected_winding;
    e["family_label"] = pr.family_label;
    if (!pr.description.empty()) e["description"] = pr.description;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Preset> presets_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("preset table must be a JSON array");
  std::vector<Preset> out;
  for (const Json& e : j) {
    Preset pr;
    pr.name = e.at("name").get<std::string>();
    pr.params = params_from_json(e);
    if (e.contains("expected_winding")) pr.expected_winding = e.at("expected_winding").get<int>();
    pr.family_label = e.at("family_label").get<std::string>();
    pr.description = e.value("description", "");
    out.push_back(std::move(pr));
  }
  return out;
}

Json energy_record(const ModelParams& p, std::optional<int> num_sites, double value,
                   double error_estimate) {
  Json out = {{"params", to_json(p)}};
  if (num_sites) out["N"] = *num_sites;
  out["value"] = value;
  out["error_estimate"] = error_estimate;
  return out;
}

Json winding_to_json(const WindingResult& w) {
  return {{"winding", w.number},
          {"min_radius", w.min_radius},
          {"degenerate", w.degenerate},
          {"refinement_depth", w.refinement_depth}};
}

Json cross_validation_to_json(const CrossValidation& cv) {
  return {{"params", to_json(cv.params)},
          {"N", cv.num_sites},
          {"residual", cv.residual},
          {"parity", cv.parity},
          {"degeneracy_gap", cv.degeneracy_gap},
          {"even_sector_energy", cv.even_sector_energy},
          {"free_fermion_energy", cv.free_fermion_energy},
          {"ground_energy", cv.ground_energy},
          {"passed", cv.passed}};
}

Json transitions_to_json(const TransitionReport& report) {
  Json changes = Json::array();
  for (const WindingChange& c : report.winding_changes) {
    changes.push_back({{"alpha_lo", c.alpha_lo},
                       {"alpha_hi", c.alpha_hi},
                       {"from", c.from},
                       {"to", c.to},
                       {"matched", c.matched},
                       {"gap_closing", c.gap_closing}});
  }
  return {{"step", report.step},
          {"winding_changes", changes},
          {"d2_peaks", report.d2_peaks},
          {"d2_median", report.d2_median}};
}

Json sweep_metadata(const SweepSpec& spec) {
  return {{"parameter", std::string(to_string(spec.varied))},
          {"start", spec.start},
          {"end", spec.end},
          {"steps", spec.steps},
          {"step", spec.step()},
          {"fixed", to_json(spec.fixed)},
          {"quad_tol", spec.quad_tol},
          {"derivatives", "central differences with the grid spacing as step"}};
}

Json order_matrix_to_json(const OrderParameterMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.entries) rows.push_back(row);
  return {{"N", m.num_sites}, {"lambda", {-2, -1, 0, 1, 2}}, {"rho", {-2, -1, 0, 1, 2}},
          {"entries", rows}};
}

void write_loop_csv(const LoopSamples& samples, std::ostream& out) {
  out << "k,x,y\n";
  for (std::size_t i = 0; i < samples.points.size(); ++i) {
    out << format_double(samples.k_values[i]) << ',' << format_double(samples.points[i].x) << ','
        << format_double(samples.points[i].y) << '\n';
  }
}

LoopSamples read_loop_csv(std::istream& in) {
  expect_header(in, "k,x,y", "read_loop_csv");
  LoopSamples out;
  std::string line;
  while (next_data_line(in, line)) {
    const auto f = split_csv_line(line);
    if (f.size() != 3) throw InvalidArgument("read_loop_csv: expected 3 fields in '" + line + "'");
    out.k_values.push_back(parse_double(f[0]));
    out.points.push_back({parse_double(f[1]), parse_double(f[2])});
  }
  return out;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "alpha,eps_g,d1,d2,winding,min_radius\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.alpha) << ',' << format_double(r.eps_g) << ',' << optional_field(r.d1)
        << ',' << optional_field(r.d2) << ',' << winding_field(r.winding, r.degenerate) << ','
        << format_double(r.min_radius) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  expect_header(in, "alpha,eps_g,d1,d2,winding,min_radius", "read_sweep_csv");
  std::vector<SweepRow> rows;
  std::string line;
  while (next_data_line(in, line)) {
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw InvalidArgument("read_sweep_csv: expected 6 fields in '" + line + "'");
    SweepRow r;
    r.alpha = parse_double(f[0]);
    r.eps_g = parse_double(f[1]);
    if (!f[2].empty()) r.d1 = parse_double(f[2]);
    if (!f[3].empty()) r.d2 = parse_double(f[3]);
    if (f[4] == kDegenerateMarker) {
      r.degenerate = true;
    } else {
      r.winding = std::stoi(f[4]);
    }
    r.min_radius = parse_double(f[5]);
    rows.push_back(r);
  }
  return rows;
}

void write_phase_csv(const PhaseDiagram& d, std::ostream& out) {
  for (int iy = 0; iy < d.y.steps; ++iy) {
    for (int ix = 0; ix < d.x.steps; ++ix) {
      const PhaseCell& c = d.at(ix, iy);
      if (ix > 0) out << ',';
      out << winding_field(c.winding, c.degenerate);
    }
    out << '\n';
  }
}

Json phase_sidecar(const PhaseDiagram& d) {
  return {{"x", axis_json(d.x)},
          {"y", axis_json(d.y)},
          {"fixed", to_json(d.x.fixed)},
          {"layout", "one CSV line per y value in ascending order, one column per x value"},
          {"degenerate_marker", kDegenerateMarker}};
}

}  // namespace isingloop
