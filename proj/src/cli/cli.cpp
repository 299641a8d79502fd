#include "isingloop/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "isingloop/edoracle.hpp"
#include "isingloop/errors.hpp"
#include "isingloop/freefermion.hpp"
#include "isingloop/io.hpp"
#include "isingloop/loopgeo.hpp"
#include "isingloop/model.hpp"
#include "isingloop/scan.hpp"
#include "isingloop/svg.hpp"

namespace isingloop::cli {

namespace {

struct ParamFlags {
  std::optional<std::string> preset;
  std::optional<double> a, b, gamma, delta, g;

  // explicit flag > preset field > 0
  ModelParams resolve() const {
    ModelParams p;
    if (preset) p = preset_lookup(*preset).params;
    if (a) p.a = *a;
    if (b) p.b = *b;
    if (gamma) p.gamma = *gamma;
    if (delta) p.delta = *delta;
    if (g) p.g = *g;
    validate(p);
    return p;
  }
};

struct AxisFlags {
  std::string parameter;
  double start = 0.0;
  double end = 1.0;
  int steps = 201;

  SweepSpec spec(const ModelParams& fixed, double tol) const {
    SweepSpec s;
    s.varied = coupling_from_string(parameter);
    s.start = start;
    s.end = end;
    s.steps = steps;
    s.fixed = fixed;
    s.quad_tol = tol;
    return s;
  }
};

struct Options {
  ParamFlags params;
  std::optional<int> n;
  int steps = 201;
  double tol = 1e-8;
  std::string out;
  std::string format;
  std::map<std::string, std::string> default_format;
  std::string svg;
  AxisFlags sweep_axis{"g", 0.0, 2.0, 201};
  AxisFlags x_axis{"g", -2.0, 2.0, 81};
  AxisFlags y_axis{"gamma", -2.0, 2.0, 81};
};

void add_param_flags(CLI::App* sub, ParamFlags& f) {
  sub->add_option("--preset", f.preset, "Named parameter set (see `presets`); explicit flags override its fields");
  sub->add_option("--a", f.a, "Nearest-neighbour XY coupling");
  sub->add_option("--b", f.b, "Three-site coupling");
  sub->add_option("--gamma", f.gamma, "Nearest-neighbour anisotropy");
  sub->add_option("--delta", f.delta, "Three-site anisotropy");
  sub->add_option("--g", f.g, "Transverse field");
}

void add_out_flag(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Write data to this file instead of stdout");
}

void add_format_flag(CLI::App* sub, Options& o, std::vector<std::string> formats) {
  o.default_format[sub->get_name()] = formats.front();
  sub->add_option("--format", o.format, "Output format (default " + formats.front() + ")")
      ->check(CLI::IsMember(formats));
}

void add_axis_flags(CLI::App* sub, AxisFlags& axis, const std::string& prefix) {
  const std::string dash = prefix.empty() ? "--" : "--" + prefix + "-";
  sub->add_option(prefix.empty() ? "--vary" : "--" + prefix, axis.parameter,
                  "Swept coupling: a, b, gamma, delta or g")
      ->capture_default_str();
  sub->add_option(dash + "start", axis.start, "First value")->capture_default_str();
  sub->add_option(dash + "end", axis.end, "Last value")->capture_default_str();
  sub->add_option(dash + "steps", axis.steps, "Number of grid values (>= 3)")->capture_default_str();
}

// Data sink: the --out file or the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
  f << text;
}

int cmd_loop(const Options& o, std::ostream& out, std::ostream& err) {
  const ModelParams p = o.params.resolve();
  const LoopSamples samples = sample_loop(p, o.steps);
  Sink sink(o.out, out);
  if (o.format == "csv") {
    write_loop_csv(samples, sink.stream());
  } else if (o.format == "json") {
    Json pts = Json::array();
    for (std::size_t i = 0; i < samples.points.size(); ++i) {
      pts.push_back({samples.k_values[i], samples.points[i].x, samples.points[i].y});
    }
    sink.stream() << Json{{"params", to_json(p)}, {"columns", {"k", "x", "y"}}, {"points", pts}}.dump()
                  << '\n';
  } else {
    LoopAnnotations notes;
    try {
      const WindingResult w = winding_number(p);
      notes.winding = w.number;
      notes.degenerate = w.degenerate;
    } catch (const DegenerateLoop& e) {
      err << "note: " << e.what() << '\n';
      notes.degenerate = true;
    }
    notes.title = o.params.preset ? *o.params.preset : "loop";
    sink.stream() << render_loop_svg(samples, notes);
  }
  return kExitOk;
}

int cmd_winding(const Options& o, std::ostream& out, std::ostream& err) {
  const ModelParams p = o.params.resolve();
  const WindingResult w = winding_number(p);
  if (w.degenerate) {
    err << "error: the loop passes through the origin (min_radius " << format_double(w.min_radius)
        << "); the winding number is not defined here\n";
    return kExitDegenerate;
  }
  Sink sink(o.out, out);
  sink.stream() << winding_to_json(w).dump() << '\n';
  return kExitOk;
}

int cmd_energy(const Options& o, std::ostream& out, std::ostream&) {
  const ModelParams p = o.params.resolve();
  Json record;
  if (o.n) {
    record = energy_record(p, *o.n, finite_ground_energy(p, *o.n).total, 0.0);
  } else {
    const EnergyDensity e = energy_density(p, o.tol);
    record = energy_record(p, std::nullopt, e.density, e.error_estimate);
  }
  Sink sink(o.out, out);
  sink.stream() << record.dump() << '\n';
  return kExitOk;
}

int cmd_gap(const Options& o, std::ostream& out, std::ostream&) {
  const ModelParams p = o.params.resolve();
  const Json record = o.n ? energy_record(p, *o.n, finite_gap(p, *o.n), 0.0)
                          : energy_record(p, std::nullopt, thermodynamic_gap(p), 0.0);
  Sink sink(o.out, out);
  sink.stream() << record.dump() << '\n';
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream&) {
  const SweepSpec spec = o.sweep_axis.spec(o.params.resolve(), o.tol);
  const std::vector<SweepRow> rows = sweep(spec);
  const TransitionReport report = detect_transitions(rows);
  Sink sink(o.out, out);
  if (o.format == "csv") {
    write_sweep_csv(rows, sink.stream());
    if (!o.out.empty()) {
      Json meta = sweep_metadata(spec);
      meta["transitions"] = transitions_to_json(report);
      write_text_file(o.out + ".json", meta.dump(2) + "\n");
    }
  } else {
    Json j = sweep_metadata(spec);
    Json list = Json::array();
    for (const SweepRow& r : rows) {
      Json row = {{"alpha", r.alpha}, {"eps_g", r.eps_g}};
      row["d1"] = r.d1 ? Json(*r.d1) : Json(nullptr);
      row["d2"] = r.d2 ? Json(*r.d2) : Json(nullptr);
      row["winding"] = r.degenerate ? Json("degenerate") : Json(r.winding);
      row["min_radius"] = r.min_radius;
      list.push_back(std::move(row));
    }
    j["rows"] = std::move(list);
    j["transitions"] = transitions_to_json(report);
    sink.stream() << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_phase_diagram(const Options& o, std::ostream& out, std::ostream&) {
  const ModelParams fixed = o.params.resolve();
  const PhaseDiagram d = phase_diagram(o.x_axis.spec(fixed, o.tol), o.y_axis.spec(fixed, o.tol));
  Sink sink(o.out, out);
  write_phase_csv(d, sink.stream());
  if (!o.out.empty()) write_text_file(o.out + ".json", phase_sidecar(d).dump(2) + "\n");
  if (!o.svg.empty()) write_text_file(o.svg, render_phase_svg(d));
  return kExitOk;
}

int cmd_ed_check(const Options& o, std::ostream& out, std::ostream& err) {
  const ModelParams p = o.params.resolve();
  const CrossValidation cv = cross_validate(p, o.n.value_or(8));
  Sink sink(o.out, out);
  sink.stream() << cross_validation_to_json(cv).dump() << '\n';
  if (!cv.passed) {
    err << "ed-check failed: residual " << format_double(cv.residual) << " exceeds "
        << format_double(kCrossValidationTolerance) << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_order_matrix(const Options& o, std::ostream& out, std::ostream&) {
  const OrderParameterMatrix m = order_parameter_matrix(o.n.value_or(8));
  Sink sink(o.out, out);
  if (o.format == "json") {
    sink.stream() << order_matrix_to_json(m).dump() << '\n';
  } else {
    sink.stream() << "lambda,rho=-2,rho=-1,rho=0,rho=1,rho=2\n";
    for (int l = -2; l <= 2; ++l) {
      sink.stream() << l;
      for (int r = -2; r <= 2; ++r) sink.stream() << ',' << format_double(m.at(l, r));
      sink.stream() << '\n';
    }
  }
  return kExitOk;
}

int cmd_presets(const Options& o, std::ostream& out, std::ostream&) {
  Sink sink(o.out, out);
  if (o.format == "json") {
    sink.stream() << presets_to_json(presets()).dump(2) << '\n';
  } else {
    for (const Preset& pr : presets()) {
      sink.stream() << pr.name << "  (a=" << format_double(pr.params.a) << ", b=" << format_double(pr.params.b)
                    << ", gamma=" << format_double(pr.params.gamma) << ", delta=" << format_double(pr.params.delta)
                    << ", g=" << format_double(pr.params.g) << ")  " << pr.family_label;
      if (pr.expected_winding) sink.stream() << ", winding " << winding_label(*pr.expected_winding);
      sink.stream() << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Winding numbers, energies and exact-diagonalization checks for the extended Ising chain"};
  app.name(args.empty() ? "isingloop" : args.front());
  app.require_subcommand(1);
  Options o;

  using Handler = std::function<int(const Options&, std::ostream&, std::ostream&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* loop = app.add_subcommand("loop", "Sample the loop r(k) over [-pi, pi]");
  add_param_flags(loop, o.params);
  loop->add_option("--steps", o.steps, "Number of samples (>= 8)")->capture_default_str();
  add_format_flag(loop, o, {"csv", "json", "svg"});
  add_out_flag(loop, o);
  commands.emplace_back(loop, cmd_loop);

  auto* winding = app.add_subcommand("winding", "Winding number of the loop about the origin");
  add_param_flags(winding, o.params);
  add_out_flag(winding, o);
  commands.emplace_back(winding, cmd_winding);

  auto* energy = app.add_subcommand("energy", "Ground-state energy density, or the total energy with --n");
  add_param_flags(energy, o.params);
  energy->add_option("--tol", o.tol, "Quadrature tolerance")->capture_default_str();
  energy->add_option("--n", o.n, "Finite even chain length");
  add_out_flag(energy, o);
  commands.emplace_back(energy, cmd_energy);

  auto* gap = app.add_subcommand("gap", "Excitation gap 4 min|r(k)|, on the N-site momentum grid with --n");
  add_param_flags(gap, o.params);
  gap->add_option("--n", o.n, "Finite even chain length");
  add_out_flag(gap, o);
  commands.emplace_back(gap, cmd_gap);

  auto* sw = app.add_subcommand("sweep", "One-parameter sweep of energy, derivatives and winding");
  add_param_flags(sw, o.params);
  add_axis_flags(sw, o.sweep_axis, "");
  sw->add_option("--tol", o.tol, "Quadrature tolerance per row")->capture_default_str();
  add_format_flag(sw, o, {"csv", "json"});
  add_out_flag(sw, o);
  commands.emplace_back(sw, cmd_sweep);

  auto* pd = app.add_subcommand("phase-diagram", "Winding numbers on a two-parameter grid");
  add_param_flags(pd, o.params);
  add_axis_flags(pd, o.x_axis, "x");
  add_axis_flags(pd, o.y_axis, "y");
  add_out_flag(pd, o);
  pd->add_option("--svg", o.svg, "Also write a heat map to this file");
  commands.emplace_back(pd, cmd_phase_diagram);

  auto* ed = app.add_subcommand("ed-check", "Compare exact diagonalization with the free-fermion energy");
  add_param_flags(ed, o.params);
  ed->add_option("--n", o.n, "Even chain length, 4..12 (default 8)");
  add_out_flag(ed, o);
  commands.emplace_back(ed, cmd_ed_check);

  auto* om = app.add_subcommand("order-matrix", "<G_lambda| h_rho |G_lambda> for lambda, rho in -2..2");
  om->add_option("--n", o.n, "Chain length 4, 8 or 12 (default 8)");
  add_format_flag(om, o, {"csv", "json"});
  add_out_flag(om, o);
  commands.emplace_back(om, cmd_order_matrix);

  auto* ps = app.add_subcommand("presets", "List the named parameter sets");
  add_format_flag(ps, o, {"json", "table"});
  add_out_flag(ps, o);
  commands.emplace_back(ps, cmd_presets);

  std::vector<const char*> argv;
  for (const std::string& s : args) argv.push_back(s.c_str());
  if (argv.empty()) argv.push_back("isingloop");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      if (o.format.empty()) o.format = o.default_format[sub->get_name()];
      return handler(o, out, err);
    }
    return kExitUsage;
  } catch (const DegenerateLoop& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace isingloop::cli
