#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "smap/config.hpp"
#include "smap/csv.hpp"
#include "smap/diagnostics.hpp"
#include "smap/errors.hpp"
#include "smap/evolution.hpp"
#include "smap/gauge.hpp"
#include "smap/snapshot.hpp"
#include "smap/spectral.hpp"

namespace smap::cli {
namespace {

namespace fs = std::filesystem;
using diagnostics::kInf;

struct RunOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

struct VerifyOptions {
  std::string snapshot;
  std::string frame = "auto";
};

struct NormsOptions {
  std::string record;
  std::string quantity = "s";
  int component = 0;
  int axis = 0;
  int sign = 1;
  std::string p = "2";
  std::string q = "2";
  std::optional<int> k;
  std::string csv;
};

struct SweepOptions {
  std::string config;
  std::string param;
  std::vector<std::string> values;
  std::vector<std::string> overrides;
  std::string out;
};

evolution::SimConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  evolution::SimConfig config = config::load(path);
  for (const auto& o : overrides) config::apply_override(config, o);
  return config;
}

double parse_exponent(const std::string& text) {
  if (text == "inf") return kInf;
  if (text == "1") return 1.0;
  if (text == "2") return 2.0;
  throw std::invalid_argument("norm exponent must be 1, 2 or inf, got '" + text + "'");
}

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
  evolution::SimConfig config = load_config(o.config, o.overrides);
  if (o.seed) config.initial.seed = *o.seed;
  if (!o.out.empty()) config.output_dir = o.out;
  if (config.output_dir.empty()) {
    err << "run: no output directory (use --out or output.dir)\n";
    return kUsage;
  }
  fs::create_directories(config.output_dir);
  csv::write_file_atomic(config.output_dir / "config.ini", config::to_text(config));
  const auto record = evolution::run(config);
  out << "rows " << record.rows.size() << "\n";
  out << "snapshots " << record.snapshots.size() << "\n";
  out << "diagnostics " << (config.output_dir / "diagnostics.csv").string() << "\n";
  if (record.aborted) {
    err << "run aborted: " << *record.aborted << "\n";
    return kAborted;
  }
  return kOk;
}

Frame pick_frame(const SphereField& s, const std::string& kind, std::string& used) {
  if (kind == "projection" || kind == "auto") {
    try {
      used = "projection";
      return projection_frame(s);
    } catch (const FrameDegenerate&) {
      if (kind == "projection") throw;
    }
  }
  if (kind != "sweep" && kind != "auto") throw std::invalid_argument("unknown frame '" + kind + "'");
  used = "sweep";
  return sweep_frame(s).frame;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  double t = 0.0;
  const SphereField s = snapshot::load_sphere(o.snapshot, &t);
  std::string used;
  const Frame frame = pick_frame(s, o.frame, used);
  const CoulombGauge fixed = coulomb_fix(frame);
  const auto psi = gauge::derive_psi(fixed.frame);
  const Connection from_psi = gauge::a_from_psi(psi);
  double cross = 0.0;
  for (int m = 0; m < s.grid().dim(); ++m) {
    cross = std::max(cross, spectral::l2_norm(fixed.connection[m] - from_psi[m]));
  }
  out << "t " << csv::format_number(t) << "\n";
  out << "frame " << used << "\n";
  out << "res_compatibility "
      << csv::format_number(gauge::residual_compatibility(psi, fixed.connection)) << "\n";
  out << "res_curvature " << csv::format_number(gauge::residual_curvature(psi, fixed.connection))
      << "\n";
  out << "res_psi0 "
      << csv::format_number(gauge::residual_psi0(fixed.frame, psi, fixed.connection)) << "\n";
  out << "div_a " << csv::format_number(spectral::l2_norm(divergence(fixed.connection))) << "\n";
  out << "a_crosscheck " << csv::format_number(cross) << "\n";
  return kOk;
}

diagnostics::SpaceTimeRecord load_record(const NormsOptions& o) {
  std::vector<fs::path> files;
  if (fs::is_directory(o.record)) {
    for (const auto& entry : fs::directory_iterator(o.record)) {
      const auto name = entry.path().filename().string();
      if (name.rfind("snapshot_", 0) == 0 && entry.path().extension() == ".bin") {
        files.push_back(entry.path());
      }
    }
  } else {
    throw std::invalid_argument("record must be a directory of snapshot files: " + o.record);
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 2) throw std::invalid_argument("record needs at least two snapshots");

  std::vector<double> times;
  std::vector<ScalarField> slices;
  std::optional<Grid> grid;
  for (const auto& f : files) {
    double t = 0.0;
    const SphereField s = snapshot::load_sphere(f, &t, grid);
    if (!grid) grid = s.grid();
    times.push_back(t);
    if (o.quantity == "s") {
      if (o.component < 0 || o.component > 2) throw std::invalid_argument("component must be 0..2");
      slices.push_back(s.values().component(o.component) -
                       ScalarField(s.grid(), std::vector<Complex>(s.size(), s.base()[o.component])));
    } else if (o.quantity == "psi") {
      grid->check_axis(o.component);
      slices.push_back(evolution::coulomb_psi(s)[o.component]);
    } else {
      throw std::invalid_argument("quantity must be 's' or 'psi'");
    }
  }
  const double dt = (times.back() - times.front()) / (times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::abs(dt)) {
      throw std::invalid_argument("record is not uniformly sampled in time");
    }
  }
  return diagnostics::SpaceTimeRecord{*grid, dt, std::move(slices)};
}

int cmd_norms(const NormsOptions& o, std::ostream& out) {
  const auto record = load_record(o);
  const double p = parse_exponent(o.p);
  const double q = parse_exponent(o.q);
  const double dn = diagnostics::directional_norm(record, {o.axis, o.sign}, p, q);
  out << "slices " << record.slices.size() << "\n";
  out << "dt " << csv::format_number(record.dt) << "\n";
  out << "directional_norm " << csv::format_number(dn) << "\n";
  std::vector<std::string> header = {"axis", "sign", "p", "q", "directional_norm"};
  std::vector<double> row = {double(o.axis), double(o.sign), p, q, dn};
  if (o.k) {
    const auto xk = diagnostics::xk_norm(record, *o.k);
    out << "xk_norm " << csv::format_number(xk.value) << "\n";
    for (std::size_t j = 0; j < xk.shells.size(); ++j) {
      out << "xk_shell " << j << " " << csv::format_number(xk.shells[j]) << "\n";
    }
    header.insert(header.end(), {"k", "xk_norm"});
    row.insert(row.end(), {double(*o.k), xk.value});
  }
  if (!o.csv.empty()) csv::write_table(o.csv, header, {row});
  return kOk;
}

double worst(const std::vector<diagnostics::DiagnosticsRow>& rows,
             double diagnostics::DiagnosticsRow::*field) {
  double w = 0.0;
  for (const auto& r : rows) {
    if (std::isfinite(r.*field)) w = std::max(w, r.*field);
  }
  return w;
}

double relative_drift(const std::vector<diagnostics::DiagnosticsRow>& rows,
                      double diagnostics::DiagnosticsRow::*field) {
  const double v0 = rows.front().*field;
  double d = 0.0;
  for (const auto& r : rows) d = std::max(d, std::abs(r.*field - v0));
  return v0 != 0.0 ? d / v0 : d;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  if (o.param != "amplitude" && o.param != "n") {
    err << "sweep: --param must be 'amplitude' or 'n'\n";
    return kUsage;
  }
  const evolution::SimConfig base = load_config(o.config, o.overrides);
  const std::vector<std::string> header = {
      "value",         "energy_drift",   "l2_drift",          "critical_ratio",
      "frame_bound",   "div_a",          "res_compatibility", "res_curvature",
      "res_psi0",      "ratio_compatibility", "ratio_curvature", "ratio_psi0"};
  std::vector<std::vector<double>> table;
  bool aborted = false;
  for (const auto& value : o.values) {
    evolution::SimConfig c = base;
    c.output_dir.clear();
    c.snapshot_every = 0;
    config::apply_override(c, (o.param == "n" ? "grid.n=" : "initial.amplitude=") + value);
    const auto record = evolution::run(c);
    if (record.aborted) {
      err << "sweep: value " << value << " aborted: " << *record.aborted << "\n";
      aborted = true;
    }
    using Row = diagnostics::DiagnosticsRow;
    const auto& rows = record.rows;
    const double crit0 = rows.front().critical_norm;
    const double fb = diagnostics::frame_bound_ratio(
        generate_initial(c.initial, Grid(c.dim, c.n, c.length)), c.initial.base);
    std::vector<double> line = {
        std::stod(value),
        relative_drift(rows, &Row::energy),
        relative_drift(rows, &Row::l2_dist_q),
        crit0 > 0.0 ? worst(rows, &Row::critical_norm) / crit0 : 0.0,
        fb,
        worst(rows, &Row::div_a),
        worst(rows, &Row::res_compatibility),
        worst(rows, &Row::res_curvature),
        worst(rows, &Row::res_psi0)};
    for (int r = 0; r < 3; ++r) {
      const double current = line[6 + r];
      line.push_back(table.empty() || current == 0.0 ? std::nan("") : table.back()[6 + r] / current);
    }
    table.push_back(std::move(line));
  }
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << csv::format_number(line[i]);
    out << "\n";
  }
  if (!o.out.empty()) csv::write_table(o.out, header, table);
  return aborted ? kAborted : kOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-spectral Schrodinger map laboratory", "smap-lab"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "simulate the configured initial data");
  run_cmd->add_option("--config", run.config, "configuration file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "output directory (overrides output.dir)");
  run_cmd->add_option("--seed", run.seed, "random seed (overrides initial.seed)");
  run_cmd->add_option("--override", run.overrides, "section.key=value, repeatable");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "gauge identity residuals of a snapshot");
  verify_cmd->add_option("--snapshot", verify.snapshot, "sphere-valued snapshot")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--frame", verify.frame, "projection, sweep or auto")
      ->check(CLI::IsMember({"projection", "sweep", "auto"}));

  NormsOptions norms;
  auto* norms_cmd = app.add_subcommand("norms", "directional and X_k norms of a snapshot record");
  norms_cmd->add_option("--record", norms.record, "directory of snapshot_*.bin files")
      ->required()
      ->check(CLI::ExistingDirectory);
  norms_cmd->add_option("--quantity", norms.quantity, "s (component of s - Q) or psi")
      ->check(CLI::IsMember({"s", "psi"}));
  norms_cmd->add_option("--component", norms.component, "vector component or psi index");
  norms_cmd->add_option("--axis", norms.axis, "direction axis (0-based)");
  norms_cmd->add_option("--sign", norms.sign, "direction sign")->check(CLI::IsMember({-1, 1}));
  norms_cmd->add_option("--p", norms.p, "outer exponent")->check(CLI::IsMember({"1", "2", "inf"}));
  norms_cmd->add_option("--q", norms.q, "inner exponent")->check(CLI::IsMember({"1", "2", "inf"}));
  norms_cmd->add_option("--k", norms.k, "frequency annulus index for the X_k norm");
  norms_cmd->add_option("--csv", norms.csv, "also write the values to this CSV file");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "amplitude or resolution sweep");
  sweep_cmd->add_option("--config", sweep.config, "base configuration")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--param", sweep.param, "amplitude or n")->required();
  sweep_cmd->add_option("--values", sweep.values, "comma-separated values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--override", sweep.overrides, "section.key=value, repeatable");
  sweep_cmd->add_option("--out", sweep.out, "summary CSV path");

  std::vector<const char*> argv = {"smap-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run, out, err);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*norms_cmd) return cmd_norms(norms, out);
    if (*sweep_cmd) return cmd_sweep(sweep, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace smap::cli
