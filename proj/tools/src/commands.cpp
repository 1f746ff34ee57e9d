#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <CLI11.hpp>

#include <mbslie/errors.hpp>
#include <mbslie/rotmaps.hpp>

#include "csv.hpp"

namespace mbsim {

using namespace mbslie;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kBaseline = "baseline";

double rotation_angle_between(const Mat3& a, const Mat3& b) {
  return log_so3(a.transpose() * b).norm();
}

double pose_discrepancy(const std::vector<AbsCoords>& a, const std::vector<AbsCoords>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Pose pa = alpha_map(a[i]), pb = alpha_map(b[i]);
    d += rotation_angle_between(pa.R, pb.R) + (pa.r - pb.r).norm();
  }
  return d;
}

double max_qnorm_err(const TrajectoryRecord& rec) {
  double m = 0.0;
  for (const auto& s : rec.samples) {
    for (double e : s.qnorm_err) m = std::max(m, e);
  }
  return m;
}

MbsState final_state(const Scenario& sc, const IntegratorConfig& cfg) {
  const auto model = build_model(sc.model, cfg.combo.group());
  return propagate(*model, cfg, build_state(*model, sc.initial, cfg.combo.absolute));
}

void check_multiple(double t_end, double h) {
  const double n = t_end / h;
  if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
    throw UsageError("t_end_s = " + format_double(t_end) +
                     " is not an integer multiple of h = " + format_double(h));
  }
}

struct Output {
  std::ofstream file;
  std::ostream* data = nullptr;
  std::ostream* info = nullptr;
};

std::ostream& null_stream() {
  static std::ostream s(nullptr);
  return s;
}

// Data goes to the file when a path is given and to out otherwise; the
// summary then moves to err so that stdout carries only CSV.
void open_output(Output& o, const std::string& path, bool quiet, std::ostream& out,
                 std::ostream& err) {
  if (path.empty()) {
    o.data = &out;
    o.info = quiet ? &null_stream() : &err;
    return;
  }
  o.file.open(path, std::ios::out | std::ios::binary | std::ios::trunc);
  if (!o.file) throw UsageError("cannot write '" + path + "'");
  o.data = &o.file;
  o.info = quiet ? &null_stream() : &out;
}

std::string output_path(const std::string& flag, const Scenario& sc) {
  if (!flag.empty()) return flag;
  return sc.output.value_or("");
}

void cmd_run(const std::string& file, const std::string& out_flag, bool quiet,
             std::ostream& out, std::ostream& err) {
  const Scenario sc = load_scenario(file);
  const IntegratorConfig& cfg = sc.integrator;
  const auto model = build_model(sc.model, cfg.combo.group());
  const MbsState s0 = build_state(*model, sc.initial, cfg.combo.absolute);
  const TrajectoryRecord rec = integrate(*model, cfg, s0);

  Output o;
  const std::string path = output_path(out_flag, sc);
  open_output(o, path, quiet, out, err);
  write_trajectory_csv(*o.data, rec);
  o.data->flush();

  const TrajectorySample& first = rec.samples.front();
  const TrajectorySample& last = rec.samples.back();
  double ediff = 0.0;
  for (const auto& s : rec.samples) ediff = std::max(ediff, std::abs(s.energy - first.energy));
  std::ostream& info = *o.info;
  info << "combo " << cfg.combo.id() << ", scheme " << to_string(cfg.scheme)
       << ", projection " << to_string(cfg.projection) << ", "
       << rec.samples.size() - 1 << " steps of h = " << format_double(cfg.h) << " s\n";
  info << "final gnorm " << format_double(last.gnorm) << ", final gvnorm "
       << format_double(last.gvnorm) << "\n";
  info << "energy drift max |E - E0| " << format_double(ediff) << " J";
  if (first.energy != 0.0) {
    info << " (relative " << format_double(ediff / std::abs(first.energy)) << ")";
  }
  info << "\n";
  if (cfg.combo.absolute == AbsKind::QuatPos) {
    info << "quaternion drift max |‖Q‖ - 1| " << format_double(max_qnorm_err(rec))
         << (cfg.scheme == Scheme::BaselineQuatRK4 ? " (before renormalization)" : "")
         << "\n";
  }
  if (cfg.projection != Projection::Off) {
    info << "projection iterations " << rec.projection_iterations << "\n";
  }
  if (!path.empty()) info << "wrote " << path << "\n";
}

void cmd_convergence(const std::string& file, const std::vector<double>& hs,
                     const std::string& out_flag, bool quiet, std::ostream& out,
                     std::ostream& err) {
  const Scenario sc = load_scenario(file);
  const ConvergenceResult r = convergence_study(sc, hs);
  Output o;
  const std::string path = output_path(out_flag, sc);
  open_output(o, path, quiet, out, err);
  write_row(*o.data, {"h", "global_error", "fitted_slope", "r_squared"});
  for (std::size_t i = 0; i < r.h.size(); ++i) {
    write_row(*o.data, {format_double(r.h[i]), format_double(r.error[i]),
                        format_double(r.slope), format_double(r.r_squared)});
  }
  o.data->flush();
  *o.info << "combo " << sc.integrator.combo.id() << ", scheme "
          << to_string(sc.integrator.scheme) << ", reference h "
          << format_double(*std::min_element(hs.begin(), hs.end()) / 10) << " s\n";
  *o.info << "fitted slope " << format_double(r.slope) << ", R^2 "
          << format_double(r.r_squared) << "\n";
  if (!path.empty()) *o.info << "wrote " << path << "\n";
}

void cmd_compare(const std::string& file, const std::vector<std::string>& runs,
                 const std::string& out_flag, bool quiet, std::ostream& out,
                 std::ostream& err) {
  const Scenario sc = load_scenario(file);
  const CompareResult r = compare_runs(sc, runs);
  Output o;
  const std::string path = output_path(out_flag, sc);
  open_output(o, path, quiet, out, err);
  std::vector<std::string> header{"run", "max_qnorm_err"};
  header.insert(header.end(), r.runs.begin(), r.runs.end());
  write_row(*o.data, header);
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    std::vector<std::string> row{r.runs[i], format_double(r.qnorm_err[i])};
    for (double d : r.discrepancy[i]) row.push_back(format_double(d));
    write_row(*o.data, row);
  }
  o.data->flush();

  double combo_disc = 0.0, lgt_q = 0.0, base_q = -1.0;
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    if (r.runs[i] == kBaseline) {
      base_q = std::max(base_q, r.qnorm_err[i]);
      continue;
    }
    lgt_q = std::max(lgt_q, r.qnorm_err[i]);
    for (std::size_t j = 0; j < r.runs.size(); ++j) {
      if (r.runs[j] != kBaseline) combo_disc = std::max(combo_disc, r.discrepancy[i][j]);
    }
  }
  *o.info << "max pairwise final-pose discrepancy among combos "
          << format_double(combo_disc) << "\n";
  *o.info << "combos max |‖Q‖ - 1| " << format_double(lgt_q) << "\n";
  if (base_q >= 0.0) {
    *o.info << "baseline max |‖Q‖ - 1| before renormalization " << format_double(base_q)
            << "\n";
  }
  if (!path.empty()) *o.info << "wrote " << path << "\n";
}

}  // namespace

ConvergenceResult convergence_study(const Scenario& sc, const std::vector<double>& hs) {
  if (hs.empty()) throw UsageError("--h needs at least one step size");
  for (double h : hs) {
    if (!(h > 0.0)) throw UsageError("step sizes must be positive");
    check_multiple(sc.integrator.t_end, h);
  }
  IntegratorConfig cfg = sc.integrator;
  cfg.h = *std::min_element(hs.begin(), hs.end()) / 10;
  const MbsState ref = final_state(sc, cfg);

  ConvergenceResult r;
  for (double h : hs) {
    cfg.h = h;
    const MbsState s = final_state(sc, cfg);
    r.h.push_back(h);
    r.error.push_back(pose_discrepancy(s.q, ref.q) + (s.V - ref.V).norm());
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < r.h.size(); ++i) {
    const double x = std::log(r.h[i]), y = std::log(r.error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double n = static_cast<double>(r.h.size());
  const double vx = n * sxx - sx * sx, vy = n * syy - sy * sy, cxy = n * sxy - sx * sy;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (vx > 1e-12 * n * sxx && std::isfinite(sy)) {
    r.slope = cxy / vx;
    r.r_squared = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
  } else {
    r.slope = nan;
    r.r_squared = nan;
  }
  return r;
}

std::vector<std::string> default_compare_runs() {
  std::vector<std::string> runs;
  for (const LgtCombo& c : LgtCombo::all()) runs.push_back(c.id());
  runs.emplace_back(kBaseline);
  return runs;
}

CompareResult compare_runs(const Scenario& sc, const std::vector<std::string>& runs) {
  if (runs.empty()) throw UsageError("--runs needs at least one entry");
  CompareResult r;
  std::vector<std::vector<AbsCoords>> finals;
  for (const std::string& name : runs) {
    IntegratorConfig cfg = sc.integrator;
    if (name == kBaseline) {
      cfg.scheme = Scheme::BaselineQuatRK4;
      cfg.combo = LgtCombo::parse("1a");
    } else {
      try {
        cfg.combo = LgtCombo::parse(name);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--runs: ") + e.what());
      }
      if (cfg.scheme == Scheme::BaselineQuatRK4) cfg.scheme = Scheme::MuntheKaasRK4;
    }
    const auto model = build_model(sc.model, cfg.combo.group());
    const TrajectoryRecord rec =
        integrate(*model, cfg, build_state(*model, sc.initial, cfg.combo.absolute));
    r.runs.push_back(name);
    r.qnorm_err.push_back(max_qnorm_err(rec));
    finals.push_back(rec.samples.back().q);
  }
  const std::size_t n = finals.size();
  r.discrepancy.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      r.discrepancy[i][j] = r.discrepancy[j][i] = pose_discrepancy(finals[i], finals[j]);
    }
  }
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigid multibody simulation in absolute coordinates"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  std::string file, out_path;
  bool quiet = false;
  std::vector<double> hs;
  std::vector<std::string> runs = default_compare_runs();

  const auto common = [&](CLI::App* sub) {
    sub->add_option("scenario", file, "Scenario file (JSON)")->required();
    sub->add_option("--out", out_path, "Output CSV path");
    sub->add_flag("--quiet", quiet, "Suppress the summary");
  };
  CLI::App* run = app.add_subcommand("run", "Integrate a scenario and write its trajectory");
  common(run);
  CLI::App* conv = app.add_subcommand("convergence", "Global error against step size");
  common(conv);
  conv->add_option("--h", hs, "Step sizes in seconds, comma separated")
      ->required()
      ->delimiter(',');
  CLI::App* cmp = app.add_subcommand("compare", "Run several combos and the baseline");
  common(cmp);
  cmp->add_option("--runs", runs, "Combo ids and/or 'baseline', comma separated")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) {
      cmd_run(file, out_path, quiet, out, err);
    } else if (conv->parsed()) {
      cmd_convergence(file, hs, out_path, quiet, out, err);
    } else {
      cmd_compare(file, runs, out_path, quiet, out, err);
    }
  } catch (const SchemaError& e) {
    err << "error: invalid scenario: " << e.what() << "\n";
    return kExitSchema;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InconsistentState& e) {
    err << "error: inconsistent initial state: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const IntegrationFailure& e) {
    err << "error: integration failed at " << e.what() << "\n";
    return kExitIntegrationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace mbsim
