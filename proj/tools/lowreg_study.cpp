// Batch driver for convergence studies and diagnostics.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lowreg/diagnostics.hpp"
#include "lowreg/errors.hpp"
#include "lowreg/serialize.hpp"
#include "lowreg/study.hpp"

namespace {

using namespace lowreg;
using nlohmann::json;

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kBlowUp = 3, kConfig = 4 };

struct Options {
  double theta = 1.0;
  double delta = 0.01;
  std::uint64_t seed = 1;
  int modes = 1024;
  double t_end = 1.0;
  std::string taus = "2^-4..2^-10";
  std::string norm;
  std::string out;
  std::string format;
  int mu = 1;
  std::string nonlinearity = "quadratic";
  std::string scheme;
  std::string data = "rough";
  double amplitude = 1.0;
  int ref_factor = 64;
  std::optional<double> cross_val_tol;
  bool max_over_steps = false;
  bool no_spatial_check = false;
  // diagnostics
  std::string trajectory;
  std::string save_trajectory;
  int samples = 256;
  std::optional<double> tau_ref;
  bool refine = false;
  std::string equation = "nls";
  std::string tau = "2^-6";
  std::string quad_orders = "8,16,32";
  int sub_steps = 8;
};

StudyConfig make_config(const Options& o, Equation eq) {
  StudyConfig c;
  c.equation = eq;
  c.mu = o.mu;
  c.nonlinearity = o.nonlinearity;
  c.scheme = o.scheme;
  c.data = data_kind_from_string(o.data);
  c.theta = o.theta;
  c.delta = o.delta;
  c.amplitude = o.amplitude;
  c.seed = o.seed;
  c.n_modes = o.modes;
  c.t_end = o.t_end;
  c.tau_list = parse_tau_list(o.taus);
  if (!o.norm.empty()) c.error_norm = ErrorNorm::parse(o.norm);
  c.ref_factor = o.ref_factor;
  c.cross_val_tol = o.cross_val_tol;
  c.max_over_steps = o.max_over_steps;
  c.spatial_check = !o.no_spatial_check;
  c.output_path = o.out;
  return c;
}

ReportFormat format_for(const Options& o) {
  if (o.format == "csv") return ReportFormat::csv;
  if (o.format == "json") return ReportFormat::json;
  if (!o.format.empty()) throw ConfigError("unknown format '" + o.format + "'");
  if (o.out.size() >= 4 && o.out.compare(o.out.size() - 4, 4, ".csv") == 0)
    return ReportFormat::csv;
  return ReportFormat::json;
}

void emit_text(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    write_file_atomically(o.out, text);
}

int converge(const Options& o, Equation eq) {
  const StudyConfig config = make_config(o, eq);
  const ConvergenceReport report = run_convergence_study(config);
  const ReportFormat fmt = format_for(o);
  if (o.out.empty())
    std::cout << (fmt == ReportFormat::csv ? report_csv(report) : report_json(report));
  else
    emit_report(report, fmt, o.out);
  std::fprintf(stderr, "%s %s: fitted_order=%s r_squared=%s cross_val=%.3g wall=%.1fs\n",
               std::string(to_string(eq)).c_str(), config.resolved_scheme().c_str(),
               report.fitted_order ? std::to_string(*report.fitted_order).c_str() : "n/a",
               report.r_squared ? std::to_string(*report.r_squared).c_str() : "n/a",
               report.validation.relative_distance, report.wall_time_seconds);
  if (!report.spatially_resolved)
    std::fprintf(stderr, "warning: spatially under-resolved (largest-tau error changed %.3g%% at 2N)\n",
                 100.0 * report.spatial_change.value_or(0.0));
  return kOk;
}

double reference_step(const Options& o, int samples) {
  if (o.tau_ref) return *o.tau_ref;
  return o.t_end / samples / o.sub_steps;
}

NlsTrajectory nls_trajectory(const Options& o, int modes_factor, int samples_factor) {
  StudyConfig c = make_config(o, Equation::nls);
  const SpectralField u0 = study_nls_data(c);
  const TorusGrid grid(o.modes * modes_factor);
  const int samples = o.samples * samples_factor;
  const NlsProblem p{o.mu, u0.resampled(grid), o.t_end};
  auto traj = nls_reference_solve(p, samples, reference_step(o, o.samples) / samples_factor);
  traj.meta.seed = o.seed;
  return traj;
}

WaveTrajectory wave_trajectory(const Options& o, int modes_factor, int samples_factor) {
  StudyConfig c = make_config(o, Equation::wave);
  const WaveState w0 = study_wave_data(c);
  const TorusGrid grid(o.modes * modes_factor);
  const int samples = o.samples * samples_factor;
  const WaveProblem p{Nonlinearity::from_string(o.nonlinearity),
                      WaveState(w0.u.resampled(grid), w0.v.resampled(grid)), o.t_end};
  auto traj = wave_reference_solve(p, samples, reference_step(o, o.samples) / samples_factor);
  traj.meta.seed = o.seed;
  return traj;
}

template <class Traj, class Build, class Functional>
int diagnose(const Options& o, const char* name, Build&& build, Functional&& functional,
             Traj (*load)(const std::filesystem::path&)) {
  json rec{{"functional", name}};
  if (!o.trajectory.empty()) {
    const Traj traj = load(o.trajectory);
    rec["trajectory"] = o.trajectory;
    rec["value"] = functional(traj);
  } else {
    const Traj traj = build(1, 1);
    if (!o.save_trajectory.empty()) save_trajectory(o.save_trajectory, traj);
    const double value = functional(traj);
    rec["value"] = value;
    rec["modes"] = o.modes;
    rec["samples"] = o.samples;
    rec["seed"] = o.seed;
    rec["theta"] = o.theta;
    rec["t_end"] = o.t_end;
    if (o.refine) {
      const double refined = functional(build(2, 2));
      rec["refined_value"] = refined;
      rec["relative_change"] = std::abs(refined - value) / value;
    }
  }
  emit_text(o, rec.dump(2) + "\n");
  return kOk;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("bad integer list '" + text + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

int local_error_check(const Options& o) {
  const auto taus = parse_tau_list(o.tau);
  if (taus.size() != 1) throw ConfigError("--tau takes a single step size");
  const double tau = taus.front();
  const auto orders = parse_int_list(o.quad_orders);
  int max_q = 1;
  for (int q : orders) {
    if (q < 1) throw ConfigError("quad orders must be >= 1");
    max_q = std::lcm(max_q, q);
  }
  const double dt = tau / max_q;
  const double tau_ref = o.tau_ref.value_or(dt / o.sub_steps);

  json rec{{"check", "local-error"}, {"equation", o.equation}, {"tau", tau},
           {"seed", o.seed}, {"modes", o.modes}, {"data", o.data}};
  json rows = json::array();
  const Equation eq = equation_from_string(o.equation);
  StudyConfig c = make_config(o, eq);
  c.t_end = tau;
  if (eq == Equation::nls) {
    const NlsProblem p{o.mu, study_nls_data(c), tau};
    const auto traj = nls_reference_solve(p, max_q, tau_ref, NlsStepperKind::StrangSplitting);
    for (int q : orders) {
      const auto pair = nls_local_error_oracle(traj, tau, o.mu, q);
      rows.push_back({{"quad_order", q},
                      {"direct_norm", sobolev_norm(pair.direct, 0.0)},
                      {"discrepancy", relative_discrepancy(pair)}});
    }
  } else {
    const Nonlinearity nl = Nonlinearity::from_string(o.nonlinearity);
    const WaveProblem p{nl, study_wave_data(c), tau};
    const auto traj = wave_reference_solve(p, max_q, tau_ref, WaveStepperKind::CorrectedLie);
    for (int q : orders) {
      const auto pair = wave_local_error_oracle(traj, tau, nl, q);
      rows.push_back({{"quad_order", q},
                      {"direct_norm", h1xl2_norm(pair.direct)},
                      {"discrepancy", relative_discrepancy(pair)}});
    }
  }
  rec["results"] = rows;
  emit_text(o, rec.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence studies and diagnostics for low-regularity integrators"};
  app.set_version_flag("--version", std::string(library_version()));
  app.set_config("--config", "", "key = value file supplying any flag (flags override it)");
  app.require_subcommand(1);
  Options o;

  app.add_option("--theta", o.theta, "Sobolev regularity of the rough data");
  app.add_option("--delta", o.delta, "decay margin of the rough data");
  app.add_option("--seed", o.seed, "data seed");
  app.add_option("--modes", o.modes, "number of Fourier modes (power of two)");
  app.add_option("--t-end", o.t_end, "final time");
  app.add_option("--taus", o.taus, "step sizes, e.g. 2^-4..2^-10 or 0.1,0.05");
  app.add_option("--norm", o.norm, "L2, H1xL2 or Hr(r)");
  app.add_option("--out", o.out, "output path (stdout when empty)");
  app.add_option("--format", o.format, "csv or json (default from --out extension)");
  app.add_option("--mu", o.mu, "NLS sign, +1 defocusing, -1 focusing");
  app.add_option("--nonlinearity", o.nonlinearity, "wave nonlinearity: zero, quadratic, cubic_minus, sine");
  app.add_option("--scheme", o.scheme, "scheme under study (lri, lie | corrected_lie, lie)");
  app.add_option("--data", o.data, "rough or smooth initial data");
  app.add_option("--amplitude", o.amplitude, "data amplitude");
  app.add_option("--ref-factor", o.ref_factor, "ratio of the smallest step to the reference step");
  app.add_option("--cross-val-tol", o.cross_val_tol, "reference cross-validation tolerance");
  app.add_flag("--max-over-steps", o.max_over_steps, "error as max over all steps");
  app.add_flag("--no-spatial-check", o.no_spatial_check, "skip the 2N resolution check");
  app.add_option("--trajectory", o.trajectory, "diagnose a saved trajectory file");
  app.add_option("--save-trajectory", o.save_trajectory, "write the computed trajectory");
  app.add_option("--samples", o.samples, "trajectory time samples");
  app.add_option("--tau-ref", o.tau_ref, "reference step of computed trajectories");
  app.add_flag("--refine", o.refine, "repeat at 2N modes and twice the samples");
  app.add_option("--equation", o.equation, "nls or wave (local-error-check)");
  app.add_option("--tau", o.tau, "step size of the local error check");
  app.add_option("--quad-orders", o.quad_orders, "quadrature intervals per step, comma separated");
  app.add_option("--sub-steps", o.sub_steps, "reference steps per trajectory sample");

  auto* nls = app.add_subcommand("nls-converge", "NLS convergence study")->fallthrough();
  auto* wave = app.add_subcommand("wave-converge", "wave convergence study")->fallthrough();
  auto* strich = app.add_subcommand("diagnose-strichartz", "L4 norm of d_x u on an NLS trajectory")->fallthrough();
  auto* nullf = app.add_subcommand("diagnose-nullform", "L2 norm of the null form on a wave trajectory")->fallthrough();
  auto* local = app.add_subcommand("local-error-check", "local error representation oracles")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (nls->parsed()) return converge(o, Equation::nls);
    if (wave->parsed()) return converge(o, Equation::wave);
    if (strich->parsed())
      return diagnose<NlsTrajectory>(
          o, "strichartz_l4", [&](int m, int s) { return nls_trajectory(o, m, s); },
          [](const NlsTrajectory& t) { return strichartz_l4(t); }, &load_nls_trajectory);
    if (nullf->parsed())
      return diagnose<WaveTrajectory>(
          o, "nullform_norm", [&](int m, int s) { return wave_trajectory(o, m, s); },
          [](const WaveTrajectory& t) { return nullform_norm(t); }, &load_wave_trajectory);
    if (local->parsed()) return local_error_check(o);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation failure: %s\n", e.what());
    return kValidation;
  } catch (const BlowUpError& e) {
    std::fprintf(stderr, "blow-up: %s\n", e.what());
    return kBlowUp;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kConfig;
}
