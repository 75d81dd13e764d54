#include "lowreg/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "json.hpp"
#include "lowreg/errors.hpp"
#include "lowreg/rng.hpp"
#include "lowreg/serialize.hpp"

#ifndef LOWREG_VERSION
#define LOWREG_VERSION "0.0.0"
#endif

namespace lowreg {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw ConfigError(std::string(what) + ": cannot parse '" + s + "'");
  return x;
}

// "2^-4" -> exponent -4; nullopt when the item is not a power of two.
std::optional<int> power_of_two_exponent(const std::string& item) {
  if (item.rfind("2^", 0) != 0) return std::nullopt;
  const std::string e = item.substr(2);
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(e, &used);
  } catch (const std::exception&) {
    throw ConfigError("tau list: bad exponent in '" + item + "'");
  }
  if (used != e.size()) throw ConfigError("tau list: bad exponent in '" + item + "'");
  return x;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

NlsStepperKind nls_kind(const StudyConfig& c) { return nls_stepper_from_string(c.resolved_scheme()); }
WaveStepperKind wave_kind(const StudyConfig& c) {
  return wave_stepper_from_string(c.resolved_scheme());
}

template <class State>
struct Validated {
  Trajectory<State> reference;
  ValidationRecord record;
};

template <class State>
ValidationRecord make_record(std::string ref, std::string cmp, double tau_ref,
                             const ErrorNorm& norm, const State& a, const State& b,
                             const State& initial, double tolerance) {
  ValidationRecord rec;
  rec.reference_scheme = std::move(ref);
  rec.comparator_scheme = std::move(cmp);
  rec.tau_ref = tau_ref;
  rec.norm = norm.label();
  rec.distance = norm.of(a - b);
  const double scale = norm.of(initial);
  rec.relative_distance = scale > 0.0 ? rec.distance / scale : rec.distance;
  rec.tolerance = tolerance;
  rec.passed = rec.relative_distance <= tolerance;
  return rec;
}

Validated<SpectralField> validated_reference(const NlsProblem& p, double tau_ref, int n_out,
                                             double tolerance, const ErrorNorm& norm) {
  auto cmp = std::async(std::launch::async, [&] {
    return nls_integrate(p, tau_ref, NlsStepperKind::LieSplitting);
  });
  auto traj = nls_reference_solve(p, n_out, tau_ref, NlsStepperKind::LowRegularity);
  const SpectralField other = cmp.get();
  auto rec = make_record(std::string(to_string(NlsStepperKind::LowRegularity)),
                         std::string(to_string(NlsStepperKind::LieSplitting)), tau_ref, norm,
                         traj.back(), other, p.u0, tolerance);
  if (!rec.passed) throw ValidationError(rec);
  return {std::move(traj), std::move(rec)};
}

Validated<WaveState> validated_reference(const WaveProblem& p, double tau_ref, int n_out,
                                         double tolerance, const ErrorNorm& norm) {
  auto cmp = std::async(std::launch::async,
                        [&] { return wave_integrate(p, tau_ref, WaveStepperKind::Lie); });
  auto traj = wave_reference_solve(p, n_out, tau_ref, WaveStepperKind::CorrectedLie);
  const WaveState other = cmp.get();
  auto rec = make_record(std::string(to_string(WaveStepperKind::CorrectedLie)),
                         std::string(to_string(WaveStepperKind::Lie)), tau_ref, norm,
                         traj.back(), other, p.initial, tolerance);
  if (!rec.passed) throw ValidationError(rec);
  return {std::move(traj), std::move(rec)};
}

double initial_guard(const SpectralField& u0) { return sobolev_norm(u0, 1.0); }
double initial_guard(const WaveState& w0) { return h1xl2_norm(w0); }
double guard_norm(const SpectralField& u) { return sobolev_norm(u, 1.0); }
double guard_norm(const WaveState& w) { return h1xl2_norm(w); }

// Error of one run against the reference: terminal, or max over the steps
// that coincide with reference snapshots.
template <class State, class Step>
double run_error(const State& initial, double t_end, double tau, const Trajectory<State>& ref,
                 bool max_over_steps, const ErrorNorm& norm, Step&& step) {
  const int steps = detail::steps_in(t_end, tau, "run_convergence_study");
  const double limit = kBlowUpFactor * std::max(initial_guard(initial), 1e-300);
  int stride = 0;
  if (max_over_steps) stride = detail::steps_in(tau, ref.dt, "run_convergence_study");
  State s = initial;
  double worst = 0.0;
  for (int n = 1; n <= steps; ++n) {
    s = step(s, tau);
    if (!s.all_finite() || guard_norm(s) > limit) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "run at tau = %.6g: blow-up guard fired at t = %.6g", tau,
                    n * tau);
      throw BlowUpError(msg, n * tau);
    }
    if (max_over_steps) worst = std::max(worst, norm.of(s - ref.states[n * stride]));
  }
  return max_over_steps ? worst : norm.of(s - ref.back());
}

template <class State, class Problem, class Step>
void run_all(ConvergenceReport& report, const Problem& problem, const State& initial,
             Step&& step) {
  const StudyConfig& c = report.config;
  const ErrorNorm norm = c.resolved_norm();
  const double tau_ref = c.tau_ref();
  const double tau_min = c.tau_list.back();
  const int n_out =
      c.max_over_steps ? detail::steps_in(c.t_end, tau_min, "run_convergence_study") : 1;

  auto validated = validated_reference(problem, tau_ref, n_out, c.resolved_cross_val_tol(), norm);
  report.validation = validated.record;
  report.initial_norm = norm.of(initial);

  std::vector<std::future<double>> runs;
  for (double tau : c.tau_list)
    runs.push_back(std::async(std::launch::async, [&, tau] {
      return run_error(initial, c.t_end, tau, validated.reference, c.max_over_steps, norm, step);
    }));
  for (std::size_t i = 0; i < runs.size(); ++i)
    report.errors.push_back({c.tau_list[i], runs[i].get()});
}

}  // namespace

// ---- enums and norms -------------------------------------------------------

std::string_view to_string(Equation eq) { return eq == Equation::nls ? "nls" : "wave"; }

Equation equation_from_string(std::string_view name) {
  if (name == "nls") return Equation::nls;
  if (name == "wave") return Equation::wave;
  throw ConfigError("unknown equation '" + std::string(name) + "'");
}

std::string_view to_string(DataKind kind) { return kind == DataKind::rough ? "rough" : "smooth"; }

DataKind data_kind_from_string(std::string_view name) {
  if (name == "rough") return DataKind::rough;
  if (name == "smooth") return DataKind::smooth;
  throw ConfigError("unknown data kind '" + std::string(name) + "'");
}

ErrorNorm ErrorNorm::parse(std::string_view text) {
  const std::string s = trim(text);
  if (s == "L2") return {Kind::L2, 0.0};
  if (s == "H1xL2") return {Kind::H1xL2, 1.0};
  if (s.size() > 3 && s.rfind("Hr(", 0) == 0 && s.back() == ')')
    return {Kind::Hr, parse_number(s.substr(3, s.size() - 4), "error norm")};
  throw ConfigError("unknown error norm '" + s + "' (expected L2, H1xL2 or Hr(r))");
}

std::string ErrorNorm::label() const {
  switch (kind) {
    case Kind::L2: return "L2";
    case Kind::H1xL2: return "H1xL2";
    case Kind::Hr: return "Hr(" + fmt17(r) + ")";
  }
  return "?";
}

double ErrorNorm::sobolev_index() const noexcept {
  switch (kind) {
    case Kind::L2: return 0.0;
    case Kind::H1xL2: return 1.0;
    case Kind::Hr: return r;
  }
  return 0.0;
}

double ErrorNorm::of(const SpectralField& f) const { return sobolev_norm(f, sobolev_index()); }

double ErrorNorm::of(const WaveState& w) const {
  const double s = sobolev_index();
  return sobolev_norm(w.u, s) + sobolev_norm(w.v, s - 1.0);
}

// ---- config ----------------------------------------------------------------

std::string StudyConfig::resolved_scheme() const {
  if (!scheme.empty()) return scheme;
  return equation == Equation::nls ? "lri" : "corrected_lie";
}

ErrorNorm StudyConfig::resolved_norm() const {
  if (error_norm) return *error_norm;
  return equation == Equation::nls ? ErrorNorm{} : ErrorNorm{ErrorNorm::Kind::H1xL2, 1.0};
}

double StudyConfig::resolved_cross_val_tol() const {
  if (cross_val_tol) return *cross_val_tol;
  return equation == Equation::nls ? kDefaultNlsCrossValTol : kDefaultWaveCrossValTol;
}

void StudyConfig::validate() const {
  if (equation == Equation::nls && mu != 1 && mu != -1)
    throw ConfigError("mu must be +1 or -1");
  try {
    if (equation == Equation::nls)
      nls_stepper_from_string(resolved_scheme());
    else {
      wave_stepper_from_string(resolved_scheme());
      Nonlinearity::from_string(nonlinearity);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (equation == Equation::nls && resolved_norm().kind == ErrorNorm::Kind::H1xL2)
    throw ConfigError("norm H1xL2 applies to wave studies only");
  if (n_modes < 8 || (n_modes & (n_modes - 1)) != 0)
    throw ConfigError("modes must be a power of two >= 8");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be > 0");
  if (!(amplitude > 0.0)) throw ConfigError("amplitude must be > 0");
  if (data == DataKind::rough) {
    const double min_theta = equation == Equation::wave ? 1.0 : 0.0;
    if (!(theta >= min_theta)) throw ConfigError("theta must be >= " + fmt17(min_theta));
    if (!(delta > 0.0)) throw ConfigError("delta must be > 0");
  }
  if (tau_list.size() < 2) throw ConfigError("tau list needs at least two step sizes");
  for (std::size_t i = 0; i < tau_list.size(); ++i) {
    if (!(tau_list[i] > 0.0)) throw ConfigError("step sizes must be > 0");
    if (i > 0 && !(tau_list[i] < tau_list[i - 1]))
      throw ConfigError("tau list must be strictly decreasing");
    try {
      detail::steps_in(t_end, tau_list[i], "tau list");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (max_over_steps) {
      try {
        detail::steps_in(tau_list[i], tau_list.back(), "max-over-steps");
      } catch (const std::invalid_argument&) {
        throw ConfigError("max-over-steps needs the smallest step to divide every step");
      }
    }
  }
  if (ref_factor < 16) throw ConfigError("ref_factor must be >= 16");
  if (cross_val_tol && !(*cross_val_tol > 0.0)) throw ConfigError("cross_val_tol must be > 0");
  if (error_norm && error_norm->kind == ErrorNorm::Kind::Hr && !std::isfinite(error_norm->r))
    throw ConfigError("Hr index must be finite");
}

std::vector<double> parse_tau_list(std::string_view text) {
  std::vector<double> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const auto a = power_of_two_exponent(trim(item.substr(0, dots)));
      const auto b = power_of_two_exponent(trim(item.substr(dots + 2)));
      if (!a || !b) throw ConfigError("tau range must look like 2^-4..2^-10: '" + item + "'");
      const int step = *a <= *b ? 1 : -1;
      for (int e = *a;; e += step) {
        out.push_back(std::ldexp(1.0, e));
        if (e == *b) break;
      }
    } else if (const auto e = power_of_two_exponent(item)) {
      out.push_back(std::ldexp(1.0, *e));
    } else {
      out.push_back(parse_number(item, "tau list"));
    }
  }
  if (out.empty()) throw ConfigError("empty tau list");
  return out;
}

// ---- validation ------------------------------------------------------------

ValidationError::ValidationError(ValidationRecord record)
    : std::runtime_error("reference cross-validation failed: " + record.reference_scheme +
                         " vs " + record.comparator_scheme + " at tau_ref = " +
                         fmt17(record.tau_ref) + " differ by " + fmt17(record.relative_distance) +
                         " (relative, " + record.norm + "), tolerance " +
                         fmt17(record.tolerance)),
      record_(std::move(record)) {}

ValidationRecord cross_validate_reference(const NlsProblem& problem, double tau_ref,
                                          double tolerance, const ErrorNorm& norm) {
  if (!(tau_ref > 0.0)) throw std::invalid_argument("cross_validate_reference: tau_ref must be > 0");
  return validated_reference(problem, tau_ref, 1, tolerance, norm).record;
}

ValidationRecord cross_validate_reference(const WaveProblem& problem, double tau_ref,
                                          double tolerance, const ErrorNorm& norm) {
  if (!(tau_ref > 0.0)) throw std::invalid_argument("cross_validate_reference: tau_ref must be > 0");
  return validated_reference(problem, tau_ref, 1, tolerance, norm).record;
}

// ---- fitting ---------------------------------------------------------------

RateFit fit_rate(std::span<const std::pair<double, double>> pairs) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [tau, err] : pairs)
    if (tau > 0.0 && std::isfinite(err) && err >= kFitFloor && err <= kFitCeiling)
      pts.emplace_back(std::log(tau), std::log(err));
  if (pts.size() < 2)
    throw std::invalid_argument("fit_rate: fewer than 2 usable points in [1e-11, 1]");
  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_rate: step sizes must not all coincide");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.points_used = static_cast<int>(pts.size());
  return fit;
}

void fit_report(ConvergenceReport& report) {
  report.fitted_order.reset();
  report.r_squared.reset();
  std::vector<std::pair<double, double>> pairs;
  for (const auto& e : report.errors) pairs.emplace_back(e.tau, e.error);
  try {
    const RateFit fit = fit_rate(pairs);
    if (fit.points_used >= 4) {
      report.fitted_order = fit.slope;
      report.r_squared = fit.r_squared;
    }
  } catch (const std::invalid_argument&) {
  }
}

// ---- studies ---------------------------------------------------------------

SpectralField study_nls_data(const StudyConfig& c) {
  const TorusGrid grid(c.n_modes);
  if (c.data == DataKind::smooth)
    return random_field_with_decay(6.0, c.seed, false, c.amplitude, grid);
  return random_rough_field({c.theta, c.delta, c.seed, false, c.amplitude}, grid);
}

WaveState study_wave_data(const StudyConfig& c) {
  const TorusGrid grid(c.n_modes);
  const std::uint64_t seed_v = derive_seed(c.seed, 1);
  if (c.data == DataKind::smooth)
    return WaveState(random_field_with_decay(6.0, c.seed, true, c.amplitude, grid),
                     random_field_with_decay(5.0, seed_v, true, c.amplitude, grid));
  return WaveState(random_rough_field({c.theta, c.delta, c.seed, true, c.amplitude}, grid),
                   random_rough_field({c.theta - 1.0, c.delta, seed_v, true, c.amplitude}, grid));
}

ConvergenceReport run_convergence_study(const StudyConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ConvergenceReport report;
  report.config = config;
  report.version = std::string(library_version());
  const ErrorNorm norm = config.resolved_norm();
  const double tau_ref = config.tau_ref();
  const double tau_max = config.tau_list.front();

  if (config.equation == Equation::nls) {
    const NlsProblem problem{config.mu, study_nls_data(config), config.t_end};
    const auto kind = nls_kind(config);
    const double mu = config.mu;
    auto step = [kind, mu](const SpectralField& u, double tau) {
      return nls_step(kind, u, tau, mu);
    };
    run_all(report, problem, problem.u0, step);
    if (config.spatial_check) {
      const NlsProblem fine{config.mu, problem.u0.resampled(TorusGrid(2 * config.n_modes)),
                            config.t_end};
      auto ref = std::async(std::launch::async, [&] {
        return nls_integrate(fine, tau_ref, NlsStepperKind::LowRegularity);
      });
      const SpectralField run = nls_integrate(fine, tau_max, kind);
      const double e2 = norm.of(run - ref.get());
      const double e1 = report.errors.front().error;
      report.spatial_change = std::abs(e2 - e1) / e1;
    }
  } else {
    const WaveProblem problem{Nonlinearity::from_string(config.nonlinearity),
                              study_wave_data(config), config.t_end};
    const auto kind = wave_kind(config);
    const Nonlinearity nl = problem.nonlinearity;
    auto step = [kind, nl](const WaveState& w, double tau) { return wave_step(kind, w, tau, nl); };
    run_all(report, problem, problem.initial, step);
    if (config.spatial_check) {
      const TorusGrid fine_grid(2 * config.n_modes);
      const WaveProblem fine{nl,
                             WaveState(problem.initial.u.resampled(fine_grid),
                                       problem.initial.v.resampled(fine_grid)),
                             config.t_end};
      auto ref = std::async(std::launch::async, [&] {
        return wave_integrate(fine, tau_ref, WaveStepperKind::CorrectedLie);
      });
      const WaveState run = wave_integrate(fine, tau_max, kind);
      const double e2 = norm.of(run - ref.get());
      const double e1 = report.errors.front().error;
      report.spatial_change = std::abs(e2 - e1) / e1;
    }
  }
  if (report.spatial_change) report.spatially_resolved = *report.spatial_change < 0.01;
  fit_report(report);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool ConvergenceReport::operator==(const ConvergenceReport& o) const {
  return config == o.config && errors == o.errors && fitted_order == o.fitted_order &&
         r_squared == o.r_squared && validation == o.validation &&
         initial_norm == o.initial_norm && spatial_change == o.spatial_change &&
         spatially_resolved == o.spatially_resolved && version == o.version;
}

// ---- reports ---------------------------------------------------------------

std::string_view library_version() { return LOWREG_VERSION; }

std::string report_csv(const ConvergenceReport& report) {
  if (report.errors.empty()) throw std::invalid_argument("emit_report: report has no errors");
  const std::string norm = report.config.resolved_norm().label();
  const std::string scheme = report.config.resolved_scheme();
  std::string out = "tau,error,norm,scheme,seed\n";
  for (const auto& e : report.errors)
    out += fmt17(e.tau) + "," + fmt17(e.error) + "," + norm + "," + scheme + "," +
           std::to_string(report.config.seed) + "\n";
  return out;
}

namespace {

template <class T>
json optional_json(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json config_json(const StudyConfig& c) {
  return json{{"equation", to_string(c.equation)},
              {"mu", c.mu},
              {"nonlinearity", c.nonlinearity},
              {"scheme", c.scheme},
              {"resolved_scheme", c.resolved_scheme()},
              {"data", to_string(c.data)},
              {"theta", c.theta},
              {"delta", c.delta},
              {"amplitude", c.amplitude},
              {"seed", c.seed},
              {"n_modes", c.n_modes},
              {"t_end", c.t_end},
              {"tau_list", c.tau_list},
              {"error_norm", c.error_norm ? json(c.error_norm->label()) : json(nullptr)},
              {"resolved_norm", c.resolved_norm().label()},
              {"ref_factor", c.ref_factor},
              {"tau_ref", c.tau_ref()},
              {"cross_val_tol", optional_json(c.cross_val_tol)},
              {"resolved_cross_val_tol", c.resolved_cross_val_tol()},
              {"max_over_steps", c.max_over_steps},
              {"spatial_check", c.spatial_check},
              {"output_path", c.output_path}};
}

StudyConfig config_from_json(const json& j) {
  StudyConfig c;
  c.equation = equation_from_string(j.at("equation").get<std::string>());
  c.mu = j.at("mu").get<int>();
  c.nonlinearity = j.at("nonlinearity").get<std::string>();
  c.scheme = j.at("scheme").get<std::string>();
  c.data = data_kind_from_string(j.at("data").get<std::string>());
  c.theta = j.at("theta").get<double>();
  c.delta = j.at("delta").get<double>();
  c.amplitude = j.at("amplitude").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.n_modes = j.at("n_modes").get<int>();
  c.t_end = j.at("t_end").get<double>();
  c.tau_list = j.at("tau_list").get<std::vector<double>>();
  if (!j.at("error_norm").is_null())
    c.error_norm = ErrorNorm::parse(j.at("error_norm").get<std::string>());
  c.ref_factor = j.at("ref_factor").get<int>();
  c.cross_val_tol = optional_from<double>(j.at("cross_val_tol"));
  c.max_over_steps = j.at("max_over_steps").get<bool>();
  c.spatial_check = j.at("spatial_check").get<bool>();
  c.output_path = j.at("output_path").get<std::string>();
  return c;
}

}  // namespace

std::string report_json(const ConvergenceReport& r) {
  if (r.errors.empty()) throw std::invalid_argument("emit_report: report has no errors");
  json errors = json::array();
  for (const auto& e : r.errors) errors.push_back({{"tau", e.tau}, {"error", e.error}});
  const auto& v = r.validation;
  json j{{"version", r.version},
         {"config", config_json(r.config)},
         {"errors", errors},
         {"fitted_order", optional_json(r.fitted_order)},
         {"r_squared", optional_json(r.r_squared)},
         {"initial_norm", r.initial_norm},
         {"validation",
          {{"reference_scheme", v.reference_scheme},
           {"comparator_scheme", v.comparator_scheme},
           {"tau_ref", v.tau_ref},
           {"norm", v.norm},
           {"distance", v.distance},
           {"relative_distance", v.relative_distance},
           {"tolerance", v.tolerance},
           {"passed", v.passed}}},
         {"spatial_change", optional_json(r.spatial_change)},
         {"spatially_resolved", r.spatially_resolved}};
  return j.dump(2) + "\n";
}

ConvergenceReport report_from_json(std::string_view text) {
  const json j = json::parse(text);
  ConvergenceReport r;
  r.version = j.at("version").get<std::string>();
  r.config = config_from_json(j.at("config"));
  for (const auto& e : j.at("errors"))
    r.errors.push_back({e.at("tau").get<double>(), e.at("error").get<double>()});
  r.fitted_order = optional_from<double>(j.at("fitted_order"));
  r.r_squared = optional_from<double>(j.at("r_squared"));
  r.initial_norm = j.at("initial_norm").get<double>();
  const json& v = j.at("validation");
  r.validation.reference_scheme = v.at("reference_scheme").get<std::string>();
  r.validation.comparator_scheme = v.at("comparator_scheme").get<std::string>();
  r.validation.tau_ref = v.at("tau_ref").get<double>();
  r.validation.norm = v.at("norm").get<std::string>();
  r.validation.distance = v.at("distance").get<double>();
  r.validation.relative_distance = v.at("relative_distance").get<double>();
  r.validation.tolerance = v.at("tolerance").get<double>();
  r.validation.passed = v.at("passed").get<bool>();
  r.spatial_change = optional_from<double>(j.at("spatial_change"));
  r.spatially_resolved = j.at("spatially_resolved").get<bool>();
  return r;
}

void emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& path) {
  const std::string text =
      format == ReportFormat::csv ? report_csv(report) : report_json(report);
  write_file_atomically(path, text);
}

}  // namespace lowreg
