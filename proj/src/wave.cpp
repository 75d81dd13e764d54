#include "lowreg/wave.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lowreg/errors.hpp"

namespace lowreg {
namespace {

void require_positive_step(double tau, const char* op) {
  if (!(tau > 0.0)) throw std::invalid_argument(std::string(op) + ": tau must be > 0");
}

void require_finite(const WaveState& w, const char* op) {
  if (!w.all_finite())
    throw BlowUpError(std::string(op) + ": non-finite input (upstream blow-up)", 0.0);
}

template <class BlockFn>
WaveState apply_blocks(const WaveState& w, BlockFn&& block_of) {
  const TorusGrid grid = w.grid();
  const auto u = w.u.coeffs();
  const auto v = w.v.coeffs();
  std::vector<cplx> nu(grid.n_modes()), nv(grid.n_modes());
  for (int s = 0; s < grid.n_modes(); ++s) {
    const Block2 b = block_of(grid.freq(s));
    nu[s] = b.a11 * u[s] + b.a12 * v[s];
    nv[s] = b.a21 * u[s] + b.a22 * v[s];
  }
  return WaveState(SpectralField(grid, std::move(nu), true),
                   SpectralField(grid, std::move(nv), true));
}

// Physical values of the real field on the 2x grid.
std::vector<double> real_values(const SpectralField& f) {
  const auto z = to_physical_nodes(f, 2 * f.n_modes());
  std::vector<double> x(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) x[j] = z[j].real();
  return x;
}

SpectralField real_field(const std::vector<double>& vals, TorusGrid grid) {
  std::vector<cplx> z(vals.begin(), vals.end());
  return from_physical_nodes(z, grid, true);
}

struct Nonlinear {
  SpectralField g;   // P g(u)
  SpectralField gv;  // P (g'(u) v)
};

Nonlinear evaluate_nonlinear(const WaveState& w, const Nonlinearity& nl) {
  const TorusGrid grid = w.grid();
  if (nl.is_zero())
    return {SpectralField::zeros(grid, true), SpectralField::zeros(grid, true)};
  const auto u = real_values(w.u);
  const auto v = real_values(w.v);
  std::vector<double> g(u.size()), gv(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    g[j] = nl.g(u[j]);
    gv[j] = nl.g1(u[j]) * v[j];
  }
  return {real_field(g, grid), real_field(gv, grid)};
}

}  // namespace

// ---- Nonlinearity ----------------------------------------------------------

Nonlinearity::Nonlinearity(NonlinearityPreset preset) : preset_(preset) {}

Nonlinearity Nonlinearity::from_string(std::string_view name) {
  if (name == "zero") return Nonlinearity(NonlinearityPreset::zero);
  if (name == "quadratic") return Nonlinearity(NonlinearityPreset::quadratic);
  if (name == "cubic_minus") return Nonlinearity(NonlinearityPreset::cubic_minus);
  if (name == "sine") return Nonlinearity(NonlinearityPreset::sine);
  throw std::invalid_argument("unknown nonlinearity '" + std::string(name) + "'");
}

std::string_view Nonlinearity::name() const noexcept {
  switch (preset_) {
    case NonlinearityPreset::zero: return "zero";
    case NonlinearityPreset::quadratic: return "quadratic";
    case NonlinearityPreset::cubic_minus: return "cubic_minus";
    case NonlinearityPreset::sine: return "sine";
  }
  return "unknown";
}

double Nonlinearity::g(double z) const noexcept {
  switch (preset_) {
    case NonlinearityPreset::zero: return 0.0;
    case NonlinearityPreset::quadratic: return z * z;
    case NonlinearityPreset::cubic_minus: return -z * z * z;
    case NonlinearityPreset::sine: return std::sin(z);
  }
  return 0.0;
}

double Nonlinearity::g1(double z) const noexcept {
  switch (preset_) {
    case NonlinearityPreset::zero: return 0.0;
    case NonlinearityPreset::quadratic: return 2.0 * z;
    case NonlinearityPreset::cubic_minus: return -3.0 * z * z;
    case NonlinearityPreset::sine: return std::cos(z);
  }
  return 0.0;
}

double Nonlinearity::g2(double z) const noexcept {
  switch (preset_) {
    case NonlinearityPreset::zero: return 0.0;
    case NonlinearityPreset::quadratic: return 2.0;
    case NonlinearityPreset::cubic_minus: return -6.0 * z;
    case NonlinearityPreset::sine: return -std::sin(z);
  }
  return 0.0;
}

double Nonlinearity::growth(double r) const noexcept {
  switch (preset_) {
    case NonlinearityPreset::zero: return 0.0;
    case NonlinearityPreset::quadratic: return r * r + 2.0 * r + 2.0;
    case NonlinearityPreset::cubic_minus: return r * r * r + 3.0 * r * r + 6.0 * r;
    case NonlinearityPreset::sine: return 3.0;
  }
  return 0.0;
}

void WaveProblem::validate() const {
  if (!(t_end > 0.0)) throw std::invalid_argument("WaveProblem: t_end must be > 0");
}

std::string_view to_string(WaveStepperKind kind) {
  return kind == WaveStepperKind::CorrectedLie ? "corrected_lie" : "lie";
}

WaveStepperKind wave_stepper_from_string(std::string_view name) {
  if (name == "corrected_lie") return WaveStepperKind::CorrectedLie;
  if (name == "lie") return WaveStepperKind::Lie;
  throw std::invalid_argument("unknown wave scheme '" + std::string(name) + "'");
}

// ---- linear part -----------------------------------------------------------

WaveState apply_wave_operator(const WaveState& w) {
  return WaveState(w.v, derivative(w.u, 2));
}

Block2 wave_flow_block(int k, double t) {
  if (k == 0) return {1.0, t, 0.0, 1.0};
  const double kk = k;
  const double x = kk * t;
  const double c = std::cos(x);
  const double s = std::sin(x);
  // sin(kt)/k
  const double sinc_t =
      std::abs(x) < 1e-4 ? t * (1.0 - x * x / 6.0 * (1.0 - x * x / 20.0)) : s / kk;
  return {c, sinc_t, -kk * s, c};
}

Block2 phi2_block(int k, double tau) {
  if (k == 0) return {0.5, -tau / 3.0, 0.0, 0.5};
  const double kk = k;
  const double x = 2.0 * kk * tau;
  double c2, off_upper, off_lower;
  if (std::abs(kk * tau) < 1e-3) {
    const double x2 = x * x;
    c2 = 0.5 - x2 / 24.0 + x2 * x2 / 720.0;
    const double r = 1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0;  // (x - sin x)/x^3
    off_upper = -2.0 * tau * r;
    off_lower = 2.0 * kk * kk * tau * r;
  } else {
    const double sh = std::sin(0.5 * x);
    c2 = 2.0 * sh * sh / (x * x);
    const double s2 = (x - std::sin(x)) / (x * x);
    off_upper = -s2 / kk;
    off_lower = kk * s2;
  }
  return {c2, off_upper, off_lower, c2};
}

WaveState wave_flow(const WaveState& w, double t) {
  return apply_blocks(w, [t](int k) { return wave_flow_block(k, t); });
}

WaveState phi2_apply(const WaveState& w, double tau) {
  require_positive_step(tau, "phi2_apply");
  return apply_blocks(w, [tau](int k) { return phi2_block(k, tau); });
}

// ---- nonlinear maps --------------------------------------------------------

WaveState g_map(const WaveState& w, const Nonlinearity& nl) {
  auto n = evaluate_nonlinear(w, nl);
  return WaveState(SpectralField::zeros(w.grid(), true), std::move(n.g));
}

WaveState h_map(const WaveState& w, const Nonlinearity& nl) {
  auto n = evaluate_nonlinear(w, nl);
  return WaveState(-1.0 * std::move(n.g), std::move(n.gv));
}

WaveState b_map(const WaveState& w, const Nonlinearity& nl) {
  const TorusGrid grid = w.grid();
  if (nl.is_zero()) return WaveState::zeros(grid);
  const auto u = real_values(w.u);
  const auto v = real_values(w.v);
  const auto ux = real_values(derivative(w.u, 1));
  std::vector<double> b(u.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    b[j] = nl.g2(u[j]) * (v[j] * v[j] - ux[j] * ux[j]) + nl.g1(u[j]) * nl.g(u[j]);
  return WaveState(SpectralField::zeros(grid, true), real_field(b, grid));
}

// ---- steppers --------------------------------------------------------------

WaveState corrected_lie_step(const WaveState& w, double tau, const Nonlinearity& nl) {
  require_positive_step(tau, "corrected_lie_step");
  require_finite(w, "corrected_lie_step");
  auto n = evaluate_nonlinear(w, nl);
  const WaveState h(-1.0 * n.g, n.gv);
  WaveState inner = w;
  inner.v += tau * n.g;
  inner += (tau * tau) * phi2_apply(h, tau);
  return wave_flow(inner, tau);
}

WaveState lie_step_wave(const WaveState& w, double tau, const Nonlinearity& nl) {
  require_positive_step(tau, "lie_step_wave");
  require_finite(w, "lie_step_wave");
  auto n = evaluate_nonlinear(w, nl);
  WaveState inner = w;
  inner.v += tau * n.g;
  return wave_flow(inner, tau);
}

WaveState wave_step(WaveStepperKind kind, const WaveState& w, double tau,
                    const Nonlinearity& nl) {
  return kind == WaveStepperKind::CorrectedLie ? corrected_lie_step(w, tau, nl)
                                               : lie_step_wave(w, tau, nl);
}

double h1xl2_norm(const WaveState& w) {
  return sobolev_norm(w.u, 1.0) + sobolev_norm(w.v, 0.0);
}

WaveTrajectory wave_reference_solve(const WaveProblem& problem, int n_out, double tau_ref,
                                    WaveStepperKind kind) {
  problem.validate();
  require_positive_step(tau_ref, "wave_reference_solve");
  if (n_out < 0) throw std::invalid_argument("wave_reference_solve: n_out must be >= 0");

  WaveTrajectory traj;
  traj.meta = {std::string(to_string(kind)), tau_ref, 0};
  traj.states.push_back(problem.initial);
  if (n_out == 0) return traj;

  traj.dt = problem.t_end / n_out;
  const int per_sample = detail::steps_in(traj.dt, tau_ref, "wave_reference_solve");
  const double limit = kBlowUpFactor * std::max(h1xl2_norm(problem.initial), 1e-300);

  WaveState w = problem.initial;
  for (int i = 1; i <= n_out; ++i) {
    for (int s = 0; s < per_sample; ++s) w = wave_step(kind, w, tau_ref, problem.nonlinearity);
    const double e = h1xl2_norm(w);
    if (!std::isfinite(e) || e > limit)
      throw BlowUpError("wave_reference_solve: H^1 x L^2 norm " + std::to_string(e) +
                            " exceeds the blow-up guard at t = " + std::to_string(traj.time(i)),
                        traj.time(i));
    traj.states.push_back(w);
  }
  return traj;
}

WaveState wave_integrate(const WaveProblem& problem, double tau, WaveStepperKind kind) {
  problem.validate();
  const int steps = detail::steps_in(problem.t_end, tau, "wave_integrate");
  const double limit = kBlowUpFactor * std::max(h1xl2_norm(problem.initial), 1e-300);
  WaveState w = problem.initial;
  for (int n = 1; n <= steps; ++n) {
    w = wave_step(kind, w, tau, problem.nonlinearity);
    if (!w.all_finite() || h1xl2_norm(w) > limit)
      throw BlowUpError("wave_integrate: blow-up guard fired", n * tau);
  }
  return w;
}

}  // namespace lowreg
