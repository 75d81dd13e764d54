#include "lowreg/nls.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lowreg/errors.hpp"

namespace lowreg {
namespace {

void require_finite(const SpectralField& u, const char* op) {
  if (!u.all_finite())
    throw BlowUpError(std::string(op) + ": non-finite input (upstream blow-up)", 0.0);
}

void require_positive_step(double tau, const char* op) {
  if (!(tau > 0.0)) throw std::invalid_argument(std::string(op) + ": tau must be > 0");
}

// u e^{-i tau mu |u|^2} evaluated on the 2x grid.
SpectralField nonlinear_phase(const SpectralField& u, double tau, double mu) {
  const int m = 2 * u.n_modes();
  auto vals = to_physical_nodes(u, m);
  for (auto& z : vals) z *= std::polar(1.0, -tau * mu * std::norm(z));
  return from_physical_nodes(vals, u.grid());
}

}  // namespace

void NlsProblem::validate() const {
  if (mu != 1 && mu != -1) throw std::invalid_argument("NlsProblem: mu must be +1 or -1");
  if (!(t_end > 0.0)) throw std::invalid_argument("NlsProblem: t_end must be > 0");
}

std::string_view to_string(NlsStepperKind kind) {
  switch (kind) {
    case NlsStepperKind::LowRegularity: return "lri";
    case NlsStepperKind::LieSplitting: return "lie";
    case NlsStepperKind::StrangSplitting: return "strang";
  }
  return "unknown";
}

NlsStepperKind nls_stepper_from_string(std::string_view name) {
  if (name == "lri") return NlsStepperKind::LowRegularity;
  if (name == "lie") return NlsStepperKind::LieSplitting;
  if (name == "strang") return NlsStepperKind::StrangSplitting;
  throw std::invalid_argument("unknown NLS scheme '" + std::string(name) + "'");
}

SpectralField free_flow(const SpectralField& f, double t) {
  return f.map_modes(
      [t](int k, cplx c) { return c * std::polar(1.0, -t * static_cast<double>(k) * k); },
      true);
}

cplx phi1(cplx z) {
  if (std::abs(z) < 1e-4) return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z / 24.0));
  if (z.real() == 0.0) {
    // (e^{iy} - 1)/(iy) = sin(y)/y + 2i sin^2(y/2)/y, free of cancellation.
    const double y = z.imag();
    const double h = std::sin(0.5 * y);
    return {std::sin(y) / y, 2.0 * h * h / y};
  }
  return (std::exp(z) - 1.0) / z;
}

cplx phi1_multiplier(int k, double tau) {
  return phi1(cplx(0.0, 2.0 * tau * static_cast<double>(k) * k));
}

SpectralField phi1_apply(const SpectralField& f, double tau) {
  require_positive_step(tau, "phi1_apply");
  return f.map_modes([tau](int k, cplx c) { return c * phi1_multiplier(k, tau); }, true);
}

SpectralField lri_step(const SpectralField& u, double tau, double mu) {
  require_positive_step(tau, "lri_step");
  require_finite(u, "lri_step");
  const SpectralField averaged = phi1_apply(u.conj(), tau);
  SpectralField inner = dealiased_product({{u}, {u}, {averaged}});
  inner *= cplx(0.0, -tau * mu);
  inner += u;
  return free_flow(inner, tau);
}

SpectralField lie_step_nls(const SpectralField& u, double tau, double mu) {
  require_positive_step(tau, "lie_step_nls");
  require_finite(u, "lie_step_nls");
  return free_flow(nonlinear_phase(u, tau, mu), tau);
}

SpectralField strang_step_nls(const SpectralField& u, double tau, double mu) {
  require_positive_step(tau, "strang_step_nls");
  require_finite(u, "strang_step_nls");
  return free_flow(nonlinear_phase(free_flow(u, 0.5 * tau), tau, mu), 0.5 * tau);
}

SpectralField nls_step(NlsStepperKind kind, const SpectralField& u, double tau, double mu) {
  switch (kind) {
    case NlsStepperKind::LowRegularity: return lri_step(u, tau, mu);
    case NlsStepperKind::LieSplitting: return lie_step_nls(u, tau, mu);
    case NlsStepperKind::StrangSplitting: return strang_step_nls(u, tau, mu);
  }
  throw std::invalid_argument("nls_step: unknown scheme");
}

NlsTrajectory nls_reference_solve(const NlsProblem& problem, int n_out, double tau_ref,
                                  NlsStepperKind kind) {
  problem.validate();
  require_positive_step(tau_ref, "nls_reference_solve");
  if (n_out < 0) throw std::invalid_argument("nls_reference_solve: n_out must be >= 0");

  NlsTrajectory traj;
  traj.meta = {std::string(to_string(kind)), tau_ref, 0};
  traj.states.push_back(problem.u0);
  if (n_out == 0) return traj;

  traj.dt = problem.t_end / n_out;
  const int per_sample = detail::steps_in(traj.dt, tau_ref, "nls_reference_solve");
  const double h1_limit = kBlowUpFactor * std::max(sobolev_norm(problem.u0, 1.0), 1e-300);
  const double mu = problem.mu;

  SpectralField u = problem.u0;
  for (int i = 1; i <= n_out; ++i) {
    for (int s = 0; s < per_sample; ++s) u = nls_step(kind, u, tau_ref, mu);
    const double h1 = sobolev_norm(u, 1.0);
    if (!std::isfinite(h1) || h1 > h1_limit)
      throw BlowUpError("nls_reference_solve: H^1 norm " + std::to_string(h1) +
                            " exceeds the blow-up guard at t = " + std::to_string(traj.time(i)),
                        traj.time(i));
    traj.states.push_back(u);
  }
  return traj;
}

SpectralField nls_integrate(const NlsProblem& problem, double tau, NlsStepperKind kind) {
  problem.validate();
  const int steps = detail::steps_in(problem.t_end, tau, "nls_integrate");
  const double h1_limit = kBlowUpFactor * std::max(sobolev_norm(problem.u0, 1.0), 1e-300);
  SpectralField u = problem.u0;
  for (int n = 1; n <= steps; ++n) {
    u = nls_step(kind, u, tau, problem.mu);
    if (!u.all_finite() || sobolev_norm(u, 1.0) > h1_limit)
      throw BlowUpError("nls_integrate: blow-up guard fired", n * tau);
  }
  return u;
}

}  // namespace lowreg
