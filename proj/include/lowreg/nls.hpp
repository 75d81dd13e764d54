#pragma once

// Time steppers for the periodic cubic Schroedinger equation
//   i u_t + u_xx = mu |u|^2 u,   mu in {+1, -1}.

#include <string_view>

#include "lowreg/torus.hpp"
#include "lowreg/trajectory.hpp"

namespace lowreg {

struct NlsProblem {
  int mu = 1;
  SpectralField u0;
  double t_end = 1.0;

  void validate() const;
};

enum class NlsStepperKind {
  LowRegularity,  ///< the exponential-type low-regularity integrator
  LieSplitting,   ///< classical exponential Lie splitting
  StrangSplitting ///< symmetric splitting; second order on smooth data
};

std::string_view to_string(NlsStepperKind kind);
NlsStepperKind nls_stepper_from_string(std::string_view name);

/// e^{it d_xx}: multiplies u_k by e^{-itk^2}.
SpectralField free_flow(const SpectralField& f, double t);

/// phi_1(z) = (e^z - 1)/z, with a 4-term Taylor series for |z| < 1e-4.
cplx phi1(cplx z);

/// Multiplier of phi_1(-2 i tau d_xx) on mode k, i.e. phi_1(2 i tau k^2).
cplx phi1_multiplier(int k, double tau);

/// phi_1(-2 i tau d_xx) f = tau^{-1} \int_0^tau e^{-2is d_xx} f ds.
SpectralField phi1_apply(const SpectralField& f, double tau);

/// One step of the low-regularity integrator
///   u_{n+1} = e^{i tau d_xx}(u_n - i tau mu u_n^2 phi_1(-2 i tau d_xx) conj(u_n)).
/// mu is taken as a real coefficient so that mu = 0 can be exercised.
SpectralField lri_step(const SpectralField& u, double tau, double mu);

/// u_{n+1} = e^{i tau d_xx}(u_n e^{-i tau mu |u_n|^2}).
SpectralField lie_step_nls(const SpectralField& u, double tau, double mu);

/// u_{n+1} = e^{i tau/2 d_xx} N_tau e^{i tau/2 d_xx} u_n with the exact
/// pointwise nonlinear phase flow N_tau.
SpectralField strang_step_nls(const SpectralField& u, double tau, double mu);

SpectralField nls_step(NlsStepperKind kind, const SpectralField& u, double tau, double mu);

/// Integrates to t_end with step tau_ref and records n_out + 1 equispaced
/// snapshots. tau_ref must divide t_end / n_out. Throws BlowUpError when a
/// snapshot is non-finite or its H^1 norm exceeds 1e6 times the initial one.
NlsTrajectory nls_reference_solve(const NlsProblem& problem, int n_out, double tau_ref,
                                  NlsStepperKind kind = NlsStepperKind::LowRegularity);

/// Terminal state after t_end / tau steps of the given scheme.
SpectralField nls_integrate(const NlsProblem& problem, double tau, NlsStepperKind kind);


}  // namespace lowreg
