#pragma once

// Time steppers for the periodic semilinear wave equation
//   u_tt - u_xx = g(u)
// in first-order form U' = A U + G(U) with U = (u, v), A(u, v) = (v, u_xx),
// G(U) = (0, g(u)).

#include <functional>
#include <string_view>

#include "lowreg/torus.hpp"
#include "lowreg/trajectory.hpp"

namespace lowreg {

enum class NonlinearityPreset { zero, quadratic, cubic_minus, sine };

/// g with its first two derivatives and an increasing bound
/// L(r) >= |g(z)| + |g'(z)| + |g''(z)| for |z| <= r.
class Nonlinearity {
 public:
  explicit Nonlinearity(NonlinearityPreset preset);
  static Nonlinearity from_string(std::string_view name);

  NonlinearityPreset preset() const noexcept { return preset_; }
  std::string_view name() const noexcept;

  double g(double z) const noexcept;
  double g1(double z) const noexcept;
  double g2(double z) const noexcept;
  double growth(double r) const noexcept;

  bool is_zero() const noexcept { return preset_ == NonlinearityPreset::zero; }

 private:
  NonlinearityPreset preset_;
};

struct WaveProblem {
  Nonlinearity nonlinearity{NonlinearityPreset::quadratic};
  WaveState initial;
  double t_end = 1.0;

  void validate() const;
};

enum class WaveStepperKind { CorrectedLie, Lie };

std::string_view to_string(WaveStepperKind kind);
WaveStepperKind wave_stepper_from_string(std::string_view name);

/// A(u, v) = (v, u_xx)
WaveState apply_wave_operator(const WaveState& w);

/// e^{tA}: per mode [[cos kt, sin(kt)/k], [-k sin kt, cos kt]], and the shear
/// [[1, t], [0, 1]] on k = 0.
WaveState wave_flow(const WaveState& w, double t);

/// phi_2(-2 tau A) w = tau^{-2} \int_0^tau (tau - s) e^{-2sA} w ds as per-mode
/// 2x2 blocks; Taylor branch for |k tau| < 1e-3.
WaveState phi2_apply(const WaveState& w, double tau);

/// The per-mode block entries of phi_2(-2 tau A), row major.
struct Block2 {
  double a11, a12, a21, a22;
};
Block2 phi2_block(int k, double tau);
Block2 wave_flow_block(int k, double t);

/// G(U) = (0, g(u))
WaveState g_map(const WaveState& w, const Nonlinearity& nl);
/// H(U) = (-g(u), g'(u) v)
WaveState h_map(const WaveState& w, const Nonlinearity& nl);
/// B(U) = (0, g''(u)(v^2 - u_x^2) + g'(u) g(u))
WaveState b_map(const WaveState& w, const Nonlinearity& nl);

/// Psi_tau(U) = e^{tau A}[U + tau G(U) + tau^2 phi_2(-2 tau A) H(U)]
WaveState corrected_lie_step(const WaveState& w, double tau, const Nonlinearity& nl);
/// e^{tau A}[U + tau G(U)]
WaveState lie_step_wave(const WaveState& w, double tau, const Nonlinearity& nl);

WaveState wave_step(WaveStepperKind kind, const WaveState& w, double tau,
                    const Nonlinearity& nl);

/// Energy-type norm ||u||_{H^1} + ||v||_{L^2}.
double h1xl2_norm(const WaveState& w);

/// Same contract as nls_reference_solve, for the wave equation.
WaveTrajectory wave_reference_solve(const WaveProblem& problem, int n_out, double tau_ref,
                                    WaveStepperKind kind = WaveStepperKind::CorrectedLie);

WaveState wave_integrate(const WaveProblem& problem, double tau, WaveStepperKind kind);

}  // namespace lowreg
