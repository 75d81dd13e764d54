#pragma once

// Space-time functionals and local-error oracles evaluated on trajectories.

#include "lowreg/torus.hpp"
#include "lowreg/trajectory.hpp"
#include "lowreg/wave.hpp"

namespace lowreg {

/// ||d_x u||_{L^4([t0, t_end] x T)}
double strichartz_l4(const NlsTrajectory& traj);

/// Q = v^2 - (d_x u)^2 on the 2N-mode grid (full bandwidth, no aliasing).
SpectralField nullform_density(const WaveState& w);

/// ||v^2 - (d_x u)^2||_{L^2([t0, t_end] x T)}
double nullform_norm(const WaveTrajectory& traj);

/// d'Alembert data of a wave state (phi_0, phi_1) = (u, v): for the free wave
/// d_t phi(t, x) = v(x + t) - w(x - t) and d_x phi(t, x) = v(x + t) + w(x - t).
struct DalembertSplit {
  SpectralField v;  ///< (d_x phi_0 + phi_1) / 2, transported as v(x + t)
  SpectralField w;  ///< (d_x phi_0 - phi_1) / 2, transported as w(x - t)
};
DalembertSplit dalembert_split(const WaveState& state);

template <class State>
struct LocalErrorPair {
  State direct;    ///< reference solution minus one step of the scheme
  State integral;  ///< quadrature of the integral representation
};

/// Local error of the low-regularity NLS integrator over [t0, t0 + tau],
/// evaluated directly and through its double-integral representation with
/// the three D-terms. Quadrature nodes are trajectory samples: quad_order is
/// the number of trapezoid intervals per step and must divide tau / traj.dt.
LocalErrorPair<SpectralField> nls_local_error_oracle(const NlsTrajectory& traj, double tau,
                                                     double mu, int quad_order);

/// Same for the corrected Lie splitting, with the B-term representation.
LocalErrorPair<WaveState> wave_local_error_oracle(const WaveTrajectory& traj, double tau,
                                                  const Nonlinearity& nl, int quad_order);

/// ||direct - integral|| / ||direct|| in L^2 (NLS) or H^1 x L^2 (wave).
double relative_discrepancy(const LocalErrorPair<SpectralField>& pair);
double relative_discrepancy(const LocalErrorPair<WaveState>& pair);

}  // namespace lowreg
