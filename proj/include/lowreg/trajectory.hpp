#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowreg/torus.hpp"

namespace lowreg {

/// Where a trajectory came from.
struct Provenance {
  std::string scheme;
  double tau_ref = 0.0;
  std::uint64_t seed = 0;
};

/// Uniformly spaced snapshots t0 + i*dt of a solution.
template <class State>
struct Trajectory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<State> states;
  Provenance meta;

  std::size_t size() const noexcept { return states.size(); }
  double time(std::size_t i) const noexcept { return t0 + dt * static_cast<double>(i); }
  double t_end() const noexcept { return time(states.empty() ? 0 : states.size() - 1); }
  const State& front() const { return states.front(); }
  const State& back() const { return states.back(); }

  /// Throws unless the trajectory has >= 3 samples, positive spacing and a
  /// single grid.
  void validate() const {
    if (states.size() < 3) throw std::invalid_argument("Trajectory: needs >= 3 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("Trajectory: spacing must be > 0");
    for (const auto& s : states)
      if (!(s.grid() == states.front().grid()))
        throw std::invalid_argument("Trajectory: snapshots live on different grids");
  }
};

/// Snapshots whose H^1 (or H^1 x L^2) norm exceeds this multiple of the
/// initial one abort the integration with a BlowUpError.
inline constexpr double kBlowUpFactor = 1e6;

namespace detail {
/// Number of steps of size tau in `span`; throws if tau does not divide span.
inline int steps_in(double span, double tau, const char* what) {
  const double ratio = span / tau;
  const double n = std::round(ratio);
  if (!(n >= 1.0) || std::abs(ratio - n) > 1e-9 * std::max(1.0, n))
    throw std::invalid_argument(std::string(what) + ": step " + std::to_string(tau) +
                                " does not divide " + std::to_string(span));
  return static_cast<int>(n);
}
}  // namespace detail

using NlsTrajectory = Trajectory<SpectralField>;
using WaveTrajectory = Trajectory<WaveState>;

}  // namespace lowreg
