#include "lowreg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lowreg/nls.hpp"

namespace lowreg {
namespace {

// Stride between quadrature nodes, in trajectory samples.
template <class State>
int quadrature_stride(const Trajectory<State>& traj, double tau, int quad_order,
                      const char* op) {
  if (traj.states.size() < 2 || !(traj.dt > 0.0))
    throw std::invalid_argument(std::string(op) + ": insufficient trajectory resolution");
  if (quad_order < 1) throw std::invalid_argument(std::string(op) + ": quad_order must be >= 1");
  const double ratio = tau / traj.dt;
  const int samples = static_cast<int>(std::lround(ratio));
  if (samples < 1 || std::abs(ratio - samples) > 1e-9 * samples ||
      samples > static_cast<int>(traj.states.size()) - 1)
    throw std::invalid_argument(std::string(op) +
                                ": insufficient trajectory resolution (trajectory does not "
                                "cover the step on its sample grid)");
  if (samples % quad_order != 0)
    throw std::invalid_argument(std::string(op) + ": insufficient trajectory resolution (" +
                                std::to_string(samples) + " samples per step not divisible by "
                                "quad_order " + std::to_string(quad_order) + ")");
  return samples / quad_order;
}

}  // namespace

double strichartz_l4(const NlsTrajectory& traj) {
  traj.validate();
  std::vector<SpectralField> ux;
  ux.reserve(traj.size());
  for (const auto& u : traj.states) ux.push_back(derivative(u, 1));
  return spacetime_norm(ux, traj.dt, 4.0, 4.0);
}

SpectralField nullform_density(const WaveState& w) {
  const TorusGrid fine = w.grid().refined(2);
  const int m = 2 * fine.n_modes();
  const auto v = to_physical_nodes(w.v, m);
  const auto ux = to_physical_nodes(derivative(w.u, 1), m);
  std::vector<cplx> q(m);
  for (int j = 0; j < m; ++j) {
    const double a = v[j].real();
    const double b = ux[j].real();
    q[j] = a * a - b * b;
  }
  return from_physical_nodes(q, fine, true);
}

double nullform_norm(const WaveTrajectory& traj) {
  traj.validate();
  std::vector<SpectralField> q;
  q.reserve(traj.size());
  for (const auto& w : traj.states) q.push_back(nullform_density(w));
  return spacetime_norm(q, traj.dt, 2.0, 2.0);
}

DalembertSplit dalembert_split(const WaveState& state) {
  const SpectralField ux = derivative(state.u, 1);
  return {0.5 * (ux + state.v), 0.5 * (ux - state.v)};
}

LocalErrorPair<SpectralField> nls_local_error_oracle(const NlsTrajectory& traj, double tau,
                                                     double mu, int quad_order) {
  const int stride = quadrature_stride(traj, tau, quad_order, "nls_local_error_oracle");
  const int q = quad_order;
  const double h = tau / q;
  const TorusGrid grid = traj.front().grid();
  const int n = grid.n_modes();
  const int m = 4 * n;  // degree-5 products stay alias-free on the 4x grid

  const SpectralField& u0 = traj.states[0];
  const SpectralField& u_tau = traj.states[static_cast<std::size_t>(q) * stride];
  SpectralField direct = u_tau - lri_step(u0, tau, mu);

  // Trapezoid weights of the outer (s) and inner (sigma over [0, s]) rules.
  auto outer_w = [&](int j) { return (j == 0 || j == q) ? 0.5 * h : h; };
  auto inner_w = [&](int i, int j) { return (i == 0 || i == j) ? 0.5 * h : h; };

  // D(sigma, s) = a(sigma) F Y + b(sigma) F Z + c(sigma) F W with
  // F = e^{2i(sigma - s) d_xx}, Y = |u|^2 conj(u), Z = conj(u), W = d_x conj(u),
  // a = mu u^2, b = -2 mu u^2 |u|^2 - 2 (d_x u)^2, c = -4 u d_x u.
  // F is a Fourier multiplier, so the s-sum collapses into one multiplier per
  // sigma node before the pointwise products are formed.
  std::vector<cplx> integral(n);
  for (int i = 0; i <= q; ++i) {
    const double sigma = i * h;
    std::vector<cplx> mult(n);
    bool any = false;
    for (int j = std::max(i, 1); j <= q; ++j) {
      const double s = j * h;
      const double wgt = outer_w(j) * inner_w(i, j);
      const double t = 2.0 * (sigma - s);
      for (int slot = 0; slot < n; ++slot) {
        const double k = grid.freq(slot);
        mult[slot] += wgt * std::polar(1.0, -t * k * k);
      }
      any = true;
    }
    if (!any) continue;

    const SpectralField& u = traj.states[static_cast<std::size_t>(i) * stride];
    const SpectralField ubar = u.conj();
    const SpectralField y = dealiased_product({{u}, {ubar}, {ubar}});
    const SpectralField w = derivative(ubar, 1);
    auto apply = [&](const SpectralField& f) {
      return f.map_modes([&](int k, cplx c) { return c * mult[grid.slot(k)]; }, false);
    };
    const auto yv = to_physical_nodes(apply(y), m);
    const auto zv = to_physical_nodes(apply(ubar), m);
    const auto wv = to_physical_nodes(apply(w), m);
    const auto uv = to_physical_nodes(u, m);
    const auto uxv = to_physical_nodes(derivative(u, 1), m);

    std::vector<cplx> d(m);
    for (int p = 0; p < m; ++p) {
      const cplx uu = uv[p] * uv[p];
      const double mod2 = std::norm(uv[p]);
      const cplx a = mu * uu;
      const cplx b = -2.0 * mu * uu * mod2 - 2.0 * uxv[p] * uxv[p];
      const cplx c = -4.0 * uv[p] * uxv[p];
      d[p] = a * yv[p] + b * zv[p] + c * wv[p];
    }
    const SpectralField dfield = free_flow(from_physical_nodes(d, grid), tau - sigma);
    const auto dc = dfield.coeffs();
    for (int slot = 0; slot < n; ++slot) integral[slot] += mu * dc[slot];
  }
  return {std::move(direct), SpectralField(grid, std::move(integral), false)};
}

LocalErrorPair<WaveState> wave_local_error_oracle(const WaveTrajectory& traj, double tau,
                                                  const Nonlinearity& nl, int quad_order) {
  const int stride = quadrature_stride(traj, tau, quad_order, "wave_local_error_oracle");
  const int q = quad_order;
  const double h = tau / q;
  const TorusGrid grid = traj.front().grid();

  const WaveState& w0 = traj.states[0];
  const WaveState& w_tau = traj.states[static_cast<std::size_t>(q) * stride];
  WaveState direct = w_tau - corrected_lie_step(w0, tau, nl);

  // inner(s_j) = \int_0^{s_j} e^{sigma A} B(U(sigma)) dsigma, cumulative trapezoid;
  // outer = \int_0^tau (tau - s) e^{-2sA} inner(s) ds.
  WaveState inner = WaveState::zeros(grid);
  WaveState outer = WaveState::zeros(grid);
  WaveState prev = wave_flow(b_map(w0, nl), 0.0);
  for (int j = 1; j <= q; ++j) {
    const double s = j * h;
    const WaveState cur = wave_flow(b_map(traj.states[static_cast<std::size_t>(j) * stride], nl), s);
    inner += (0.5 * h) * (prev + cur);
    const double wgt = (j == q) ? 0.5 * h : h;
    outer += (wgt * (tau - s)) * wave_flow(inner, -2.0 * s);
    prev = cur;
  }
  return {std::move(direct), wave_flow(outer, tau)};
}

double relative_discrepancy(const LocalErrorPair<SpectralField>& pair) {
  const double ref = sobolev_norm(pair.direct, 0.0);
  return sobolev_norm(pair.direct - pair.integral, 0.0) / ref;
}

double relative_discrepancy(const LocalErrorPair<WaveState>& pair) {
  const double ref = h1xl2_norm(pair.direct);
  return h1xl2_norm(pair.direct - pair.integral) / ref;
}

}  // namespace lowreg
