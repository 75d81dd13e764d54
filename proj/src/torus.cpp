#include "lowreg/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "lowreg/rng.hpp"

namespace lowreg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* op) {
  if (!(a.grid() == b.grid()))
    throw std::invalid_argument(std::string(op) + ": fields live on different grids");
}

// Slot of wavenumber k in an unshifted DFT array of length m.
int dft_index(int k, int m) { return k >= 0 ? k : k + m; }

}  // namespace

// ---- TorusGrid -------------------------------------------------------------

TorusGrid::TorusGrid(int n_modes) : n_(n_modes) {
  if (n_modes < 8 || !is_power_of_two(n_modes))
    throw std::invalid_argument("TorusGrid: n_modes must be a power of two >= 8, got " +
                                std::to_string(n_modes));
}

double TorusGrid::point(int j) const noexcept { return kTwoPi * j / n_; }

std::vector<double> TorusGrid::points() const {
  std::vector<double> x(n_);
  for (int j = 0; j < n_; ++j) x[j] = point(j);
  return x;
}

std::vector<int> TorusGrid::freqs() const {
  std::vector<int> k(n_);
  for (int s = 0; s < n_; ++s) k[s] = freq(s);
  return k;
}

// ---- SpectralField ---------------------------------------------------------

SpectralField::SpectralField(TorusGrid grid, std::vector<cplx> coeffs, bool is_real)
    : grid_(grid), coeffs_(std::move(coeffs)), is_real_(is_real) {
  if (static_cast<int>(coeffs_.size()) != grid_.n_modes())
    throw std::invalid_argument("SpectralField: coefficient count " +
                                std::to_string(coeffs_.size()) + " != n_modes " +
                                std::to_string(grid_.n_modes()));
}

SpectralField SpectralField::zeros(TorusGrid grid, bool is_real) {
  return SpectralField(grid, std::vector<cplx>(grid.n_modes()), is_real);
}

SpectralField SpectralField::constant(TorusGrid grid, cplx value) {
  std::vector<cplx> c(grid.n_modes());
  c[grid.slot(0)] = value;
  return SpectralField(grid, std::move(c), value.imag() == 0.0);
}

SpectralField SpectralField::mode(TorusGrid grid, int k, cplx value) {
  if (!grid.contains(k)) throw std::invalid_argument("SpectralField::mode: k not on grid");
  std::vector<cplx> c(grid.n_modes());
  c[grid.slot(k)] = value;
  return SpectralField(grid, std::move(c), false);
}

SpectralField SpectralField::conj() const {
  const int n = grid_.n_modes();
  std::vector<cplx> out(n);
  out[0] = std::conj(coeffs_[0]);  // Nyquist slot
  for (int s = 1; s < n; ++s) out[s] = std::conj(coeffs_[n - s]);
  return SpectralField(grid_, std::move(out), is_real_);
}

SpectralField SpectralField::project_real() const {
  const int n = grid_.n_modes();
  std::vector<cplx> out(n);
  out[0] = coeffs_[0].real();
  for (int s = 1; s < n; ++s) out[s] = 0.5 * (coeffs_[s] + std::conj(coeffs_[n - s]));
  return SpectralField(grid_, std::move(out), true);
}

double SpectralField::hermitian_defect() const {
  const int n = grid_.n_modes();
  double scale = 0.0;
  for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double defect = std::abs(coeffs_[0].imag());
  for (int s = 1; s < n; ++s)
    defect = std::max(defect, std::abs(coeffs_[s] - std::conj(coeffs_[n - s])));
  return defect / scale;
}

bool SpectralField::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const cplx& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

SpectralField SpectralField::resampled(TorusGrid target) const {
  std::vector<cplx> out(target.n_modes());
  const int kmax = std::min(grid_.max_freq(), target.max_freq());
  const int kmin = std::max(grid_.min_freq(), target.min_freq());
  for (int k = kmin; k <= kmax; ++k) out[target.slot(k)] = coeffs_[grid_.slot(k)];
  // The coarse Nyquist mode is a cosine; split it evenly between +-N/2.
  if (target.n_modes() > grid_.n_modes()) {
    const int k = grid_.nyquist();
    const cplx c = coeffs_[grid_.slot(k)];
    out[target.slot(k)] = 0.5 * c;
    out[target.slot(-k)] = 0.5 * c;
  }
  return SpectralField(target, std::move(out), is_real_);
}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
  require_same_grid(*this, rhs, "operator+=");
  for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] += rhs.coeffs_[s];
  is_real_ = is_real_ && rhs.is_real_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& rhs) {
  require_same_grid(*this, rhs, "operator-=");
  for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] -= rhs.coeffs_[s];
  is_real_ = is_real_ && rhs.is_real_;
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  is_real_ = is_real_ && s.imag() == 0.0;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

// ---- WaveState -------------------------------------------------------------

WaveState::WaveState(SpectralField u_in, SpectralField v_in)
    : u(std::move(u_in)), v(std::move(v_in)) {
  require_same_grid(u, v, "WaveState");
  if (!u.is_real()) u = u.project_real();
  if (!v.is_real()) v = v.project_real();
}

WaveState WaveState::zeros(TorusGrid grid) {
  return WaveState(SpectralField::zeros(grid, true), SpectralField::zeros(grid, true));
}

WaveState& WaveState::operator+=(const WaveState& rhs) {
  u += rhs.u;
  v += rhs.v;
  return *this;
}

WaveState& WaveState::operator-=(const WaveState& rhs) {
  u -= rhs.u;
  v -= rhs.v;
  return *this;
}

WaveState& WaveState::operator*=(double s) {
  u *= s;
  v *= s;
  return *this;
}

void RoughDataSpec::validate() const {
  if (!(theta >= 0.0)) throw std::invalid_argument("RoughDataSpec: theta must be >= 0");
  if (!(delta > 0.0)) throw std::invalid_argument("RoughDataSpec: delta must be > 0");
  if (!(amplitude > 0.0)) throw std::invalid_argument("RoughDataSpec: amplitude must be > 0");
}

// ---- transforms ------------------------------------------------------------

std::vector<cplx> to_physical_nodes(const SpectralField& f, int n_nodes, bool conjugate) {
  const TorusGrid& g = f.grid();
  if (n_nodes < g.n_modes() || n_nodes % g.n_modes() != 0)
    throw std::invalid_argument("to_physical: node count must be a multiple of N");
  std::vector<cplx> spec(n_nodes);
  const auto c = f.coeffs();
  for (int s = 1; s < g.n_modes(); ++s) {
    const int k = g.freq(s);
    if (conjugate)
      spec[dft_index(-k, n_nodes)] = std::conj(c[s]);
    else
      spec[dft_index(k, n_nodes)] = c[s];
  }
  // Nyquist mode: c (-1)^j on the base grid, c cos(N x / 2) between nodes.
  const cplx nyq = conjugate ? std::conj(c[0]) : c[0];
  if (n_nodes == g.n_modes()) {
    spec[n_nodes / 2] = nyq;
  } else {
    spec[dft_index(g.nyquist(), n_nodes)] = 0.5 * nyq;
    spec[dft_index(-g.nyquist(), n_nodes)] = 0.5 * nyq;
  }
  std::vector<cplx> out(n_nodes);
  detail::fft_backward(spec, out);
  return out;
}

std::vector<cplx> to_physical(const SpectralField& f, int oversample) {
  if (oversample != 1 && oversample != 2 && oversample != 4)
    throw std::invalid_argument("to_physical: oversample must be 1, 2 or 4");
  return to_physical_nodes(f, oversample * f.n_modes());
}

SpectralField from_physical_nodes(std::span<const cplx> values, TorusGrid grid, bool is_real) {
  const int m = static_cast<int>(values.size());
  if (m < grid.n_modes() || m % grid.n_modes() != 0)
    throw std::invalid_argument("from_physical: sample count must be a multiple of N");
  std::vector<cplx> spec(m);
  detail::fft_forward(values, spec);
  std::vector<cplx> c(grid.n_modes());
  const double scale = 1.0 / m;
  for (int s = 1; s < grid.n_modes(); ++s) c[s] = spec[dft_index(grid.freq(s), m)] * scale;
  // Nyquist slot holds the cosine projection of the +-N/2 content.
  c[0] = (m == grid.n_modes()) ? spec[m / 2] * scale
                               : (spec[dft_index(grid.nyquist(), m)] +
                                  spec[dft_index(-grid.nyquist(), m)]) * scale;
  SpectralField f(grid, std::move(c), false);
  return is_real ? f.project_real() : f;
}

SpectralField from_physical(std::span<const cplx> values, TorusGrid grid, bool is_real) {
  if (static_cast<int>(values.size()) != grid.n_modes())
    throw std::invalid_argument("from_physical: expected " + std::to_string(grid.n_modes()) +
                                " samples, got " + std::to_string(values.size()));
  return from_physical_nodes(values, grid, is_real);
}

// ---- operators -------------------------------------------------------------

SpectralField derivative(const SpectralField& f, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("derivative: order must be 1 or 2");
  const int nyq = f.grid().nyquist();
  if (order == 1)
    return f.map_modes(
        [nyq](int k, cplx c) { return k == nyq ? cplx{} : cplx(0.0, k) * c; }, true);
  return f.map_modes([](int k, cplx c) { return -static_cast<double>(k) * k * c; }, true);
}

SpectralField translate(const SpectralField& f, double shift) {
  const int nyq = f.grid().nyquist();
  return f.map_modes(
      [&](int k, cplx c) {
        // The Nyquist mode is a cosine on the grid; translate it as such.
        if (k == nyq) return c * std::cos(k * shift);
        return c * std::polar(1.0, k * shift);
      },
      true);
}

SpectralField dealiased_product(std::span<const Factor> factors) {
  if (factors.size() < 2 || factors.size() > 3)
    throw std::invalid_argument("dealiased_product: expects 2 or 3 factors");
  const SpectralField& first = factors.begin()->field;
  const TorusGrid grid = first.grid();
  bool real = true;
  for (const auto& fac : factors) {
    require_same_grid(first, fac.field, "dealiased_product");
    real = real && fac.field.is_real();
  }
  const int m = 2 * grid.n_modes();
  std::vector<cplx> acc;
  for (const auto& fac : factors) {
    auto vals = to_physical_nodes(fac.field, m, fac.conjugate);
    if (acc.empty()) {
      acc = std::move(vals);
    } else {
      for (int j = 0; j < m; ++j) acc[j] *= vals[j];
    }
  }
  return from_physical_nodes(acc, grid, real);
}

SpectralField dealiased_product(std::initializer_list<Factor> factors) {
  return dealiased_product(std::span<const Factor>(factors.begin(), factors.size()));
}

SpectralField full_product(const Factor& a, const Factor& b) {
  require_same_grid(a.field, b.field, "full_product");
  const TorusGrid fine = a.field.grid().refined(2);
  const int m = 2 * fine.n_modes();
  auto va = to_physical_nodes(a.field, m, a.conjugate);
  const auto vb = to_physical_nodes(b.field, m, b.conjugate);
  for (int j = 0; j < m; ++j) va[j] *= vb[j];
  return from_physical_nodes(va, fine, a.field.is_real() && b.field.is_real());
}

// ---- norms -----------------------------------------------------------------

double sobolev_norm(const SpectralField& f, double r) {
  const auto c = f.coeffs();
  double sum = 0.0;
  if (r == 0.0) {
    for (const auto& z : c) sum += std::norm(z);
  } else if (r == 1.0) {
    for (int s = 0; s < f.n_modes(); ++s) {
      const double k = f.grid().freq(s);
      sum += (1.0 + k * k) * std::norm(c[s]);
    }
  } else {
    for (int s = 0; s < f.n_modes(); ++s) {
      const double k = f.grid().freq(s);
      sum += std::pow(1.0 + k * k, r) * std::norm(c[s]);
    }
  }
  return std::sqrt(sum);
}

double lebesgue_norm(const SpectralField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lebesgue_norm: p must be >= 1");
  const auto vals = to_physical(f, 4);
  if (std::isinf(p)) {
    double mx = 0.0;
    for (const auto& v : vals) mx = std::max(mx, std::abs(v));
    return mx;
  }
  double sum = 0.0;
  if (p == 2.0) {
    for (const auto& v : vals) sum += std::norm(v);
  } else if (p == 4.0) {
    for (const auto& v : vals) {
      const double a2 = std::norm(v);
      sum += a2 * a2;
    }
  } else {
    for (const auto& v : vals) sum += std::pow(std::abs(v), p);
  }
  return std::pow(sum * kTwoPi / static_cast<double>(vals.size()), 1.0 / p);
}

double spacetime_norm(std::span<const SpectralField> samples, double dt, double p_space,
                      double p_time) {
  if (samples.size() < 2) throw std::invalid_argument("spacetime_norm: needs >= 2 samples");
  if (!(dt > 0.0)) throw std::invalid_argument("spacetime_norm: dt must be > 0");
  if (!(p_time >= 1.0) || std::isinf(p_time))
    throw std::invalid_argument("spacetime_norm: p_time must be finite and >= 1");
  double sum = 0.0;
  const std::size_t last = samples.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const double w = (i == 0 || i == last) ? 0.5 : 1.0;
    sum += w * std::pow(lebesgue_norm(samples[i], p_space), p_time);
  }
  return std::pow(sum * dt, 1.0 / p_time);
}

// ---- data ------------------------------------------------------------------

SpectralField random_field_with_decay(double decay, std::uint64_t seed, bool real_valued,
                                      double amplitude, TorusGrid grid) {
  const double two_pi = kTwoPi;
  auto magnitude = [&](int k) { return amplitude * std::pow(1.0 + std::abs(k), -decay); };
  auto phase = [&](int k) {
    ShiftRegisterRng rng(seed, static_cast<std::uint64_t>(static_cast<std::int64_t>(k)));
    return two_pi * rng.uniform();
  };
  std::vector<cplx> c(grid.n_modes());
  if (real_valued) {
    // Draw k >= 0 and mirror; k = 0 carries a real sign.
    for (int k = 0; k <= grid.max_freq(); ++k) {
      const double phi = phase(k);
      const double mag = magnitude(k);
      if (k == 0) {
        c[grid.slot(0)] = (std::cos(phi) >= 0.0 ? 1.0 : -1.0) * mag;
      } else {
        const cplx z = std::polar(mag, phi);
        c[grid.slot(k)] = z;
        c[grid.slot(-k)] = std::conj(z);
      }
    }
    return SpectralField(grid, std::move(c), true);
  }
  for (int s = 1; s < grid.n_modes(); ++s) {
    const int k = grid.freq(s);
    c[s] = std::polar(magnitude(k), phase(k));
  }
  return SpectralField(grid, std::move(c), false);
}

SpectralField random_rough_field(const RoughDataSpec& spec, TorusGrid grid) {
  spec.validate();
  return random_field_with_decay(spec.decay_exponent(), spec.seed, spec.real_valued,
                                 spec.amplitude, grid);
}

}  // namespace lowreg
