#pragma once

// Fourier pseudospectral core on the torus [0, 2*pi).
//
// Conventions used throughout the library:
//   u(x) = sum_k u_k e^{ikx},   u_k = (2 pi)^{-1} \int_0^{2pi} u(x) e^{-ikx} dx,
// with k in {-N/2, ..., N/2 - 1}. Sobolev norms are coefficient sums
// (no 2 pi factor); Lebesgue norms use the physical measure dx, so that
// ||u||_{L^2} = sqrt(2 pi) ||u||_{H^0}.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace lowreg {

using cplx = std::complex<double>;

/// Equispaced grid on the torus with N Fourier modes, N a power of two >= 8.
class TorusGrid {
 public:
  explicit TorusGrid(int n_modes);

  int n_modes() const noexcept { return n_; }
  int min_freq() const noexcept { return -n_ / 2; }
  int max_freq() const noexcept { return n_ / 2 - 1; }
  int nyquist() const noexcept { return -n_ / 2; }

  /// Wavenumber stored at coefficient slot `slot`.
  int freq(int slot) const noexcept { return slot - n_ / 2; }
  /// Coefficient slot of wavenumber k (must be representable).
  int slot(int k) const noexcept { return k + n_ / 2; }
  bool contains(int k) const noexcept { return k >= min_freq() && k <= max_freq(); }

  double point(int j) const noexcept;
  std::vector<double> points() const;
  std::vector<int> freqs() const;

  /// Grid with `factor` times as many modes.
  TorusGrid refined(int factor = 2) const { return TorusGrid(n_ * factor); }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  int n_;
};

/// A periodic function stored by its Fourier coefficients in k-order
/// -N/2 .. N/2-1. Fields are immutable values; every operation returns a
/// new field.
class SpectralField {
 public:
  SpectralField(TorusGrid grid, std::vector<cplx> coeffs, bool is_real = false);

  static SpectralField zeros(TorusGrid grid, bool is_real = false);
  static SpectralField constant(TorusGrid grid, cplx value);
  /// value * e^{ikx}
  static SpectralField mode(TorusGrid grid, int k, cplx value = 1.0);

  const TorusGrid& grid() const noexcept { return grid_; }
  int n_modes() const noexcept { return grid_.n_modes(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx coeff(int k) const { return coeffs_[grid_.slot(k)]; }
  bool is_real() const noexcept { return is_real_; }

  /// Coefficient-space conjugation u_k -> conj(u_{-k}). The Nyquist slot has
  /// no mirror on the grid and is mapped onto itself.
  SpectralField conj() const;

  /// Hermitian projection (u_k + conj(u_{-k}))/2 with real Nyquist entry;
  /// the result carries is_real = true.
  SpectralField project_real() const;

  /// Largest |u_{-k} - conj(u_k)| (and |Im u_{-N/2}|) relative to max |u_k|.
  double hermitian_defect() const;

  bool all_finite() const noexcept;

  /// Spectral embedding into (or truncation onto) another grid.
  SpectralField resampled(TorusGrid target) const;

  /// Returns the field with u_k replaced by fn(k, u_k).
  template <class Fn>
  SpectralField map_modes(Fn&& fn, bool keeps_real) const {
    std::vector<cplx> out(coeffs_.size());
    for (int s = 0; s < grid_.n_modes(); ++s) out[s] = fn(grid_.freq(s), coeffs_[s]);
    return SpectralField(grid_, std::move(out), is_real_ && keeps_real);
  }

  SpectralField& operator+=(const SpectralField& rhs);
  SpectralField& operator-=(const SpectralField& rhs);
  SpectralField& operator*=(cplx s);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  TorusGrid grid_;
  std::vector<cplx> coeffs_;
  bool is_real_;
};

/// (u, v) ~ (u, d_t u), both real and on one grid.
struct WaveState {
  WaveState(SpectralField u_in, SpectralField v_in);
  static WaveState zeros(TorusGrid grid);

  const TorusGrid& grid() const noexcept { return u.grid(); }
  bool all_finite() const noexcept { return u.all_finite() && v.all_finite(); }

  WaveState& operator+=(const WaveState& rhs);
  WaveState& operator-=(const WaveState& rhs);
  WaveState& operator*=(double s);
  friend WaveState operator+(WaveState a, const WaveState& b) { return a += b; }
  friend WaveState operator-(WaveState a, const WaveState& b) { return a -= b; }
  friend WaveState operator*(double s, WaveState a) { return a *= s; }

  SpectralField u;
  SpectralField v;
};

/// Parameters of the random rough-data generator.
struct RoughDataSpec {
  double theta = 1.0;
  double delta = 0.01;
  std::uint64_t seed = 0;
  bool real_valued = false;
  double amplitude = 1.0;

  void validate() const;
  /// Exponent of the coefficient decay law (1+|k|)^{-exponent}.
  double decay_exponent() const noexcept { return theta + 0.5 + delta; }
};

// ---- transforms ------------------------------------------------------------

/// Values of the trigonometric polynomial at M = oversample * N equispaced
/// nodes x_j = 2 pi j / M. oversample must be 1, 2 or 4.
std::vector<cplx> to_physical(const SpectralField& f, int oversample = 1);

/// Inverse of to_physical(., 1): values at the N nodes of `grid`.
SpectralField from_physical(std::span<const cplx> values, TorusGrid grid,
                            bool is_real = false);

/// Evaluation at an arbitrary multiple M of N nodes, and the truncating
/// inverse. Used by the dealiased products.
std::vector<cplx> to_physical_nodes(const SpectralField& f, int n_nodes,
                                    bool conjugate = false);
SpectralField from_physical_nodes(std::span<const cplx> values, TorusGrid grid,
                                  bool is_real = false);

// ---- spectral operators ----------------------------------------------------

/// Multiplies u_k by (ik)^order, order in {1, 2}. The first derivative zeroes
/// the Nyquist mode; the second keeps it with symbol -(N/2)^2.
SpectralField derivative(const SpectralField& f, int order);

/// f(x + shift).
SpectralField translate(const SpectralField& f, double shift);

struct Factor {
  const SpectralField& field;
  bool conjugate = false;
};

/// Pointwise product of 2 or 3 factors on the 2x oversampled grid, truncated
/// back to N modes. Exact for cubic products of fields on the grid.
SpectralField dealiased_product(std::initializer_list<Factor> factors);
SpectralField dealiased_product(std::span<const Factor> factors);

/// Product of two fields returned on the 2N-mode grid without truncation,
/// so that the full bandwidth of the product is kept.
SpectralField full_product(const Factor& a, const Factor& b);

// ---- norms -----------------------------------------------------------------

/// sqrt(sum_k (1 + k^2)^r |u_k|^2)
double sobolev_norm(const SpectralField& f, double r);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (\int_0^{2pi} |f|^p dx)^{1/p} by the rectangle rule on the 4x grid;
/// p = kInfinity gives the maximum modulus on that grid.
double lebesgue_norm(const SpectralField& f, double p);

/// Mixed L^{p_time}_t L^{p_space}_x norm of uniformly spaced samples, using
/// the composite trapezoid rule in time.
double spacetime_norm(std::span<const SpectralField> samples, double dt,
                      double p_space, double p_time);

// ---- data ------------------------------------------------------------------

/// u_k = amplitude (1+|k|)^{-theta-1/2-delta} e^{i phi_k}, phases drawn from
/// per-k streams of the seeded shift-register generator.
SpectralField random_rough_field(const RoughDataSpec& spec, TorusGrid grid);

/// (1+|k|)^{-decay} with the same phase law; used for smooth test data.
SpectralField random_field_with_decay(double decay, std::uint64_t seed,
                                      bool real_valued, double amplitude,
                                      TorusGrid grid);

}  // namespace lowreg
