#pragma once

// Independent reference computations used by the test suites. Nothing here
// calls into the library.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

/// Composite Gauss-Legendre quadrature of f over [a, b].
template <class T, class F>
T integrate(F&& f, double a, double b, int panels, int order = 16) {
  static thread_local std::vector<GaussLegendre> cache;
  if (static_cast<int>(cache.size()) <= order) cache.resize(order + 1, GaussLegendre(1));
  if (static_cast<int>(cache[order].x.size()) != order) cache[order] = GaussLegendre(order);
  const GaussLegendre& gl = cache[order];
  const double h = (b - a) / panels;
  T acc{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < order; ++i) acc += (0.5 * h * gl.w[i]) * f(mid + 0.5 * h * gl.x[i]);
  }
  return acc;
}

inline Mat2 matmul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

/// exp(M) by scaling and squaring with a 20-term Taylor series.
inline Mat2 expm(Mat2 m) {
  double norm = 0.0;
  for (auto& r : m)
    for (double v : r) norm = std::max(norm, std::abs(v));
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const double s = std::ldexp(1.0, -squarings);
  for (auto& r : m)
    for (double& v : r) v *= s;
  Mat2 result{{{1.0, 0.0}, {0.0, 1.0}}};
  Mat2 term = result;
  for (int k = 1; k <= 20; ++k) {
    term = matmul(term, m);
    for (auto& r : term)
      for (double& v : r) v /= k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) result[i][j] += term[i][j];
  }
  for (int i = 0; i < squarings; ++i) result = matmul(result, result);
  return result;
}

/// Mode-k block of the wave generator A(u, v) = (v, u_xx).
inline Mat2 wave_generator(int k) { return {{{0.0, 1.0}, {-double(k) * k, 0.0}}}; }

/// e^{tA} on mode k.
inline Mat2 wave_exp(int k, double t) {
  Mat2 a = wave_generator(k);
  for (auto& r : a)
    for (double& v : r) v *= t;
  return expm(a);
}

struct MatAcc {
  Mat2 m{};
  MatAcc& operator+=(const MatAcc& o) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] += o.m[i][j];
    return *this;
  }
  friend MatAcc operator*(double s, MatAcc a) {
    for (auto& r : a.m)
      for (double& v : r) v *= s;
    return a;
  }
};

/// tau^{-2} \int_0^tau (tau - s) e^{-2sA} ds on mode k by quadrature.
inline Mat2 phi2_quadrature(int k, double tau) {
  const int panels = std::max(8, static_cast<int>(4.0 * std::abs(k) * tau) + 8);
  MatAcc acc = integrate<MatAcc>(
      [&](double s) { return (tau - s) * MatAcc{wave_exp(k, -2.0 * s)}; }, 0.0, tau, panels);
  for (auto& r : acc.m)
    for (double& v : r) v /= tau * tau;
  return acc.m;
}

/// tau^{-1} \int_0^tau e^{2isk^2} ds by quadrature.
inline cplx phi1_quadrature(int k, double tau) {
  const double freq = 2.0 * double(k) * k;
  const int panels = std::max(8, static_cast<int>(freq * tau) + 8);
  return integrate<cplx>([&](double s) { return std::polar(1.0, freq * s); }, 0.0, tau, panels) /
         tau;
}

/// Coefficients (k = -N/2 .. N/2-1) of a product of 2 or 3 trigonometric
/// polynomials by direct convolution, truncated to the same modes. Inputs
/// must have zero Nyquist entries; the Nyquist slot of the result collects
/// the +-N/2 components, matching the cosine reading of that slot.
inline std::vector<cplx> convolve(const std::vector<std::vector<cplx>>& factors) {
  const int n = static_cast<int>(factors.front().size());
  const int h = n / 2;
  // Full-support representation on [-2n, 2n].
  std::vector<cplx> acc(4 * n + 1);
  const int off = 2 * n;
  for (int s = 0; s < n; ++s) acc[off + s - h] = factors[0][s];
  for (std::size_t f = 1; f < factors.size(); ++f) {
    std::vector<cplx> next(acc.size());
    for (int i = 0; i < static_cast<int>(acc.size()); ++i) {
      if (acc[i] == cplx(0.0)) continue;
      for (int s = 0; s < n; ++s) {
        const int k = (i - off) + (s - h);
        if (k + off >= 0 && k + off < static_cast<int>(next.size()))
          next[k + off] += acc[i] * factors[f][s];
      }
    }
    acc = std::move(next);
  }
  std::vector<cplx> out(n);
  for (int s = 0; s < n; ++s) out[s] = acc[off + s - h];
  out[0] += acc[off + h];
  return out;
}

/// Classical RK4 for y' = f(t, y) with a fixed step; y is a small array.
template <class Y, class F>
Y rk4(F&& f, Y y, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    const Y k1 = f(t, y);
    Y tmp = y;
    for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
    const Y k2 = f(t + 0.5 * h, tmp);
    for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
    const Y k3 = f(t + 0.5 * h, tmp);
    for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + h * k3[j];
    const Y k4 = f(t + h, tmp);
    for (std::size_t j = 0; j < y.size(); ++j)
      y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    t += h;
  }
  return y;
}

/// Solution of u'' = g(u) at time t with (u, u')(0) = (u0, v0).
inline std::array<double, 2> scalar_wave_ode(const std::function<double(double)>& g, double u0,
                                             double v0, double t, int steps = 20000) {
  return rk4([&](double, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], g(y[0])};
  }, std::array<double, 2>{u0, v0}, 0.0, t, steps);
}

/// Least-squares slope of log(err) against log(h).
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
  const double n = static_cast<double>(h.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    mx += std::log(h[i]);
    my += std::log(err[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    sxx += (std::log(h[i]) - mx) * (std::log(h[i]) - mx);
    sxy += (std::log(h[i]) - mx) * (std::log(err[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace oracle
