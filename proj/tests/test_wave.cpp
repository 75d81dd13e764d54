#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lowreg/errors.hpp"
#include "lowreg/wave.hpp"
#include "support/oracles.hpp"

using namespace lowreg;
using std::numbers::pi;

namespace {

const Nonlinearity kQuadratic(NonlinearityPreset::quadratic);
const Nonlinearity kSine(NonlinearityPreset::sine);
const Nonlinearity kZero(NonlinearityPreset::zero);

double block_diff(const Block2& b, const oracle::Mat2& m) {
  return std::max({std::abs(b.a11 - m[0][0]), std::abs(b.a12 - m[0][1]),
                   std::abs(b.a21 - m[1][0]), std::abs(b.a22 - m[1][1])});
}

WaveState constant_state(TorusGrid g, double u, double v) {
  return WaveState(SpectralField::constant(g, u), SpectralField::constant(g, v));
}

WaveState smooth_state(int n, std::uint64_t seed) {
  const TorusGrid g(n);
  return WaveState(random_field_with_decay(6.0, seed, true, 1.0, g),
                   random_field_with_decay(5.0, seed + 1, true, 1.0, g));
}

SpectralField sin_x(TorusGrid g) {
  return SpectralField::mode(g, 1, cplx(0, -0.5)) + SpectralField::mode(g, -1, cplx(0, 0.5));
}

SpectralField cos_kx(TorusGrid g, int k, double a = 1.0) {
  return SpectralField::mode(g, k, 0.5 * a) + SpectralField::mode(g, -k, 0.5 * a);
}

double state_diff(const WaveState& a, const WaveState& b) {
  return sobolev_norm(a.u - b.u, 1.0) + sobolev_norm(a.v - b.v, 0.0);
}

}  // namespace

TEST(Nonlinearity, FiniteDifferenceConsistency) {
  const double h = 1e-4;
  for (auto preset : {NonlinearityPreset::quadratic, NonlinearityPreset::cubic_minus,
                      NonlinearityPreset::sine, NonlinearityPreset::zero}) {
    const Nonlinearity nl(preset);
    for (double z = -3.0; z <= 3.0; z += 0.25) {
      EXPECT_LT(std::abs((nl.g(z + h) - nl.g(z - h)) / (2 * h) - nl.g1(z)), 10 * h * h);
      EXPECT_LT(std::abs((nl.g1(z + h) - nl.g1(z - h)) / (2 * h) - nl.g2(z)), 10 * h * h);
    }
  }
}

TEST(Nonlinearity, GrowthWitness) {
  for (auto preset : {NonlinearityPreset::quadratic, NonlinearityPreset::cubic_minus,
                      NonlinearityPreset::sine, NonlinearityPreset::zero}) {
    const Nonlinearity nl(preset);
    double prev = -1.0;
    for (double z = -5.0; z <= 5.0; z += 0.05) {
      const double r = std::abs(z);
      EXPECT_LE(std::abs(nl.g(z)) + std::abs(nl.g1(z)) + std::abs(nl.g2(z)), nl.growth(r) + 1e-12);
    }
    for (double r = 0.0; r <= 5.0; r += 0.1) {
      EXPECT_GE(nl.growth(r), prev);
      prev = nl.growth(r);
    }
  }
  EXPECT_EQ(Nonlinearity::from_string("sine").name(), "sine");
  EXPECT_THROW(Nonlinearity::from_string("cubic"), std::invalid_argument);
}

TEST(WaveFlow, BlocksMatchMatrixExponential) {
  EXPECT_LT(block_diff(wave_flow_block(1, pi / 2), {{{0.0, 1.0}, {-1.0, 0.0}}}), 1e-15);
  EXPECT_LT(block_diff(wave_flow_block(1, pi / 2), oracle::wave_exp(1, pi / 2)), 1e-14);
  const Block2 z = wave_flow_block(0, 0.7);
  EXPECT_EQ(z.a11, 1.0);
  EXPECT_EQ(z.a12, 0.7);
  EXPECT_EQ(z.a21, 0.0);
  EXPECT_EQ(z.a22, 1.0);
  for (int k : {0, 1, 2, 5, 17, 64})
    for (double t : {-0.9, 1e-7, 0.01, 0.33, 2.0}) {
      const double scale = std::max(1.0, double(k));
      EXPECT_LT(block_diff(wave_flow_block(k, t), oracle::wave_exp(k, t)), 1e-12 * scale)
          << "k=" << k << " t=" << t;
    }
}

TEST(WaveFlow, SeriesSwitchIsContinuous) {
  for (int k : {1, 3}) {
    const double t = 1e-4 / k;
    const Block2 a = wave_flow_block(k, t * (1 - 1e-9));
    const Block2 b = wave_flow_block(k, t * (1 + 1e-9));
    EXPECT_LT(std::abs(a.a12 - b.a12), 1e-12);
    EXPECT_LT(block_diff(a, oracle::wave_exp(k, t * (1 - 1e-9))), 1e-15);
  }
}

TEST(WaveFlow, PerModeEnergyAndGroupLaw) {
  const auto w = smooth_state(64, 3);
  const auto f = wave_flow(w, 0.731);
  for (int k = -31; k < 32; ++k) {
    if (k == 0) continue;
    const double e0 = k * k * std::norm(w.u.coeff(k)) + std::norm(w.v.coeff(k));
    const double e1 = k * k * std::norm(f.u.coeff(k)) + std::norm(f.v.coeff(k));
    EXPECT_NEAR(e1, e0, 1e-13 * std::max(e0, 1e-300));
  }
  const auto ab = wave_flow(wave_flow(w, 0.4), 0.55);
  const auto c = wave_flow(w, 0.95);
  EXPECT_LT(state_diff(ab, c), 1e-12);
}

TEST(Phi2, ZeroModeBlock) {
  const Block2 b = phi2_block(0, 0.3);
  EXPECT_EQ(b.a11, 0.5);
  EXPECT_NEAR(b.a12, -0.1, 1e-16);
  EXPECT_EQ(b.a21, 0.0);
  EXPECT_EQ(b.a22, 0.5);
  // Rectangle-rule quadrature of the defining integral with 1e4 nodes.
  const double tau = 0.3;
  const int n = 10000;
  double m11 = 0.0, m12 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double s = (j + 0.5) * tau / n;
    m11 += (tau - s);
    m12 += (tau - s) * (-2.0 * s);
  }
  m11 *= (tau / n) / (tau * tau);
  m12 *= (tau / n) / (tau * tau);
  EXPECT_NEAR(b.a11, m11, 1e-8);
  EXPECT_NEAR(b.a12, m12, 1e-8);
  // Scalar phi_2(0) = 1/2 as the limit of (e^z - z - 1)/z^2.
  const double z = 1e-4;
  EXPECT_NEAR((std::expm1(z) - z) / (z * z), 0.5, 1e-4);
}

TEST(Phi2, MatchesQuadrature) {
  for (double tau : {1e-3, 1e-1, 1.0})
    for (int k = 0; k <= 64; ++k)
      EXPECT_LT(block_diff(phi2_block(k, tau), oracle::phi2_quadrature(k, tau)), 1e-9)
          << "k=" << k << " tau=" << tau;
}

TEST(Phi2, ContinuousAcrossTaylorSwitch) {
  for (int k : {1, 2, 7}) {
    const double tau = 1e-3 / k;
    const Block2 a = phi2_block(k, tau * (1 - 1e-9));
    const Block2 b = phi2_block(k, tau * (1 + 1e-9));
    EXPECT_LT(std::abs(a.a11 - b.a11), 1e-10);
    EXPECT_LT(std::abs(a.a12 - b.a12), 1e-10);
    EXPECT_LT(std::abs(a.a21 - b.a21), 1e-10);
  }
  // k -> 0 limits of the diagonal and the upper off-diagonal entry.
  const Block2 small = phi2_block(1, 1e-7);
  EXPECT_NEAR(small.a11, 0.5, 1e-12);
  EXPECT_NEAR(small.a12 / 1e-7, -1.0 / 3.0, 1e-10);
  EXPECT_THROW(phi2_apply(WaveState::zeros(TorusGrid(16)), 0.0), std::invalid_argument);
}

TEST(Maps, GMapExamples) {
  const TorusGrid g(16);
  const auto c = g_map(constant_state(g, 1.5, 0.0), kQuadratic);
  EXPECT_NEAR(c.v.coeff(0).real(), 2.25, 1e-14);
  EXPECT_EQ(sobolev_norm(c.u, 0.0), 0.0);
  EXPECT_EQ(sobolev_norm(g_map(WaveState::zeros(g), kSine).v, 0.0), 0.0);
  // sin^2 x = (1 - cos 2x)/2
  const auto s = g_map(WaveState(sin_x(g), SpectralField::zeros(g)), kQuadratic);
  EXPECT_NEAR(s.v.coeff(0).real(), 0.5, 1e-15);
  EXPECT_NEAR(s.v.coeff(2).real(), -0.25, 1e-15);
  EXPECT_NEAR(s.v.coeff(-2).real(), -0.25, 1e-15);
}

TEST(Maps, HMapExamples) {
  const TorusGrid g(16);
  const auto h = h_map(constant_state(g, 1.5, -0.5), kQuadratic);
  EXPECT_NEAR(h.u.coeff(0).real(), -2.25, 1e-14);
  EXPECT_NEAR(h.v.coeff(0).real(), -1.5, 1e-14);
  const auto h0 = h_map(WaveState(sin_x(g), SpectralField::zeros(g)), kQuadratic);
  EXPECT_LT(sobolev_norm(h0.v, 0.0), 1e-15);
  const auto hs = h_map(WaveState(SpectralField::zeros(g), cos_kx(g, 1)), kSine);
  EXPECT_LT(sobolev_norm(hs.u, 0.0), 1e-15);
  EXPECT_LT(sobolev_norm(hs.v - cos_kx(g, 1), 0.0), 1e-15);
}

TEST(Maps, BMapExamples) {
  const TorusGrid g(16);
  // g = u^2, u = sin x, v = 0: 2(0 - cos^2 x) + 2 sin^3 x
  //   = -1 - cos 2x + (3 sin x - sin 3x)/2.
  const auto b = b_map(WaveState(sin_x(g), SpectralField::zeros(g)), kQuadratic);
  const auto expect = SpectralField::constant(g, -1.0) - cos_kx(g, 2) + 1.5 * sin_x(g) -
                      0.5 * (SpectralField::mode(g, 3, cplx(0, -0.5)) +
                             SpectralField::mode(g, -3, cplx(0, 0.5)));
  EXPECT_LT(sobolev_norm(b.v - expect, 0.0), 1e-14);
  EXPECT_EQ(sobolev_norm(b.u, 0.0), 0.0);
  // Null-form factor vanishes for v = d_x u: what is left is g'(u) g(u).
  const auto u = cos_kx(g, 2, 1e-9);
  const auto nb = b_map(WaveState(u, derivative(u, 1)), kSine);
  EXPECT_LT(sobolev_norm(nb.v - u, 0.0), 1e-24);  // sin(2u)/2 = u + O(u^3)
  // g = u^2, u = cos(2x)/2, v = d_x u: B = 2u^3 = (3 cos 2x + cos 6x)/16.
  const auto u2 = cos_kx(g, 2, 0.5);
  const auto qb = b_map(WaveState(u2, derivative(u2, 1)), kQuadratic);
  EXPECT_LT(sobolev_norm(qb.v - (3.0 / 16) * cos_kx(g, 2) - (1.0 / 16) * cos_kx(g, 6), 0.0), 1e-15);
  const auto cb = b_map(constant_state(g, 0.5, 2.0), kQuadratic);
  EXPECT_NEAR(cb.v.coeff(0).real(), 2 * 4.0 + 2 * 0.5 * 0.25, 1e-14);
}

TEST(CorrectedLie, ZeroAndConstantData) {
  const TorusGrid g(16);
  EXPECT_EQ(h1xl2_norm(corrected_lie_step(WaveState::zeros(g), 0.1, kQuadratic)), 0.0);
  // Zero mode by hand: H = (-1, 0), phi_2 block gives (-1/2, 0), so
  // U + tau G + tau^2 phi_2 H = (1 - tau^2/2, tau) and the shear adds tau * v.
  const double tau = 0.1;
  const auto w = corrected_lie_step(constant_state(g, 1.0, 0.0), tau, kQuadratic);
  const double u_inner = 1.0 - 0.5 * tau * tau, v_inner = tau;
  EXPECT_NEAR(w.u.coeff(0).real(), u_inner + tau * v_inner, 1e-15);
  EXPECT_NEAR(w.v.coeff(0).real(), v_inner, 1e-15);
  EXPECT_NEAR(w.u.coeff(0).real(), 1.005, 1e-15);
  EXPECT_NEAR(w.v.coeff(0).real(), 0.1, 1e-15);
}

TEST(CorrectedLie, ScalarOdeLocalError) {
  const TorusGrid g(16);
  for (double tau : {0.1, 0.05, 0.02, 0.01}) {
    const auto w = corrected_lie_step(constant_state(g, 1.0, 0.0), tau, kQuadratic);
    const auto exact = oracle::scalar_wave_ode([](double u) { return u * u; }, 1.0, 0.0, tau, 2000);
    EXPECT_LE(std::abs(w.u.coeff(0).real() - exact[0]), 5 * tau * tau * tau) << tau;
  }
}

TEST(LieWave, ConstantDataAndLinearLimit) {
  const TorusGrid g(16);
  const auto w = lie_step_wave(constant_state(g, 1.0, 0.0), 0.1, kQuadratic);
  EXPECT_NEAR(w.u.coeff(0).real(), 1.01, 1e-15);
  EXPECT_NEAR(w.v.coeff(0).real(), 0.1, 1e-15);
  const auto s = smooth_state(32, 5);
  EXPECT_LT(state_diff(lie_step_wave(s, 0.3, kZero), wave_flow(s, 0.3)), 1e-15);
}

TEST(Steppers, LinearExactness) {
  const auto s = smooth_state(64, 9);
  WaveState a = s, b = s;
  for (int n = 0; n < 10; ++n) {
    a = corrected_lie_step(a, 0.1, kZero);
    b = lie_step_wave(b, 0.1, kZero);
  }
  const auto exact = wave_flow(s, 1.0);
  EXPECT_LT(state_diff(a, exact), 1e-12);
  EXPECT_LT(state_diff(b, exact), 1e-12);
}

TEST(Steppers, RealnessPreserved) {
  const TorusGrid g(64);
  const WaveState w(random_rough_field({1.0, 0.01, 2, true}, g),
                    random_rough_field({0.0, 0.01, 3, true}, g));
  for (const Nonlinearity& nl : {kQuadratic, kSine, Nonlinearity(NonlinearityPreset::cubic_minus)}) {
    for (const auto& out : {corrected_lie_step(w, 0.05, nl), lie_step_wave(w, 0.05, nl)}) {
      EXPECT_TRUE(out.u.is_real() && out.v.is_real());
      EXPECT_LT(out.u.hermitian_defect(), 1e-12);
      for (auto z : to_physical(out.u, 2)) EXPECT_LT(std::abs(z.imag()), 1e-12);
      for (auto z : to_physical(out.v, 2)) EXPECT_LT(std::abs(z.imag()), 1e-12);
    }
  }
}

TEST(Steppers, NonFiniteInput) {
  const TorusGrid g(16);
  const auto bad = constant_state(g, std::nan(""), 0.0);
  EXPECT_THROW(corrected_lie_step(bad, 0.1, kQuadratic), BlowUpError);
  EXPECT_THROW(lie_step_wave(bad, 0.1, kQuadratic), BlowUpError);
}

TEST(ReferenceSolve, LinearAndDalembert) {
  const TorusGrid g(32);
  const auto s = smooth_state(32, 4);
  const auto traj = wave_reference_solve({kZero, s, 1.0}, 4, 0.01);
  for (std::size_t i = 0; i < traj.size(); ++i)
    EXPECT_LT(state_diff(traj.states[i], wave_flow(s, traj.time(i))), 1e-12);
  const WaveState d(sin_x(g), SpectralField::zeros(g));
  const auto dt = wave_reference_solve({kZero, d, 1.0}, 2, 0.1);
  EXPECT_LT(sobolev_norm(dt.back().u - std::cos(1.0) * sin_x(g), 0.0), 1e-14);
}

TEST(ReferenceSolve, ZeroModeScalarOde) {
  const TorusGrid g(16);
  for (const Nonlinearity& nl : {kQuadratic, kSine}) {
    const auto traj = wave_reference_solve({nl, constant_state(g, 0.8, -0.3), 1.0}, 4, 1e-4);
    const auto exact = oracle::scalar_wave_ode([&](double u) { return nl.g(u); }, 0.8, -0.3, 1.0);
    EXPECT_LT(std::abs(traj.back().u.coeff(0).real() - exact[0]), 1e-8);
    EXPECT_LT(std::abs(traj.back().v.coeff(0).real() - exact[1]), 1e-8);
  }
}

TEST(ReferenceSolve, BlowUpGuard) {
  const TorusGrid g(16);
  // u'' = u^2 from u = 10 blows up before t = 1.
  EXPECT_THROW(wave_reference_solve({kQuadratic, constant_state(g, 10.0, 0.0), 1.0}, 4, 1e-3),
               BlowUpError);
}

TEST(HEquation, ResidualIsSecondOrder) {
  // d/ds H(U(s)) = -A H(U(s)) + B(U(s)) along a fine reference trajectory;
  // centered differences leave an O(h^2) residual in L^2 x H^{-1}.
  const auto w0 = smooth_state(64, 6);
  const double s_mid = 0.5;
  const int samples = 256;  // dt = 2^-9
  const auto traj = wave_reference_solve({kQuadratic, w0, 1.0}, samples, std::ldexp(1.0, -14));
  const int mid = samples / 2;
  const auto ah = apply_wave_operator(h_map(traj.states[mid], kQuadratic));
  const auto b = b_map(traj.states[mid], kQuadratic);
  std::vector<double> hs, res;
  for (int e = 4; e <= 8; ++e) {
    const double h = std::ldexp(1.0, -e);
    const int off = static_cast<int>(std::lround(h / traj.dt));
    const auto hp = h_map(traj.states[mid + off], kQuadratic);
    const auto hm = h_map(traj.states[mid - off], kQuadratic);
    const WaveState r = (1.0 / (2 * h)) * (hp - hm) + ah - b;
    hs.push_back(h);
    res.push_back(sobolev_norm(r.u, 0.0) + sobolev_norm(r.v, -1.0));
  }
  (void)s_mid;
  const double slope = oracle::loglog_slope(hs, res);
  EXPECT_GE(slope, 1.7);
  EXPECT_LE(slope, 2.2);
}

TEST(CorrectedLie, SmoothDataLocalOrderThree) {
  const auto w0 = smooth_state(128, 7);
  std::vector<double> taus, errs;
  for (int e = 4; e <= 9; ++e) {
    const double tau = std::ldexp(1.0, -e);
    const auto ref = wave_integrate({kQuadratic, w0, tau}, tau / 64, WaveStepperKind::CorrectedLie);
    taus.push_back(tau);
    errs.push_back(state_diff(ref, corrected_lie_step(w0, tau, kQuadratic)));
  }
  const double slope = oracle::loglog_slope(taus, errs);
  EXPECT_GE(slope, 2.8);
  EXPECT_LE(slope, 3.2);
}
