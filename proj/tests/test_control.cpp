#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "holo/control.hpp"
#include "holo/hamiltonians.hpp"
#include "holo/propagation.hpp"

using namespace holo;

namespace {

std::array<double, 3> bloch(double vt, double ph) {
  return {std::sin(vt) * std::cos(ph), std::sin(vt) * std::sin(ph), std::cos(vt)};
}

// Rotation angle about n in [0, 2 pi) of a U(2) matrix, global phase removed.
double rotation_angle(const Mat& u, const std::array<double, 3>& n) {
  const Mat v = u / std::sqrt(u.determinant());
  Mat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  sz << 1, 0, 0, -1;
  const double c = 0.5 * v.trace().real();
  const double s = -0.5 * (n[0] * (v * sx).trace().imag() + n[1] * (v * sy).trace().imag() +
                           n[2] * (v * sz).trace().imag());
  double g = 2 * std::atan2(s, c);
  g = std::fmod(g + 4 * kPi, 2 * kPi);
  return g;
}

Mat logical_gate(const SingleShotCommand& c, int steps = 4000) {
  return q_block(propagate_unitary(single_shot_hamiltonian(c), {steps, 1e-12, 1e-10}));
}

}  // namespace

TEST_CASE("composite trajectory shape") {
  TrajectoryParams p;
  p.T_gate = 1.833;
  const Trajectory tr(p);
  const TrajectorySamples s = sample(tr);
  CHECK(std::abs(s.theta.front()) < 1e-9);
  CHECK(std::abs(s.theta.back()) < 1e-9);
  CHECK(tr.theta(p.T_gate / 4) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(tr.lune_azimuth(1) - tr.lune_azimuth(0) == doctest::Approx(kPi));
  CHECK(tr.dphi() == doctest::Approx(kPi / 4));
  // Echo symmetry on matching sub-loop phases.
  for (double t : {0.05, 0.3, 0.458, 0.6, 0.9})
    CHECK(tr.phi(t + p.T_gate / 2) - tr.phi(t) == doctest::Approx(kPi).epsilon(1e-12));
  // Per-lune solid angle dphi (1 - cos theta_max).
  CHECK(tr.dphi() * (1 - std::cos(p.theta_max)) == doctest::Approx(kPi / 2));
  // Analytic theta_dot against a central difference.
  for (double t : {0.1, 0.4, 1.2}) {
    const double h = 1e-6;
    CHECK(tr.theta_dot(t) == doctest::Approx((tr.theta(t + h) - tr.theta(t - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("azimuth steps are centered at the South Pole") {
  for (ProtocolKind k : {ProtocolKind::CompositeNGQC, ProtocolKind::OrangeSlice, ProtocolKind::PhaseCycled}) {
    TrajectoryParams p;
    p.kind = k;
    p.n_lunes = 3;
    const Trajectory tr(p);
    for (int j = 0; j < tr.lunes(); ++j) {
      const double c = tr.lune_duration() / 2;
      CHECK(std::sin(tr.theta_local(c)) < 1e-3);
      CHECK(tr.phi_local(j, c) - tr.lune_azimuth(j) == doctest::Approx(tr.dphi() / 2));
      // Half the step is complete exactly at the centre; tails are flat far away.
      CHECK(std::abs(tr.phi_local(j, 0.0) - tr.lune_azimuth(j)) < 1e-12);
      CHECK(std::abs(tr.phi_local(j, tr.lune_duration()) - tr.lune_azimuth(j) - tr.dphi()) < 1e-12);
    }
    CHECK(tr.lune_azimuth(1) - tr.lune_azimuth(0) == doctest::Approx(2 * kPi / tr.lunes()));
  }
}

TEST_CASE("trajectory validation") {
  TrajectoryParams p;
  p.n_samples = 100;
  CHECK_THROWS_AS(Trajectory{p}, ConfigError);
  p.n_samples = 2000;
  p.step_frac = 1e-4;
  CHECK_THROWS_AS(Trajectory{p}, ConfigError);
  p.step_frac = 0.01;
  p.T_gate = -1;
  CHECK_THROWS_AS(Trajectory{p}, ConfigError);
  CHECK(protocol_from_string(to_string(ProtocolKind::OrangeSlice)) == ProtocolKind::OrangeSlice);
  CHECK_THROWS_AS(protocol_from_string("lune"), ConfigError);
}

TEST_CASE("SATD waveform amplitude tracks theta_dot") {
  TrajectoryParams p;
  const TrajectorySamples s = sample(Trajectory(p));
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    const SATDWaveform w = satd_waveform(s, a);
    for (std::size_t k = 0; k < s.t.size(); k += 37) {
      const double lhs = w.re[k] * w.re[k] + w.im[k] * w.im[k];
      const double rhs = a * a * s.theta_dot[k] * s.theta_dot[k] / (4 * kPi * kPi);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
  TrajectorySamples flat = s;
  for (auto& v : flat.theta_dot) v = 0;
  const SATDWaveform z = satd_waveform(flat, 1.0);
  for (std::size_t k = 0; k < z.t.size(); ++k) {
    CHECK(z.re[k] == 0.0);
    CHECK(z.im[k] == 0.0);
  }
}

TEST_CASE("DQ hardware tone") {
  TrajectoryParams p;
  p.T_gate = 1.833;
  const TrajectorySamples s = sample(Trajectory(p));
  const DQTone d = dq_satd_hardware(s, 50.0, 19660.0);
  CHECK(d.carrier == doctest::Approx(280.0));
  CHECK(d.peak_rabi == doctest::Approx(kPi / 1.833).epsilon(1e-9));
  CHECK(d.peak_rabi == doctest::Approx(1.71).epsilon(0.005));
  CHECK(d.peak_strain == doctest::Approx(8.7e-5).epsilon(0.01));
  const DQTone sic = dq_satd_hardware(s, 50.0, 1350.0);
  CHECK(sic.peak_strain == doctest::Approx(1.27e-3).epsilon(0.01));
  CHECK_THROWS_AS(dq_satd_hardware(s, 0.0, 19660.0), ConfigError);
}

TEST_CASE("single-shot command") {
  const SingleShotCommand c = single_shot_controls(0.7, 0.4, 0.3, 2.220, Envelope::Sin2);
  CHECK(c.T_gate == doctest::Approx(0.9009).epsilon(1e-4));
  double area = 0;
  for (std::size_t k = 1; k < c.t.size(); ++k)
    area += 0.5 * (c.omega[k] + c.omega[k - 1]) * (c.t[k] - c.t[k - 1]);
  CHECK(area == doctest::Approx(1.0).epsilon(1e-6));
  const auto u = c.u0();
  for (std::size_t k = 0; k < c.t.size(); k += 101) {
    CHECK(c.om0_re[k] == c.omega[k] * u[0].real());
    CHECK(c.om1_im[k] == c.omega[k] * u[1].imag());
    CHECK(c.delta[k] == c.omega[k] * u[2].real());
  }
  const SingleShotCommand z = single_shot_controls(0.7, 0.4, 0.0, 2.220, Envelope::Sin2);
  for (double dl : z.delta) CHECK(dl == 0.0);
  CHECK_THROWS_AS(single_shot_controls(0.7, 0.4, kPi / 2, 2.0, Envelope::Sin2), ConfigError);
  const SingleShotCommand f = single_shot_controls(0.7, 0.4, 0.3, 2.220, Envelope::FlatTop);
  double af = 0;
  for (std::size_t k = 1; k < f.t.size(); ++k) af += 0.5 * (f.omega[k] + f.omega[k - 1]) * (f.t[k] - f.t[k - 1]);
  CHECK(af == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("single-shot rotation angle follows pi (1 + sin alpha)") {
  for (double a : {-1.2, -0.5, 0.0, 0.3, 0.9}) {
    const SingleShotCommand c = single_shot_controls(0.7, 0.4, a, 2.22, Envelope::Sin2);
    const Mat u = logical_gate(c);
    CHECK(rotation_angle(u, bloch(0.7, 0.4)) == doctest::Approx(kPi * (1 + std::sin(a))).epsilon(1e-8));
    CHECK(unitary_avg_fidelity(u, su2_gate(bloch(0.7, 0.4), kPi * (1 + std::sin(a)))) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("envelope shape does not change the single-shot gate") {
  const SingleShotCommand a = single_shot_controls(1.1, -0.3, 0.4, 2.22, Envelope::Sin2);
  const SingleShotCommand b = single_shot_controls(1.1, -0.3, 0.4, 3.0, Envelope::FlatTop);
  const Mat ua = logical_gate(a), ub = logical_gate(b);
  const cplx ph = (ua.adjoint() * ub).trace() / std::abs((ua.adjoint() * ub).trace());
  CHECK((ua * ph - ub).norm() < 1e-8);
}

TEST_CASE("su2 composition order") {
  const SU2Comparison same = su2_gate_and_commutator({0, 0, 1}, 0.7, {0, 0, 1}, 1.9);
  CHECK(same.avg_fidelity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.commutator_norm < 1e-12);
  const SU2Comparison xz = su2_gate_and_commutator({1, 0, 0}, kPi / 2, {0, 0, 1}, kPi / 2);
  CHECK(std::abs(xz.avg_fidelity - 0.5) < 1e-9);
  for (double g1 : {0.4, 1.3, 2.8})
    for (double g2 : {0.9, 2.2}) {
      const double t = 0.8;
      const std::array<double, 3> n2 = {std::sin(t), 0, std::cos(t)};
      const SU2Comparison c = su2_gate_and_commutator({0, 0, 1}, g1, n2, g2);
      CHECK(c.commutator_norm ==
            doctest::Approx(2 * std::sin(t) * std::sin(g1 / 2) * std::sin(g2 / 2)).epsilon(1e-10));
    }
  CHECK_THROWS_AS(su2_gate_and_commutator({1, 1, 0}, 1, {0, 0, 1}, 1), ConfigError);
}

TEST_CASE("waveform CSV header") {
  TrajectoryParams p;
  p.n_samples = 500;
  const TrajectorySamples s = sample(Trajectory(p));
  std::ostringstream os;
  write_waveform_csv(os, s, satd_waveform(s, 1.0));
  std::string head;
  std::istringstream is(os.str());
  std::getline(is, head);
  CHECK(head == "t,theta,phi,omega_re,omega_im,omega0,omega1,delta");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 501);
}
