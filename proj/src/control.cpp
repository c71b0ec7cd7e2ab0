#include "holo/control.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace holo {

std::string to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::OrangeSlice: return "orange_slice";
    case ProtocolKind::CompositeNGQC: return "composite";
    case ProtocolKind::PhaseCycled: return "phase_cycled";
  }
  return "?";
}

ProtocolKind protocol_from_string(const std::string& s) {
  if (s == "orange_slice") return ProtocolKind::OrangeSlice;
  if (s == "composite") return ProtocolKind::CompositeNGQC;
  if (s == "phase_cycled") return ProtocolKind::PhaseCycled;
  throw ConfigError("unknown protocol kind: " + s);
}

Trajectory::Trajectory(const TrajectoryParams& p) : p_(p) {
  if (!(p.T_gate > 0)) throw ConfigError("T_gate must be positive");
  if (p.n_samples < 500) throw ConfigError("n_samples must be at least 500");
  switch (p.kind) {
    case ProtocolKind::OrangeSlice:
      n_ = 1;
      dphi_ = p.dphi >= 0 ? p.dphi : kPi / 2;
      break;
    case ProtocolKind::CompositeNGQC:
      n_ = 2;
      dphi_ = p.dphi >= 0 ? p.dphi : kPi / 4;
      break;
    case ProtocolKind::PhaseCycled:
      n_ = p.n_lunes > 0 ? p.n_lunes : 2;
      dphi_ = p.dphi >= 0 ? p.dphi : kPi / 4;
      break;
  }
  tau_ = p.T_gate / n_;
  w_ = p.step_frac * tau_;
  const double grid = p.T_gate / p.n_samples;
  if (w_ < 2 * grid) throw ConfigError("azimuth step not resolvable on the time grid");
  if (std::sin(p.theta_max) > 1e-3 || std::cos(p.theta_max) > 0)
    throw ConfigError("azimuth step must sit at the South Pole (theta_max = pi)");
}

double Trajectory::lune_azimuth(int j) const { return p_.phi0 + 2 * kPi * j / n_; }

int Trajectory::lune_index(double t, double& local) const {
  int j = static_cast<int>(std::floor(t / tau_));
  j = std::clamp(j, 0, n_ - 1);
  local = t - j * tau_;
  return j;
}

double Trajectory::theta_local(double l) const { return p_.theta_max * std::sin(kPi * l / tau_); }

double Trajectory::phi_local(int j, double l) const {
  return lune_azimuth(j) + dphi_ * 0.5 * (1 + std::tanh((l - tau_ / 2) / w_));
}

double Trajectory::theta(double t) const {
  double l;
  lune_index(t, l);
  return theta_local(l);
}

double Trajectory::theta_dot(double t) const {
  double l;
  lune_index(t, l);
  return p_.theta_max * (kPi / tau_) * std::cos(kPi * l / tau_);
}

double Trajectory::phi(double t) const {
  double l;
  const int j = lune_index(t, l);
  return phi_local(j, l);
}

Trajectory build_trajectory(const TrajectoryParams& p) { return Trajectory(p); }

TrajectorySamples sample(const Trajectory& tr) {
  const auto& p = tr.params();
  TrajectorySamples s;
  s.kind = p.kind;
  s.T_gate = p.T_gate;
  s.dphi = tr.dphi();
  s.n_lunes = tr.lunes();
  const int n = p.n_samples;
  for (int k = 0; k <= n; ++k) {
    const double t = p.T_gate * k / n;
    s.t.push_back(t);
    s.theta.push_back(tr.theta(t));
    s.phi.push_back(tr.phi(t));
    s.theta_dot.push_back(tr.theta_dot(t));
  }
  return s;
}

double satd_re(double alpha, double theta_dot, double phi) {
  return -alpha * theta_dot * std::sin(phi) / (2 * kPi);
}

double satd_im(double alpha, double theta_dot, double phi) {
  return alpha * theta_dot * std::cos(phi) / (2 * kPi);
}

SATDWaveform satd_waveform(const TrajectorySamples& s, double alpha) {
  SATDWaveform w;
  w.alpha = alpha;
  w.t = s.t;
  for (size_t k = 0; k < s.t.size(); ++k) {
    w.re.push_back(satd_re(alpha, s.theta_dot[k], s.phi[k]));
    w.im.push_back(satd_im(alpha, s.theta_dot[k], s.phi[k]));
  }
  return w;
}

DQTone dq_satd_hardware(const TrajectorySamples& s, double Bz_gauss, double h16, double gamma_e) {
  if (!(Bz_gauss > 0)) throw ConfigError("B_z must be positive");
  DQTone d;
  d.carrier = 2 * gamma_e * Bz_gauss;
  d.t = s.t;
  d.peak_rabi = 0;
  for (size_t k = 0; k < s.t.size(); ++k) {
    const double r = std::abs(s.theta_dot[k]) / (2 * kPi);
    d.rabi.push_back(r);
    d.phase.push_back(s.phi[k] + kPi / 2 + (s.theta_dot[k] < 0 ? kPi : 0.0));
    d.peak_rabi = std::max(d.peak_rabi, r);
  }
  d.peak_strain = (kPi / s.T_gate) / std::abs(h16);
  return d;
}

double SingleShotCommand::omega_at(double t) const {
  if (t <= 0 || t >= T_gate) return 0.0;
  if (env == Envelope::Sin2) {
    const double s = std::sin(kPi * t / T_gate);
    return omega_max * s * s;
  }
  if (t < ramp) {
    const double s = std::sin(kPi * t / (2 * ramp));
    return omega_max * s * s;
  }
  if (t > T_gate - ramp) {
    const double s = std::sin(kPi * (T_gate - t) / (2 * ramp));
    return omega_max * s * s;
  }
  return omega_max;
}

std::array<cplx, 3> SingleShotCommand::u0() const {
  const double ca = std::cos(alpha);
  return {ca * std::cos(vartheta / 2), ca * std::exp(-kI * phi_axis) * std::sin(vartheta / 2),
          std::sin(alpha)};
}

SingleShotCommand single_shot_controls(double vartheta, double phi_axis, double alpha,
                                       double omega_max, Envelope env, int n_samples,
                                       double ramp_frac) {
  if (!(std::abs(alpha) < kPi / 2)) throw ConfigError("|alpha| must be below pi/2");
  if (!(omega_max > 0)) throw ConfigError("omega_max must be positive");
  SingleShotCommand c;
  c.vartheta = vartheta;
  c.phi_axis = phi_axis;
  c.alpha = alpha;
  c.omega_max = omega_max;
  c.env = env;
  if (env == Envelope::Sin2) {
    c.T_gate = 2.0 / omega_max;
    c.ramp = 0;
  } else {
    c.ramp = ramp_frac / omega_max;
    c.T_gate = 1.0 / omega_max + c.ramp;
  }
  const auto u = c.u0();
  for (int k = 0; k <= n_samples; ++k) {
    const double t = c.T_gate * k / n_samples;
    const double om = c.omega_at(t);
    c.t.push_back(t);
    c.omega.push_back(om);
    c.om0_re.push_back(om * u[0].real());
    c.om0_im.push_back(om * u[0].imag());
    c.om1_re.push_back(om * u[1].real());
    c.om1_im.push_back(om * u[1].imag());
    c.delta.push_back(om * u[2].real());
  }
  return c;
}

Mat su2_gate(const std::array<double, 3>& n, double gamma) {
  Mat h(2, 2);
  h << n[2], cplx(n[0], -n[1]), cplx(n[0], n[1]), -n[2];
  return expm_herm(h, gamma / 2);
}

double unitary_avg_fidelity(const Mat& U, const Mat& V) {
  const double d = static_cast<double>(U.rows());
  const double tr = std::norm((U.adjoint() * V).trace());
  return (tr + d) / (d * (d + 1));
}

SU2Comparison su2_gate_and_commutator(const std::array<double, 3>& n1, double g1,
                                      const std::array<double, 3>& n2, double g2) {
  auto unit = [](const std::array<double, 3>& n) {
    return std::abs(n[0] * n[0] + n[1] * n[1] + n[2] * n[2] - 1) < 1e-9;
  };
  if (!unit(n1) || !unit(n2)) throw ConfigError("rotation axes must be unit vectors");
  SU2Comparison c;
  c.U1 = su2_gate(n1, g1);
  c.U2 = su2_gate(n2, g2);
  c.AB = c.U2 * c.U1;  // U1 first
  c.BA = c.U1 * c.U2;
  c.avg_fidelity = unitary_avg_fidelity(c.AB, c.BA);
  const Mat comm = c.U1 * c.U2 - c.U2 * c.U1;
  c.commutator_norm = comm.operatorNorm();
  return c;
}

void write_waveform_csv(std::ostream& os, const TrajectorySamples& s, const SATDWaveform& w,
                        const SingleShotCommand* ss) {
  os << "t,theta,phi,omega_re,omega_im,omega0,omega1,delta\n";
  os.precision(12);
  for (size_t k = 0; k < s.t.size(); ++k) {
    double o0 = 0, o1 = 0, dl = 0;
    if (ss) {
      const double om = ss->omega_at(s.t[k]);
      const auto u = ss->u0();
      o0 = std::abs(om * u[0]);
      o1 = std::abs(om * u[1]);
      dl = om * u[2].real();
    }
    os << s.t[k] << ',' << s.theta[k] << ',' << s.phi[k] << ',' << w.re[k] << ',' << w.im[k]
       << ',' << o0 << ',' << o1 << ',' << dl << '\n';
  }
}

}  // namespace holo
