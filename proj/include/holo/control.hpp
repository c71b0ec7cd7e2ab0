#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "holo/core.hpp"

namespace holo {

enum class ProtocolKind { OrangeSlice, CompositeNGQC, PhaseCycled };

std::string to_string(ProtocolKind k);
ProtocolKind protocol_from_string(const std::string& s);

struct TrajectoryParams {
  ProtocolKind kind = ProtocolKind::CompositeNGQC;
  double T_gate = 1.833;       // us
  double theta_max = kPi;
  double dphi = -1;            // negative: kind default (pi/4 composite, pi/2 Orange Slice)
  double step_frac = 0.01;     // tanh width as a fraction of one lune
  int n_samples = 2000;        // grid intervals
  int n_lunes = 0;             // 0: kind default
  double phi0 = 0.0;
};

// Closed-form lune trajectory; samples() evaluates it on a uniform grid.
class Trajectory {
 public:
  explicit Trajectory(const TrajectoryParams& p);

  double theta(double t) const;
  double theta_dot(double t) const;  // rad/us
  double phi(double t) const;

  const TrajectoryParams& params() const { return p_; }
  int lunes() const { return n_; }
  double lune_duration() const { return tau_; }
  double step_width() const { return w_; }
  double dphi() const { return dphi_; }
  double lune_azimuth(int j) const;
  // Lune j at local time l in [0, lune_duration()], endpoints included.
  double theta_local(double l) const;
  double phi_local(int j, double l) const;
  double dt() const { return p_.T_gate / p_.n_samples; }

 private:
  int lune_index(double t, double& local) const;
  TrajectoryParams p_;
  int n_;
  double tau_, w_, dphi_;
};

struct TrajectorySamples {
  std::vector<double> t, theta, phi, theta_dot;
  ProtocolKind kind;
  double T_gate;
  double dphi;
  int n_lunes;
};

Trajectory build_trajectory(const TrajectoryParams& p);
TrajectorySamples sample(const Trajectory& tr);

struct SATDWaveform {
  std::vector<double> t, re, im;  // MHz, coefficients of Op_re / Op_im
  double alpha;
};

// Exact counterdiabatic quadratures for the Lambda Hamiltonian in use:
// Re = -a th' sin(phi)/2pi, Im = +a th' cos(phi)/2pi.
double satd_re(double alpha, double theta_dot, double phi);
double satd_im(double alpha, double theta_dot, double phi);
SATDWaveform satd_waveform(const TrajectorySamples& s, double alpha);

struct DQTone {
  double carrier;        // MHz
  std::vector<double> t, rabi, phase;
  double peak_rabi;      // MHz
  double peak_strain;
};

DQTone dq_satd_hardware(const TrajectorySamples& s, double Bz_gauss, double h16, double gamma_e = 2.8);

enum class Envelope { Sin2, FlatTop };

struct SingleShotCommand {
  double vartheta, phi_axis, alpha, omega_max, T_gate, ramp;
  Envelope env;
  std::vector<double> t, omega, om0_re, om0_im, om1_re, om1_im, delta;
  double omega_at(double t) const;
  std::array<cplx, 3> u0() const;  // (Om0, Om1, Delta) per unit envelope
};

SingleShotCommand single_shot_controls(double vartheta, double phi_axis, double alpha,
                                       double omega_max, Envelope env, int n_samples = 2000,
                                       double ramp_frac = 0.2);

struct SU2Comparison {
  Mat U1, U2, AB, BA;
  double avg_fidelity;
  double commutator_norm;
};

Mat su2_gate(const std::array<double, 3>& n, double gamma);
double unitary_avg_fidelity(const Mat& U, const Mat& V);
SU2Comparison su2_gate_and_commutator(const std::array<double, 3>& n1, double g1,
                                      const std::array<double, 3>& n2, double g2);

void write_waveform_csv(std::ostream& os, const TrajectorySamples& s, const SATDWaveform& w,
                        const SingleShotCommand* ss = nullptr);

}  // namespace holo
