#pragma once

#include <string>
#include <vector>

#include "holo/control.hpp"
#include "holo/core.hpp"

namespace holo {

enum class Platform { NV, SiC3C, SiV };

struct PlatformParams {
  Platform tag = Platform::NV;
  double D = 2870.0;       // MHz
  double gamma_e = 2.8;    // MHz/G
  double Bz = 50.0;        // G
  double h26 = 2830.0, h25 = 2600.0, h16 = 19660.0, h43 = 2300.0;  // MHz/strain, magnitudes
  double f_perp = 1.3e9;   // MHz/strain
  double delta_so = 48000.0;  // MHz
};

PlatformParams nv_params();
PlatformParams sic3c_params();
PlatformParams siv_params();

Mat nv_static(const PlatformParams& p);

// Amplitude and phase error applied to the |0><+1| leg: factor (1+amp) e^{i phase}.
struct LegSkew {
  double amp = 0.0;
  double phase = 0.0;
};

Mat lambda_rwa(double omega_m, double theta, double phi, const LegSkew& skew = {});
Vec dark_state(double theta, double phi);
Vec bright_state(double theta, double phi);

struct CDOperators {
  Mat op_re, op_im, direction;  // H_CD (rad/us) = theta_dot * direction
};
CDOperators cd_operator(double phi);

struct StarkScale {
  double eps0, omega_dq, delta_ac_khz;
};
StarkScale dq_stark_scale(double omega_m, const PlatformParams& p);

struct StarkTerms {
  std::vector<double> coeff;  // MHz on S_z restricted to Q
  double phase;               // 2 pi * integral of coeff, rad
  double phase_analytic;      // same from J0(pi) per lune
};
StarkTerms stark_terms(double delta_ac_khz, const TrajectorySamples& s, const PlatformParams& p,
                       bool compensated);
// tau^-1 * integral_0^tau cos(pi sin(pi t / tau)) dt by composite Simpson.
double stark_lune_average(int n_intervals = 20000);
double bessel_j0(double x);

// Linear-in-time operator sum on a uniform grid.
struct Term {
  Mat op;
  std::vector<double> env;
};

struct Assembly {
  int dim = 3;
  double t0 = 0, dt = 0;
  int n = 0;  // intervals
  std::vector<Term> terms;
  Mat static_part;
  Mat at(double t) const;  // MHz
  double T() const { return t0 + dt * n; }
};

Mat sz_on_q();

struct ProtocolHamiltonian {
  double omega_m = 2.22;
  double alpha_cd = 1.0;
  double delta0 = 0.0;       // MHz, detuning on |0>
  double stark_scale = 0.0;  // alpha_S multiplying delta_AC; 0 with compensation on
  bool stark_compensated = true;
  LegSkew skew;
};

Assembly assemble_lambda_protocol(const TrajectorySamples& s, const ProtocolHamiltonian& h,
                                  const PlatformParams& p = nv_params());

// Single-shot Hamiltonian on (aux = |0>, 0_L = |-1>, 1_L = |+1>).
Assembly single_shot_hamiltonian(const SingleShotCommand& c);
// Bright/aux block of M_alpha = K / Omega(t).
Mat single_shot_block(double alpha);

struct ProjectorBus {
  double chi;    // rad
  double T;      // us
  double phase[4];  // diagonal phases for (n1, n2) = 00, 01, 10, 11
};
// Closed form: branch phase 2 pi (f1 n1 + f2 n2)^2 / delta^2.
ProjectorBus projector_bus_unitary(double f1, double f2, double delta);
// Same phases from a driven, truncated oscillator integrated per branch.
ProjectorBus projector_bus_numeric(double f1, double f2, double delta, int n_fock = 40);

struct SiVPlatform {
  double T1_orb;  // us
  double alpha_cd;
  double omega_m;
};
SiVPlatform siv_platform(double omega_m, const std::string& regime);

}  // namespace holo
