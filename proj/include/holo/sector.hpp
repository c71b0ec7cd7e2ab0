#pragma once

#include <string>
#include <vector>

#include "holo/core.hpp"
#include "holo/hamiltonians.hpp"

namespace holo {

enum class Sector { A1, A2, Ex, Ey };

std::string to_string(Sector s);
Sector sector_from_string(const std::string& s);
// Unit Hilbert-Schmidt representative: Sz^2, Sz, Sx, Sy.
Mat sector_operator(Sector s);

// First-order dark-state correction at the Lambda point (theta, phi) for
// perturbation V (coefficient 1); H0 = lambda_rwa(omega_m, theta, phi).
Vec first_order_dark_correction(const Mat& V, double omega_m, double theta, double phi,
                                const Mat& H0);
Vec first_order_dark_correction(const Mat& V, double omega_m, double theta, double phi);

struct DirectionSplit {
  double W0, WB, f0, fB;
  bool coupled;  // first-order response nonzero
};
DirectionSplit direction_split(const Vec& d1, double theta, double phi);

struct SectorInjectionResult {
  Sector sector;
  double f0 = 0, fB = 0;
  bool coupled = false;
  double slope_W0 = 0, slope_WB = 0;  // log-log vs sigma / omega_m
  double slope_phase_1 = 0, slope_phase_n = 0;
  int n_lunes = 2;
  std::vector<double> sigma, W0, WB, dphase_1, dphase_n;
};

struct SectorInjectionOptions {
  double omega_m = 1.0;
  // Generic dark point: at phi = 0, theta = pi/2 the S_y matrix element vanishes.
  double theta = kPi / 3, phi = kPi / 5;
  std::vector<double> sigma_weights = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
  std::vector<double> sigma_phase = {1e-3, 3e-3, 1e-2, 3e-2};
  int n_lunes = 2;
  int samples_per_lune = 2000;
};

SectorInjectionResult sector_injection(Sector s, const SectorInjectionOptions& o = {});

// Sign-odd part of the closed-loop Berry phase shift of the perturbed dark
// state along n_lunes composite lunes, (gamma(+s) - gamma(-s)) / 2.
double berry_phase_odd_shift(const Mat& V, double sigma, int n_lunes, double omega_m,
                             int samples_per_lune);
double berry_phase(const Mat& V, double sigma, int n_lunes, double omega_m, int samples_per_lune);

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct MixedScanResult {
  double max_dev_f0 = 0, max_dev_fB = 0;      // echo-averaged, calibrated ports
  double max_dev_single = 0;                  // one dark point, no echo
  std::vector<double> alpha, beta, f0, fB;
};

MixedScanResult mixed_sector_scan(const std::vector<double>& alpha, const std::vector<double>& beta,
                                  double sigma, double theta = kPi / 2, double phi = 0.0);

struct SpurionResult {
  double f0 = 1, fB = 0;
  double fB_analytic_delta = 0, fB_analytic_amp = 0, fB_analytic_phase = 0;
};

// Sz response of the detuned, leg-skewed Lambda at the dark point
// theta = pi/2, phi = 0, projected on |0> and the nominal bright state.
SpurionResult spurion_robustness(double delta_over_omega, double amp_skew, double phase_skew);

}  // namespace holo
