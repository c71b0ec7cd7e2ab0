#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "holo/core.hpp"
#include "holo/hamiltonians.hpp"

namespace holo {

// splitmix64 finalizer; child seeds are chained through it.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t child_seed(std::uint64_t master, std::uint64_t sweep, std::uint64_t point,
                         std::uint64_t traj);

// mt19937_64 with explicit conversions so draws match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }
  std::uint64_t bits() { return eng_(); }
  int below(int n) { return static_cast<int>(uniform() * n); }

 private:
  std::mt19937_64 eng_;
};

inline constexpr double kDipolePrefactor = 9.2740100783;  // mu0 muB / 4pi in G nm^3

enum class HopMode { Swap, PairFlip };

struct SurfaceBathConfig {
  int N = 20;
  double rho_s = 0.004;  // nm^-2
  double r_c = 5.0;      // nm
  double tau_c = 0.010;  // us
  double depth = 20.0;   // nm
  HopMode mode = HopMode::Swap;
};

struct BathGeometry {
  std::vector<double> x, y;     // nm, z = 0
  std::vector<double> coupling; // G per unit spin: pref (3cos^2 - 1)/r^3
  std::vector<double> pair_rate_cum;  // cumulative pair rates, us^-1
  std::vector<std::pair<int, int>> pairs;
  double total_rate = 0;
  double scale = 1;  // variance normalization, fixed for the geometry
  double side = 0;   // patch side, nm
};

BathGeometry sample_bath_geometry(const SurfaceBathConfig& cfg, Rng& rng);
std::vector<double> sample_initial_spins(const SurfaceBathConfig& cfg, Rng& rng);

// Continuum plane variance pref^2 rho_s (1/4)(3 pi / 4) / d^4 in G^2.
double continuum_field_variance(const SurfaceBathConfig& cfg);
double discrete_field_variance(const BathGeometry& g);

double single_spin_field(double r_nm, double alpha);  // G, unit spin

struct FieldTrace {
  std::vector<double> t;   // event times, t[0] = 0
  std::vector<double> Bz;  // G, value on [t[k], t[k+1])
  std::uint64_t seed = 0;
  double scale = 1;
  double at(double time) const;
};

FieldTrace kmc_field_trace(const BathGeometry& g, const SurfaceBathConfig& cfg,
                           std::vector<double> spins, double T, Rng& rng);

struct Collapse {
  Mat op;  // already multiplied by sqrt(rate)
  double rate;
};
using CollapseSet = std::vector<Collapse>;

CollapseSet lindblad_collapse_set(double T1, double T1rho, Platform platform);

void write_trace_csv(std::ostream& os, const FieldTrace& tr);

}  // namespace holo
