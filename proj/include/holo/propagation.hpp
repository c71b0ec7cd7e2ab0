#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "holo/core.hpp"
#include "holo/hamiltonians.hpp"
#include "holo/noise.hpp"

namespace holo {

struct PropagationGrid {
  int n_steps = 2000;
  double atol = 1e-10;
  double rtol = 1e-8;
};

struct PropagationStats {
  long accepted = 0, rejected = 0, segments = 0;
};

// Stochastic surface field entering as gamma_e * B(t) * S_z.
struct FieldTerm {
  const FieldTrace* trace = nullptr;
  double gamma_e = 2.8;
};

// Lindblad evolution of several inputs under one shared generator.
std::vector<Mat> propagate(const Assembly& a, const CollapseSet& c, const std::vector<Mat>& rho0,
                           const PropagationGrid& grid, const FieldTerm& field = {},
                           PropagationStats* stats = nullptr);

Mat propagate(const Assembly& a, const CollapseSet& c, const Mat& rho0, const PropagationGrid& grid,
              const FieldTerm& field = {});

// Schroedinger propagator of a noiseless assembly.
Mat propagate_unitary(const Assembly& a, const PropagationGrid& grid);

struct NoiseModel {
  bool bath = true;
  SurfaceBathConfig bath_cfg;
  double T1 = 1000.0;     // us
  double T1rho = 500.0;   // us
  Platform platform = Platform::NV;
  double gamma_e = 2.8;
  bool lindblad = true;
};

NoiseModel noiseless_model();

struct ChannelRun {
  std::vector<std::vector<Mat>> outputs;  // [trajectory][input]
  std::vector<Mat> mean;                  // [input]
  std::vector<std::uint64_t> seeds;       // per trajectory
  std::uint64_t geometry_seed = 0;
  double geometry_scale = 1.0;
  int n_traj = 0;
  long trace_events = 0;
};

struct RunIds {
  std::uint64_t master = 0, sweep = 0, point = 0;
};

ChannelRun monte_carlo_channel(const Assembly& protocol, const NoiseModel& noise,
                               const std::vector<Mat>& inputs, int n_traj, const RunIds& ids,
                               const PropagationGrid& grid, int workers = 1);

}  // namespace holo
