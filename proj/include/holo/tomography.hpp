#pragma once

#include <cstdint>
#include <vector>

#include "holo/core.hpp"
#include "holo/propagation.hpp"

namespace holo {

// +z, -z, +x, -x, +y, -y on Q, with +z = |-1> = logical 0.
std::vector<Mat> ic_states();
std::vector<Mat> ic_kets2();  // same states as logical 2-vectors

Mat z_pi_target();  // diag(1, -1) on (0_L, 1_L)

// Choi J = sum_ij |i><j| (x) E(|i><j|) from the six IC outputs (3x3 each).
Mat choi_reconstruct(const std::vector<Mat>& outputs, bool conditional);
Mat choi_from_kraus(const std::vector<Mat>& kraus);

struct GateFidelities {
  double F_e;
  double F_avg;
};
// Works for trace-decreasing maps too: F_avg = (d F_e + Tr J / d) / (d + 1).
GateFidelities gate_fidelities(const Mat& choi, const Mat& U_target);
double effective_fidelity(double p_surv, double F_cond);

struct ProcessMetrics {
  double F_leg = 0;
  double F_e = 0;
  double F_avg = 0;       // conditional
  double F_avg_unc = 0;   // unconditional, leakage counted as error
  double leakage = 0;
  double p_surv = 1;
  double F_eff = 0;
  double F_avg_ci_lo = 0, F_avg_ci_hi = 0;
  double leakage_ci_lo = 0, leakage_ci_hi = 0;
};

// Legacy metric: population of |-1> after sending in |-1>.
double legacy_fidelity(const Mat& out_from_m1);
ProcessMetrics process_metrics(const std::vector<Mat>& mean_outputs, const Mat& U_target);
ProcessMetrics channel_metrics(const ChannelRun& run, const Mat& U_target, int resamples = 2000,
                               std::uint64_t seed = 1);

struct BiasedErasureChannel {
  double p_era = 0, p_Z = 0, p_dep = 0, p_XY = 0;
  double eta_det = 1;
  bool p_XY_floor = false;
  double p_X = 0, p_Y = 0;
};

struct PauliTwirl {
  double p_I, p_X, p_Y, p_Z;
};
PauliTwirl pauli_twirl(const Mat& choi, const Mat& U_target);

BiasedErasureChannel extract_biased_erasure(const ChannelRun& run, const Mat& U_target,
                                            double eta_det);
BiasedErasureChannel extract_biased_erasure(const std::vector<Mat>& mean_outputs,
                                            const Mat& U_target, double eta_det);

}  // namespace holo
