#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holo/tomography.hpp"

namespace holo {

// Binary symplectic Pauli on n qubits.
struct Pauli {
  std::vector<std::uint8_t> x, z;
  explicit Pauli(int n = 0) : x(n, 0), z(n, 0) {}
  int size() const { return static_cast<int>(x.size()); }
  bool commutes(const Pauli& o) const;
  void mul(const Pauli& o);  // up to phase
  int weight() const;
};

enum class CodeKind { ToricCSS, ToricXZZX, PlanarXZZX };

std::string code_variant(CodeKind k);

struct DecodingGraph {
  int n_checks = 0;
  bool boundary = false;  // node n_checks is the boundary
  // Edge per qubit: (a, b) check indices, b = n_checks for a boundary edge, -1 if absent.
  std::vector<std::pair<int, int>> edge;
  std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (neighbor, qubit)
  // Pauli bits applied to a qubit when its edge lies on a correction path.
  std::vector<std::uint8_t> fix_x, fix_z;
};

struct StabilizerCode {
  CodeKind kind;
  int d_r = 0, d_c = 0;  // toric: d_r = d_c = d
  int n = 0;
  std::vector<Pauli> checks[2];
  DecodingGraph graph[2];
  std::vector<Pauli> logical_z, logical_x;  // pairs share an index
  std::string id() const;
};

StabilizerCode build_toric(int d, CodeKind variant);
StabilizerCode build_rect_planar(int d_r, int d_c);

enum class EdgeWeights {
  Uniform,     // every unerased edge costs kBaseWeight
  Likelihood,  // log((1 - p) / p) from the channel's per-qubit sector flip probability
};

struct QecChannel {
  double p_era = 0.0047, p_Z = 0.00168, p_dep = 0.00012, p_XY = 0.0;
  bool erasure_includes_identity = false;  // erasure Pauli from {I,X,Y,Z} instead of {X,Y,Z}
  EdgeWeights weights = EdgeWeights::Uniform;  // decoder prior
};
QecChannel qec_channel_from(const BiasedErasureChannel& c);

struct NoiseDraw {
  Pauli error;
  std::vector<std::uint8_t> erased;
};

NoiseDraw sample_noise(const StabilizerCode& code, const QecChannel& ch, double s, Rng& rng);

std::vector<int> syndrome(const StabilizerCode& code, int sector, const Pauli& e);

// Shortest-path weights: erased qubits 1, others kBaseWeight.
inline constexpr std::int64_t kBaseWeight = 1000000;

struct Decoded {
  Pauli correction;
  std::int64_t weight = 0;
};
// weights: per-qubit cost of an unerased edge; null means kBaseWeight everywhere.
Decoded decode_mwpm(const StabilizerCode& code, int sector, const std::vector<int>& defects,
                    const std::vector<std::uint8_t>& erased,
                    const std::vector<std::int64_t>* weights = nullptr);

// Per-qubit edge costs for one sector at scale s, in units where kBaseWeight = log 10^6.
std::vector<std::int64_t> edge_weights(const StabilizerCode& code, int sector, const QecChannel& ch,
                                       double s);

// Matching instance on defects with path weights and boundary weights (empty on a torus).
struct MatchingInstance {
  std::vector<std::vector<std::int64_t>> cost;
  std::vector<std::int64_t> boundary;
};
MatchingInstance matching_instance(const StabilizerCode& code, int sector,
                                   const std::vector<int>& defects,
                                   const std::vector<std::uint8_t>& erased,
                                   const std::vector<std::int64_t>* weights = nullptr);

struct LogicalFailure {
  bool z = false, x = false;  // residual flips a Z-type / X-type logical
  bool any() const { return z || x; }
};
LogicalFailure logical_failure(const StabilizerCode& code, const Pauli& residual);

struct Interval {
  double lo, hi;
};
Interval wilson_interval(long failures, long trials, double z = 1.959963984540054);

struct QecSpec {
  CodeKind kind;
  int d_r, d_c;
};

struct QecPoint {
  std::string code, variant, dims;
  double s = 0;
  long trials = 0, failures = 0;
  double p_L = 0, ci_lo = 0, ci_hi = 0;
  std::uint64_t seed = 0;
};

QecPoint run_qec_point(const QecSpec& spec, const QecChannel& ch, double s, long trials,
                       std::uint64_t seed, int workers = 1);
std::vector<QecPoint> run_threshold_sweep(const std::vector<QecSpec>& specs,
                                          const std::vector<double>& scales,
                                          const QecChannel& ch, long trials,
                                          std::uint64_t master_seed, int workers = 1);

// Code-capacity overhead extrapolation.
inline constexpr double kThresholdDep = 0.103;
inline constexpr double kThresholdEra = 0.50;
inline constexpr double kThresholdZBiased = 0.50;

double effective_error_rate(double p_undet, double p_era);

struct DistanceFit {
  double a = 0, b = 0;  // log p_L = a + b d
  int points_used = 0;
  double d_star = 0;
  int d_required = 0;
};
// Least squares on log p_L vs d over points inside [lo, hi]; solves p_L = target and
// rounds up to the next odd distance.
DistanceFit fit_distance(const std::vector<int>& d, const std::vector<double>& p_L,
                         double target = 1e-10, double lo = 1e-4, double hi = 1e-1);

enum class CodeFamily { CSS, XZZX };

// Threshold-ratio ansatz p_L(d) = 0.1 r^((d+1)/2) with r = sum_k p_k / p_th,k.
double ansatz_ratio(const QecChannel& ch, CodeFamily f);
double ansatz_p_L(double ratio, int d);

struct OverheadRow {
  std::string label;
  double ratio = 0;
  int d = 0, qubits = 0;
  double saving = 0;  // vs the baseline qubit count
};

struct OverheadReport {
  double p_eff = 0;
  OverheadRow rabi, erasure_css, xzzx;
  int baseline_qubits = 0;
};

struct OverheadInputs {
  QecChannel nominal;           // Regime-A biased-erasure channel
  double p_dep_rabi = 0.0063;   // Rabi gate, no erasure conversion
  std::vector<int> fit_distances = {3, 5, 7, 9, 11, 13};
};
OverheadReport overhead_model(const OverheadInputs& in);

}  // namespace holo
