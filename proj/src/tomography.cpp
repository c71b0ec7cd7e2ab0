#include "holo/tomography.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

std::vector<Mat> ic_kets2() {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Mat> k(6, Mat::Zero(2, 1));
  k[0](0, 0) = 1;
  k[1](1, 0) = 1;
  k[2](0, 0) = r, k[2](1, 0) = r;
  k[3](0, 0) = r, k[3](1, 0) = -r;
  k[4](0, 0) = r, k[4](1, 0) = kI * r;
  k[5](0, 0) = r, k[5](1, 0) = -kI * r;
  return k;
}

std::vector<Mat> ic_states() {
  std::vector<Mat> s;
  for (const auto& k : ic_kets2()) s.push_back(embed_q(k * k.adjoint()));
  return s;
}

Mat z_pi_target() {
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  return z;
}

Mat choi_reconstruct(const std::vector<Mat>& outputs, bool conditional) {
  if (outputs.size() != 6) throw std::invalid_argument("choi_reconstruct needs six IC outputs");
  std::vector<Mat> q;
  for (const auto& o : outputs) {
    if (o.rows() == 2) {
      q.push_back(conditional ? Mat(o / o.trace().real()) : o);
    } else if (conditional) {
      q.push_back(project_computational(o).rho2);
    } else {
      q.push_back(q_block(o));
    }
  }
  const Mat EI = (q[0] + q[1] + q[2] + q[3] + q[4] + q[5]) / 3.0;
  const Mat EZ = q[0] - q[1], EX = q[2] - q[3], EY = q[4] - q[5];
  Mat E[2][2];
  E[0][0] = 0.5 * (EI + EZ);
  E[1][1] = 0.5 * (EI - EZ);
  E[0][1] = 0.5 * (EX + kI * EY);
  E[1][0] = 0.5 * (EX - kI * EY);
  Mat J(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) J.block(2 * i, 2 * j, 2, 2) = E[i][j];
  const Mat Jh = 0.5 * (J + J.adjoint());
  if ((J - Jh).cwiseAbs().maxCoeff() > 1e-6) throw NumericalError("reconstructed Choi not Hermitian");
  return Jh;
}

Mat choi_from_kraus(const std::vector<Mat>& kraus) {
  const int d = static_cast<int>(kraus.front().cols());
  Mat J = Mat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      for (const auto& k : kraus) e += k * outer(d, i, j) * k.adjoint();
      J.block(d * i, d * j, d, d) = e;
    }
  return J;
}

namespace {

Mat apply_choi(const Mat& J, const Mat& m) {
  const int d = static_cast<int>(m.rows());
  Mat out = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out += m(i, j) * J.block(d * i, d * j, d, d);
  return out;
}

}  // namespace

GateFidelities gate_fidelities(const Mat& J, const Mat& U) {
  const int d = static_cast<int>(U.rows());
  cplx s = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Mat ui = U.col(i), uj = U.col(j);
      s += (ui.adjoint() * J.block(d * i, d * j, d, d) * uj)(0, 0);
    }
  GateFidelities g;
  g.F_e = s.real() / (d * d);
  const double trJ = J.trace().real();
  g.F_avg = (d * g.F_e + trJ / d) / (d + 1);
  return g;
}

double effective_fidelity(double p_surv, double F_cond) {
  if (p_surv < 0 || p_surv > 1 || F_cond < 0 || F_cond > 1)
    throw std::invalid_argument("effective_fidelity inputs must lie in [0,1]");
  return p_surv * F_cond;
}

double legacy_fidelity(const Mat& out) { return out(kM, kM).real(); }

ProcessMetrics process_metrics(const std::vector<Mat>& outs, const Mat& U) {
  ProcessMetrics m;
  m.F_leg = legacy_fidelity(outs[0]);
  double L = 0;
  for (const auto& o : outs) L += o(kZ, kZ).real();
  m.leakage = L / outs.size();
  m.p_surv = 1 - m.leakage;
  const auto gc = gate_fidelities(choi_reconstruct(outs, true), U);
  const auto gu = gate_fidelities(choi_reconstruct(outs, false), U);
  m.F_e = gc.F_e;
  m.F_avg = gc.F_avg;
  m.F_avg_unc = gu.F_avg;
  m.F_eff = effective_fidelity(m.p_surv, std::clamp(m.F_avg, 0.0, 1.0));
  return m;
}

ProcessMetrics channel_metrics(const ChannelRun& run, const Mat& U, int resamples,
                               std::uint64_t seed) {
  ProcessMetrics m = process_metrics(run.mean, U);
  m.F_avg_ci_lo = m.F_avg_ci_hi = m.F_avg;
  m.leakage_ci_lo = m.leakage_ci_hi = m.leakage;
  if (run.n_traj < 2 || resamples < 1) return m;
  Rng rng(seed);
  std::vector<double> fa, lk;
  const size_t nin = run.mean.size();
  for (int b = 0; b < resamples; ++b) {
    std::vector<Mat> acc(nin, Mat::Zero(3, 3));
    for (int k = 0; k < run.n_traj; ++k) {
      const int pick = rng.below(run.n_traj);
      for (size_t i = 0; i < nin; ++i) acc[i] += run.outputs[pick][i];
    }
    for (auto& a : acc) a /= static_cast<double>(run.n_traj);
    const auto pm = process_metrics(acc, U);
    fa.push_back(pm.F_avg);
    lk.push_back(pm.leakage);
  }
  auto pct = [](std::vector<double>& v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const size_t i = static_cast<size_t>(pos);
    const double w = pos - i;
    return i + 1 < v.size() ? (1 - w) * v[i] + w * v[i + 1] : v[i];
  };
  m.F_avg_ci_lo = std::min(m.F_avg, pct(fa, 0.025));
  m.F_avg_ci_hi = std::max(m.F_avg, pct(fa, 0.975));
  m.leakage_ci_lo = std::min(m.leakage, pct(lk, 0.025));
  m.leakage_ci_hi = std::max(m.leakage, pct(lk, 0.975));
  return m;
}

PauliTwirl pauli_twirl(const Mat& J, const Mat& U) {
  Mat s[3] = {Mat(2, 2), Mat(2, 2), Mat(2, 2)};
  s[0] << 0, 1, 1, 0;
  s[1] << 0, -kI, kI, 0;
  s[2] << 1, 0, 0, -1;
  double R[3];
  for (int k = 0; k < 3; ++k) {
    const Mat out = U.adjoint() * apply_choi(J, s[k]) * U;
    R[k] = 0.5 * (s[k] * out).trace().real();
  }
  const double RI = 0.5 * apply_choi(J, Mat::Identity(2, 2)).trace().real();
  PauliTwirl p;
  p.p_I = (RI + R[0] + R[1] + R[2]) / 4;
  p.p_X = (RI + R[0] - R[1] - R[2]) / 4;
  p.p_Y = (RI - R[0] + R[1] - R[2]) / 4;
  p.p_Z = (RI - R[0] - R[1] + R[2]) / 4;
  return p;
}

BiasedErasureChannel extract_biased_erasure(const std::vector<Mat>& outs, const Mat& U,
                                            double eta) {
  if (eta < 0 || eta > 1) throw ConfigError("eta_det must lie in [0,1]");
  BiasedErasureChannel c;
  c.eta_det = eta;
  double L = 0;
  for (const auto& o : outs) L += o.rows() == 3 ? o(kZ, kZ).real() : 0.0;
  L /= outs.size();
  const auto tw = pauli_twirl(choi_reconstruct(outs, true), U);
  c.p_era = eta * L;
  c.p_dep = (1 - eta) * L;
  c.p_Z = std::max(0.0, tw.p_Z);
  c.p_X = std::max(0.0, tw.p_X);
  c.p_Y = std::max(0.0, tw.p_Y);
  c.p_XY = c.p_X + c.p_Y;
  c.p_XY_floor = c.p_XY < 1e-7;
  return c;
}

BiasedErasureChannel extract_biased_erasure(const ChannelRun& run, const Mat& U, double eta) {
  return extract_biased_erasure(run.mean, U, eta);
}

}  // namespace holo
