#include "holo/core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace holo {

Spin1 spin1_operators() {
  const double r = 1.0 / std::sqrt(2.0);
  Spin1 s{Mat::Zero(3, 3), Mat::Zero(3, 3), Mat::Zero(3, 3)};
  s.Sx(kP, kZ) = s.Sx(kZ, kP) = s.Sx(kZ, kM) = s.Sx(kM, kZ) = r;
  s.Sy(kP, kZ) = -kI * r;
  s.Sy(kZ, kP) = kI * r;
  s.Sy(kZ, kM) = -kI * r;
  s.Sy(kM, kZ) = kI * r;
  s.Sz(kP, kP) = 1.0;
  s.Sz(kM, kM) = -1.0;
  return s;
}

Mat ket(int dim, int i) {
  Mat k = Mat::Zero(dim, 1);
  k(i, 0) = 1.0;
  return k;
}

Mat outer(int dim, int i, int j) {
  Mat m = Mat::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

Mat dag(const Mat& m) { return m.adjoint(); }

bool is_hermitian(const Mat& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat& m, double tol) {
  const Mat e = m * m.adjoint() - Mat::Identity(m.rows(), m.cols());
  return e.cwiseAbs().maxCoeff() <= tol;
}

void check_density(const Mat& rho, double tol) {
  if (rho.rows() != rho.cols()) throw NumericalError("density matrix not square");
  if (std::abs(rho.trace() - 1.0) > tol) throw NumericalError("density matrix trace != 1");
  if (!is_hermitian(rho, 10 * tol)) throw NumericalError("density matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()));
  if (es.eigenvalues().minCoeff() < -tol) throw NumericalError("density matrix not positive");
}

Mat psd_sqrt(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Mat expm_herm(const Mat& h, double s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  Vec ph(es.eigenvalues().size());
  for (int i = 0; i < ph.size(); ++i) ph(i) = std::exp(-kI * s * es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann_fidelity(const Mat& rho_id, const Mat& rho_act) {
  if (rho_id.rows() != rho_act.rows() || rho_id.cols() != rho_act.cols())
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  check_density(rho_id);
  check_density(rho_act);
  const Mat s = psd_sqrt(rho_id);
  const Mat inner = s * rho_act * s;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (inner + inner.adjoint()));
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

Mat q_block(const Mat& rho3) {
  const int idx[2] = {kM, kP};
  Mat r(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r(a, b) = rho3(idx[a], idx[b]);
  return r;
}

Mat embed_q(const Mat& m2) {
  const int idx[2] = {kM, kP};
  Mat r = Mat::Zero(3, 3);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r(idx[a], idx[b]) = m2(a, b);
  return r;
}

Projected project_computational(const Mat& rho3) {
  if (rho3.rows() != 3 || rho3.cols() != 3) throw std::invalid_argument("expected a qutrit state");
  const double leak = rho3(kZ, kZ).real();
  if (leak >= 1.0 - 1e-12) throw FullyLeakedError("state fully leaked to |0>");
  Projected p;
  p.leakage = leak;
  p.p_surv = 1.0 - leak;
  p.rho2 = q_block(rho3) / p.p_surv;
  return p;
}

void parallel_for(int n, int workers, const std::function<void(int)>& f) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(m);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace holo
