#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace holo {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Qutrit ordering (|+1>, |0>, |-1>). Logical 0 is |-1>, logical 1 is |+1>.
inline constexpr int kP = 0;
inline constexpr int kZ = 1;
inline constexpr int kM = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FullyLeakedError : NumericalError {
  using NumericalError::NumericalError;
};

struct Spin1 {
  Mat Sx, Sy, Sz;
};

Spin1 spin1_operators();

Mat ket(int dim, int i);
Mat outer(int dim, int i, int j);
Mat dag(const Mat& m);

bool is_hermitian(const Mat& m, double tol = 1e-12);
bool is_unitary(const Mat& m, double tol = 1e-10);
void check_density(const Mat& rho, double tol = 1e-9);

// Hermitian square root with negative eigenvalues clipped to zero.
Mat psd_sqrt(const Mat& h);
// exp(-i * s * H) for Hermitian H.
Mat expm_herm(const Mat& h, double s);

double uhlmann_fidelity(const Mat& rho_id, const Mat& rho_act);

struct Projected {
  Mat rho2;  // ordered (0_L, 1_L) = (|-1>, |+1>)
  double leakage;
  double p_surv;
};

Projected project_computational(const Mat& rho3);

// 2x2 block on Q in logical order, without renormalizing.
Mat q_block(const Mat& rho3);
// Embed a logical 2x2 operator into the qutrit (zero on |0>).
Mat embed_q(const Mat& m2);

// Runs f(0..n-1) on a pool; the first exception is rethrown after join.
void parallel_for(int n, int workers, const std::function<void(int)>& f);

}  // namespace holo
