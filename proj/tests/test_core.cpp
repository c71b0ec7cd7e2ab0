#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "holo/core.hpp"

using namespace holo;

namespace {

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat random_density(int dim, std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Mat a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = cplx(n(g), n(g));
  Mat r = a * dag(a);
  return r / r.trace().real();
}

Mat pure(const Vec& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("spin-1 operators") {
  const Spin1 s = spin1_operators();
  Mat sz = Mat::Zero(3, 3);
  sz(kP, kP) = 1;
  sz(kM, kM) = -1;
  CHECK((s.Sz - sz).norm() == 0.0);
  CHECK((comm(s.Sx, s.Sy) - kI * s.Sz).norm() < 1e-12);
  CHECK((comm(s.Sy, s.Sz) - kI * s.Sx).norm() < 1e-12);
  CHECK((comm(s.Sz, s.Sx) - kI * s.Sy).norm() < 1e-12);
  const Mat dq = (s.Sx * s.Sx - s.Sy * s.Sy) + kI * (s.Sx * s.Sy + s.Sy * s.Sx);
  CHECK((dq - 2.0 * outer(3, kP, kM)).norm() < 1e-15);
  CHECK(is_hermitian(s.Sx));
  CHECK(is_hermitian(s.Sy));
}

TEST_CASE("basis conventions") {
  CHECK(kZ != kP);
  CHECK(kZ != kM);
  CHECK(kP != kM);
}

TEST_CASE("uhlmann fidelity examples") {
  const Mat a = pure(ket(2, 0)), b = pure(ket(2, 1));
  CHECK(uhlmann_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(uhlmann_fidelity(a, b) == doctest::Approx(0.0).epsilon(1e-12));
  const Mat mixed = Mat::Identity(2, 2) / 2.0;
  Vec v(2);
  v << std::cos(0.3), std::exp(kI * 0.7) * std::sin(0.3);
  CHECK(uhlmann_fidelity(mixed, pure(v)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS(uhlmann_fidelity(a, pure(ket(3, 0))));
  Mat bad = a;
  bad(0, 0) = -0.5;
  bad(1, 1) = 1.5;
  CHECK_THROWS(uhlmann_fidelity(bad, a));
}

TEST_CASE("uhlmann fidelity is symmetric on random pairs") {
  std::mt19937_64 g(7);
  for (int k = 0; k < 100; ++k) {
    const int dim = 2 + k % 2;
    const Mat r = random_density(dim, g), s = random_density(dim, g);
    const double f = uhlmann_fidelity(r, s);
    CHECK(std::abs(f - uhlmann_fidelity(s, r)) < 1e-10);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("projection onto the computational doublet") {
  Mat rho = Mat::Zero(3, 3);
  rho(kM, kM) = 0.7;
  rho(kP, kP) = 0.3;
  rho(kM, kP) = 0.2;
  rho(kP, kM) = 0.2;
  const Projected p = project_computational(rho);
  CHECK(p.leakage == 0.0);
  CHECK(p.p_surv == 1.0);
  CHECK(p.rho2(0, 0).real() == doctest::Approx(0.7));
  CHECK(p.rho2(1, 1).real() == doctest::Approx(0.3));
  CHECK(p.rho2(0, 1).real() == doctest::Approx(0.2));

  CHECK_THROWS_AS(project_computational(pure(ket(3, kZ))), FullyLeakedError);

  Mat r2 = Mat::Zero(3, 3);
  r2(kZ, kZ) = 0.00484;
  r2(kM, kM) = 1 - 0.00484;
  const Projected q = project_computational(r2);
  CHECK(q.p_surv == doctest::Approx(0.995160).epsilon(1e-9));
}

TEST_CASE("projection preserves positivity") {
  std::mt19937_64 g(11);
  for (int k = 0; k < 100; ++k) {
    const Mat r = random_density(3, g);
    const Projected p = project_computational(r);
    CHECK(p.leakage == doctest::Approx(r(kZ, kZ).real()));
    CHECK_NOTHROW(check_density(p.rho2));
  }
}

TEST_CASE("matrix helpers") {
  std::mt19937_64 g(3);
  const Mat r = random_density(3, g);
  const Mat s = psd_sqrt(r);
  CHECK((s * s - r).norm() < 1e-12);
  const Spin1 sp = spin1_operators();
  const Mat u = expm_herm(sp.Sx + 0.3 * sp.Sz, 0.8);
  CHECK(is_unitary(u));
  CHECK((expm_herm(sp.Sz, kPi) - Mat(Vec::Map(std::vector<cplx>{-1, 1, -1}.data(), 3).asDiagonal())).norm() <
        1e-12);
  const Mat m2 = (Mat(2, 2) << 1, 2, 3, 4).finished();
  CHECK((q_block(embed_q(m2)) - m2).norm() == 0.0);
}

TEST_CASE("parallel_for runs every index and rethrows") {
  std::vector<int> hit(50, 0);
  parallel_for(50, 4, [&](int i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS(parallel_for(10, 3, [](int i) {
    if (i == 5) throw NumericalError("boom");
  }));
}
