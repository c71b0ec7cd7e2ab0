#include "holo/hamiltonians.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

PlatformParams nv_params() { return PlatformParams{}; }

PlatformParams sic3c_params() {
  PlatformParams p;
  p.tag = Platform::SiC3C;
  p.D = 1330.0;
  p.h26 = 1800.0;
  p.h16 = 1350.0;
  return p;
}

PlatformParams siv_params() {
  PlatformParams p;
  p.tag = Platform::SiV;
  p.D = 0.0;
  return p;
}

Mat nv_static(const PlatformParams& p) {
  if (p.tag == Platform::SiV) throw ConfigError("nv_static needs an NV-type platform");
  const Spin1 s = spin1_operators();
  return p.D * s.Sz * s.Sz + p.gamma_e * p.Bz * s.Sz;
}

Mat lambda_rwa(double omega_m, double theta, double phi, const LegSkew& skew) {
  if (!(omega_m > 0)) throw ConfigError("omega_m must be positive");
  const double s = std::sin(theta / 2), c = std::cos(theta / 2);
  const cplx k = (1.0 + skew.amp) * std::exp(kI * skew.phase);
  Mat h = Mat::Zero(3, 3);
  h(kZ, kM) = h(kM, kZ) = 0.5 * omega_m * s;
  h(kZ, kP) = -0.5 * omega_m * c * k * std::exp(-kI * phi);
  h(kP, kZ) = std::conj(h(kZ, kP));
  return h;
}

Vec dark_state(double theta, double phi) {
  Vec d = Vec::Zero(3);
  d(kM) = std::cos(theta / 2);
  d(kP) = std::exp(kI * phi) * std::sin(theta / 2);
  return d;
}

Vec bright_state(double theta, double phi) {
  Vec b = Vec::Zero(3);
  b(kM) = std::sin(theta / 2);
  b(kP) = -std::exp(kI * phi) * std::cos(theta / 2);
  return b;
}

CDOperators cd_operator(double phi) {
  CDOperators c;
  c.op_re = outer(3, kM, kP) + outer(3, kP, kM);
  c.op_im = kI * (outer(3, kP, kM) - outer(3, kM, kP));
  c.direction = -0.5 * (std::sin(phi) * c.op_re - std::cos(phi) * c.op_im);
  return c;
}

StarkScale dq_stark_scale(double omega_m, const PlatformParams& p) {
  if (!(omega_m > 0)) throw ConfigError("omega_m must be positive");
  StarkScale s;
  s.eps0 = omega_m / std::abs(p.h26);
  s.omega_dq = std::abs(p.h16) * s.eps0;
  const double r = std::abs(p.h16 / p.h26);
  s.delta_ac_khz = 1e3 * r * r * omega_m * omega_m / (4 * p.D);
  return s;
}

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, x); }

double stark_lune_average(int n) {
  if (n % 2) ++n;
  auto f = [](double u) { return std::cos(kPi * std::sin(kPi * u)); };
  const double h = 1.0 / n;
  double s = f(0) + f(1);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return s * h / 3;
}

StarkTerms stark_terms(double delta_ac_khz, const TrajectorySamples& s, const PlatformParams& p,
                       bool compensated) {
  StarkTerms st;
  const double d = delta_ac_khz * 1e-3;
  const double offset = p.D > 0 ? p.gamma_e * p.Bz / p.D : 0.0;
  for (size_t k = 0; k < s.t.size(); ++k)
    st.coeff.push_back(compensated ? 0.0 : -d * (std::cos(s.theta[k]) + offset));
  double acc = 0;
  for (size_t k = 1; k < s.t.size(); ++k)
    acc += 0.5 * (st.coeff[k] + st.coeff[k - 1]) * (s.t[k] - s.t[k - 1]);
  st.phase = 2 * kPi * acc;
  st.phase_analytic = compensated ? 0.0 : -2 * kPi * d * s.T_gate * (bessel_j0(kPi) + offset);
  return st;
}

Mat sz_on_q() {
  Mat m = Mat::Zero(3, 3);
  m(kP, kP) = 1.0;
  m(kM, kM) = -1.0;
  return m;
}

Mat Assembly::at(double t) const {
  Mat h = static_part.size() ? static_part : Mat::Zero(dim, dim);
  if (terms.empty()) return h;
  double u = (t - t0) / dt;
  int k = static_cast<int>(std::floor(u));
  k = std::clamp(k, 0, n - 1);
  const double w = std::clamp(u - k, 0.0, 1.0);
  for (const auto& term : terms) {
    const double e = (1 - w) * term.env[k] + w * term.env[k + 1];
    if (e != 0.0) h += e * term.op;
  }
  return h;
}

Assembly assemble_lambda_protocol(const TrajectorySamples& s, const ProtocolHamiltonian& hp,
                                  const PlatformParams& p) {
  if (!(hp.omega_m > 0)) throw ConfigError("omega_m must be positive");
  Assembly a;
  a.dim = 3;
  a.t0 = s.t.front();
  a.n = static_cast<int>(s.t.size()) - 1;
  a.dt = (s.t.back() - s.t.front()) / a.n;
  a.static_part = hp.delta0 * outer(3, kZ, kZ);

  const Mat A = outer(3, kZ, kM) + outer(3, kM, kZ);
  const Mat Bx = outer(3, kZ, kP) + outer(3, kP, kZ);
  const Mat By = kI * (outer(3, kZ, kP) - outer(3, kP, kZ));
  const CDOperators cd = cd_operator(0.0);
  const cplx k = (1.0 + hp.skew.amp) * std::exp(kI * hp.skew.phase);

  Term ta{A, {}}, tbx{Bx, {}}, tby{By, {}}, tre{cd.op_re, {}}, tim{cd.op_im, {}};
  for (size_t i = 0; i < s.t.size(); ++i) {
    const double sn = std::sin(s.theta[i] / 2), cs = std::cos(s.theta[i] / 2);
    const cplx z = -cs * k * std::exp(-kI * s.phi[i]);
    ta.env.push_back(0.5 * hp.omega_m * sn);
    tbx.env.push_back(0.5 * hp.omega_m * z.real());
    tby.env.push_back(0.5 * hp.omega_m * z.imag());
    tre.env.push_back(0.5 * satd_re(hp.alpha_cd, s.theta_dot[i], s.phi[i]));
    tim.env.push_back(0.5 * satd_im(hp.alpha_cd, s.theta_dot[i], s.phi[i]));
  }
  a.terms = {ta, tbx, tby};
  if (hp.alpha_cd != 0.0) {
    a.terms.push_back(tre);
    a.terms.push_back(tim);
  }
  if (!hp.stark_compensated && hp.stark_scale != 0.0) {
    const double dac = hp.stark_scale * dq_stark_scale(hp.omega_m, p).delta_ac_khz;
    a.terms.push_back(Term{sz_on_q(), stark_terms(dac, s, p, false).coeff});
  }
  return a;
}

Assembly single_shot_hamiltonian(const SingleShotCommand& c) {
  Assembly a;
  a.dim = 3;
  a.t0 = 0;
  a.n = static_cast<int>(c.t.size()) - 1;
  a.dt = c.T_gate / a.n;
  const int aux = kZ, l0 = kM, l1 = kP;
  const Mat P0 = outer(3, aux, l0) + outer(3, l0, aux);
  const Mat Q0 = kI * (outer(3, aux, l0) - outer(3, l0, aux));
  const Mat P1 = outer(3, aux, l1) + outer(3, l1, aux);
  const Mat Q1 = kI * (outer(3, aux, l1) - outer(3, l1, aux));
  const Mat Da = outer(3, aux, aux);
  auto half = [](std::vector<double> v) {
    for (auto& x : v) x *= 0.5;
    return v;
  };
  a.terms = {Term{P0, half(c.om0_re)}, Term{Q0, half(c.om0_im)}, Term{P1, half(c.om1_re)},
             Term{Q1, half(c.om1_im)}, Term{Da, c.delta}};
  return a;
}

Mat single_shot_block(double alpha) {
  Mat m(2, 2);
  m << std::sin(alpha), 0.5 * std::cos(alpha), 0.5 * std::cos(alpha), 0.0;
  return m;
}

ProjectorBus projector_bus_unitary(double f1, double f2, double delta) {
  if (delta == 0.0) throw ConfigError("bus detuning must be nonzero");
  ProjectorBus b;
  b.T = 1.0 / std::abs(delta);
  b.chi = 4 * kPi * f1 * f2 / (delta * delta);
  for (int n1 = 0; n1 < 2; ++n1)
    for (int n2 = 0; n2 < 2; ++n2) {
      const double F = f1 * n1 + f2 * n2;
      b.phase[2 * n1 + n2] = 2 * kPi * F * F / (delta * delta);
    }
  return b;
}

// Fixed-step RK4 in the Fock basis with K = F (a e^{-i 2 pi delta t} + h.c.).
ProjectorBus projector_bus_numeric(double f1, double f2, double delta, int n_fock) {
  if (delta == 0.0) throw ConfigError("bus detuning must be nonzero");
  ProjectorBus b;
  b.T = 1.0 / std::abs(delta);
  Mat a = Mat::Zero(n_fock, n_fock);
  for (int k = 1; k < n_fock; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Mat ad = a.adjoint();
  const int steps = 20000;
  const double h = b.T / steps;
  for (int n1 = 0; n1 < 2; ++n1)
    for (int n2 = 0; n2 < 2; ++n2) {
      const double F = f1 * n1 + f2 * n2;
      auto rhs = [&](double t, const Vec& psi) -> Vec {
        const cplx e = std::exp(-kI * 2.0 * kPi * delta * t);
        return -kI * 2.0 * kPi * F * (e * (a * psi) + std::conj(e) * (ad * psi));
      };
      Vec psi = Vec::Zero(n_fock);
      psi(0) = 1.0;
      for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const Vec k1 = rhs(t, psi);
        const Vec k2 = rhs(t + h / 2, psi + h / 2 * k1);
        const Vec k3 = rhs(t + h / 2, psi + h / 2 * k2);
        const Vec k4 = rhs(t + h, psi + h * k3);
        psi += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      }
      b.phase[2 * n1 + n2] = std::arg(psi(0));
    }
  b.chi = b.phase[3] - b.phase[1] - b.phase[2] + b.phase[0];
  return b;
}

SiVPlatform siv_platform(double omega_m, const std::string& regime) {
  if (!(omega_m > 0)) throw ConfigError("omega_m must be positive");
  if (regime == "mK") return {0.143, 0.0, omega_m};
  if (regime == "4K") return {0.040, 0.0, omega_m};
  throw ConfigError("unknown SiV regime: " + regime);
}

}  // namespace holo
