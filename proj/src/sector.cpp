#include "holo/sector.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "holo/control.hpp"

namespace holo {

std::string to_string(Sector s) {
  switch (s) {
    case Sector::A1: return "A1";
    case Sector::A2: return "A2";
    case Sector::Ex: return "Ex";
    case Sector::Ey: return "Ey";
  }
  return "?";
}

Sector sector_from_string(const std::string& s) {
  if (s == "A1") return Sector::A1;
  if (s == "A2") return Sector::A2;
  if (s == "Ex") return Sector::Ex;
  if (s == "Ey") return Sector::Ey;
  throw ConfigError("unknown sector: " + s);
}

Mat sector_operator(Sector s) {
  const Spin1 sp = spin1_operators();
  Mat v;
  switch (s) {
    case Sector::A1: v = sp.Sz * sp.Sz; break;
    case Sector::A2: v = sp.Sz; break;
    case Sector::Ex: v = sp.Sx; break;
    case Sector::Ey: v = sp.Sy; break;
  }
  return v / std::sqrt((v.adjoint() * v).trace().real());
}

namespace {

// Eigenvector of h closest to zero energy, phase-aligned to ref.
Vec dark_eigvec(const Mat& h, const Vec& ref) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  int best = 0;
  for (int i = 1; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) < std::abs(es.eigenvalues()(best))) best = i;
  Vec v = es.eigenvectors().col(best);
  const cplx o = ref.dot(v);
  if (std::abs(o) > 0) v *= std::conj(o) / std::abs(o);
  return v;
}

}  // namespace

Vec first_order_dark_correction(const Mat& V, double omega_m, double theta, double phi,
                                const Mat& H0) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H0);
  const Vec D = dark_state(theta, phi);
  Vec d1 = Vec::Zero(3);
  const double gap_tol = 1e-9 * omega_m;
  for (int n = 0; n < 3; ++n) {
    const double E = es.eigenvalues()(n);
    if (std::abs(E) < gap_tol) continue;
    const Vec v = es.eigenvectors().col(n);
    d1 += v * (v.dot(V * D)) / (0.0 - E);
  }
  return d1;
}

Vec first_order_dark_correction(const Mat& V, double omega_m, double theta, double phi) {
  return first_order_dark_correction(V, omega_m, theta, phi, lambda_rwa(omega_m, theta, phi));
}

DirectionSplit direction_split(const Vec& d1, double theta, double phi) {
  DirectionSplit s;
  s.W0 = std::norm(d1(kZ));
  s.WB = std::norm(bright_state(theta, phi).dot(d1));
  const double tot = s.W0 + s.WB;
  s.coupled = tot > 1e-24;
  s.f0 = s.coupled ? s.W0 / tot : 0.0;
  s.fB = s.coupled ? s.WB / tot : 0.0;
  return s;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-300));
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double berry_phase(const Mat& V, double sigma, int n_lunes, double omega_m, int samples) {
  TrajectoryParams tp;
  tp.kind = ProtocolKind::PhaseCycled;
  tp.n_lunes = n_lunes;
  tp.T_gate = static_cast<double>(n_lunes);
  tp.n_samples = samples * n_lunes;
  const Trajectory tr(tp);
  cplx prod = 1.0;
  Vec first, prev;
  // Each lune is sampled on its own closed grid so the loop product stays symmetric.
  for (int j = 0; j < n_lunes; ++j)
    for (int k = 0; k <= samples; ++k) {
      const double l = tr.lune_duration() * k / samples;
      const double th = tr.theta_local(l), ph = tr.phi_local(j, l);
      const Mat h = lambda_rwa(omega_m, th, ph) + sigma * V;
      const Vec d = dark_eigvec(h, prev.size() ? prev : dark_state(th, ph));
      if (!first.size()) first = d;
      if (prev.size()) prod *= prev.dot(d);
      prev = d;
    }
  prod *= prev.dot(first);
  return -std::arg(prod);
}

double berry_phase_odd_shift(const Mat& V, double sigma, int n_lunes, double omega_m, int samples) {
  const double gp = berry_phase(V, sigma, n_lunes, omega_m, samples);
  const double gm = berry_phase(V, -sigma, n_lunes, omega_m, samples);
  return std::abs(std::arg(std::exp(kI * (gp - gm)))) / 2;
}

SectorInjectionResult sector_injection(Sector s, const SectorInjectionOptions& o) {
  SectorInjectionResult r;
  r.sector = s;
  r.n_lunes = o.n_lunes;
  const Mat V = sector_operator(s);
  const Mat H0 = lambda_rwa(o.omega_m, o.theta, o.phi);
  const auto split = direction_split(first_order_dark_correction(V, o.omega_m, o.theta, o.phi, H0),
                                     o.theta, o.phi);
  r.f0 = split.f0;
  r.fB = split.fB;
  r.coupled = split.coupled;

  const Vec D = dark_state(o.theta, o.phi);
  const Vec B = bright_state(o.theta, o.phi);
  for (double x : o.sigma_weights) {
    const Vec d = dark_eigvec(H0 + x * o.omega_m * V, D);
    r.sigma.push_back(x);
    r.W0.push_back(std::norm(d(kZ)));
    r.WB.push_back(std::norm(B.dot(d)));
  }
  r.slope_W0 = loglog_slope(r.sigma, r.W0);
  r.slope_WB = loglog_slope(r.sigma, r.WB);

  for (double x : o.sigma_phase) {
    r.dphase_1.push_back(berry_phase_odd_shift(V, x * o.omega_m, 1, o.omega_m, o.samples_per_lune));
    r.dphase_n.push_back(
        berry_phase_odd_shift(V, x * o.omega_m, o.n_lunes, o.omega_m, o.samples_per_lune));
  }
  r.slope_phase_1 = loglog_slope(o.sigma_phase, r.dphase_1);
  r.slope_phase_n = loglog_slope(o.sigma_phase, r.dphase_n);
  return r;
}

MixedScanResult mixed_sector_scan(const std::vector<double>& alpha, const std::vector<double>& beta,
                                  double sigma, double theta, double phi) {
  if (!(sigma > 0 && sigma <= 1e-2)) throw ConfigError("mixed scan needs 0 < sigma/omega_m <= 1e-2");
  const double om = 1.0;
  const Mat z = sector_operator(Sector::A2), x = sector_operator(Sector::Ex),
            y = sector_operator(Sector::Ey);
  auto weights = [&](const Mat& V, double ph) {
    const Vec d1 = sigma * first_order_dark_correction(V, om, theta, ph);
    return direction_split(d1, theta, ph);
  };
  auto echo = [&](const Mat& V) {
    const auto a = weights(V, phi), b = weights(V, phi + kPi);
    return std::pair<double, double>{0.5 * (a.W0 + b.W0), 0.5 * (a.WB + b.WB)};
  };
  const double R_A2 = echo(z).first;
  const double R_E = echo(x).second;
  MixedScanResult r;
  for (double a : alpha)
    for (double b : beta) {
      const Mat V = std::cos(a) * z + std::sin(a) * (std::cos(b) * x + std::sin(b) * y);
      const auto [w0, wb] = echo(V);
      const double p0 = w0 / R_A2, pb = wb / R_E;
      const double f0 = p0 / (p0 + pb);
      r.alpha.push_back(a);
      r.beta.push_back(b);
      r.f0.push_back(f0);
      r.fB.push_back(1 - f0);
      r.max_dev_f0 = std::max(r.max_dev_f0, std::abs(f0 - std::cos(a) * std::cos(a)));
      r.max_dev_fB = std::max(r.max_dev_fB, std::abs((pb / (p0 + pb)) - std::sin(a) * std::sin(a)));
      const auto s1 = weights(V, phi);
      const double q0 = s1.W0 / weights(z, phi).W0, qb = s1.WB / weights(x, phi).WB;
      r.max_dev_single = std::max(r.max_dev_single, std::abs(q0 / (q0 + qb) - std::cos(a) * std::cos(a)));
    }
  return r;
}

SpurionResult spurion_robustness(double x, double a, double dphi) {
  if (std::abs(x) > 0.2 + 1e-12 || std::abs(a) > 0.2 + 1e-12 || std::abs(dphi) > kPi / 9 + 1e-12)
    throw ConfigError("spurion inputs outside the small-error range");
  const double om = 1.0, th = kPi / 2, ph = 0.0;
  const Mat H = lambda_rwa(om, th, ph, LegSkew{a, dphi}) + x * om * outer(3, kZ, kZ);
  // The Lambda dark state survives detuning on |0>; take it from H itself.
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  int di = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(es.eigenvalues()(i)) < std::abs(es.eigenvalues()(di))) di = i;
  const Vec D = es.eigenvectors().col(di);
  const Mat V = sector_operator(Sector::A2);
  Vec d1 = Vec::Zero(3);
  for (int n = 0; n < 3; ++n) {
    if (n == di) continue;
    const Vec v = es.eigenvectors().col(n);
    d1 += v * (v.dot(V * D)) / (es.eigenvalues()(di) - es.eigenvalues()(n));
  }
  const auto s = direction_split(d1, th, ph);
  SpurionResult r;
  r.f0 = s.f0;
  r.fB = s.fB;
  r.fB_analytic_delta = 4 * x * x / (1 + 4 * x * x);
  r.fB_analytic_amp = a * a;
  r.fB_analytic_phase = std::sin(dphi) * std::sin(dphi);
  return r;
}

}  // namespace holo
