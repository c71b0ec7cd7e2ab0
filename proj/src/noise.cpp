#include "holo/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace holo {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t sweep, std::uint64_t point,
                         std::uint64_t traj) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ sweep);
  h = mix64(h ^ point);
  return mix64(h ^ traj);
}

double single_spin_field(double r, double alpha) {
  const double c = std::cos(alpha);
  return kDipolePrefactor * (3 * c * c - 1) / (r * r * r);
}

double continuum_field_variance(const SurfaceBathConfig& cfg) {
  const double d2 = cfg.depth * cfg.depth;
  return cfg.rho_s * kDipolePrefactor * kDipolePrefactor * 0.25 * (3 * kPi / 4) / (d2 * d2);
}

double discrete_field_variance(const BathGeometry& g) {
  double v = 0;
  for (double c : g.coupling) v += 0.25 * c * c;
  return v;
}

BathGeometry sample_bath_geometry(const SurfaceBathConfig& cfg, Rng& rng) {
  if (cfg.N < 1) throw ConfigError("bath needs at least one spin");
  if (!(cfg.rho_s > 0 && cfg.tau_c > 0 && cfg.r_c > 0 && cfg.depth > 0))
    throw ConfigError("bath parameters must be positive");
  BathGeometry g;
  g.side = std::sqrt(cfg.N / cfg.rho_s);
  for (int i = 0; i < cfg.N; ++i) {
    const double x = (rng.uniform() - 0.5) * g.side;
    const double y = (rng.uniform() - 0.5) * g.side;
    g.x.push_back(x);
    g.y.push_back(y);
    const double r = std::sqrt(x * x + y * y + cfg.depth * cfg.depth);
    g.coupling.push_back(single_spin_field(r, std::acos(cfg.depth / r)));
  }
  double cum = 0;
  for (int i = 0; i < cfg.N; ++i)
    for (int j = i + 1; j < cfg.N; ++j) {
      const double r = std::hypot(g.x[i] - g.x[j], g.y[i] - g.y[j]);
      cum += std::exp(-r / cfg.r_c) / cfg.tau_c;
      g.pairs.emplace_back(i, j);
      g.pair_rate_cum.push_back(cum);
    }
  g.total_rate = cum;
  const double vd = discrete_field_variance(g);
  g.scale = vd > 0 ? std::sqrt(continuum_field_variance(cfg) / vd) : 1.0;
  return g;
}

std::vector<double> sample_initial_spins(const SurfaceBathConfig& cfg, Rng& rng) {
  std::vector<double> s(cfg.N);
  for (auto& v : s) v = rng.uniform() < 0.5 ? 0.5 : -0.5;
  return s;
}

double FieldTrace::at(double time) const {
  auto it = std::upper_bound(t.begin(), t.end(), time);
  const size_t k = it == t.begin() ? 0 : static_cast<size_t>(it - t.begin() - 1);
  return Bz[k];
}

FieldTrace kmc_field_trace(const BathGeometry& g, const SurfaceBathConfig& cfg,
                           std::vector<double> spins, double T, Rng& rng) {
  if (!(T > 0)) throw ConfigError("trace duration must be positive");
  FieldTrace tr;
  tr.scale = g.scale;
  auto field = [&]() {
    double b = 0;
    for (size_t i = 0; i < spins.size(); ++i) b += spins[i] * g.coupling[i];
    return g.scale * b;
  };
  tr.t.push_back(0.0);
  tr.Bz.push_back(field());
  if (g.total_rate <= 0) return tr;
  double t = 0;
  while (true) {
    t += rng.exponential(g.total_rate);
    if (t >= T) break;
    const double u = rng.uniform() * g.total_rate;
    auto it = std::upper_bound(g.pair_rate_cum.begin(), g.pair_rate_cum.end(), u);
    const size_t k = std::min<size_t>(it - g.pair_rate_cum.begin(), g.pairs.size() - 1);
    const auto [i, j] = g.pairs[k];
    if (cfg.mode == HopMode::Swap) {
      if (spins[i] == spins[j]) continue;
      std::swap(spins[i], spins[j]);
    } else {
      spins[i] = -spins[i];
      spins[j] = -spins[j];
    }
    tr.t.push_back(t);
    tr.Bz.push_back(field());
  }
  return tr;
}

CollapseSet lindblad_collapse_set(double T1, double T1rho, Platform platform) {
  CollapseSet c;
  const bool t1 = std::isfinite(T1) && T1 > 0;
  const bool t1r = std::isfinite(T1rho) && T1rho > 0;
  if (platform == Platform::SiV) {
    if (t1) {
      const double r = 1.0 / (2 * T1);
      c.push_back({std::sqrt(r) * outer(3, kP, kZ), r});
      c.push_back({std::sqrt(r) * outer(3, kM, kZ), r});
    }
    return c;
  }
  if (t1) {
    const double r = 1.0 / T1;
    c.push_back({std::sqrt(r) * outer(3, kZ, kP), r});
    c.push_back({std::sqrt(r) * outer(3, kZ, kM), r});
  }
  if (t1r) {
    const double r = 1.0 / (3 * T1rho);
    Mat sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, -kI, kI, 0;
    sz << 1, 0, 0, -1;
    for (const Mat* s : {&sx, &sy, &sz}) c.push_back({std::sqrt(r) * embed_q(*s), r});
  }
  return c;
}

void write_trace_csv(std::ostream& os, const FieldTrace& tr) {
  os << "t,B_z\n";
  os.precision(12);
  for (size_t k = 0; k < tr.t.size(); ++k) os << tr.t[k] << ',' << tr.Bz[k] << '\n';
}

}  // namespace holo
