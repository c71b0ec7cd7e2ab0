#include "holo/propagation.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

namespace {

template <int D>
using SqM = Eigen::Matrix<cplx, D, D>;
template <int D>
using Stack = Eigen::Matrix<cplx, D, Eigen::Dynamic>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

template <int D>
struct Generator {
  const Assembly* a;
  std::vector<SqM<D>> ops;
  SqM<D> stat, sz, decay;  // decay = -(i/2) sum L^dag L
  std::vector<SqM<D>> L;
  const FieldTrace* trace = nullptr;
  double gamma_e = 0;
  bool unitary = false;
  int dim;

  Generator(const Assembly& as, const CollapseSet& c, const FieldTerm& f, bool unit, int d)
      : a(&as), dim(d) {
    for (const auto& t : as.terms) ops.push_back(t.op);
    stat = as.static_part.size() ? SqM<D>(as.static_part) : SqM<D>(Mat::Zero(d, d));
    sz = SqM<D>(Mat::Zero(d, d));
    if (d == 3) sz = SqM<D>(spin1_operators().Sz);
    decay = SqM<D>(Mat::Zero(d, d));
    for (const auto& l : c) {
      L.push_back(l.op);
      decay += -0.5 * kI * SqM<D>(l.op.adjoint() * l.op);
    }
    trace = f.trace;
    gamma_e = f.gamma_e;
    unitary = unit;
  }

  // Effective generator G such that dY = -i G Y (+ dissipative sandwich terms).
  SqM<D> heff(double t) const {
    SqM<D> h = stat;
    if (!ops.empty()) {
      const double u = (t - a->t0) / a->dt;
      int k = static_cast<int>(std::floor(u));
      k = std::clamp(k, 0, a->n - 1);
      const double w = std::clamp(u - k, 0.0, 1.0);
      for (size_t i = 0; i < ops.size(); ++i) {
        const double e = (1 - w) * a->terms[i].env[k] + w * a->terms[i].env[k + 1];
        if (e != 0.0) h += e * ops[i];
      }
    }
    if (trace) h += gamma_e * trace->at(t) * sz;
    h *= 2 * kPi;
    if (!unitary) h += decay;
    return h;
  }

  void rhs(double t, const Stack<D>& y, Stack<D>& dy) const {
    const SqM<D> g = heff(t);
    const int K = static_cast<int>(y.cols() / dim);
    dy.resize(y.rows(), y.cols());
    if (unitary) {
      dy.noalias() = -kI * (g * y);
      return;
    }
    const SqM<D> gd = g.adjoint();
    for (int k = 0; k < K; ++k) {
      const auto r = y.middleCols(k * dim, dim);
      SqM<D> out = -kI * (g * r) + kI * (r * gd);
      for (const auto& l : L) out.noalias() += l * r * l.adjoint();
      dy.middleCols(k * dim, dim) = out;
    }
  }
};

template <int D>
double err_norm(const Stack<D>& e, const Stack<D>& y0, const Stack<D>& y1, double atol,
                double rtol) {
  double s = 0;
  const Eigen::Index n = e.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0.data()[i]), std::abs(y1.data()[i]));
    const double q = std::abs(e.data()[i]) / sc;
    s += q * q;
  }
  return std::sqrt(s / static_cast<double>(n));
}

template <int D>
void integrate(const Generator<D>& g, Stack<D>& y, const std::vector<double>& breaks,
               const PropagationGrid& grid, PropagationStats* st) {
  Stack<D> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err;
  const double T = breaks.back() - breaks.front();
  double h = T / std::max(grid.n_steps, 1);
  g.rhs(breaks.front(), y, k1);
  for (size_t s = 0; s + 1 < breaks.size(); ++s) {
    double t = breaks[s];
    const double tend = breaks[s + 1];
    if (tend - t <= 1e-15 * std::max(1.0, T)) continue;
    if (st) ++st->segments;
    // Envelopes kink at segment boundaries, so restart the FSAL slope.
    g.rhs(t, y, k1);
    while (t < tend) {
      bool last = false;
      double hh = h;
      // Snap the final step so round-off never leaves a sliver before the breakpoint.
      if (t + hh >= tend - 1e-12 * std::max(1.0, T)) {
        hh = tend - t;
        last = true;
      }
      if (hh < 1e-14 * std::max(1.0, T)) throw NumericalError("step-size underflow");
      ytmp = y + hh * a21 * k1;
      g.rhs(t + c2 * hh, ytmp, k2);
      ytmp = y + hh * (a31 * k1 + a32 * k2);
      g.rhs(t + c3 * hh, ytmp, k3);
      ytmp = y + hh * (a41 * k1 + a42 * k2 + a43 * k3);
      g.rhs(t + c4 * hh, ytmp, k4);
      ytmp = y + hh * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      g.rhs(t + c5 * hh, ytmp, k5);
      ytmp = y + hh * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      g.rhs(t + hh, ytmp, k6);
      ynew = y + hh * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      g.rhs(t + hh, ynew, k7);
      err = hh * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double en = err_norm<D>(err, y, ynew, grid.atol, grid.rtol);
      if (!std::isfinite(en)) throw NumericalError("non-finite state during propagation");
      if (en <= 1.0) {
        t = last ? tend : t + hh;
        y.swap(ynew);
        k1.swap(k7);
        if (st) ++st->accepted;
        const double fac = en == 0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2)));
        if (!last || fac < 1.0) h = hh * fac;
      } else {
        if (st) ++st->rejected;
        h = hh * std::max(0.2, 0.9 * std::pow(en, -0.2));
      }
    }
  }
}

std::vector<double> breakpoints(const Assembly& a, const FieldTerm& f) {
  std::vector<double> b;
  const double T = a.T();
  if (a.terms.empty()) {
    b = {a.t0, T};
  } else {
    for (int k = 0; k <= a.n; ++k) b.push_back(a.t0 + a.dt * k);
  }
  if (f.trace) {
    for (double t : f.trace->t)
      if (t > a.t0 && t < T) b.push_back(t);
    std::sort(b.begin(), b.end());
  }
  return b;
}

template <int D>
std::vector<Mat> run_lindblad(const Assembly& a, const CollapseSet& c, const std::vector<Mat>& rho0,
                              const PropagationGrid& grid, const FieldTerm& f,
                              PropagationStats* st) {
  const int d = a.dim;
  const int K = static_cast<int>(rho0.size());
  Stack<D> y(d, d * K);
  for (int k = 0; k < K; ++k) y.middleCols(k * d, d) = rho0[k];
  Generator<D> g(a, c, f, false, d);
  integrate<D>(g, y, breakpoints(a, f), grid, st);
  std::vector<Mat> out;
  for (int k = 0; k < K; ++k) {
    Mat r = y.middleCols(k * d, d);
    r = 0.5 * (r + r.adjoint()).eval();
    if (std::abs(r.trace() - rho0[k].trace()) > 1e-6)
      throw NumericalError("trace drift above 1e-6 during propagation");
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<Mat> propagate(const Assembly& a, const CollapseSet& c, const std::vector<Mat>& rho0,
                           const PropagationGrid& grid, const FieldTerm& field,
                           PropagationStats* stats) {
  for (const auto& r : rho0)
    if (r.rows() != a.dim || r.cols() != a.dim) throw std::invalid_argument("dimension mismatch");
  for (const auto& l : c)
    if (l.op.rows() != a.dim) throw std::invalid_argument("collapse dimension mismatch");
  if (a.dim == 3) return run_lindblad<3>(a, c, rho0, grid, field, stats);
  return run_lindblad<Eigen::Dynamic>(a, c, rho0, grid, field, stats);
}

Mat propagate(const Assembly& a, const CollapseSet& c, const Mat& rho0, const PropagationGrid& grid,
              const FieldTerm& field) {
  return propagate(a, c, std::vector<Mat>{rho0}, grid, field).front();
}

Mat propagate_unitary(const Assembly& a, const PropagationGrid& grid) {
  const int d = a.dim;
  if (d == 3) {
    Stack<3> y = Mat::Identity(3, 3);
    Generator<3> g(a, {}, {}, true, 3);
    integrate<3>(g, y, breakpoints(a, {}), grid, nullptr);
    return y;
  }
  Stack<Eigen::Dynamic> y = Mat::Identity(d, d);
  Generator<Eigen::Dynamic> g(a, {}, {}, true, d);
  integrate<Eigen::Dynamic>(g, y, breakpoints(a, {}), grid, nullptr);
  return y;
}

NoiseModel noiseless_model() {
  NoiseModel n;
  n.bath = false;
  n.lindblad = false;
  return n;
}

ChannelRun monte_carlo_channel(const Assembly& protocol, const NoiseModel& noise,
                               const std::vector<Mat>& inputs, int n_traj, const RunIds& ids,
                               const PropagationGrid& grid, int workers) {
  if (n_traj < 1) throw ConfigError("n_traj must be at least 1");
  ChannelRun run;
  run.n_traj = n_traj;
  const CollapseSet cs = noise.lindblad ? lindblad_collapse_set(noise.T1, noise.T1rho, noise.platform)
                                        : CollapseSet{};
  BathGeometry geom;
  if (noise.bath) {
    run.geometry_seed = child_seed(ids.master, ids.sweep, ids.point, ~0ULL);
    Rng grng(run.geometry_seed);
    geom = sample_bath_geometry(noise.bath_cfg, grng);
    run.geometry_scale = geom.scale;
  }
  run.outputs.resize(n_traj);
  run.seeds.resize(n_traj);
  std::vector<long> events(n_traj, 0);
  const double T = protocol.T();
  parallel_for(n_traj, workers, [&](int k) {
    const std::uint64_t seed = child_seed(ids.master, ids.sweep, ids.point, k);
    run.seeds[k] = seed;
    if (!noise.bath) {
      run.outputs[k] = propagate(protocol, cs, inputs, grid);
      return;
    }
    Rng rng(seed);
    auto spins = sample_initial_spins(noise.bath_cfg, rng);
    FieldTrace tr = kmc_field_trace(geom, noise.bath_cfg, spins, T, rng);
    tr.seed = seed;
    if (tr.scale != run.geometry_scale) throw NumericalError("normalization scalar not reused");
    events[k] = static_cast<long>(tr.t.size()) - 1;
    run.outputs[k] = propagate(protocol, cs, inputs, grid, FieldTerm{&tr, noise.gamma_e});
  });
  for (long e : events) run.trace_events += e;
  run.mean.assign(inputs.size(), Mat::Zero(protocol.dim, protocol.dim));
  for (int k = 0; k < n_traj; ++k)
    for (size_t i = 0; i < inputs.size(); ++i) run.mean[i] += run.outputs[k][i];
  for (auto& m : run.mean) m /= static_cast<double>(n_traj);
  return run;
}

}  // namespace holo
