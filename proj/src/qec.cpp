#include "holo/qec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "holo/matching.hpp"

namespace holo {

bool Pauli::commutes(const Pauli& o) const {
  int s = 0;
  for (int i = 0; i < size(); ++i) s ^= (x[i] & o.z[i]) ^ (z[i] & o.x[i]);
  return s == 0;
}

void Pauli::mul(const Pauli& o) {
  for (int i = 0; i < size(); ++i) {
    x[i] ^= o.x[i];
    z[i] ^= o.z[i];
  }
}

int Pauli::weight() const {
  int w = 0;
  for (int i = 0; i < size(); ++i) w += (x[i] | z[i]);
  return w;
}

std::string code_variant(CodeKind k) {
  switch (k) {
    case CodeKind::ToricCSS: return "CSS";
    case CodeKind::ToricXZZX: return "XZZX";
    case CodeKind::PlanarXZZX: return "XZZX";
  }
  return "?";
}

std::string StabilizerCode::id() const {
  if (kind == CodeKind::PlanarXZZX)
    return "planar-xzzx-" + std::to_string(d_r) + "x" + std::to_string(d_c);
  return std::string(kind == CodeKind::ToricCSS ? "toric-css-d" : "toric-xzzx-d") +
         std::to_string(d_r);
}

namespace {

Pauli pauli_on(int n, const std::vector<int>& qs, bool xtype) {
  Pauli p(n);
  for (int q : qs) (xtype ? p.x : p.z)[q] = 1;
  return p;
}

void hadamard(Pauli& p, const std::vector<std::uint8_t>& mask) {
  for (int i = 0; i < p.size(); ++i)
    if (mask[i]) std::swap(p.x[i], p.z[i]);
}

void build_graphs(StabilizerCode& c, bool with_boundary) {
  for (int s = 0; s < 2; ++s) {
    DecodingGraph& g = c.graph[s];
    g.n_checks = static_cast<int>(c.checks[s].size());
    g.boundary = with_boundary;
    g.edge.assign(c.n, {-1, -1});
    g.fix_x.assign(c.n, 0);
    g.fix_z.assign(c.n, 0);
    g.adj.assign(g.n_checks + (with_boundary ? 1 : 0), {});
    for (int q = 0; q < c.n; ++q) {
      std::vector<int> on;
      int tx = -1, tz = -1;
      for (int k = 0; k < g.n_checks; ++k) {
        const Pauli& ck = c.checks[s][k];
        if (!(ck.x[q] | ck.z[q])) continue;
        if (tx >= 0 && (tx != ck.x[q] || tz != ck.z[q]))
          throw std::logic_error("sector checks disagree on a qubit's Pauli");
        tx = ck.x[q], tz = ck.z[q];
        on.push_back(k);
      }
      if (on.empty()) throw std::logic_error("qubit outside a sector's checks");
      if (on.size() > 2 || (on.size() == 1 && !with_boundary))
        throw std::logic_error("qubit does not form a graph edge");
      const int a = on[0], b = on.size() == 2 ? on[1] : g.n_checks;
      g.edge[q] = {a, b};
      g.adj[a].push_back({b, q});
      g.adj[b].push_back({a, q});
      // Correction Pauli: anticommutes with this sector's type, commutes with the other's.
      int ox = -1, oz = -1;
      for (const Pauli& ck : c.checks[1 - s])
        if (ck.x[q] | ck.z[q]) {
          ox = ck.x[q], oz = ck.z[q];
          break;
        }
      bool found = false;
      const int cand[3][2] = {{1, 0}, {0, 1}, {1, 1}};
      for (const auto& f : cand) {
        const bool anti = ((f[0] & tz) ^ (f[1] & tx)) == 1;
        const bool comm = ox < 0 || ((f[0] & oz) ^ (f[1] & ox)) == 0;
        if (anti && comm) {
          g.fix_x[q] = f[0];
          g.fix_z[q] = f[1];
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("no single-qubit correction for a sector edge");
    }
  }
}

void verify_code(const StabilizerCode& c) {
  for (int s = 0; s < 2; ++s)
    for (const auto& a : c.checks[s])
      for (int t = 0; t < 2; ++t)
        for (const auto& b : c.checks[t])
          if (!a.commutes(b)) throw std::logic_error("stabilizers do not commute");
  const int k = static_cast<int>(c.logical_z.size());
  for (int i = 0; i < k; ++i) {
    for (int s = 0; s < 2; ++s)
      for (const auto& ck : c.checks[s])
        if (!ck.commutes(c.logical_z[i]) || !ck.commutes(c.logical_x[i]))
          throw std::logic_error("logical operator fails to commute with a stabilizer");
    for (int j = 0; j < k; ++j) {
      if (c.logical_z[i].commutes(c.logical_x[j]) == (i == j))
        throw std::logic_error("logical pair commutation structure broken");
      if (!c.logical_z[i].commutes(c.logical_z[j]) || !c.logical_x[i].commutes(c.logical_x[j]))
        throw std::logic_error("logical operators of one type must commute");
    }
  }
}

}  // namespace

StabilizerCode build_toric(int d, CodeKind variant) {
  if (d < 3 || d % 2 == 0) throw ConfigError("toric distance must be odd and >= 3");
  if (variant == CodeKind::PlanarXZZX) throw ConfigError("toric variant must be CSS or XZZX");
  StabilizerCode c;
  c.kind = variant;
  c.d_r = c.d_c = d;
  c.n = 2 * d * d;
  auto h = [d](int r, int col) { return ((r + d) % d) * d + (col + d) % d; };
  auto v = [d](int r, int col) { return d * d + ((r + d) % d) * d + (col + d) % d; };
  for (int r = 0; r < d; ++r)
    for (int col = 0; col < d; ++col) {
      c.checks[0].push_back(
          pauli_on(c.n, {h(r, col), h(r, col - 1), v(r, col), v(r - 1, col)}, false));
      c.checks[1].push_back(
          pauli_on(c.n, {h(r, col), h(r + 1, col), v(r, col), v(r, col + 1)}, true));
    }
  std::vector<int> zrow, zcol, xcol, xrow;
  for (int i = 0; i < d; ++i) {
    zrow.push_back(v(0, i));
    zcol.push_back(h(i, 0));
    xcol.push_back(v(i, 0));
    xrow.push_back(h(0, i));
  }
  c.logical_z = {pauli_on(c.n, zrow, false), pauli_on(c.n, zcol, false)};
  c.logical_x = {pauli_on(c.n, xcol, true), pauli_on(c.n, xrow, true)};
  if (variant == CodeKind::ToricXZZX) {
    std::vector<std::uint8_t> mask(c.n, 0);
    for (int q = d * d; q < c.n; ++q) mask[q] = 1;
    for (auto& s : c.checks)
      for (auto& p : s) hadamard(p, mask);
    for (auto& p : c.logical_z) hadamard(p, mask);
    for (auto& p : c.logical_x) hadamard(p, mask);
  }
  verify_code(c);
  build_graphs(c, false);
  return c;
}

StabilizerCode build_rect_planar(int d_r, int d_c) {
  if (d_r < 3 || d_c < 3 || d_r % 2 == 0 || d_c % 2 == 0)
    throw ConfigError("planar distances must be odd and >= 3");
  StabilizerCode c;
  c.kind = CodeKind::PlanarXZZX;
  c.d_r = d_r;
  c.d_c = d_c;
  c.n = d_r * d_c;
  auto q = [d_c](int i, int j) { return i * d_c + j; };
  // Rotated layout: face (i, j) covers qubits (i..i+1, j..j+1) clipped to the patch.
  for (int i = -1; i < d_r; ++i)
    for (int j = -1; j < d_c; ++j) {
      const bool xtype = ((i + j) % 2 + 2) % 2 == 0;
      const bool top = i == -1, bottom = i == d_r - 1, left = j == -1, right = j == d_c - 1;
      if ((top || bottom) && (left || right)) continue;
      if ((top || bottom) && !xtype) continue;
      if ((left || right) && xtype) continue;
      std::vector<int> qs;
      for (int a = i; a <= i + 1; ++a)
        for (int b = j; b <= j + 1; ++b)
          if (a >= 0 && a < d_r && b >= 0 && b < d_c) qs.push_back(q(a, b));
      c.checks[xtype ? 0 : 1].push_back(pauli_on(c.n, qs, xtype));
    }
  std::vector<int> col0, row0;
  for (int i = 0; i < d_r; ++i) col0.push_back(q(i, 0));
  for (int j = 0; j < d_c; ++j) row0.push_back(q(0, j));
  c.logical_x = {pauli_on(c.n, col0, true)};
  c.logical_z = {pauli_on(c.n, row0, false)};
  std::vector<std::uint8_t> mask(c.n, 0);
  for (int i = 0; i < d_r; ++i)
    for (int j = 0; j < d_c; ++j) mask[q(i, j)] = (i + j) % 2;
  for (auto& s : c.checks)
    for (auto& p : s) hadamard(p, mask);
  hadamard(c.logical_x[0], mask);
  hadamard(c.logical_z[0], mask);
  if (static_cast<int>(c.checks[0].size() + c.checks[1].size()) != c.n - 1)
    throw std::logic_error("planar check count must be n - 1");
  verify_code(c);
  build_graphs(c, true);
  return c;
}

QecChannel qec_channel_from(const BiasedErasureChannel& b) {
  QecChannel c;
  c.p_era = b.p_era;
  c.p_Z = b.p_Z;
  c.p_dep = b.p_dep;
  c.p_XY = b.p_XY;
  return c;
}

NoiseDraw sample_noise(const StabilizerCode& code, const QecChannel& ch, double s, Rng& rng) {
  const double pe = s * ch.p_era, pz = s * ch.p_Z, pd = s * ch.p_dep, pxy = s * ch.p_XY;
  if (s < 0 || pe < 0 || pz < 0 || pd < 0 || pxy < 0 || pe > 1 || pz > 1 || pd > 1 || pxy > 1 ||
      pe + pz + pd + pxy > 1)
    throw ConfigError("scaled error probabilities exceed 1");
  NoiseDraw nd{Pauli(code.n), std::vector<std::uint8_t>(code.n, 0)};
  auto set = [&](int q, int p) {  // p: 0 I, 1 X, 2 Y, 3 Z
    nd.error.x[q] = (p == 1 || p == 2);
    nd.error.z[q] = (p == 2 || p == 3);
  };
  for (int q = 0; q < code.n; ++q) {
    const double u = rng.uniform();
    if (u < pe) {
      nd.erased[q] = 1;
      set(q, ch.erasure_includes_identity ? rng.below(4) : 1 + rng.below(3));
    } else if (u < pe + pz) {
      set(q, 3);
    } else if (u < pe + pz + pd) {
      set(q, 1 + rng.below(3));
    } else if (u < pe + pz + pd + pxy) {
      set(q, 1 + rng.below(2));
    }
  }
  return nd;
}

std::vector<int> syndrome(const StabilizerCode& code, int sector, const Pauli& e) {
  std::vector<int> out;
  const DecodingGraph& g = code.graph[sector];
  std::vector<std::uint8_t> flip(g.n_checks + 1, 0);
  for (int q = 0; q < code.n; ++q) {
    if (!(e.x[q] | e.z[q])) continue;
    // The qubit's sector Pauli is the one its correction anticommutes with.
    const Pauli& ck = code.checks[sector][g.edge[q].first];
    if (((e.x[q] & ck.z[q]) ^ (e.z[q] & ck.x[q])) == 0) continue;
    flip[g.edge[q].first] ^= 1;
    flip[g.edge[q].second] ^= 1;
  }
  for (int k = 0; k < g.n_checks; ++k)
    if (flip[k]) out.push_back(k);
  return out;
}

namespace {

struct Paths {
  std::vector<std::vector<std::int64_t>> dist;  // [defect][node]
  std::vector<std::vector<int>> pred_q;          // qubit on the edge into node
  std::vector<std::vector<int>> pred_n;
};

Paths shortest_paths(const DecodingGraph& g, const std::vector<int>& defects,
                     const std::vector<std::uint8_t>& erased,
                     const std::vector<std::int64_t>* weights) {
  const int nn = static_cast<int>(g.adj.size());
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  Paths P;
  for (int src : defects) {
    std::vector<std::int64_t> dist(nn, inf);
    std::vector<int> pq(nn, -1), pn(nn, -1);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[src] = 0;
    heap.push({0, src});
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du != dist[u]) continue;
      if (g.boundary && u == g.n_checks) continue;  // the boundary is a sink
      for (const auto& [w, q] : g.adj[u]) {
        const std::int64_t nd = du + (erased[q] ? 1 : weights ? (*weights)[q] : kBaseWeight);
        if (nd < dist[w]) {
          dist[w] = nd;
          pq[w] = q;
          pn[w] = u;
          heap.push({nd, w});
        }
      }
    }
    P.dist.push_back(std::move(dist));
    P.pred_q.push_back(std::move(pq));
    P.pred_n.push_back(std::move(pn));
  }
  return P;
}

MatchingInstance instance_from(const DecodingGraph& g, const std::vector<int>& defects,
                               const Paths& P) {
  const int n = static_cast<int>(defects.size());
  MatchingInstance m;
  m.cost.assign(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.cost[i][j] = P.dist[i][defects[j]];
  if (g.boundary)
    for (int i = 0; i < n; ++i) m.boundary.push_back(P.dist[i][g.n_checks]);
  return m;
}

}  // namespace

MatchingInstance matching_instance(const StabilizerCode& code, int sector,
                                   const std::vector<int>& defects,
                                   const std::vector<std::uint8_t>& erased,
                                   const std::vector<std::int64_t>* weights) {
  const DecodingGraph& g = code.graph[sector];
  return instance_from(g, defects, shortest_paths(g, defects, erased, weights));
}

Decoded decode_mwpm(const StabilizerCode& code, int sector, const std::vector<int>& defects,
                    const std::vector<std::uint8_t>& erased,
                    const std::vector<std::int64_t>* weights) {
  const DecodingGraph& g = code.graph[sector];
  Decoded out{Pauli(code.n), 0};
  const int n = static_cast<int>(defects.size());
  if (n == 0) return out;
  if (!g.boundary && n % 2) throw NumericalError("odd defect count on a toric sector");
  const Paths P = shortest_paths(g, defects, erased, weights);
  const MatchingInstance mi = instance_from(g, defects, P);
  const std::vector<int> mate =
      g.boundary ? min_weight_boundary_matching(mi.cost, mi.boundary)
                 : min_weight_perfect_matching(mi.cost);
  out.weight = matching_weight(mi.cost, mi.boundary, mate);
  auto apply_path = [&](int i, int target) {
    for (int node = target; node != defects[i]; node = P.pred_n[i][node]) {
      const int q = P.pred_q[i][node];
      out.correction.x[q] ^= g.fix_x[q];
      out.correction.z[q] ^= g.fix_z[q];
    }
  };
  for (int i = 0; i < n; ++i) {
    if (mate[i] < 0)
      apply_path(i, g.n_checks);
    else if (mate[i] > i)
      apply_path(i, defects[mate[i]]);
  }
  return out;
}

std::vector<std::int64_t> edge_weights(const StabilizerCode& code, int sector, const QecChannel& ch,
                                       double s) {
  const DecodingGraph& g = code.graph[sector];
  const double pe = s * ch.p_era, pz = s * ch.p_Z, pd = s * ch.p_dep, pxy = s * ch.p_XY;
  const double keep = 1 - pe;
  std::vector<std::int64_t> w(code.n, kBaseWeight);
  if (ch.weights == EdgeWeights::Uniform || keep <= 0) return w;
  const double unit = kBaseWeight / std::log(1e6);
  for (int q = 0; q < code.n; ++q) {
    const Pauli& ck = code.checks[sector][g.edge[q].first];
    auto flips = [&](int x, int z) { return ((x & ck.z[q]) ^ (z & ck.x[q])) == 1; };
    // Unerased single-qubit Pauli probabilities on this qubit.
    const double pX = pd / 3 + pxy / 2, pY = pd / 3 + pxy / 2, pZ = pz + pd / 3;
    double p = (flips(1, 0) ? pX : 0) + (flips(1, 1) ? pY : 0) + (flips(0, 1) ? pZ : 0);
    p = std::clamp(p / keep, 1e-12, 0.5);
    w[q] = std::max<std::int64_t>(2, std::llround(unit * std::log((1 - p) / p)));
  }
  return w;
}

LogicalFailure logical_failure(const StabilizerCode& code, const Pauli& r) {
  LogicalFailure f;
  for (const auto& lx : code.logical_x) f.z = f.z || !r.commutes(lx);
  for (const auto& lz : code.logical_z) f.x = f.x || !r.commutes(lz);
  return f;
}

Interval wilson_interval(long k, long n, double z) {
  if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("wilson_interval needs 0 <= k <= n");
  const double p = static_cast<double>(k) / n, z2 = z * z;
  const double den = 1 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / den;
  const double half = z / den * std::sqrt(p * (1 - p) / n + z2 / (4.0 * n * n));
  return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

QecPoint run_qec_point(const QecSpec& spec, const QecChannel& ch, double s, long trials,
                       std::uint64_t seed, int workers) {
  if (trials < 1) throw ConfigError("trials must be positive");
  const StabilizerCode code = spec.kind == CodeKind::PlanarXZZX
                                  ? build_rect_planar(spec.d_r, spec.d_c)
                                  : build_toric(spec.d_r, spec.kind);
  const std::vector<std::int64_t> w[2] = {edge_weights(code, 0, ch, s), edge_weights(code, 1, ch, s)};
  std::vector<std::uint8_t> fail(trials, 0);
  parallel_for(static_cast<int>(trials), workers, [&](int t) {
    Rng rng(child_seed(seed, 0, 0, static_cast<std::uint64_t>(t)));
    const NoiseDraw nd = sample_noise(code, ch, s, rng);
    Pauli residual = nd.error;
    for (int sec = 0; sec < 2; ++sec)
      residual.mul(decode_mwpm(code, sec, syndrome(code, sec, nd.error), nd.erased, &w[sec]).correction);
    for (int sec = 0; sec < 2; ++sec)
      if (!syndrome(code, sec, residual).empty())
        throw NumericalError("correction leaves a nonzero syndrome");
    fail[t] = logical_failure(code, residual).any();
  });
  QecPoint p;
  p.code = code.id();
  p.variant = code_variant(spec.kind);
  p.dims = spec.kind == CodeKind::PlanarXZZX
               ? std::to_string(spec.d_r) + "x" + std::to_string(spec.d_c)
               : std::to_string(spec.d_r);
  p.s = s;
  p.trials = trials;
  for (auto f : fail) p.failures += f;
  p.p_L = static_cast<double>(p.failures) / trials;
  const Interval ci = wilson_interval(p.failures, trials);
  p.ci_lo = ci.lo;
  p.ci_hi = ci.hi;
  p.seed = seed;
  return p;
}

std::vector<QecPoint> run_threshold_sweep(const std::vector<QecSpec>& specs,
                                          const std::vector<double>& scales,
                                          const QecChannel& ch, long trials,
                                          std::uint64_t master_seed, int workers) {
  if (trials < 100) throw ConfigError("threshold sweep needs at least 100 trials");
  std::vector<QecPoint> out;
  for (size_t i = 0; i < specs.size(); ++i)
    for (size_t k = 0; k < scales.size(); ++k) {
      const std::uint64_t seed = child_seed(master_seed, 1000 + i, k, ~0ull);
      out.push_back(run_qec_point(specs[i], ch, scales[k], trials, seed, workers));
    }
  return out;
}

double effective_error_rate(double p_undet, double p_era) {
  return p_undet + kThresholdDep / kThresholdEra * p_era;
}

DistanceFit fit_distance(const std::vector<int>& d, const std::vector<double>& p_L, double target,
                         double lo, double hi) {
  if (d.size() != p_L.size()) throw ConfigError("fit inputs must pair distances with p_L");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    if (!(p_L[i] >= lo && p_L[i] <= hi && p_L[i] > 0)) continue;
    const double x = d[i], y = std::log(p_L[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  if (n < 2) throw ConfigError("fewer than two sub-threshold points; fit refused");
  DistanceFit f;
  f.points_used = n;
  const double den = n * sxx - sx * sx;
  if (den == 0) throw ConfigError("fit points need distinct distances");
  f.b = (n * sxy - sx * sy) / den;
  f.a = (sy - f.b * sx) / n;
  if (!(f.b < 0)) throw ConfigError("p_L does not decrease with distance; fit refused");
  f.d_star = (std::log(target) - f.a) / f.b;
  int dr = static_cast<int>(std::ceil(f.d_star - 1e-9));
  if (dr < 3) dr = 3;
  if (dr % 2 == 0) ++dr;
  f.d_required = dr;
  return f;
}

double ansatz_ratio(const QecChannel& ch, CodeFamily f) {
  const double pauli_iso = ch.p_dep + ch.p_XY;
  if (f == CodeFamily::XZZX)
    return ch.p_Z / kThresholdZBiased + ch.p_era / kThresholdEra + pauli_iso / kThresholdDep;
  return (ch.p_Z + pauli_iso) / kThresholdDep + ch.p_era / kThresholdEra;
}

double ansatz_p_L(double ratio, int d) { return 0.1 * std::pow(ratio, 0.5 * (d + 1)); }

OverheadReport overhead_model(const OverheadInputs& in) {
  auto row = [&](const std::string& label, double ratio) {
    if (!(ratio > 0 && ratio < 1)) throw ConfigError(label + ": channel at or above threshold");
    std::vector<double> pl;
    for (int d : in.fit_distances) pl.push_back(ansatz_p_L(ratio, d));
    // Ansatz points are exact, so the magnitude window does not apply.
    const DistanceFit f = fit_distance(in.fit_distances, pl, 1e-10, 0.0, 1.0);
    OverheadRow r;
    r.label = label;
    r.ratio = ratio;
    r.d = f.d_required;
    r.qubits = r.d * r.d;
    return r;
  };
  OverheadReport rep;
  const QecChannel& c = in.nominal;
  rep.p_eff = effective_error_rate(c.p_Z + c.p_dep, c.p_era);
  QecChannel rabi;
  rabi.p_era = 0;
  rabi.p_Z = 0;
  rabi.p_dep = in.p_dep_rabi;
  rabi.p_XY = 0;
  rep.rabi = row("rabi-css", ansatz_ratio(rabi, CodeFamily::CSS));
  QecChannel era = c;
  era.p_dep = c.p_Z + c.p_dep + c.p_XY;  // undetected part treated as isotropic
  era.p_Z = 0;
  era.p_XY = 0;
  rep.erasure_css = row("erasure-css", ansatz_ratio(era, CodeFamily::CSS));
  rep.xzzx = row("xzzx", ansatz_ratio(c, CodeFamily::XZZX));
  rep.baseline_qubits = rep.rabi.qubits;
  for (OverheadRow* r : {&rep.rabi, &rep.erasure_css, &rep.xzzx})
    r->saving = 1.0 - static_cast<double>(r->qubits) / rep.baseline_qubits;
  return rep;
}

}  // namespace holo
