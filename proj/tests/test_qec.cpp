#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "holo/qec.hpp"

using namespace holo;

namespace {

void check_code(const StabilizerCode& c) {
  for (int s = 0; s < 2; ++s)
    for (const auto& a : c.checks[s]) {
      CHECK(a.size() == c.n);
      for (int t = 0; t < 2; ++t)
        for (const auto& b : c.checks[t]) CHECK(a.commutes(b));
      for (const auto& l : c.logical_x) CHECK(a.commutes(l));
      for (const auto& l : c.logical_z) CHECK(a.commutes(l));
    }
  REQUIRE(c.logical_x.size() == c.logical_z.size());
  for (std::size_t i = 0; i < c.logical_x.size(); ++i)
    for (std::size_t j = 0; j < c.logical_z.size(); ++j)
      CHECK(c.logical_x[i].commutes(c.logical_z[j]) == (i != j));
}

int count_type(const Pauli& p, bool x, bool z) {
  int n = 0;
  for (int q = 0; q < p.size(); ++q) n += (p.x[q] == x && p.z[q] == z && (x || z));
  return n;
}

}  // namespace

TEST_CASE("toric codes") {
  for (int d : {3, 5, 7})
    for (CodeKind k : {CodeKind::ToricCSS, CodeKind::ToricXZZX}) {
      const StabilizerCode c = build_toric(d, k);
      CHECK(c.n == 2 * d * d);
      check_code(c);
    }
  const StabilizerCode x = build_toric(3, CodeKind::ToricXZZX);
  for (int s = 0; s < 2; ++s)
    for (const auto& ck : x.checks[s]) {
      CHECK(ck.weight() == 4);
      CHECK(count_type(ck, true, false) == 2);
      CHECK(count_type(ck, false, true) == 2);
    }
  CHECK_THROWS_AS(build_toric(4, CodeKind::ToricCSS), ConfigError);
}

TEST_CASE("rectangular planar XZZX code") {
  const StabilizerCode a = build_rect_planar(3, 7);
  CHECK(a.n == 21);
  CHECK(build_rect_planar(9, 9).n == 81);
  for (const auto& c : {a, build_rect_planar(5, 5), build_rect_planar(9, 9)}) {
    check_code(c);
    for (int s = 0; s < 2; ++s)
      for (const auto& ck : c.checks[s]) CHECK((ck.weight() == 2 || ck.weight() == 4));
    CHECK(c.checks[0].size() + c.checks[1].size() == static_cast<std::size_t>(c.n - 1));
  }
  CHECK_THROWS_AS(build_rect_planar(2, 7), ConfigError);
}

TEST_CASE("noise sampler") {
  const StabilizerCode c = build_toric(11, CodeKind::ToricXZZX);
  Rng rng(3);
  const NoiseDraw none = sample_noise(c, QecChannel{}, 0.0, rng);
  CHECK(none.error.weight() == 0);
  for (auto e : none.erased) CHECK(e == 0);
  double total = 0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const NoiseDraw nd = sample_noise(c, QecChannel{}, 50.0, rng);
    for (int q = 0; q < c.n; ++q) {
      total += nd.erased[q];
      if (nd.erased[q]) CHECK((nd.error.x[q] | nd.error.z[q]));
    }
  }
  CHECK(total / draws == doctest::Approx(242 * 0.235).epsilon(0.005));
  CHECK_THROWS_AS(sample_noise(c, QecChannel{}, 500.0, rng), ConfigError);
}

TEST_CASE("decoder basics") {
  const StabilizerCode c = build_toric(5, CodeKind::ToricCSS);
  const std::vector<std::uint8_t> clear(c.n, 0);
  CHECK(decode_mwpm(c, 0, {}, clear).correction.weight() == 0);
  for (int q : {0, 7, 33}) {
    Pauli e(c.n);
    e.z[q] = 1;
    e.x[q] = 1;
    for (int s = 0; s < 2; ++s) {
      const auto def = syndrome(c, s, e);
      if (def.empty()) continue;
      CHECK(def.size() == 2u);
      const Decoded d = decode_mwpm(c, s, def, clear);
      CHECK(d.correction.weight() == 1);
      CHECK(d.weight == kBaseWeight);
    }
  }
  CHECK_THROWS_AS(decode_mwpm(c, 0, {0}, clear), NumericalError);
}

TEST_CASE("logical failure detection") {
  for (const auto& c : {build_toric(5, CodeKind::ToricXZZX), build_rect_planar(3, 7)}) {
    CHECK_FALSE(logical_failure(c, Pauli(c.n)).any());
    for (const auto& l : c.logical_z) CHECK(logical_failure(c, l).z);
    for (const auto& l : c.logical_x) CHECK(logical_failure(c, l).x);
    for (int s = 0; s < 2; ++s)
      for (const auto& ck : c.checks[s]) CHECK_FALSE(logical_failure(c, ck).any());
  }
}

TEST_CASE("Wilson interval") {
  const Interval z = wilson_interval(0, 5000);
  CHECK(z.lo == 0.0);
  CHECK(z.hi == doctest::Approx(7.7e-4).epsilon(0.01));
  const Interval m = wilson_interval(3355, 5000);
  CHECK(m.lo < 0.671);
  CHECK(m.hi > 0.671);
  CHECK_THROWS(wilson_interval(6, 5));
}

TEST_CASE("QEC points are deterministic and bracket p_L") {
  const QecSpec spec{CodeKind::ToricXZZX, 5, 5};
  const QecPoint a = run_qec_point(spec, QecChannel{}, 10.0, 400, 99, 1);
  const QecPoint b = run_qec_point(spec, QecChannel{}, 10.0, 400, 99, 3);
  CHECK(a.failures == b.failures);
  CHECK(a.failures <= a.trials);
  CHECK(a.ci_lo <= a.p_L);
  CHECK(a.p_L <= a.ci_hi);
  CHECK(a.dims == "5");
  const auto sweep = run_threshold_sweep({spec, {CodeKind::PlanarXZZX, 3, 7}}, {1.0, 10.0}, QecChannel{}, 100, 5);
  CHECK(sweep.size() == 4u);
  CHECK(sweep[2].dims == "3x7");
  CHECK_THROWS_AS(run_threshold_sweep({spec}, {1.0}, QecChannel{}, 50, 5), ConfigError);
}

TEST_CASE("erasure-only XZZX logical rate falls with distance") {
  QecChannel ch;
  ch.p_era = 0.10;
  ch.p_Z = ch.p_dep = ch.p_XY = 0;
  std::vector<QecPoint> p;
  for (int d : {3, 5, 7}) p.push_back(run_qec_point({CodeKind::ToricXZZX, d, d}, ch, 1.0, 3000, 17));
  for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(p[i].p_L > p[i + 1].p_L);
  const double sd = std::sqrt(p[0].p_L * (1 - p[0].p_L) / 3000 + p[2].p_L * (1 - p[2].p_L) / 3000);
  CHECK(p[0].p_L - p[2].p_L > 3 * sd);
}

TEST_CASE("likelihood edge weights stay positive and favour erasures") {
  const StabilizerCode c = build_toric(5, CodeKind::ToricXZZX);
  QecChannel ch;
  ch.weights = EdgeWeights::Likelihood;
  for (int s = 0; s < 2; ++s) {
    const auto w = edge_weights(c, s, ch, 10.0);
    REQUIRE(w.size() == static_cast<std::size_t>(c.n));
    for (auto x : w) CHECK(x >= 2);
  }
}

TEST_CASE("overhead model") {
  CHECK(effective_error_rate(0.0018, 0.0047) == doctest::Approx(0.0028).epsilon(0.02));
  const OverheadReport r = overhead_model(OverheadInputs{});
  CHECK(r.p_eff == doctest::Approx(0.0028).epsilon(0.02));
  CHECK(r.rabi.d == 15);
  CHECK(r.baseline_qubits == 225);
  CHECK(r.xzzx.d == 9);
  CHECK(r.xzzx.qubits == 81);
  CHECK(r.xzzx.saving == doctest::Approx(0.64));
  CHECK(r.erasure_css.d == 11);
  CHECK(r.erasure_css.qubits == 121);
  CHECK(r.erasure_css.saving == doctest::Approx(0.4622).epsilon(1e-3));
}

TEST_CASE("distance fit") {
  std::vector<int> d = {3, 5, 7, 9};
  std::vector<double> p;
  for (int x : d) p.push_back(0.1 * std::pow(0.1, 0.5 * (x + 1)));
  const DistanceFit f = fit_distance(d, p, 1e-10, 1e-8, 1e-1);
  CHECK(f.b == doctest::Approx(0.5 * std::log(0.1)));
  CHECK(f.d_required % 2 == 1);
  CHECK(f.d_required == 17);
  CHECK_THROWS_AS(fit_distance({3, 5}, {0.5, 0.6}), ConfigError);
  CHECK_THROWS_AS(fit_distance({3}, {1e-3}), ConfigError);
}
