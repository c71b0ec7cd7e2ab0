#include "holo/symmetry.hpp"

#include <cmath>

namespace holo {

namespace {

Mat2 rotation(double a) {
  Mat2 r;
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

Mat2 reflection(double axis) {
  Mat2 r;
  r << std::cos(2 * axis), std::sin(2 * axis), std::sin(2 * axis), -std::cos(2 * axis);
  return r;
}

std::vector<Mat2> c3v_doublet() {
  const double t = 2 * kPi / 3;
  return {rotation(0), rotation(t), rotation(2 * t),
          reflection(0), reflection(kPi / 3), reflection(2 * kPi / 3)};
}

}  // namespace

PointGroup c3v() {
  PointGroup g;
  g.name = "C3v";
  g.elements = c3v_doublet();
  g.irreps = {"A1", "A2", "E"};
  g.characters = {{1, 1, 1, 1, 1, 1}, {1, 1, 1, -1, -1, -1}, {2, -1, -1, 0, 0, 0}};
  g.doublet_character = g.characters[2];
  return g;
}

// Inversion acts trivially on E_g, so the twelve elements carry the C3v
// doublet matrices twice.
PointGroup d3d() {
  PointGroup g;
  g.name = "D3d";
  auto half = c3v_doublet();
  g.elements = half;
  g.elements.insert(g.elements.end(), half.begin(), half.end());
  g.irreps = {"A1g", "A2g", "Eg", "A1u", "A2u", "Eu"};
  const std::vector<double> a1 = {1, 1, 1, 1, 1, 1}, a2 = {1, 1, 1, -1, -1, -1},
                            e = {2, -1, -1, 0, 0, 0};
  auto gerade = [](const std::vector<double>& c, double s) {
    std::vector<double> r = c;
    for (double x : c) r.push_back(s * x);
    return r;
  };
  g.characters = {gerade(a1, 1), gerade(a2, 1), gerade(e, 1),
                  gerade(a1, -1), gerade(a2, -1), gerade(e, -1)};
  g.doublet_character = g.characters[2];
  return g;
}

PointGroup trivial_group() {
  PointGroup g;
  g.name = "trivial";
  g.elements = {Mat2::Identity()};
  g.irreps = {"A"};
  g.characters = {{1}};
  g.doublet_character = {1};
  return g;
}

std::map<std::string, int> tensor_square_decomposition(const PointGroup& g) {
  const double n = static_cast<double>(g.elements.size());
  std::map<std::string, int> out;
  for (size_t k = 0; k < g.irreps.size(); ++k) {
    double m = 0;
    for (size_t e = 0; e < g.elements.size(); ++e)
      m += g.doublet_character[e] * g.doublet_character[e] * g.characters[k][e];
    m /= n;
    const double r = std::round(m);
    if (std::abs(m - r) > 1e-9) throw NumericalError("non-integer multiplicity: inconsistent group data");
    if (r != 0) out[g.irreps[k]] = static_cast<int>(r);
  }
  return out;
}

Mat2 schur_average_coupling(const PointGroup& g, const Mat2& c) {
  Mat2 s = Mat2::Zero();
  for (const auto& r : g.elements) s += r.transpose() * c * r;
  return s / static_cast<double>(g.elements.size());
}

SectorWeights hs_sector_weights(const Mat& v) {
  const Spin1 s = spin1_operators();
  const Mat reps[4] = {s.Sz * s.Sz, s.Sz, s.Sx, s.Sy};
  SectorWeights w;
  const double vn = std::real((v.adjoint() * v).trace());
  if (vn <= 1e-300) {
    w.zero_operator = true;
    return w;
  }
  double out[4];
  for (int k = 0; k < 4; ++k) {
    const double rn = std::sqrt(std::real((reps[k].adjoint() * reps[k]).trace()));
    const cplx c = (reps[k].adjoint() * v).trace() / rn;
    out[k] = std::norm(c) / vn;
  }
  w.w_A1 = out[0];
  w.w_A2 = out[1];
  w.w_Ex = out[2];
  w.w_Ey = out[3];
  return w;
}

double bilinear_a2(const Eigen::Vector2d& eps, const Eigen::Vector2d& op) {
  return eps(0) * op(1) - eps(1) * op(0);
}

Eigen::Vector2d bilinear_e(const Eigen::Vector2d& eps, const Eigen::Vector2d& op) {
  return {eps(0) * op(0) - eps(1) * op(1), -(eps(0) * op(1) + eps(1) * op(0))};
}

}  // namespace holo
