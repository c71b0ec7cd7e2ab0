#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "holo/core.hpp"

namespace holo {

using Mat2 = Eigen::Matrix2d;

// Character table plus the doublet matrices for the E (or E_g) irrep.
// The C3v reflection axes sit at 0, 60 and 120 degrees from x.
struct PointGroup {
  std::string name;
  std::vector<Mat2> elements;
  std::vector<std::string> irreps;
  std::vector<std::vector<double>> characters;  // [irrep][element]
  std::vector<double> doublet_character;        // character of the rep being squared
};

PointGroup c3v();
PointGroup d3d();
PointGroup trivial_group();

std::map<std::string, int> tensor_square_decomposition(const PointGroup& g);

Mat2 schur_average_coupling(const PointGroup& g, const Mat2& c);

struct SectorWeights {
  double w_A1 = 0, w_A2 = 0, w_Ex = 0, w_Ey = 0;
  bool zero_operator = false;
};

// Squared overlaps with unit-norm (Sz^2, Sz, Sx, Sy), as fractions of |V|^2.
SectorWeights hs_sector_weights(const Mat& v);

// Theorem-1 bilinears for strain doublet eps and operator doublet O (as
// real coefficient vectors). A2 = e1 O2 - e2 O1; E = (e1 O1 - e2 O2, -(e1 O2 + e2 O1)).
double bilinear_a2(const Eigen::Vector2d& eps, const Eigen::Vector2d& op);
Eigen::Vector2d bilinear_e(const Eigen::Vector2d& eps, const Eigen::Vector2d& op);

}  // namespace holo
