#include "fftmech/material.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "fftmech/tensor_ops.hpp"

namespace fftmech {

HistoryState::HistoryState(const GridShape& shape, int tdim)
    : be(identity2(shape, tdim)), eps_p(shape, 0.0) {}

ScalarField equivalent_stress(const Tensor2Field& T) {
  const int d = T.tdim();
  const std::size_t n = T.nodes();
  ScalarField out(T.shape());
  for (std::size_t k = 0; k < n; ++k) {
    double tr = 0.0;
    for (int i = 0; i < d; ++i) tr += T.at(k, i, i);
    tr /= static_cast<double>(d);
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double dev = T.at(k, i, j) - (i == j ? tr : 0.0);
        s += dev * dev;
      }
    out[k] = std::sqrt(1.5 * s);
  }
  return out;
}

double macroscopic_equivalent_strain(const Tensor2& fbar) {
  // Embed 2x2 inputs as plane strain so the deviator is taken in 3-d.
  Eigen::Matrix3d f = Eigen::Matrix3d::Identity();
  for (int i = 0; i < fbar.dim; ++i)
    for (int j = 0; j < fbar.dim; ++j) f(i, j) = fbar(i, j);

  const Eigen::Matrix3d c = f.transpose() * f;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(c);
  Eigen::Vector3d lam = eig.eigenvalues();
  Eigen::Vector3d loge;
  for (int i = 0; i < 3; ++i) loge(i) = 0.5 * std::log(lam(i));
  const double tr = loge.sum() / 3.0;
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += (loge(i) - tr) * (loge(i) - tr);
  return std::sqrt(2.0 / 3.0 * s);
}

}  // namespace fftmech
