#include "fftmech/simo.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "fftmech/errors.hpp"
#include "fftmech/tensor_ops.hpp"

namespace fftmech {

namespace {

using Mat3 = Eigen::Matrix3d;

// Divided difference of log for the derivative of the tensor logarithm.
inline double log_divided_difference(double a, double b) {
  const double scale = std::max(a, b);
  if (std::abs(b - a) < 1e-7 * scale) return 2.0 / (a + b);
  return (std::log(b) - std::log(a)) / (b - a);
}

}  // namespace

void simo_evaluate(const Tensor2Field& F, const Tensor2Field& F_old,
                   const HistoryState& committed, const ScalarField& lambda,
                   const ScalarField& mu, const ScalarField& tau_y0,
                   const ScalarField& hardening, Tensor2Field& P, Tensor4Field& K,
                   HistoryState& trial) {
  if (F.tdim() != 3) throw std::invalid_argument("simo_evaluate: tensors must be 3x3");
  const std::size_t n = F.nodes();
  if (F_old.nodes() != n || committed.be.nodes() != n || committed.eps_p.nodes() != n)
    throw std::invalid_argument("simo_evaluate: state size mismatch");

  P = Tensor2Field(F.shape(), 3);
  K = Tensor4Field(F.shape(), 3);
  trial.be = Tensor2Field(F.shape(), 3);
  trial.eps_p = ScalarField(F.shape());

  double D[3][3][3][3], L[3][3][3][3], DL[3][3][3][3], A4[3][3][3][3];

  for (std::size_t q = 0; q < n; ++q) {
    const double lam = lambda[q];
    const double g = mu[q];
    const double ty0 = tau_y0[q];
    const double h = hardening[q];

    Tensor2 Ft = F.tensor(q);
    if (Ft.det() <= 0.0) throw InvertedElement(q);
    const Tensor2 Finv_t = Ft.inverse();
    const Tensor2 FoldInv = F_old.tensor(q).inverse();

    Mat3 Fm, Finv, f;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Fm(i, j) = Ft(i, j);
        Finv(i, j) = Finv_t(i, j);
      }
    // relative deformation gradient against the last converged state
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += Fm(i, k) * FoldInv(k, j);
        f(i, j) = s;
      }

    Mat3 be_t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) be_t(i, j) = committed.be.at(q, i, j);
    Mat3 be_tr = f * be_t * f.transpose();
    be_tr = 0.5 * (be_tr + be_tr.transpose());  // kill round-off asymmetry

    Eigen::SelfAdjointEigenSolver<Mat3> eig(be_tr);
    const Eigen::Vector3d lam_be = eig.eigenvalues();
    const Mat3 V = eig.eigenvectors();
    for (int m = 0; m < 3; ++m)
      if (lam_be(m) < detail::kMinLogEigenvalue) throw NotPositiveDefinite(q, lam_be(m));

    // elastic predictor in the shared eigenbasis of be_tr
    Eigen::Vector3d eps;
    for (int m = 0; m < 3; ++m) eps(m) = 0.5 * std::log(lam_be(m));
    const double tr_eps = eps.sum();
    Eigen::Vector3d tau_d;
    for (int m = 0; m < 3; ++m) tau_d(m) = lam * tr_eps + 2.0 * g * eps(m);
    const double tau_m = tau_d.sum() / 3.0;
    Eigen::Vector3d dev;
    for (int m = 0; m < 3; ++m) dev(m) = tau_d(m) - tau_m;
    const double taueq_tr = std::sqrt(1.5 * dev.squaredNorm());
    const double tauy = ty0 + h * committed.eps_p[q];
    const double phi = taueq_tr - tauy;

    // States on the yield surface (phi = 0 up to round-off, as every
    // converged plastic node is) take the continued-loading branch, so
    // the next increment linearizes with the elasto-plastic tangent.
    const bool plastic = phi >= -1e-12 * tauy;
    double dgamma = 0.0;
    Eigen::Vector3d N2 = Eigen::Vector3d::Zero();
    Eigen::Vector3d eps_e = eps;
    if (plastic) {
      dgamma = std::max(phi, 0.0) / (3.0 * g + h);
      for (int m = 0; m < 3; ++m) N2(m) = 1.5 * dev(m) / taueq_tr;
      for (int m = 0; m < 3; ++m) {
        tau_d(m) -= 2.0 * g * dgamma * N2(m);
        eps_e(m) = eps(m) - dgamma * N2(m);
      }
    }

    // reassemble tensors from the eigenbasis
    Mat3 tau = Mat3::Zero(), be_new = Mat3::Zero(), N2m = Mat3::Zero();
    for (int m = 0; m < 3; ++m) {
      const Mat3 proj = V.col(m) * V.col(m).transpose();
      tau += tau_d(m) * proj;
      be_new += std::exp(2.0 * eps_e(m)) * proj;
      if (plastic) N2m += N2(m) * proj;
    }

    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trial.be.at(q, i, j) = be_new(i, j);
    trial.eps_p[q] = committed.eps_p[q] + dgamma;

    // P = tau F^-T
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += tau(i, k) * Finv(j, k);
        P.at(q, i, j) = s;
      }

    // algorithmic tangent in log-strain space
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            const double did = (i == j) ? 1.0 : 0.0;
            const double dkl = (k == l) ? 1.0 : 0.0;
            const double is =
                0.5 * (((i == k && j == l) ? 1.0 : 0.0) + ((i == l && j == k) ? 1.0 : 0.0));
            double v = lam * did * dkl + 2.0 * g * is;
            if (plastic) {
              const double isdev = is - did * dkl / 3.0;
              const double a0 = dgamma / taueq_tr;
              v += -6.0 * g * g * a0 * isdev -
                   4.0 * g * g * (1.0 / (3.0 * g + h) - a0) * N2m(i, j) * N2m(k, l);
            }
            D[i][j][k][l] = v;
          }

    // derivative of the tensor logarithm at be_tr
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) L[i][j][k][l] = 0.0;
    for (int m = 0; m < 3; ++m)
      for (int p = 0; p < 3; ++p) {
        const double w = log_divided_difference(lam_be(m), lam_be(p));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
              for (int l = 0; l < 3; ++l)
                L[i][j][k][l] += w * V(i, m) * V(j, p) * V(k, m) * V(l, p);
      }

    // Kx = [D : dln(be_tr)] be_tr - IRT tau, then K = F^-1 Kx F^-T
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
          for (int p = 0; p < 3; ++p) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
              for (int l = 0; l < 3; ++l) s += D[i][j][k][l] * L[k][l][m][p];
            DL[i][j][m][p] = s;
          }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            double s = 0.0;
            for (int a = 0; a < 3; ++a) s += DL[i][j][k][a] * be_tr(a, l);
            if (i == k) s -= tau(j, l);
            A4[i][j][k][l] = s;
          }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            double s = 0.0;
            for (int a = 0; a < 3; ++a) {
              double t = 0.0;
              for (int b = 0; b < 3; ++b) t += A4[a][j][k][b] * Finv(l, b);
              s += Finv(i, a) * t;
            }
            K.at(q, i, j, k, l) = s;
          }
  }
}

SimoPlasticityModel::SimoPlasticityModel(const GridShape& shape, ScalarField lambda,
                                         ScalarField mu, ScalarField tau_y0,
                                         ScalarField hardening)
    : shape_(shape),
      lambda_(std::move(lambda)),
      mu_(std::move(mu)),
      tau_y0_(std::move(tau_y0)),
      hardening_(std::move(hardening)),
      committed_(shape, 3),
      trial_(shape, 3),
      f_old_(identity2(shape, 3)) {}

SimoPlasticityModel::SimoPlasticityModel(const GridShape& shape, const PlasticParams& params)
    : SimoPlasticityModel(shape, ScalarField(shape, params.elastic.lame_lambda()),
                          ScalarField(shape, params.elastic.lame_mu()),
                          ScalarField(shape, params.tau_y0),
                          ScalarField(shape, params.hardening)) {}

void SimoPlasticityModel::evaluate(const Tensor2Field& F, Tensor2Field& P, Tensor4Field& K) {
  simo_evaluate(F, f_old_, committed_, lambda_, mu_, tau_y0_, hardening_, P, K, trial_);
}

void SimoPlasticityModel::commit(const Tensor2Field& F_converged) {
  committed_ = trial_;
  f_old_ = F_converged;
}

ScalarField SimoPlasticityModel::equivalent_stress_field(const Tensor2Field& F,
                                                         const Tensor2Field& P) const {
  return equivalent_stress(dot22(P, trans2(F)));
}

}  // namespace fftmech
