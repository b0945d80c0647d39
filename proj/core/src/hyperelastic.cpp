#include "fftmech/hyperelastic.hpp"

#include <stdexcept>

#include "fftmech/errors.hpp"
#include "fftmech/tensor_ops.hpp"

namespace fftmech {

void hyperelastic_evaluate(const Tensor2Field& F, const ScalarField& lambda,
                           const ScalarField& mu, Tensor2Field& P, Tensor4Field& K) {
  const int d = F.tdim();
  const std::size_t n = F.nodes();
  if (lambda.nodes() != n || mu.nodes() != n)
    throw std::invalid_argument("hyperelastic_evaluate: parameter field size mismatch");
  P = Tensor2Field(F.shape(), d);
  K = Tensor4Field(F.shape(), d);

  double f[9], b[9], e[9], s[9], p[9];
  for (std::size_t q = 0; q < n; ++q) {
    const double lam = lambda[q];
    const double g = mu[q];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) f[i * d + j] = F.at(q, i, j);

    Tensor2 ft(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) ft(i, j) = f[i * d + j];
    if (ft.det() <= 0.0) throw InvertedElement(q);

    // b = F F^T, E = (F^T F - I)/2, S = lam tr(E) I + 2 mu E, P = F S
    double trE = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double bij = 0.0, cij = 0.0;
        for (int k = 0; k < d; ++k) {
          bij += f[i * d + k] * f[j * d + k];
          cij += f[k * d + i] * f[k * d + j];
        }
        b[i * d + j] = bij;
        e[i * d + j] = 0.5 * (cij - (i == j ? 1.0 : 0.0));
      }
    for (int i = 0; i < d; ++i) trE += e[i * d + i];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        s[i * d + j] = lam * trE * (i == j ? 1.0 : 0.0) + 2.0 * g * e[i * d + j];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = 0.0;
        for (int k = 0; k < d; ++k) v += f[i * d + k] * s[k * d + j];
        p[i * d + j] = v;
        P.at(q, i, j) = v;
      }

    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            double v = lam * f[j * d + i] * f[k * d + l] + g * f[j * d + l] * f[k * d + i];
            if (i == l) v += g * b[j * d + k];
            if (j == k) v += s[i * d + l];
            K.at(q, i, j, k, l) = v;
          }
  }
}

void hyperelastic_evaluate(const Tensor2Field& F, const ElasticParams& params, Tensor2Field& P,
                           Tensor4Field& K) {
  ScalarField lambda(F.shape(), params.lame_lambda());
  ScalarField mu(F.shape(), params.lame_mu());
  hyperelastic_evaluate(F, lambda, mu, P, K);
}

HyperelasticModel::HyperelasticModel(const GridShape& shape, int tdim, ScalarField lambda,
                                     ScalarField mu)
    : shape_(shape), tdim_(tdim), lambda_(std::move(lambda)), mu_(std::move(mu)) {}

HyperelasticModel::HyperelasticModel(const GridShape& shape, int tdim,
                                     const ElasticParams& params)
    : shape_(shape),
      tdim_(tdim),
      lambda_(shape, params.lame_lambda()),
      mu_(shape, params.lame_mu()) {}

void HyperelasticModel::evaluate(const Tensor2Field& F, Tensor2Field& P, Tensor4Field& K) {
  hyperelastic_evaluate(F, lambda_, mu_, P, K);
}

ScalarField HyperelasticModel::equivalent_stress_field(const Tensor2Field& F,
                                                       const Tensor2Field& P) const {
  return equivalent_stress(dot22(inv2(F), P));
}

}  // namespace fftmech
