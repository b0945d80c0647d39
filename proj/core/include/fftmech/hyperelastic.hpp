#pragma once

#include "fftmech/material.hpp"

namespace fftmech {

/// Saint Venant-Kirchhoff response with per-node Lame fields:
///   E = (F^T F - I)/2,  S = lambda tr(E) I + 2 mu E,  P = F S,
/// and the consistent tangent
///   K_ijkl = S_il d_jk + lambda F_ji F_kl + mu (F F^T)_jk d_il + mu F_jl F_ki.
/// Throws InvertedElement when det F <= 0 at a node.
void hyperelastic_evaluate(const Tensor2Field& F, const ScalarField& lambda,
                           const ScalarField& mu, Tensor2Field& P, Tensor4Field& K);

/// Convenience overload with homogeneous parameters.
void hyperelastic_evaluate(const Tensor2Field& F, const ElasticParams& params, Tensor2Field& P,
                           Tensor4Field& K);

class HyperelasticModel final : public MaterialModel {
 public:
  HyperelasticModel(const GridShape& shape, int tdim, ScalarField lambda, ScalarField mu);
  HyperelasticModel(const GridShape& shape, int tdim, const ElasticParams& params);

  int tensor_dim() const override { return tdim_; }
  void evaluate(const Tensor2Field& F, Tensor2Field& P, Tensor4Field& K) override;
  void commit(const Tensor2Field&) override {}  // no history
  /// Von Mises of dev S with S = F^{-1} P.
  ScalarField equivalent_stress_field(const Tensor2Field& F,
                                      const Tensor2Field& P) const override;

 private:
  GridShape shape_;
  int tdim_;
  ScalarField lambda_;
  ScalarField mu_;
};

}  // namespace fftmech
