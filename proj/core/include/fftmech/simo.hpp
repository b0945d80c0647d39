#pragma once

#include "fftmech/material.hpp"

namespace fftmech {

/// Finite-strain elasto-plasticity in the current configuration:
/// hyperelastic Kirchhoff stress tau = 1/2 C : ln(be), von Mises yield
/// surface with linear hardening, associative radial return in
/// logarithmic-strain space, and pull-back of stress and algorithmic
/// tangent to the reference configuration (P = tau F^-T,
/// K = F^-1 Kx F^-T with Kx = -IRT tau + [D:dln(be_tr)] be_tr).
///
/// The trial state is advanced from the committed state by the relative
/// deformation gradient f = F F_old^-1 acting as f be f^T. Tensors are
/// always 3x3; on 2-d grids this realizes plane strain.
void simo_evaluate(const Tensor2Field& F, const Tensor2Field& F_old,
                   const HistoryState& committed, const ScalarField& lambda,
                   const ScalarField& mu, const ScalarField& tau_y0,
                   const ScalarField& hardening, Tensor2Field& P, Tensor4Field& K,
                   HistoryState& trial);

class SimoPlasticityModel final : public MaterialModel {
 public:
  SimoPlasticityModel(const GridShape& shape, ScalarField lambda, ScalarField mu,
                      ScalarField tau_y0, ScalarField hardening);
  SimoPlasticityModel(const GridShape& shape, const PlasticParams& params);

  int tensor_dim() const override { return 3; }
  void evaluate(const Tensor2Field& F, Tensor2Field& P, Tensor4Field& K) override;
  void commit(const Tensor2Field& F_converged) override;
  /// Von Mises of dev tau with tau = P F^T.
  ScalarField equivalent_stress_field(const Tensor2Field& F,
                                      const Tensor2Field& P) const override;
  const ScalarField* committed_eps_p() const override { return &committed_.eps_p; }

  const HistoryState& committed() const { return committed_; }
  const HistoryState& trial() const { return trial_; }
  const Tensor2Field& reference_deformation() const { return f_old_; }

 private:
  GridShape shape_;
  ScalarField lambda_, mu_, tau_y0_, hardening_;
  HistoryState committed_;
  HistoryState trial_;
  Tensor2Field f_old_;  // converged F of the previous increment
};

}  // namespace fftmech
