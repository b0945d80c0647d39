#pragma once

#include <memory>

#include "fftmech/fields.hpp"
#include "fftmech/tensor2.hpp"

namespace fftmech {

/// Isotropic elastic constants. Young's modulus and Poisson's ratio are
/// stored; the Lame pair is derived.
struct ElasticParams {
  double youngs = 1.0;
  double poisson = 0.3;

  double lame_lambda() const {
    return youngs * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
  }
  double lame_mu() const { return youngs / (2.0 * (1.0 + poisson)); }
};

/// Elasto-plastic parameters: linear hardening tau_y = tau_y0 + H eps_p.
struct PlasticParams {
  ElasticParams elastic;
  double tau_y0 = 1.0;
  double hardening = 0.0;
};

/// Committed/trial internal variables of history-dependent models:
/// the elastic left Cauchy-Green tensor per node and the accumulated
/// plastic strain.
struct HistoryState {
  Tensor2Field be;    // symmetric positive definite, init I
  ScalarField eps_p;  // >= 0, non-decreasing across commits

  HistoryState() = default;
  HistoryState(const GridShape& shape, int tdim);
};

/// Node-local constitutive evaluation behind one contract: stress and
/// consistent tangent in the reference configuration at the given
/// deformation gradient field, starting from the committed history.
/// Implementations keep the trial state internally; commit() promotes it
/// only once an increment has converged.
class MaterialModel {
 public:
  virtual ~MaterialModel() = default;

  virtual int tensor_dim() const = 0;

  /// P and K at F; recomputes the trial state from the committed one.
  virtual void evaluate(const Tensor2Field& F, Tensor2Field& P, Tensor4Field& K) = 0;

  /// Promote the trial state; F_converged becomes the reference for the
  /// next increment's relative deformation.
  virtual void commit(const Tensor2Field& F_converged) = 0;

  /// Equivalent stress for output: von Mises of the model's natural
  /// stress measure, reconstructed from F and P.
  virtual ScalarField equivalent_stress_field(const Tensor2Field& F,
                                              const Tensor2Field& P) const = 0;

  /// Committed accumulated plastic strain, or nullptr for elastic models.
  virtual const ScalarField* committed_eps_p() const { return nullptr; }
};

/// Von Mises measure sqrt(3/2 dev(T):dev(T)) per node.
ScalarField equivalent_stress(const Tensor2Field& T);

/// Von Mises measure of the deviator of 1/2 ln(Fbar^T Fbar), i.e.
/// sqrt(2/3 dev:dev) of the macroscopic logarithmic strain. A 2x2 input
/// is treated as plane strain (unit out-of-plane stretch).
double macroscopic_equivalent_strain(const Tensor2& fbar);

}  // namespace fftmech
