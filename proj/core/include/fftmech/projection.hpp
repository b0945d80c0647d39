#pragma once

#include <memory>
#include <vector>

#include "fftmech/fields.hpp"

namespace fftmech {

/// How projection coefficients are set at Nyquist frequencies of
/// even-sized axes, where compatibility and equilibrium cannot both hold.
enum class NyquistMode {
  ZeroCompatible,       ///< zero the coefficients: the output stays compatible
  IdentityEquilibrium,  ///< identity coefficients: equilibrium is preserved instead
};

/// Integer frequencies q and scaled frequencies xi_i = q_i / L_i per node,
/// in natural transform ordering (no shifting; the index -> centered
/// frequency map is explicit).
struct FrequencyGrid {
  GridShape shape;
  std::vector<int> q;        // node-major, shape.dim entries per node
  std::vector<double> xi;    // node-major, shape.dim entries per node
  std::vector<bool> nyquist; // true when any axis index is the Nyquist bin

  const int* q_at(std::size_t node) const { return q.data() + node * shape.dim; }
  const double* xi_at(std::size_t node) const { return xi.data() + node * shape.dim; }
};

FrequencyGrid build_frequency_grid(const GridShape& shape);

/// Compatibility projection in Fourier space. Only the per-frequency
/// d x d kernel ghat = (xi x xi)/|xi|^2 is stored (one Tensor2Field);
/// the fourth-order form G_ijlm = d_im ghat_jl is never materialized.
/// When the tensor dimension exceeds the grid dimension (plane strain)
/// the trailing rows/columns of ghat are zero.
///
/// Immutable after construction and safe to share across threads; each
/// application works on its own scratch buffers.
class ProjectionOperator {
 public:
  ProjectionOperator(ProjectionOperator&&) noexcept;
  ProjectionOperator& operator=(ProjectionOperator&&) noexcept;
  ProjectionOperator(const ProjectionOperator&) = delete;
  ProjectionOperator& operator=(const ProjectionOperator&) = delete;
  ~ProjectionOperator();

  const GridShape& shape() const;
  int tdim() const;
  NyquistMode nyquist_mode() const;

  /// The stored per-frequency kernel (for inspection and tests).
  const Tensor2Field& ghat() const;

  friend ProjectionOperator build_projection(const GridShape&, int, NyquistMode);
  friend Tensor2Field apply_projection(const ProjectionOperator&, const Tensor2Field&);

  struct Impl;

 private:
  ProjectionOperator();
  std::unique_ptr<Impl> impl_;
};

ProjectionOperator build_projection(const GridShape& shape, int tdim,
                                    NyquistMode mode = NyquistMode::ZeroCompatible);

/// G * A: forward transform per component, per-frequency contraction with
/// ghat, inverse transform. The result is real with zero mean; throws
/// ComplexResidue if the discarded imaginary part exceeds 1e-10 relative
/// to the input norm.
Tensor2Field apply_projection(const ProjectionOperator& G, const Tensor2Field& A);

/// The inner-solver operator of the linearized system: node-local
/// dP^T = K : dF^T followed by the projection of dP.
Tensor2Field apply_projected_tangent(const ProjectionOperator& G, const Tensor4Field& K,
                                     const Tensor2Field& dF);

}  // namespace fftmech
