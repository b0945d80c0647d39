#pragma once

#include "fftmech/fields.hpp"

namespace fftmech {

// Node-local tensor algebra on fields. All index conventions are fixed
// project-wide (see docs/conventions.md); in particular the double
// contraction pairs the inner indices reversed:
//
//   ddot42:  C_ij   = A_ijkl B_lk
//   ddot44:  C_ijmn = A_ijkl B_lkmn
//   dot22:   C_ik   = A_ij B_jk
//   dot24:   C_ikmn = A_ij B_jkmn
//   dot42:   C_ijkm = A_ijkl B_lm
//   dyad22:  C_ijkl = A_ij B_kl
//
// and the identities read I_ij = d_ij, II_ijkl = d_il d_jk,
// IRT_ijkl = d_ik d_jl, Is = (II + IRT)/2.

Tensor2Field identity2(const GridShape& shape, int tdim);
Tensor4Field identity4(const GridShape& shape, int tdim);
Tensor4Field identity4rt(const GridShape& shape, int tdim);
Tensor4Field identity4sym(const GridShape& shape, int tdim);

Tensor2Field ddot42(const Tensor4Field& A, const Tensor2Field& B);
Tensor4Field ddot44(const Tensor4Field& A, const Tensor4Field& B);
Tensor2Field dot22(const Tensor2Field& A, const Tensor2Field& B);
Tensor4Field dot24(const Tensor2Field& A, const Tensor4Field& B);
Tensor4Field dot42(const Tensor4Field& A, const Tensor2Field& B);
Tensor4Field dyad22(const Tensor2Field& A, const Tensor2Field& B);

Tensor2Field trans2(const Tensor2Field& A);
/// C_jikl = A_ijkl
Tensor4Field trans4_left(const Tensor4Field& A);
/// C_ijlk = A_ijkl
Tensor4Field trans4_right(const Tensor4Field& A);

/// Per-node inverse; throws SingularTensor when |det| < 1e-30.
Tensor2Field inv2(const Tensor2Field& A);
ScalarField det2(const Tensor2Field& A);

/// Tensor logarithm/exponential of symmetric tensors by spectral
/// decomposition. ln_sym2 additionally requires positive-definite input.
Tensor2Field ln_sym2(const Tensor2Field& A);
Tensor2Field exp_sym2(const Tensor2Field& A);

/// Frobenius norm over all nodes and components.
double field_norm(const Tensor2Field& A);
/// Arithmetic mean tensor over nodes.
Tensor2 field_mean(const Tensor2Field& A);

namespace detail {
// Singularity and symmetry tolerances shared by the per-node kernels.
inline constexpr double kSingularDetTol = 1e-30;
inline constexpr double kMinLogEigenvalue = 1e-30;
inline constexpr double kSymmetryRelTol = 1e-8;
}  // namespace detail

}  // namespace fftmech
