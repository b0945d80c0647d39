#include "fftmech/projection.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fftmech/errors.hpp"
#include "fftmech/tensor_ops.hpp"

namespace fftmech {

namespace {

// Natural FFT ordering: index i maps to frequency i for i < (N+1)/2 and
// to i - N above; for even N the bin i = N/2 is the Nyquist bin.
inline int index_to_frequency(int i, int n) { return (i < (n + 1) / 2) ? i : i - n; }

constexpr double kComplexResidueTol = 1e-10;

}  // namespace

FrequencyGrid build_frequency_grid(const GridShape& shape) {
  shape.validate();
  const int d = shape.dim;
  const std::size_t n = shape.node_count();
  FrequencyGrid fg;
  fg.shape = shape;
  fg.q.resize(n * static_cast<std::size_t>(d));
  fg.xi.resize(n * static_cast<std::size_t>(d));
  fg.nyquist.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = shape.node_coords(k);
    bool ny = false;
    for (int a = 0; a < d; ++a) {
      const int na = shape.points[a];
      const int qa = index_to_frequency(idx[a], na);
      fg.q[k * d + a] = qa;
      fg.xi[k * d + a] = static_cast<double>(qa) / shape.lengths[a];
      if (na % 2 == 0 && idx[a] == na / 2) ny = true;
    }
    fg.nyquist[k] = ny;
  }
  return fg;
}

struct ProjectionOperator::Impl {
  GridShape shape;
  int tdim = 3;
  NyquistMode mode = NyquistMode::ZeroCompatible;
  Tensor2Field ghat;  // real, symmetric, idempotent per node
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Impl() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

ProjectionOperator::ProjectionOperator() : impl_(new Impl) {}
ProjectionOperator::ProjectionOperator(ProjectionOperator&&) noexcept = default;
ProjectionOperator& ProjectionOperator::operator=(ProjectionOperator&&) noexcept = default;
ProjectionOperator::~ProjectionOperator() = default;

const GridShape& ProjectionOperator::shape() const { return impl_->shape; }
int ProjectionOperator::tdim() const { return impl_->tdim; }
NyquistMode ProjectionOperator::nyquist_mode() const { return impl_->mode; }
const Tensor2Field& ProjectionOperator::ghat() const { return impl_->ghat; }

ProjectionOperator build_projection(const GridShape& shape, int tdim, NyquistMode mode) {
  shape.validate();
  if (tdim < shape.dim || tdim > 3) throw std::invalid_argument("tensor dim must be in [grid dim, 3]");

  ProjectionOperator op;
  auto& impl = *op.impl_;
  impl.shape = shape;
  impl.tdim = tdim;
  impl.mode = mode;
  impl.ghat = Tensor2Field(shape, tdim);

  const FrequencyGrid fg = build_frequency_grid(shape);
  const int d = shape.dim;
  const std::size_t n = shape.node_count();

  for (std::size_t k = 0; k < n; ++k) {
    const double* xi = fg.xi_at(k);
    double norm2 = 0.0;
    for (int a = 0; a < d; ++a) norm2 += xi[a] * xi[a];

    if (norm2 == 0.0) continue;  // ghat(0) = 0 keeps the mean untouched

    if (fg.nyquist[k]) {
      if (mode == NyquistMode::ZeroCompatible) continue;
      for (int i = 0; i < tdim; ++i) impl.ghat.at(k, i, i) = 1.0;
      continue;
    }

    // ghat = (xi x xi)/|xi|^2; rows/columns beyond the grid dimension
    // stay zero, so plane-strain fluctuations never leave the plane.
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) impl.ghat.at(k, i, j) = xi[i] * xi[j] / norm2;
  }

  // One batched c2c plan per direction over all tensor components.
  // FFTW_ESTIMATE keeps planning deterministic; FFTW_UNALIGNED lets the
  // plan execute on any caller buffer of the same layout.
  int dims[3];
  for (int a = 0; a < d; ++a) dims[a] = shape.points[a];
  const int howmany = tdim * tdim;
  std::vector<std::complex<double>> dummy(n * static_cast<std::size_t>(howmany));
  auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  impl.forward = fftw_plan_many_dft(d, dims, howmany, p, nullptr, 1, static_cast<int>(n), p,
                                    nullptr, 1, static_cast<int>(n), FFTW_FORWARD, flags);
  impl.backward = fftw_plan_many_dft(d, dims, howmany, p, nullptr, 1, static_cast<int>(n), p,
                                     nullptr, 1, static_cast<int>(n), FFTW_BACKWARD, flags);
  if (!impl.forward || !impl.backward) throw Error("FFT planning failed");
  return op;
}

Tensor2Field apply_projection(const ProjectionOperator& G, const Tensor2Field& A) {
  const auto& impl = *G.impl_;
  if (!(A.shape() == impl.shape) || A.tdim() != impl.tdim)
    throw std::invalid_argument("apply_projection: field does not match operator");

  const int d = impl.tdim;
  const std::size_t n = A.nodes();
  const std::size_t total = n * static_cast<std::size_t>(d * d);

  std::vector<std::complex<double>> buf(total);
  auto as = A.data();
  for (std::size_t i = 0; i < total; ++i) buf[i] = as[i];

  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(impl.forward, p, p);

  // Bhat_ij = Ahat_il ghat_lj, row-wise right-multiplication per frequency.
  std::vector<std::complex<double>> out(total, std::complex<double>(0.0, 0.0));
  const auto slab = [n](int i, int j, int dd) {
    return static_cast<std::size_t>(i * dd + j) * n;
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::complex<double>* dst = out.data() + slab(i, j, d);
      for (int l = 0; l < d; ++l) {
        const std::complex<double>* src = buf.data() + slab(i, l, d);
        const double* g = impl.ghat.comp(l, j);
        for (std::size_t k = 0; k < n; ++k) dst[k] += src[k] * g[k];
      }
    }

  auto* q = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(impl.backward, q, q);

  const double scale = 1.0 / static_cast<double>(n);
  Tensor2Field result(A.shape(), d);
  auto rs = result.data();
  double imag2 = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    rs[i] = out[i].real() * scale;
    const double im = out[i].imag() * scale;
    imag2 += im * im;
  }

  const double tol = kComplexResidueTol * std::max(field_norm(A), 1e-300);
  const double residue = std::sqrt(imag2);
  if (residue > tol) throw ComplexResidue(residue, tol);
  return result;
}

Tensor2Field apply_projected_tangent(const ProjectionOperator& G, const Tensor4Field& K,
                                     const Tensor2Field& dF) {
  // dP^T = K : dF^T node-locally, then project dP. Written out with the
  // transposes folded into the index order to avoid the two copies.
  if (!(K.shape() == dF.shape()) || K.tdim() != dF.tdim())
    throw std::invalid_argument("apply_projected_tangent: shape mismatch");
  const int d = dF.tdim();
  const std::size_t n = dF.nodes();
  Tensor2Field dP(dF.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // dP_ij = (K : dF^T)_ji = K_jikl dF_kl
      double* out = dP.comp(i, j);
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double* a = K.comp(j, i, k, l);
          const double* b = dF.comp(k, l);
          for (std::size_t m = 0; m < n; ++m) out[m] += a[m] * b[m];
        }
    }
  return apply_projection(G, dP);
}

}  // namespace fftmech
