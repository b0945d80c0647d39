#include "fftmech/tensor_ops.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "fftmech/errors.hpp"

namespace fftmech {

namespace {

void check_pair(const Tensor2Field& a, const Tensor2Field& b) {
  if (!(a.shape() == b.shape()) || a.tdim() != b.tdim())
    throw std::invalid_argument("tensor field shape/dimension mismatch");
}

void check_pair(const Tensor4Field& a, const Tensor2Field& b) {
  if (!(a.shape() == b.shape()) || a.tdim() != b.tdim())
    throw std::invalid_argument("tensor field shape/dimension mismatch");
}

void check_pair(const Tensor4Field& a, const Tensor4Field& b) {
  if (!(a.shape() == b.shape()) || a.tdim() != b.tdim())
    throw std::invalid_argument("tensor field shape/dimension mismatch");
}

// Spectral map f(A) for symmetric A, per node. `need_spd` guards ln.
template <typename Fn>
Tensor2Field spectral_map(const Tensor2Field& A, bool need_spd, Fn&& f) {
  const int d = A.tdim();
  const std::size_t n = A.nodes();
  Tensor2Field out(A.shape(), d);
  Eigen::MatrixXd m(d, d);
  for (std::size_t k = 0; k < n; ++k) {
    double scale = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        m(i, j) = A.at(k, i, j);
        scale = std::max(scale, std::abs(m(i, j)));
      }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        if (std::abs(m(i, j) - m(j, i)) > detail::kSymmetryRelTol * std::max(scale, 1e-30))
          throw NotSymmetric(k);
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    Eigen::VectorXd vals = eig.eigenvalues();
    if (need_spd) {
      for (int i = 0; i < d; ++i)
        if (vals(i) < detail::kMinLogEigenvalue) throw NotPositiveDefinite(k, vals(i));
    }
    for (int i = 0; i < d; ++i) vals(i) = f(vals(i));
    Eigen::MatrixXd r = eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out.at(k, i, j) = r(i, j);
  }
  return out;
}

}  // namespace

Tensor2Field identity2(const GridShape& shape, int tdim) {
  Tensor2Field f(shape, tdim);
  for (int i = 0; i < tdim; ++i) {
    double* slab = f.comp(i, i);
    for (std::size_t k = 0; k < f.nodes(); ++k) slab[k] = 1.0;
  }
  return f;
}

Tensor4Field identity4(const GridShape& shape, int tdim) {
  Tensor4Field f(shape, tdim);
  for (int i = 0; i < tdim; ++i)
    for (int j = 0; j < tdim; ++j) {
      double* slab = f.comp(i, j, j, i);  // II_ijkl = d_il d_jk
      for (std::size_t k = 0; k < f.nodes(); ++k) slab[k] = 1.0;
    }
  return f;
}

Tensor4Field identity4rt(const GridShape& shape, int tdim) {
  Tensor4Field f(shape, tdim);
  for (int i = 0; i < tdim; ++i)
    for (int j = 0; j < tdim; ++j) {
      double* slab = f.comp(i, j, i, j);  // IRT_ijkl = d_ik d_jl
      for (std::size_t k = 0; k < f.nodes(); ++k) slab[k] = 1.0;
    }
  return f;
}

Tensor4Field identity4sym(const GridShape& shape, int tdim) {
  Tensor4Field f = identity4(shape, tdim);
  f += identity4rt(shape, tdim);
  f *= 0.5;
  return f;
}

Tensor2Field ddot42(const Tensor4Field& A, const Tensor2Field& B) {
  check_pair(A, B);
  const int d = A.tdim();
  const std::size_t n = A.nodes();
  Tensor2Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double* out = C.comp(i, j);
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double* a = A.comp(i, j, k, l);
          const double* b = B.comp(l, k);
          for (std::size_t m = 0; m < n; ++m) out[m] += a[m] * b[m];
        }
    }
  return C;
}

Tensor4Field ddot44(const Tensor4Field& A, const Tensor4Field& B) {
  check_pair(A, B);
  const int d = A.tdim();
  const std::size_t n = A.nodes();
  Tensor4Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m)
        for (int p = 0; p < d; ++p) {
          double* out = C.comp(i, j, m, p);
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
              const double* a = A.comp(i, j, k, l);
              const double* b = B.comp(l, k, m, p);
              for (std::size_t q = 0; q < n; ++q) out[q] += a[q] * b[q];
            }
        }
  return C;
}

Tensor2Field dot22(const Tensor2Field& A, const Tensor2Field& B) {
  check_pair(A, B);
  const int d = A.tdim();
  const std::size_t n = A.nodes();
  Tensor2Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      double* out = C.comp(i, k);
      for (int j = 0; j < d; ++j) {
        const double* a = A.comp(i, j);
        const double* b = B.comp(j, k);
        for (std::size_t m = 0; m < n; ++m) out[m] += a[m] * b[m];
      }
    }
  return C;
}

Tensor4Field dot24(const Tensor2Field& A, const Tensor4Field& B) {
  check_pair(B, A);
  const int d = A.tdim();
  const std::size_t n = A.nodes();
  Tensor4Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int m = 0; m < d; ++m)
        for (int p = 0; p < d; ++p) {
          double* out = C.comp(i, k, m, p);
          for (int j = 0; j < d; ++j) {
            const double* a = A.comp(i, j);
            const double* b = B.comp(j, k, m, p);
            for (std::size_t q = 0; q < n; ++q) out[q] += a[q] * b[q];
          }
        }
  return C;
}

Tensor4Field dot42(const Tensor4Field& A, const Tensor2Field& B) {
  check_pair(A, B);
  const int d = A.tdim();
  const std::size_t n = A.nodes();
  Tensor4Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m) {
          double* out = C.comp(i, j, k, m);
          for (int l = 0; l < d; ++l) {
            const double* a = A.comp(i, j, k, l);
            const double* b = B.comp(l, m);
            for (std::size_t q = 0; q < n; ++q) out[q] += a[q] * b[q];
          }
        }
  return C;
}

Tensor4Field dyad22(const Tensor2Field& A, const Tensor2Field& B) {
  check_pair(A, B);
  const int d = A.tdim();
  const std::size_t n = A.nodes();
  Tensor4Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double* out = C.comp(i, j, k, l);
          const double* a = A.comp(i, j);
          const double* b = B.comp(k, l);
          for (std::size_t m = 0; m < n; ++m) out[m] = a[m] * b[m];
        }
  return C;
}

Tensor2Field trans2(const Tensor2Field& A) {
  const int d = A.tdim();
  Tensor2Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double* out = C.comp(i, j);
      const double* a = A.comp(j, i);
      for (std::size_t m = 0; m < A.nodes(); ++m) out[m] = a[m];
    }
  return C;
}

Tensor4Field trans4_left(const Tensor4Field& A) {
  const int d = A.tdim();
  Tensor4Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double* out = C.comp(j, i, k, l);
          const double* a = A.comp(i, j, k, l);
          for (std::size_t m = 0; m < A.nodes(); ++m) out[m] = a[m];
        }
  return C;
}

Tensor4Field trans4_right(const Tensor4Field& A) {
  const int d = A.tdim();
  Tensor4Field C(A.shape(), d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double* out = C.comp(i, j, l, k);
          const double* a = A.comp(i, j, k, l);
          for (std::size_t m = 0; m < A.nodes(); ++m) out[m] = a[m];
        }
  return C;
}

ScalarField det2(const Tensor2Field& A) {
  const std::size_t n = A.nodes();
  ScalarField out(A.shape());
  for (std::size_t k = 0; k < n; ++k) out[k] = A.tensor(k).det();
  return out;
}

Tensor2Field inv2(const Tensor2Field& A) {
  const std::size_t n = A.nodes();
  Tensor2Field out(A.shape(), A.tdim());
  for (std::size_t k = 0; k < n; ++k) {
    Tensor2 t = A.tensor(k);
    if (std::abs(t.det()) < detail::kSingularDetTol) throw SingularTensor(k);
    out.set_tensor(k, t.inverse());
  }
  return out;
}

Tensor2Field ln_sym2(const Tensor2Field& A) {
  return spectral_map(A, /*need_spd=*/true, [](double x) { return std::log(x); });
}

Tensor2Field exp_sym2(const Tensor2Field& A) {
  return spectral_map(A, /*need_spd=*/false, [](double x) { return std::exp(x); });
}

double field_norm(const Tensor2Field& A) {
  double s = 0.0;
  for (double v : A.data()) s += v * v;
  return std::sqrt(s);
}

Tensor2 field_mean(const Tensor2Field& A) {
  const int d = A.tdim();
  const std::size_t n = A.nodes();
  Tensor2 mean(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double* slab = A.comp(i, j);
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += slab[k];
      mean(i, j) = s / static_cast<double>(n);
    }
  return mean;
}

}  // namespace fftmech
