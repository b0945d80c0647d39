#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace fftmech {

/// Small dense second-order tensor with runtime dimension 2 or 3,
/// row-major in a fixed 3x3 buffer. Used for macroscopic quantities
/// (deformation gradients, field means) and for node-local scratch.
struct Tensor2 {
  int dim = 3;
  std::array<double, 9> v{};  // row-major, only the leading dim x dim block is used

  Tensor2() = default;
  explicit Tensor2(int d) : dim(d) {
    if (d != 2 && d != 3) throw std::invalid_argument("Tensor2 dim must be 2 or 3");
  }

  static Tensor2 identity(int d) {
    Tensor2 t(d);
    for (int i = 0; i < d; ++i) t(i, i) = 1.0;
    return t;
  }

  static Tensor2 zero(int d) { return Tensor2(d); }

  double& operator()(int i, int j) { return v[static_cast<std::size_t>(i * dim + j)]; }
  double operator()(int i, int j) const { return v[static_cast<std::size_t>(i * dim + j)]; }

  Tensor2& operator+=(const Tensor2& o) {
    for (int i = 0; i < dim * dim; ++i) v[i] += o.v[i];
    return *this;
  }
  Tensor2& operator-=(const Tensor2& o) {
    for (int i = 0; i < dim * dim; ++i) v[i] -= o.v[i];
    return *this;
  }
  Tensor2& operator*=(double s) {
    for (int i = 0; i < dim * dim; ++i) v[i] *= s;
    return *this;
  }

  friend Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
  friend Tensor2 operator-(Tensor2 a, const Tensor2& b) { return a -= b; }
  friend Tensor2 operator*(double s, Tensor2 a) { return a *= s; }

  Tensor2 transposed() const {
    Tensor2 t(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += (*this)(i, i);
    return s;
  }

  double det() const {
    const Tensor2& a = *this;
    if (dim == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  }

  Tensor2 inverse() const;

  double norm() const {
    double s = 0.0;
    for (int i = 0; i < dim * dim; ++i) s += v[i] * v[i];
    return std::sqrt(s);
  }

  friend Tensor2 dot(const Tensor2& a, const Tensor2& b) {
    Tensor2 c(a.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int k = 0; k < a.dim; ++k) {
        double s = 0.0;
        for (int j = 0; j < a.dim; ++j) s += a(i, j) * b(j, k);
        c(i, k) = s;
      }
    return c;
  }
};

inline Tensor2 Tensor2::inverse() const {
  const Tensor2& a = *this;
  const double d = det();
  if (d == 0.0) throw std::domain_error("Tensor2::inverse: singular");
  Tensor2 inv(dim);
  if (dim == 2) {
    inv(0, 0) = a(1, 1) / d;
    inv(0, 1) = -a(0, 1) / d;
    inv(1, 0) = -a(1, 0) / d;
    inv(1, 1) = a(0, 0) / d;
  } else {
    inv(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / d;
    inv(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / d;
    inv(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / d;
    inv(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d;
    inv(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / d;
    inv(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / d;
    inv(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / d;
    inv(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / d;
    inv(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / d;
  }
  return inv;
}

}  // namespace fftmech
