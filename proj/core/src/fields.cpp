#include "fftmech/fields.hpp"

#include <stdexcept>

namespace fftmech {

namespace {
void check_same(const Tensor2Field& a, const Tensor2Field& b) {
  if (!(a.shape() == b.shape()) || a.tdim() != b.tdim())
    throw std::invalid_argument("tensor field shape/dimension mismatch");
}
}  // namespace

Tensor2Field& Tensor2Field::operator+=(const Tensor2Field& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor2Field& Tensor2Field::operator-=(const Tensor2Field& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Tensor2Field& Tensor2Field::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

void Tensor2Field::add_uniform(const Tensor2& t) {
  if (t.dim != tdim_) throw std::invalid_argument("add_uniform: tensor dimension mismatch");
  for (int i = 0; i < tdim_; ++i)
    for (int j = 0; j < tdim_; ++j) {
      double* slab = comp(i, j);
      const double v = t(i, j);
      for (std::size_t k = 0; k < n_; ++k) slab[k] += v;
    }
}

Tensor4Field& Tensor4Field::operator+=(const Tensor4Field& o) {
  if (!(shape_ == o.shape_) || tdim_ != o.tdim_)
    throw std::invalid_argument("tensor field shape/dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor4Field& Tensor4Field::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

void axpy(double a, const Tensor2Field& x, Tensor2Field& y) {
  check_same(x, y);
  auto xs = x.data();
  auto ys = y.data();
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] += a * xs[i];
}

double field_dot(const Tensor2Field& a, const Tensor2Field& b) {
  check_same(a, b);
  auto as = a.data();
  auto bs = b.data();
  double s = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) s += as[i] * bs[i];
  return s;
}

}  // namespace fftmech
