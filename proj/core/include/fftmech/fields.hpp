#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fftmech/grid.hpp"
#include "fftmech/tensor2.hpp"

namespace fftmech {

/// One real value per grid node.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridShape& shape, double fill = 0.0)
      : shape_(shape), data_(shape.node_count(), fill) {
    shape_.validate();
  }

  const GridShape& shape() const { return shape_; }
  std::size_t nodes() const { return data_.size(); }

  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

 private:
  GridShape shape_;
  std::vector<double> data_;
};

/// Grid of second-order tensors, stored component-major: each of the
/// tdim*tdim components is one contiguous n-length slab, so per-component
/// transforms and slab-wise kernels read linearly.
///
/// The tensor dimension may exceed the grid dimension: plane-strain
/// problems carry 3x3 tensors on a 2-d grid.
class Tensor2Field {
 public:
  Tensor2Field() = default;
  Tensor2Field(const GridShape& shape, int tdim)
      : shape_(shape), tdim_(tdim), n_(shape.node_count()),
        data_(n_ * static_cast<std::size_t>(tdim * tdim), 0.0) {
    shape_.validate();
    if (tdim < shape.dim || tdim > 3) throw std::invalid_argument("tensor dim must be in [grid dim, 3]");
  }

  const GridShape& shape() const { return shape_; }
  int tdim() const { return tdim_; }
  std::size_t nodes() const { return n_; }
  std::size_t size() const { return data_.size(); }

  double* comp(int i, int j) { return data_.data() + static_cast<std::size_t>(i * tdim_ + j) * n_; }
  const double* comp(int i, int j) const {
    return data_.data() + static_cast<std::size_t>(i * tdim_ + j) * n_;
  }

  double& at(std::size_t node, int i, int j) { return comp(i, j)[node]; }
  double at(std::size_t node, int i, int j) const { return comp(i, j)[node]; }

  /// Gather the tensor at one node into a small dense tensor.
  Tensor2 tensor(std::size_t node) const {
    Tensor2 t(tdim_);
    for (int i = 0; i < tdim_; ++i)
      for (int j = 0; j < tdim_; ++j) t(i, j) = at(node, i, j);
    return t;
  }

  void set_tensor(std::size_t node, const Tensor2& t) {
    for (int i = 0; i < tdim_; ++i)
      for (int j = 0; j < tdim_; ++j) at(node, i, j) = t(i, j);
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Tensor2Field& operator+=(const Tensor2Field& o);
  Tensor2Field& operator-=(const Tensor2Field& o);
  Tensor2Field& operator*=(double s);

  /// Adds the same tensor at every node.
  void add_uniform(const Tensor2& t);

  void fill(double value) { data_.assign(data_.size(), value); }

 private:
  GridShape shape_;
  int tdim_ = 3;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Grid of fourth-order tensors; same component-major slab layout with
/// tdim^4 slabs of n values.
class Tensor4Field {
 public:
  Tensor4Field() = default;
  Tensor4Field(const GridShape& shape, int tdim)
      : shape_(shape), tdim_(tdim), n_(shape.node_count()),
        data_(n_ * static_cast<std::size_t>(tdim * tdim * tdim * tdim), 0.0) {
    shape_.validate();
    if (tdim < shape.dim || tdim > 3) throw std::invalid_argument("tensor dim must be in [grid dim, 3]");
  }

  const GridShape& shape() const { return shape_; }
  int tdim() const { return tdim_; }
  std::size_t nodes() const { return n_; }
  std::size_t size() const { return data_.size(); }

  std::size_t comp_index(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * tdim_ + j) * tdim_ + k) * tdim_ + l);
  }
  double* comp(int i, int j, int k, int l) { return data_.data() + comp_index(i, j, k, l) * n_; }
  const double* comp(int i, int j, int k, int l) const {
    return data_.data() + comp_index(i, j, k, l) * n_;
  }

  double& at(std::size_t node, int i, int j, int k, int l) { return comp(i, j, k, l)[node]; }
  double at(std::size_t node, int i, int j, int k, int l) const {
    return comp(i, j, k, l)[node];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Tensor4Field& operator+=(const Tensor4Field& o);
  Tensor4Field& operator*=(double s);

  void fill(double value) { data_.assign(data_.size(), value); }

 private:
  GridShape shape_;
  int tdim_ = 3;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Elementwise y += a*x over all nodes and components.
void axpy(double a, const Tensor2Field& x, Tensor2Field& y);

/// Inner product: sum over nodes and components.
double field_dot(const Tensor2Field& a, const Tensor2Field& b);

}  // namespace fftmech
