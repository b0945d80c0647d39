#include "naive_dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fftmech/projection.hpp"

namespace fftmech::testsupport {

std::vector<std::complex<double>> naive_dft(const GridShape& shape,
                                            const std::vector<std::complex<double>>& values,
                                            bool inverse) {
  const std::size_t n = shape.node_count();
  if (values.size() != n) throw std::invalid_argument("naive_dft: size mismatch");
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto ridx = shape.node_coords(r);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto kidx = shape.node_coords(k);
      double phase = 0.0;
      for (int a = 0; a < shape.dim; ++a)
        phase += static_cast<double>(ridx[a]) * kidx[a] / shape.points[a];
      acc += values[k] * std::polar(1.0, sign * 2.0 * std::numbers::pi * phase);
    }
    out[r] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

FieldSpectrum naive_field_dft(const Tensor2Field& field) {
  const int d = field.tdim();
  const std::size_t n = field.nodes();
  FieldSpectrum spec;
  spec.shape = field.shape();
  spec.tdim = d;
  spec.data.resize(n * static_cast<std::size_t>(d * d));
  std::vector<std::complex<double>> slab(n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double* src = field.comp(i, j);
      for (std::size_t k = 0; k < n; ++k) slab[k] = src[k];
      const auto hat = naive_dft(field.shape(), slab, false);
      std::copy(hat.begin(), hat.end(), spec.comp(i, j));
    }
  return spec;
}

Tensor2Field naive_field_idft(const FieldSpectrum& spectrum, double imag_tol) {
  const int d = spectrum.tdim;
  const std::size_t n = spectrum.shape.node_count();
  Tensor2Field out(spectrum.shape, d);
  std::vector<std::complex<double>> slab(n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const std::complex<double>* src = spectrum.comp(i, j);
      std::copy(src, src + n, slab.begin());
      const auto values = naive_dft(spectrum.shape, slab, true);
      double* dst = out.comp(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(values[k].imag()) > imag_tol)
          throw std::runtime_error("naive_field_idft: non-real result");
        dst[k] = values[k].real();
      }
    }
  return out;
}

double max_curl_violation(const Tensor2Field& A) {
  const FieldSpectrum spec = naive_field_dft(A);
  const FrequencyGrid fg = build_frequency_grid(A.shape());
  const int d = A.tdim();
  const std::size_t n = A.nodes();

  double max_hat = 0.0;
  for (const auto& c : spec.data) max_hat = std::max(max_hat, std::abs(c));
  if (max_hat == 0.0) return 0.0;

  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double xi[3] = {0.0, 0.0, 0.0};
    double xi_norm = 0.0;
    for (int a = 0; a < A.shape().dim; ++a) {
      xi[a] = fg.xi_at(k)[a];
      xi_norm += xi[a] * xi[a];
    }
    xi_norm = std::sqrt(xi_norm);
    if (xi_norm == 0.0) continue;

    for (int row = 0; row < d; ++row) {
      std::complex<double> v[3] = {0.0, 0.0, 0.0};
      for (int j = 0; j < d; ++j) v[j] = spec.comp(row, j)[k];
      // 2-d rows use the scalar curl; 3-d rows the full cross product.
      double curl;
      if (d == 2) {
        curl = std::abs(xi[0] * v[1] - xi[1] * v[0]);
      } else {
        const std::complex<double> c0 = xi[1] * v[2] - xi[2] * v[1];
        const std::complex<double> c1 = xi[2] * v[0] - xi[0] * v[2];
        const std::complex<double> c2 = xi[0] * v[1] - xi[1] * v[0];
        curl = std::sqrt(std::norm(c0) + std::norm(c1) + std::norm(c2));
      }
      worst = std::max(worst, curl / (xi_norm * max_hat));
    }
  }
  return worst;
}

}  // namespace fftmech::testsupport
