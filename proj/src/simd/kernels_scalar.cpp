#include "pptgap/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace pptgap::simd {
namespace {

void matmul_scalar(const Complex* a, const Complex* b, Complex* c,
                   std::size_t m, std::size_t n, std::size_t p) {
  std::fill(c, c + m * p, Complex{});
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * p;
    for (std::size_t l = 0; l < n; ++l) {
      const Complex alpha = a[i * n + l];
      if (alpha == Complex{}) continue;
      const Complex* brow = b + l * p;
      for (std::size_t j = 0; j < p; ++j) crow[j] += alpha * brow[j];
    }
  }
}

void matmul_adjoint_scalar(const Complex* a, const Complex* b, Complex* c,
                           std::size_t m, std::size_t n, std::size_t p) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      Complex acc{};
      for (std::size_t l = 0; l < n; ++l) acc += a[i * n + l] * std::conj(b[j * n + l]);
      c[i * p + j] = acc;
    }
  }
}

void axpy_scalar(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double hermitian_deviation_scalar(const Complex* m, std::size_t n) {
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      dev = std::max(dev, std::abs(m[i * n + j] - std::conj(m[j * n + i])));
  return dev;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, &matmul_scalar, &matmul_adjoint_scalar,
                                 &axpy_scalar, &hermitian_deviation_scalar};
  return table;
}

}  // namespace pptgap::simd
