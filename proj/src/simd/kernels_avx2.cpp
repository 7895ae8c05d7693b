// Compiled with -mavx2 -mfma; only reached after cpu_has_avx2() succeeded.

#include "pptgap/simd/kernels.hpp"

#if defined(PPTGAP_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace pptgap::simd {
namespace {

// Two interleaved complex values per register: [re0, im0, re1, im1].
inline __m256d cmul(__m256d a_re, __m256d a_im, __m256d b) {
  const __m256d b_swap = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

inline double* as_doubles(Complex* p) { return reinterpret_cast<double*>(p); }
inline const double* as_doubles(const Complex* p) { return reinterpret_cast<const double*>(p); }

void matmul_avx2(const Complex* a, const Complex* b, Complex* c,
                 std::size_t m, std::size_t n, std::size_t p) {
  std::fill(c, c + m * p, Complex{});
  const std::size_t p_even = p & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = as_doubles(c + i * p);
    for (std::size_t l = 0; l < n; ++l) {
      const Complex alpha = a[i * n + l];
      if (alpha == Complex{}) continue;
      const __m256d a_re = _mm256_set1_pd(alpha.real());
      const __m256d a_im = _mm256_set1_pd(alpha.imag());
      const double* brow = as_doubles(b + l * p);
      std::size_t j = 0;
      for (; j < p_even; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(cv, cmul(a_re, a_im, bv)));
      }
      if (j < p) c[i * p + j] += alpha * b[l * p + j];
    }
  }
}

void matmul_adjoint_avx2(const Complex* a, const Complex* b, Complex* c,
                         std::size_t m, std::size_t n, std::size_t p) {
  thread_local std::vector<Complex> bh;
  bh.resize(n * p);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t l = 0; l < n; ++l) bh[l * p + j] = std::conj(b[j * n + l]);
  matmul_avx2(a, bh.data(), c, m, n, p);
}

void axpy_avx2(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const __m256d a_re = _mm256_set1_pd(alpha.real());
  const __m256d a_im = _mm256_set1_pd(alpha.imag());
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul(a_re, a_im, xv)));
  }
  if (i < n) y[i] += alpha * x[i];
}

double hermitian_deviation_avx2(const Complex* m, std::size_t n) {
  // conj flips the sign of the imaginary lanes
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  __m256d best = _mm256_setzero_pd();
  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = as_doubles(m + i * n);
    std::size_t j = i;
    for (; j + 2 <= n; j += 2) {
      const __m256d upper = _mm256_loadu_pd(row + 2 * j);
      const __m128d lo = _mm_loadu_pd(as_doubles(m + j * n + i));
      const __m128d hi = _mm_loadu_pd(as_doubles(m + (j + 1) * n + i));
      const __m256d lower = _mm256_xor_pd(_mm256_set_m128d(hi, lo), conj_mask);
      const __m256d d = _mm256_sub_pd(upper, lower);
      const __m256d sq = _mm256_mul_pd(d, d);
      // re² + im² for each complex lane, duplicated
      const __m256d mag2 = _mm256_hadd_pd(sq, sq);
      best = _mm256_max_pd(best, mag2);
    }
    if (j < n) tail = std::max(tail, std::abs(m[i * n + j] - std::conj(m[j * n + i])));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  const double vec_max = std::max({lanes[0], lanes[1], lanes[2], lanes[3]});
  return std::max(std::sqrt(vec_max), tail);
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{Isa::kAvx2, &matmul_avx2, &matmul_adjoint_avx2, &axpy_avx2,
                                 &hermitian_deviation_avx2};
  return &table;
}

}  // namespace pptgap::simd

#else

namespace pptgap::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace pptgap::simd

#endif
