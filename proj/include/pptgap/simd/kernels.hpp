#pragma once

// Dense complex inner loops used by the bipartite operator algebra.
//
// Every kernel exists as a scalar reference implementation and, on x86-64
// hosts with AVX2 + FMA, as a vectorized variant. The variant is picked once
// at startup (see active_kernels()); setting PPTGAP_SIMD=scalar in the
// environment forces the reference path.
//
// All matrices are row-major, interleaved (re, im) std::complex<double>.

#include <complex>
#include <cstddef>
#include <string_view>

namespace pptgap::simd {

using Complex = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;

  /// C(m×p) = A(m×n) · B(n×p). C must not alias A or B.
  void (*matmul)(const Complex* a, const Complex* b, Complex* c,
                 std::size_t m, std::size_t n, std::size_t p);

  /// C(m×p) = A(m×n) · B(p×n)^H. C must not alias A or B.
  void (*matmul_adjoint)(const Complex* a, const Complex* b, Complex* c,
                         std::size_t m, std::size_t n, std::size_t p);

  /// y += alpha · x
  void (*axpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);

  /// max_{i,j} |M_ij - conj(M_ji)| for a square n×n matrix.
  double (*hermitian_deviation)(const Complex* m, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

/// True when the running CPU reports AVX2 and FMA.
bool cpu_has_avx2();

/// Table selected for this process: AVX2 when available and not disabled
/// through PPTGAP_SIMD=scalar, otherwise scalar.
const KernelTable& active_kernels();

std::string_view isa_name(Isa isa);

}  // namespace pptgap::simd
