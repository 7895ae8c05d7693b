#include "pptgap/tensor_algebra.hpp"

#include <string>
#include <utility>

#include "pptgap/simd/kernels.hpp"

namespace pptgap {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

void require_same_shape(const BipartiteMatrix& a, const BipartiteMatrix& b) {
  require(a.local_dim() == b.local_dim(),
          "local dimension mismatch: " + std::to_string(a.local_dim()) + " vs " +
              std::to_string(b.local_dim()));
}

}  // namespace

// ---------------------------------------------------------------------------
// LocalMatrix

LocalMatrix::LocalMatrix(int dim) : dim_(dim), m_(DenseMatrix::Zero(dim, dim)) {
  require(dim >= 1, "local dimension must be positive");
}

LocalMatrix::LocalMatrix(int dim, DenseMatrix entries) : dim_(dim), m_(std::move(entries)) {
  require(dim >= 1, "local dimension must be positive");
  require(m_.rows() == dim && m_.cols() == dim,
          "LocalMatrix expects " + std::to_string(dim) + "x" + std::to_string(dim) + " entries");
}

LocalMatrix LocalMatrix::identity(int dim) {
  return LocalMatrix(dim, DenseMatrix::Identity(dim, dim));
}

// ---------------------------------------------------------------------------
// BipartiteVector

BipartiteVector::BipartiteVector(int local_dim)
    : k_(local_dim), v_(DenseVector::Zero(local_dim * local_dim)) {
  require(local_dim >= 1, "local dimension must be positive");
}

BipartiteVector::BipartiteVector(int local_dim, DenseVector entries)
    : k_(local_dim), v_(std::move(entries)) {
  require(local_dim >= 1, "local dimension must be positive");
  require(v_.size() == local_dim * local_dim,
          "BipartiteVector expects " + std::to_string(local_dim * local_dim) + " entries");
}

BipartiteVector BipartiteVector::tensor(const DenseVector& a, const DenseVector& b) {
  require(a.size() == b.size() && a.size() >= 1, "tensor factors must have equal positive length");
  const int k = static_cast<int>(a.size());
  BipartiteVector out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = a(i) * b(j);
  return out;
}

BipartiteVector BipartiteVector::basis(int local_dim, int i, int j) {
  BipartiteVector out(local_dim);
  out(i, j) = 1.0;
  return out;
}

BipartiteVector BipartiteVector::maximally_entangled(int local_dim) {
  BipartiteVector out(local_dim);
  for (int i = 0; i < local_dim; ++i) out(i, i) = 1.0;
  return out;
}

BipartiteVector BipartiteVector::flipped() const {
  BipartiteVector out(k_);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) out(i, j) = (*this)(j, i);
  return out;
}

// ---------------------------------------------------------------------------
// BipartiteMatrix

BipartiteMatrix::BipartiteMatrix(int local_dim)
    : k_(local_dim), m_(DenseMatrix::Zero(local_dim * local_dim, local_dim * local_dim)) {
  require(local_dim >= 1, "local dimension must be positive");
}

BipartiteMatrix::BipartiteMatrix(int local_dim, DenseMatrix entries)
    : k_(local_dim), m_(std::move(entries)) {
  require(local_dim >= 1, "local dimension must be positive");
  const int n = local_dim * local_dim;
  require(m_.rows() == n && m_.cols() == n,
          "BipartiteMatrix expects order " + std::to_string(n) + ", got " +
              std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
}

BipartiteMatrix BipartiteMatrix::identity(int local_dim) {
  const int n = local_dim * local_dim;
  return BipartiteMatrix(local_dim, DenseMatrix::Identity(n, n));
}

BipartiteMatrix BipartiteMatrix::adjoint() const {
  return BipartiteMatrix(k_, m_.adjoint());
}

BipartiteMatrix& BipartiteMatrix::operator+=(const BipartiteMatrix& other) {
  require_same_shape(*this, other);
  simd::active_kernels().axpy(Complex{1.0}, other.m_.data(), m_.data(),
                              static_cast<std::size_t>(m_.size()));
  return *this;
}

BipartiteMatrix& BipartiteMatrix::operator-=(const BipartiteMatrix& other) {
  require_same_shape(*this, other);
  simd::active_kernels().axpy(Complex{-1.0}, other.m_.data(), m_.data(),
                              static_cast<std::size_t>(m_.size()));
  return *this;
}

BipartiteMatrix& BipartiteMatrix::operator*=(Complex scale) {
  m_ *= scale;
  return *this;
}

BipartiteMatrix operator+(BipartiteMatrix a, const BipartiteMatrix& b) { return a += b; }
BipartiteMatrix operator-(BipartiteMatrix a, const BipartiteMatrix& b) { return a -= b; }
BipartiteMatrix operator*(Complex scale, BipartiteMatrix a) { return a *= scale; }

BipartiteMatrix operator*(const BipartiteMatrix& a, const BipartiteMatrix& b) {
  require_same_shape(a, b);
  return BipartiteMatrix(a.local_dim(), matmul(a.dense(), b.dense()));
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.rows(), "matmul: inner dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  simd::active_kernels().matmul(a.data(), b.data(), c.data(), static_cast<std::size_t>(a.rows()),
                                static_cast<std::size_t>(a.cols()),
                                static_cast<std::size_t>(b.cols()));
  return c;
}

DenseMatrix matmul_adjoint(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.cols(), "matmul_adjoint: inner dimension mismatch");
  DenseMatrix c(a.rows(), b.rows());
  simd::active_kernels().matmul_adjoint(a.data(), b.data(), c.data(),
                                        static_cast<std::size_t>(a.rows()),
                                        static_cast<std::size_t>(a.cols()),
                                        static_cast<std::size_t>(b.rows()));
  return c;
}

BipartiteMatrix outer_transpose(const BipartiteVector& x, const BipartiteVector& y) {
  require(x.local_dim() == y.local_dim(), "outer product: local dimension mismatch");
  return BipartiteMatrix(x.local_dim(), x.dense() * y.dense().transpose());
}

BipartiteMatrix outer_adjoint(const BipartiteVector& x, const BipartiteVector& y) {
  require(x.local_dim() == y.local_dim(), "outer product: local dimension mismatch");
  return BipartiteMatrix(x.local_dim(), x.dense() * y.dense().adjoint());
}

BipartiteMatrix projector(const BipartiteVector& x) { return outer_adjoint(x, x); }

// ---------------------------------------------------------------------------
// Operations

DenseMatrix kron_dense(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

BipartiteMatrix kron(const LocalMatrix& a, const LocalMatrix& b) {
  require(a.dim() == b.dim(), "kron: factor dimensions differ (" + std::to_string(a.dim()) +
                                  " vs " + std::to_string(b.dim()) + ")");
  return BipartiteMatrix(a.dim(), kron_dense(a.dense(), b.dense()));
}

BipartiteMatrix flip_operator(int k) {
  BipartiteMatrix f(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) f.at(i, j, j, i) = 1.0;
  return f;
}

BipartiteMatrix flip_conjugate(const BipartiteMatrix& rho) {
  const int k = rho.local_dim();
  BipartiteMatrix out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (int m = 0; m < k; ++m) out.at(i, j, l, m) = rho.at(j, i, m, l);
  return out;
}

BipartiteMatrix partial_transpose(const BipartiteMatrix& rho) {
  const int k = rho.local_dim();
  BipartiteMatrix out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (int m = 0; m < k; ++m) out.at(i, j, l, m) = rho.at(i, m, l, j);
  return out;
}

BipartiteMatrix realign(const BipartiteMatrix& c) {
  const int k = c.local_dim();
  BipartiteMatrix out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (int m = 0; m < k; ++m) out.at(i, l, j, m) = c.at(i, j, l, m);
  return out;
}

BipartiteVector vec(const LocalMatrix& a) {
  const int k = a.dim();
  BipartiteVector out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = a(i, j);
  return out;
}

LocalMatrix unvec(const BipartiteVector& v) {
  const int k = v.local_dim();
  LocalMatrix out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = v(i, j);
  return out;
}

LocalMatrix marginal(const BipartiteMatrix& rho, Side side) {
  const int k = rho.local_dim();
  LocalMatrix out(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Complex acc{};
      for (int t = 0; t < k; ++t)
        acc += side == Side::kA ? rho.at(a, t, b, t) : rho.at(t, a, t, b);
      out(a, b) = acc;
    }
  return out;
}

BipartiteMatrix compress(const BipartiteMatrix& rho, Sign sign) {
  // (Id ± F) ρ (Id ± F) = ρ ± Fρ ± ρF + FρF, each term a permutation of ρ.
  const int k = rho.local_dim();
  const double s = sign == Sign::kPlus ? 1.0 : -1.0;
  BipartiteMatrix out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (int m = 0; m < k; ++m)
          out.at(i, j, l, m) = rho.at(i, j, l, m) + s * rho.at(j, i, l, m) +
                               s * rho.at(i, j, m, l) + rho.at(j, i, m, l);
  return out;
}

BipartiteMatrix conjugate_local(const BipartiteMatrix& rho, const DenseMatrix& t) {
  require(t.cols() == rho.local_dim(),
          "conjugate_local: T has " + std::to_string(t.cols()) + " columns, expected " +
              std::to_string(rho.local_dim()));
  require(t.rows() >= 1, "conjugate_local: T must have at least one row");
  const DenseMatrix tt = kron_dense(t, t);
  const DenseMatrix left = matmul(tt, rho.dense());
  return BipartiteMatrix(static_cast<int>(t.rows()), matmul_adjoint(left, tt));
}

double hermitian_deviation(const BipartiteMatrix& m) {
  return simd::active_kernels().hermitian_deviation(m.dense().data(),
                                                    static_cast<std::size_t>(m.order()));
}

double hermitian_deviation(const LocalMatrix& m) {
  return simd::active_kernels().hermitian_deviation(m.dense().data(),
                                                    static_cast<std::size_t>(m.dim()));
}

double max_abs(const DenseMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace pptgap
