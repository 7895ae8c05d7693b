#pragma once

// Slow reference implementations written straight from the definitions
// (sums over elementary tensors), independent of the index-permutation code.

#include <cstdint>

#include "pptgap/rng.hpp"
#include "pptgap/tensor_algebra.hpp"

namespace oracle {

using pptgap::Complex;
using pptgap::DenseMatrix;
using pptgap::DenseVector;

inline DenseMatrix elementary(int k, int i, int j) {
  DenseMatrix e = DenseMatrix::Zero(k, k);
  e(i, j) = 1.0;
  return e;
}

inline DenseVector unit(int k, int i) {
  DenseVector e = DenseVector::Zero(k);
  e(i) = 1.0;
  return e;
}

// Block (i, j) of the result is a_ij·B.
inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out = DenseMatrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline DenseVector kron(const DenseVector& a, const DenseVector& b) {
  DenseVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// F = Σ e_i e_j^t ⊗ e_j e_i^t
inline DenseMatrix flip(int k) {
  DenseMatrix f = DenseMatrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) f += kron(elementary(k, i, j), elementary(k, j, i));
  return f;
}

// Expands C = Σ c · E_il ⊗ E_jm and applies `term` to each elementary product.
template <class Term>
DenseMatrix expand(const DenseMatrix& c, int k, Term term) {
  DenseMatrix out = DenseMatrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (int m = 0; m < k; ++m) {
          const Complex coef = c(i * k + j, l * k + m);
          if (coef != Complex{}) out += coef * term(i, j, l, m);
        }
  return out;
}

// Σ A ⊗ B^t
inline DenseMatrix partial_transpose(const DenseMatrix& c, int k) {
  return expand(c, k, [k](int i, int j, int l, int m) {
    return kron(elementary(k, i, l), DenseMatrix(elementary(k, j, m).transpose()));
  });
}

// R(A ⊗ B) = V(A) V(B)^t with V(a b^t) = a ⊗ b
inline DenseMatrix realign(const DenseMatrix& c, int k) {
  return expand(c, k, [k](int i, int j, int l, int m) {
    const DenseVector va = kron(unit(k, i), unit(k, l));
    const DenseVector vb = kron(unit(k, j), unit(k, m));
    return DenseMatrix(va * vb.transpose());
  });
}

// Partial trace over the second (side A) or first (side B) factor.
inline DenseMatrix marginal(const DenseMatrix& c, int k, bool side_a) {
  DenseMatrix out = DenseMatrix::Zero(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int t = 0; t < k; ++t)
        out(a, b) += side_a ? c(a * k + t, b * k + t) : c(t * k + a, t * k + b);
  return out;
}

inline DenseMatrix random_matrix(pptgap::Rng& rng, int rows, int cols) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline DenseVector random_vector(pptgap::Rng& rng, int n) {
  DenseVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

inline double max_diff(const DenseMatrix& a, const DenseMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace oracle
