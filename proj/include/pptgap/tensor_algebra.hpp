#pragma once

// Dense operator algebra on M_k ⊗ M_k ≅ M_{k²}.
//
// Layout: a bipartite index (i, j) with i in the first factor maps to the
// flat index i·k + j (Kronecker convention, first factor is the slow index).
// Entry ρ[(i,j),(l,m)] is the coefficient of e_i e_l^t ⊗ e_j e_m^t.
// Flip, partial transpose, and realignment are all index permutations on
// this layout:
//
//   F ρ      : row (i,j)      <- row (j,i)
//   ρ^{t2}   : [(i,j),(l,m)]  <- [(i,m),(l,j)]
//   R(ρ)     : [(i,l),(j,m)]  <- [(i,j),(l,m)]

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace pptgap {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using DenseVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Complex k×k matrix living on one tensor factor.
class LocalMatrix {
 public:
  LocalMatrix() = default;
  explicit LocalMatrix(int dim);
  LocalMatrix(int dim, DenseMatrix entries);

  static LocalMatrix identity(int dim);

  int dim() const { return dim_; }
  const DenseMatrix& dense() const { return m_; }
  DenseMatrix& dense() { return m_; }

  Complex operator()(int i, int j) const { return m_(i, j); }
  Complex& operator()(int i, int j) { return m_(i, j); }

  Complex trace() const { return m_.trace(); }

 private:
  int dim_ = 0;
  DenseMatrix m_;
};

/// Element of ℂ^k ⊗ ℂ^k, stored as a length-k² column.
class BipartiteVector {
 public:
  BipartiteVector() = default;
  explicit BipartiteVector(int local_dim);
  BipartiteVector(int local_dim, DenseVector entries);

  /// a ⊗ b
  static BipartiteVector tensor(const DenseVector& a, const DenseVector& b);
  /// e_i ⊗ e_j
  static BipartiteVector basis(int local_dim, int i, int j);
  /// u = Σ_i e_i ⊗ e_i
  static BipartiteVector maximally_entangled(int local_dim);

  int local_dim() const { return k_; }
  const DenseVector& dense() const { return v_; }
  DenseVector& dense() { return v_; }

  Complex operator()(int i, int j) const { return v_(i * k_ + j); }
  Complex& operator()(int i, int j) { return v_(i * k_ + j); }

  /// F(a ⊗ b) = b ⊗ a
  BipartiteVector flipped() const;

 private:
  int k_ = 0;
  DenseVector v_;
};

/// Complex square matrix of order k² carrying its local dimension k.
class BipartiteMatrix {
 public:
  BipartiteMatrix() = default;
  explicit BipartiteMatrix(int local_dim);
  BipartiteMatrix(int local_dim, DenseMatrix entries);

  static BipartiteMatrix identity(int local_dim);

  int local_dim() const { return k_; }
  int order() const { return k_ * k_; }
  const DenseMatrix& dense() const { return m_; }
  DenseMatrix& dense() { return m_; }

  Complex operator()(int row, int col) const { return m_(row, col); }
  Complex& operator()(int row, int col) { return m_(row, col); }

  /// ρ[(i,j),(l,m)]
  Complex at(int i, int j, int l, int m) const { return m_(i * k_ + j, l * k_ + m); }
  Complex& at(int i, int j, int l, int m) { return m_(i * k_ + j, l * k_ + m); }

  BipartiteMatrix adjoint() const;
  Complex trace() const { return m_.trace(); }

  BipartiteMatrix& operator+=(const BipartiteMatrix& other);
  BipartiteMatrix& operator-=(const BipartiteMatrix& other);
  BipartiteMatrix& operator*=(Complex scale);

 private:
  int k_ = 0;
  DenseMatrix m_;
};

BipartiteMatrix operator+(BipartiteMatrix a, const BipartiteMatrix& b);
BipartiteMatrix operator-(BipartiteMatrix a, const BipartiteMatrix& b);
BipartiteMatrix operator*(Complex scale, BipartiteMatrix a);
/// Matrix product through the active SIMD kernel.
BipartiteMatrix operator*(const BipartiteMatrix& a, const BipartiteMatrix& b);

/// x y^t (plain transpose, no conjugation)
BipartiteMatrix outer_transpose(const BipartiteVector& x, const BipartiteVector& y);
/// x ȳ^t
BipartiteMatrix outer_adjoint(const BipartiteVector& x, const BipartiteVector& y);
/// x x̄^t
BipartiteMatrix projector(const BipartiteVector& x);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
/// A · B^H
DenseMatrix matmul_adjoint(const DenseMatrix& a, const DenseMatrix& b);

/// A ⊗ B; both factors must share the same dimension.
BipartiteMatrix kron(const LocalMatrix& a, const LocalMatrix& b);
/// General Kronecker product of dense matrices (any shapes).
DenseMatrix kron_dense(const DenseMatrix& a, const DenseMatrix& b);

BipartiteMatrix flip_operator(int k);
/// F ρ F, computed as an index permutation.
BipartiteMatrix flip_conjugate(const BipartiteMatrix& rho);

BipartiteMatrix partial_transpose(const BipartiteMatrix& rho);
BipartiteMatrix realign(const BipartiteMatrix& c);

/// vec(a b^t) = a ⊗ b, i.e. row-major flattening.
BipartiteVector vec(const LocalMatrix& a);
LocalMatrix unvec(const BipartiteVector& v);

enum class Side { kA, kB };
/// Partial trace over the other factor.
LocalMatrix marginal(const BipartiteMatrix& rho, Side side);

enum class Sign { kPlus, kMinus };
/// (Id ± F) ρ (Id ± F)
BipartiteMatrix compress(const BipartiteMatrix& rho, Sign sign);

/// (T ⊗ T) ρ (T* ⊗ T*) for T of shape m×k; result has local dimension m.
BipartiteMatrix conjugate_local(const BipartiteMatrix& rho, const DenseMatrix& t);

/// max |M_ij − conj(M_ji)|
double hermitian_deviation(const BipartiteMatrix& m);
double hermitian_deviation(const LocalMatrix& m);

/// Largest entry magnitude.
double max_abs(const DenseMatrix& m);

}  // namespace pptgap
