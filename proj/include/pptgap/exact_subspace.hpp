#pragma once

// Exact linear algebra over the Gaussian rationals ℚ(i) for subspaces of
// W ⊗ W generated by rank-1 tensors: symmetric / skew-symmetric dimensions,
// the minimal local space, the dimension inequality audit, and the sharp
// family V_k attaining it.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pptgap/tensor_algebra.hpp"

namespace pptgap::exact {

/// re + im·i with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Canonical text form, e.g. "3", "-1/2", "2i", "1/2+3/4 i".
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGenerator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts "a", "a/b", "c/d i", "i", "-i", "a/b+c/d i", "a-ci" (whitespace ignored).
GaussianRational parse_gaussian_rational(std::string_view text);

using ExactVector = std::vector<GaussianRational>;

/// v ⊗ w
struct ExactTensor {
  ExactVector left;
  ExactVector right;

  int local_dim() const { return static_cast<int>(left.size()); }
  ExactTensor flipped() const { return {right, left}; }
  /// Flattened Kronecker vector, length k².
  ExactVector flat() const;
  bool is_rank_one() const;

  friend bool operator==(const ExactTensor&, const ExactTensor&) = default;
};

struct GeneratingSet {
  int k = 0;
  std::vector<ExactTensor> generators;
};

/// Incremental exact row echelon form; rows are kept with a unit pivot.
class Echelon {
 public:
  explicit Echelon(std::size_t length) : length_(length) {}

  /// Reduces v against the basis; returns true (and stores it) if it was independent.
  bool insert(ExactVector v);
  /// True if v lies in the current span.
  bool contains(ExactVector v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(ExactVector& v) const;

  std::size_t length_;
  std::vector<ExactVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Dimension of span(vectors). Empty input → 0; unequal lengths throw.
int span_dim(std::span<const ExactVector> vectors);

/// Indices of a greedily chosen maximal linearly independent subset.
std::vector<std::size_t> independent_subset(std::span<const ExactVector> vectors);

/// G ∪ F(G), without duplicates, preserving the original order first.
GeneratingSet flip_closure(const GeneratingSet& g);

struct SubspaceDims {
  int dim_v = 0;
  int dim_sym = 0;
  int dim_skew = 0;
};

/// Dimensions of V = span(G ∪ F(G)) and of its ±1 flip eigenspaces.
SubspaceDims sym_skew_dims(const GeneratingSet& g);

/// dim span{left factors} of the flip closure.
int minimal_local_space(const GeneratingSet& g);

struct AuditReport {
  SubspaceDims dims;
  int n = 0;  // minimal local space
  bool skew_bound_holds = false;   // dim_sym ≥ (2/n)·dim_skew
  bool local_bound_holds = false;  // dim_sym ≥ n/2
  bool equality_a = false;         // dim_sym = n/2
  bool equality_b = false;         // dim_sym = (2/n)·dim_skew
  bool case_a_consistent = true;   // equality_a ⇒ dim_skew = dim_sym
  bool case_b_consistent = true;   // equality_b ⇒ dim_sym = n−1, dim_skew = n(n−1)/2

  bool ok() const {
    return skew_bound_holds && local_bound_holds && case_a_consistent && case_b_consistent;
  }
};

/// Throws InvalidGenerator on empty sets, wrong lengths, or a zero factor.
AuditReport inequality_audit(const GeneratingSet& g);

/// Rank-1 generators of the sharp family V_k (k ≥ 2).
GeneratingSet build_sharp_family(int k);

/// `count` rank-1 generators with Gaussian-integer entries in [lo, hi] (both parts).
GeneratingSet random_generating_set(int k, int count, std::uint64_t seed, int lo = -3, int hi = 3);

/// Text format: one generator per line, "v | w", factors comma-separated.
/// Blank lines and lines starting with '#' are ignored.
GeneratingSet parse_generating_set(std::istream& in);
void write_generating_set(std::ostream& out, const GeneratingSet& g);

DenseVector to_dense(const ExactVector& v);

}  // namespace pptgap::exact
