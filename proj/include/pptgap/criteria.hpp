#pragma once

// Floating-point separability verdicts on bipartite states: PSD / PPT / SPC
// tests, numeric ranks, the rank-gap inequality with its consistency
// assertions, and the positive-map spectral radius subroutine.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pptgap/tensor_algebra.hpp"

namespace pptgap {

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPsdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hermiticity is checked against this bound, relative to max(1, max |entry|).
inline constexpr double kHermitianTolerance = 1e-10;

struct Tolerance {
  double eps_psd = 0.0;   // eigenvalue floor, relative to max(|λ_max|, 1)
  double eps_rank = 0.0;  // singular-value cutoff, relative to σ_max

  /// 1e-9·k², or the value of PPTGAP_TOLERANCE when set.
  static Tolerance defaults(int k);
  static Tolerance uniform(double eps) { return {eps, eps}; }
};

/// Count of singular values > eps_rank·σ_max.
int numeric_rank(const DenseMatrix& m, const Tolerance& tol);
int numeric_rank(const BipartiteMatrix& m, const Tolerance& tol);
int numeric_rank(const LocalMatrix& m, const Tolerance& tol);
/// Cutoff eps_rank·max(σ_max, reference); a nearly zero M measured against a
/// larger reference scale gets rank 0 instead of counting rounding noise.
int numeric_rank(const DenseMatrix& m, const Tolerance& tol, double reference);

/// Largest singular value.
double spectral_norm(const DenseMatrix& m);

struct BranchRanks {
  int r = 0;          // marginal rank of ρ + FρF
  int rank_sym = 0;   // rank (Id+F)ρ(Id+F)
  int rank_skew = 0;  // rank (Id−F)ρ(Id−F)
};

/// Compression ranks are cut against 4‖ρ‖ as well as their own σ_max.
BranchRanks branch_ranks(const BipartiteMatrix& rho, const Tolerance& tol);

/// Returns (M + M*)/2 after checking the deviation; throws NotHermitianError.
DenseMatrix hermitize(const DenseMatrix& m);

/// Ascending eigenvalues of a Hermitian matrix (hermitized first).
Eigen::VectorXd hermitian_eigenvalues(const DenseMatrix& m);

bool is_psd(const DenseMatrix& m, const Tolerance& tol);
bool is_psd(const BipartiteMatrix& m, const Tolerance& tol);
bool is_psd(const LocalMatrix& m, const Tolerance& tol);

/// ρ ⪰ 0 and ρ^{t2} ⪰ 0.
bool is_ppt(const BipartiteMatrix& rho, const Tolerance& tol);

/// A ⪰ 0 and R(A^{t2}) ⪰ 0.
bool is_spc(const BipartiteMatrix& a, const Tolerance& tol);

struct SpcChain {
  bool rank_chain_holds = false;  // rank_sym ≥ r and r(r−1) ≥ 2·rank_skew
  bool compressed_ppt = false;    // (Id+F)ρ(Id+F) is PPT
  bool holds() const { return rank_chain_holds && compressed_ppt; }
};

struct Rank1Consequence {
  bool marginal_rank_le_2 = false;
};

struct CriteriaReport {
  int k = 0;
  bool is_psd = false;
  bool is_ppt = false;
  bool is_spc = false;  // of ρ + FρF
  int r = 0;            // marginal rank of ρ + FρF
  int rank_sym = 0;     // rank (Id+F)ρ(Id+F)
  int rank_skew = 0;    // rank (Id−F)ρ(Id−F)
  bool inequality_holds = false;  // rank_sym ≥ max{(2/r)·rank_skew, r/2}
  bool gap_candidate = false;        // PPT ∧ 1 < rank_sym < (2/r)·rank_skew
  bool low_marginal_shortcut = false;          // PPT ∧ r ≤ 3 (inequality then forced)
  std::optional<SpcChain> spc_chain;
  std::optional<Rank1Consequence> rank1_consequence;

  /// Theorem-level invariants that must hold for any input; a failure is a bug.
  std::vector<std::string> consistency_failures() const;
  bool entangled_witness() const { return !inequality_holds; }
};

/// Integer comparisons only: r·rank_sym ≥ 2·rank_skew and 2·rank_sym ≥ r.
bool rank_inequality_holds(int rank_sym, int rank_skew, int r);
/// 1 < rank_sym and r·rank_sym < 2·rank_skew.
bool in_gap(int rank_sym, int rank_skew, int r);

/// ρ must be Hermitian PSD (NotHermitianError / NotPsdError otherwise).
CriteriaReport analyze(const BipartiteMatrix& rho, const Tolerance& tol);

struct SpectralRadiusResult {
  double radius = 0.0;
  LocalMatrix fixed_point;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration for L(X) = Σ_j K_j X K_j^t starting from X = Id, run on
/// the shifted map L + c·id with c = ½ Σ_j ‖K_j‖²_F (an upper bound on the
/// radius when the K_j are real skew-symmetric). Iterates are trace-normalized;
/// the radius estimate is the Rayleigh quotient ⟨X, L(X)⟩ / ⟨X, X⟩. Stops after `tol`-small changes on five
/// consecutive steps; non-convergence is reported, not thrown.
SpectralRadiusResult positive_map_spectral_radius(std::span<const LocalMatrix> kraus,
                                                  int max_iter, double tol);

/// Σ_j K_j ⊗ K_j: the matrix of X ↦ Σ K_j X K_j^t acting on vec(X).
DenseMatrix matrized_map(std::span<const LocalMatrix> kraus);

}  // namespace pptgap
