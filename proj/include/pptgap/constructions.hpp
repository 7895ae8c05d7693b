#pragma once

// Deterministic example states and seeded random generators (separable,
// PPT, SPC, symmetric-plus-skew mixtures) feeding the criteria and search.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pptgap/criteria.hpp"
#include "pptgap/tensor_algebra.hpp"

namespace pptgap {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Σ v_i v̄_i^t ⊗ w_i w̄_i^t over a rank-1 basis {v_i ⊗ w_i} of the sharp family V_k.
/// Separable, with (rank_sym, rank_skew, r) = (k−1, k(k−1)/2, k).
BipartiteMatrix sharp_separable_state(int k);

/// B + C with B = k·Σ e_ie_i^t⊗e_ie_i^t − uu^t and C = Id − F; equal to its own
/// partial transpose, hence PPT.
BipartiteMatrix invariant_gap_state(int k);

/// B + (Id − F). B must be PSD of order k².
BipartiteMatrix skew_inflated_state(const BipartiteMatrix& b, int k);

/// w w̄^t + Σ_j μ_j b_j b̄_j^t with Fw = w, F b_j = −b_j, μ_j > 0.
BipartiteMatrix sym_skew_mix(const BipartiteVector& w, std::span<const BipartiteVector> skew,
                             std::span<const double> weights);

/// sym_skew_mix with w = Σ_{i<tensor_rank} s_i ⊗ s_i for random s_i and
/// `skew_terms` random skew vectors with random positive weights.
BipartiteMatrix random_sym_skew_mix(int k, int tensor_rank, int skew_terms, std::uint64_t seed);

/// G G* for a k²×rank standard-normal complex factor, trace-normalized (zero if rank = 0).
BipartiteMatrix random_psd(int k, int rank, std::uint64_t seed);

/// Σ p_i v_i v̄_i^t ⊗ w_i w̄_i^t, trace-normalized. Term t draws from stream t.
BipartiteMatrix random_separable(int k, int terms, std::uint64_t seed);

struct SpcSample {
  BipartiteMatrix state;
  int attempts = 0;  // draws until acceptance (≥ 1)
  double acceptance_rate() const { return attempts > 0 ? 1.0 / attempts : 0.0; }
};

/// Σ λ_i H_i ⊗ H_i with random sign-indefinite Hermitian H_i and λ_i > 0,
/// rejection-sampled until PSD, trace-normalized. Attempt a draws from
/// stream a of `seed`. Throws ConstructionError after max_rejects failures.
SpcSample random_spc(int k, int terms, std::uint64_t seed, int max_rejects);

struct PptProjection {
  BipartiteMatrix state;
  int sweeps = 0;
  bool converged = false;
};

/// Alternating projections onto the PSD cone and its partial-transpose image
/// until ρ ⪰ 0 and ρ^{t2} ⪰ 0 within tol.eps_psd; trace-normalized.
PptProjection project_to_ppt(const BipartiteMatrix& rho, const Tolerance& tol, int max_sweeps);

/// Random Gram state projected to PPT. factor_cols = 0 draws the factor
/// width uniformly from [1, k²]. Throws ConstructionError on non-convergence.
BipartiteMatrix random_ppt(int k, std::uint64_t seed, int max_sweeps = 500, int factor_cols = 0);

/// Closest PSD matrix in Frobenius norm (negative eigenvalues clipped).
DenseMatrix clip_to_psd(const DenseMatrix& m);

enum class RecipeName {
  kSharpSeparable,
  kInvariantGap,
  kSkewInflated,
  kSymSkewMix,
  kRandomSeparable,
  kRandomSpc,
  kRandomPpt,
};

std::string_view recipe_name(RecipeName name);
std::optional<RecipeName> parse_recipe_name(std::string_view text);

struct StateRecipe {
  RecipeName name = RecipeName::kSharpSeparable;
  int k = 2;
  std::uint64_t seed = 0;
  int terms = 4;           // random_separable / random_spc
  int b_rank = 0;          // skew_inflated: rank of the random PSD B
  int tensor_rank = 3;     // sym_skew_mix
  int skew_terms = 2;      // sym_skew_mix
  int max_rejects = 100000;  // random_spc
  int max_sweeps = 500;    // random_ppt
  int factor_cols = 0;     // random_ppt
};

/// Identical recipes yield bit-identical states.
BipartiteMatrix build_state(const StateRecipe& recipe);

}  // namespace pptgap
