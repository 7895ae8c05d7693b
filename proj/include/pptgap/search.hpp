#pragma once

// Counterexample hunt for PPT states in the rank gap
//   1 < rank (Id+F)ρ(Id+F) < (2/r)·rank (Id−F)ρ(Id−F).
//
// Two strategies: scoring fresh random PPT states, and an annealed walk on
// the Gram factor of ρ with PPT re-projection after every move. Every flagged
// state is re-ranked at two extra tolerances before being called confirmed.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "pptgap/criteria.hpp"
#include "pptgap/tensor_algebra.hpp"

namespace pptgap {

enum class Strategy { kRandom, kAnneal };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view text);

struct SearchConfig {
  int k = 3;
  Strategy strategy = Strategy::kRandom;
  int iterations = 1000;
  std::uint64_t seed = 0;
  double soft_tau = 1e-4;
  double initial_step = 0.3;   // anneal: relative Gram-factor step
  double decay = 0.999;        // anneal: per-step factor on step and temperature
  double initial_temperature = 0.5;
  int chains = 1;              // anneal: independent chains
  int workers = 1;
  int max_sweeps = 500;        // PPT projection budget
  Tolerance tol;

  /// Tolerance::defaults(k) unless overridden.
  static SearchConfig with_defaults(int k);
  double penalty() const { return 1e3 * static_cast<double>(k) * static_cast<double>(k); }
  /// Throws std::invalid_argument.
  void validate() const;
};

/// Σ σ_i / (σ_i + tau) over singular values.
double soft_rank(const DenseMatrix& m, double tau);

/// (2/r)·soft_rank(compress(ρ,−)) − soft_rank(compress(ρ,+)) − penalty·max(0, −λ_min(ρ^{t2})),
/// evaluated on ρ / tr ρ. Throws std::invalid_argument when r = 0.
double gap_objective(const BipartiteMatrix& rho, const SearchConfig& config);

enum class CandidateStatus { kNone, kConfirmed, kUnstable };
std::string_view candidate_status_name(CandidateStatus s);

struct SearchRecord {
  std::int64_t index = 0;  // sample index (random) or step (anneal)
  int chain = 0;
  std::uint64_t seed = 0;  // stream seed that produced the sample / move
  int r = 0;
  int rank_sym = 0;
  int rank_skew = 0;
  double soft_gap = 0.0;
  double ppt_residual = 0.0;
  bool candidate = false;  // confirmed only
  CandidateStatus status = CandidateStatus::kNone;
  bool accepted = true;    // anneal move accepted
  std::optional<BipartiteMatrix> state;  // kept for flagged records
};

struct SearchSummary {
  std::int64_t iterations = 0;
  std::int64_t evaluated = 0;
  std::int64_t dropped = 0;  // PPT projection failed to converge
  std::int64_t candidates = 0;
  std::int64_t unstable = 0;
  std::int64_t near_misses = 0;  // soft_gap > −0.5
  std::int64_t invariant_violations = 0;
  std::map<int, std::int64_t> r_histogram;
  std::map<std::int64_t, std::int64_t> gap_histogram;  // bin floor(2·soft_gap), width 1/2
  double best_objective = -std::numeric_limits<double>::infinity();

  /// Associative merge of per-worker summaries.
  void merge(const SearchSummary& other);
};

struct SearchResult {
  std::vector<SearchRecord> records;
  SearchSummary summary;
};

/// Classifies one state; `index`, `chain`, `seed`, and `accepted` are left for the caller.
SearchRecord evaluate_state(const BipartiteMatrix& rho, const SearchConfig& config);

/// True if a confirmed record breaks a theorem-level invariant (r ≤ 3 or rank_sym = 1).
bool violates_invariants(const SearchRecord& record);

/// Deterministic in `config`; results do not depend on `workers`.
SearchResult hunt(const SearchConfig& config);

}  // namespace pptgap
