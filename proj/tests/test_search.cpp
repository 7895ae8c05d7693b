#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pptgap/constructions.hpp"
#include "pptgap/search.hpp"

using namespace pptgap;

namespace {

SearchConfig small_config(int k, Strategy s, int iterations, std::uint64_t seed) {
  SearchConfig c = SearchConfig::with_defaults(k);
  c.strategy = s;
  c.iterations = iterations;
  c.seed = seed;
  return c;
}

void expect_same(const SearchResult& a, const SearchResult& b) {
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const SearchRecord &x = a.records[i], &y = b.records[i];
    EXPECT_EQ(x.index, y.index);
    EXPECT_EQ(x.chain, y.chain);
    EXPECT_EQ(x.seed, y.seed);
    EXPECT_EQ(x.r, y.r);
    EXPECT_EQ(x.rank_sym, y.rank_sym);
    EXPECT_EQ(x.rank_skew, y.rank_skew);
    EXPECT_EQ(x.soft_gap, y.soft_gap);
    EXPECT_EQ(x.ppt_residual, y.ppt_residual);
    EXPECT_EQ(x.accepted, y.accepted);
  }
  EXPECT_EQ(a.summary.evaluated, b.summary.evaluated);
  EXPECT_EQ(a.summary.dropped, b.summary.dropped);
  EXPECT_EQ(a.summary.near_misses, b.summary.near_misses);
  EXPECT_EQ(a.summary.r_histogram, b.summary.r_histogram);
  EXPECT_EQ(a.summary.gap_histogram, b.summary.gap_histogram);
  EXPECT_EQ(a.summary.best_objective, b.summary.best_objective);
}

}  // namespace

TEST(SoftRank, ClosedForms) {
  EXPECT_EQ(soft_rank(DenseMatrix::Zero(3, 3), 1e-4), 0.0);
  EXPECT_NEAR(soft_rank(DenseMatrix::Identity(4, 4), 1e-9), 4.0, 1e-6);
  EXPECT_DOUBLE_EQ(soft_rank(DenseMatrix::Identity(2, 2), 1.0), 1.0);
  EXPECT_THROW(soft_rank(DenseMatrix::Identity(2, 2), 0.0), std::invalid_argument);
}

TEST(SoftRank, NeverExceedsIntegerRankAndIsMonotone) {
  Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const int rank = 1 + trial % 6;
    const DenseMatrix g = oracle::random_matrix(rng, 6, rank);
    const DenseMatrix m = g * g.adjoint();
    double last = 0.0;
    // Rounding noise in the zero singular values contributes at most ~σ_noise/tau each.
    for (double tau : {10.0, 1.0, 1e-2, 1e-4, 1e-8}) {
      const double s = soft_rank(m, tau);
      EXPECT_LE(s, double(rank) + 1e-4);
      EXPECT_GE(s, last);
      last = s;
    }
    EXPECT_NEAR(last, double(rank), 1e-5);
  }
}

TEST(GapObjective, BoundaryStatesNearZero) {
  SearchConfig c = SearchConfig::with_defaults(4);
  c.soft_tau = 1e-10;
  EXPECT_NEAR(gap_objective(sharp_separable_state(4), c), 0.0, 1e-5);
  EXPECT_NEAR(gap_objective(invariant_gap_state(4), c), 0.0, 1e-5);
  // The residual shrinks with tau.
  c.soft_tau = 1e-6;
  EXPECT_GT(std::abs(gap_objective(sharp_separable_state(4), c)), 1e-5);
}

TEST(GapObjective, PureProductIsNegative) {
  const BipartiteMatrix rho = projector(BipartiteVector::basis(3, 1, 1));
  SearchConfig c = SearchConfig::with_defaults(3);
  c.soft_tau = 1e-10;
  EXPECT_NEAR(gap_objective(rho, c), -1.0, 1e-6);
}

TEST(GapObjective, ScaleInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BipartiteMatrix rho = random_ppt(3, seed);
    const SearchConfig c = SearchConfig::with_defaults(3);
    const double base = gap_objective(rho, c);
    for (double scale : {1e-3, 7.0, 1e4})
      EXPECT_NEAR(gap_objective(scale * rho, c), base, 1e-9 * std::max(1.0, std::abs(base)));
    const SearchRecord a = evaluate_state(rho, c), b = evaluate_state(1e4 * rho, c);
    EXPECT_EQ(a.rank_sym, b.rank_sym);
    EXPECT_EQ(a.rank_skew, b.rank_skew);
    EXPECT_EQ(a.r, b.r);
    EXPECT_EQ(a.status, b.status);
  }
}

TEST(GapObjective, PenalizesPartialTransposeNegativity) {
  const BipartiteVector u = BipartiteVector::maximally_entangled(3);
  const SearchConfig c = SearchConfig::with_defaults(3);
  // (uu^t)^{t2} = F has eigenvalue −1 before trace normalization (tr uu^t = 3).
  EXPECT_LT(gap_objective(projector(u), c), -c.penalty() / 3.0 + 2.0);
  EXPECT_THROW(gap_objective(BipartiteMatrix(3), c), std::invalid_argument);
}

TEST(EvaluateState, BoundaryStatesAreNotFlagged) {
  for (int k = 3; k <= 5; ++k) {
    const SearchConfig c = SearchConfig::with_defaults(k);
    const SearchRecord rec = evaluate_state(invariant_gap_state(k), c);
    EXPECT_EQ(rec.status, CandidateStatus::kNone);
    EXPECT_FALSE(rec.candidate);
    EXPECT_EQ(rec.rank_sym, k - 1);
    EXPECT_EQ(rec.r, k);
    EXPECT_FALSE(rec.state.has_value());
  }
}

TEST(ViolatesInvariants, OnlyConfirmedRecordsCount) {
  SearchRecord rec;
  rec.r = 3;
  rec.rank_sym = 2;
  EXPECT_FALSE(violates_invariants(rec));
  rec.candidate = true;
  EXPECT_TRUE(violates_invariants(rec));
  rec.r = 5;
  EXPECT_FALSE(violates_invariants(rec));
  rec.rank_sym = 1;
  EXPECT_TRUE(violates_invariants(rec));
}

TEST(SearchConfig, Validation) {
  SearchConfig c = SearchConfig::with_defaults(3);
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(c.penalty(), 9e3);
  c.iterations = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SearchConfig::with_defaults(3);
  c.soft_tau = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SearchConfig::with_defaults(3);
  c.workers = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_EQ(parse_strategy("anneal"), Strategy::kAnneal);
  EXPECT_EQ(strategy_name(Strategy::kRandom), "random");
  EXPECT_FALSE(parse_strategy("greedy").has_value());
}

TEST(Hunt, SmallDimensionsFindNothing) {
  for (int k : {2, 3}) {
    const SearchResult res = hunt(small_config(k, Strategy::kRandom, 300, 5));
    EXPECT_EQ(res.summary.candidates, 0) << "k=" << k;
    EXPECT_EQ(res.summary.invariant_violations, 0);
    EXPECT_EQ(res.summary.evaluated + res.summary.dropped, 300);
    for (const auto& [r, n] : res.summary.r_histogram) EXPECT_LE(r, k);
  }
}

TEST(Hunt, RandomIsDeterministicAndWorkerIndependent) {
  SearchConfig c = small_config(3, Strategy::kRandom, 120, 11);
  const SearchResult a = hunt(c), b = hunt(c);
  expect_same(a, b);
  c.workers = 3;
  expect_same(a, hunt(c));
}

TEST(Hunt, AnnealIsDeterministicAndWorkerIndependent) {
  SearchConfig c = small_config(3, Strategy::kAnneal, 60, 7);
  c.chains = 3;
  const SearchResult a = hunt(c);
  EXPECT_EQ(a.summary.iterations, 180);
  expect_same(a, hunt(c));
  c.workers = 2;
  expect_same(a, hunt(c));
  EXPECT_EQ(a.summary.candidates, 0);
}

TEST(Hunt, DifferentSeedsDiffer) {
  const SearchResult a = hunt(small_config(3, Strategy::kRandom, 20, 1));
  const SearchResult b = hunt(small_config(3, Strategy::kRandom, 20, 2));
  EXPECT_NE(a.summary.best_objective, b.summary.best_objective);
}

TEST(SearchSummary, MergeIsAssociative) {
  SearchSummary a, b, c;
  a.evaluated = 1;
  a.r_histogram[2] = 1;
  a.gap_histogram[-2] = 1;
  a.best_objective = -3.0;
  b.evaluated = 2;
  b.r_histogram[2] = 2;
  b.r_histogram[3] = 1;
  b.best_objective = -1.0;
  c.evaluated = 4;
  c.near_misses = 1;
  c.gap_histogram[-2] = 4;
  c.best_objective = -2.0;
  SearchSummary left = a;
  left.merge(b);
  left.merge(c);
  SearchSummary bc = b;
  bc.merge(c);
  SearchSummary right = a;
  right.merge(bc);
  EXPECT_EQ(left.evaluated, 7);
  EXPECT_EQ(left.evaluated, right.evaluated);
  EXPECT_EQ(left.r_histogram, right.r_histogram);
  EXPECT_EQ(left.gap_histogram, right.gap_histogram);
  EXPECT_EQ(left.gap_histogram.at(-2), 5);
  EXPECT_EQ(left.best_objective, -1.0);
  EXPECT_EQ(right.best_objective, -1.0);
  EXPECT_EQ(left.near_misses, 1);
}
