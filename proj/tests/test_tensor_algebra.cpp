#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "pptgap/tensor_algebra.hpp"

using namespace pptgap;

namespace {

BipartiteMatrix random_bipartite(Rng& rng, int k) {
  return BipartiteMatrix(k, oracle::random_matrix(rng, k * k, k * k));
}

LocalMatrix random_local(Rng& rng, int k) { return LocalMatrix(k, oracle::random_matrix(rng, k, k)); }

BipartiteMatrix random_psd_state(Rng& rng, int k, int rank) {
  const DenseMatrix g = oracle::random_matrix(rng, k * k, rank);
  return BipartiteMatrix(k, g * g.adjoint());
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  const BipartiteMatrix id = kron(LocalMatrix::identity(2), LocalMatrix::identity(2));
  EXPECT_EQ(id.dense(), DenseMatrix::Identity(4, 4));
}

TEST(Kron, ElementaryPlacement) {
  const BipartiteMatrix m = kron(LocalMatrix(2, oracle::elementary(2, 0, 0)),
                                 LocalMatrix(2, oracle::elementary(2, 1, 1)));
  DenseMatrix expected = DenseMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_EQ(m.dense(), expected);
}

TEST(Kron, MatchesBlockOracle) {
  Rng rng(11);
  for (int k = 1; k <= 4; ++k) {
    const LocalMatrix a = random_local(rng, k), b = random_local(rng, k);
    EXPECT_LE(oracle::max_diff(kron(a, b).dense(), oracle::kron(a.dense(), b.dense())), 0.0);
  }
}

TEST(Kron, OuterProductOfTensors) {
  Rng rng(12);
  const DenseVector v = oracle::random_vector(rng, 3), w = oracle::random_vector(rng, 3);
  const DenseVector r = oracle::random_vector(rng, 3), s = oracle::random_vector(rng, 3);
  const BipartiteMatrix lhs =
      outer_transpose(BipartiteVector::tensor(v, w), BipartiteVector::tensor(r, s));
  const BipartiteMatrix rhs = kron(LocalMatrix(3, v * r.transpose()), LocalMatrix(3, w * s.transpose()));
  EXPECT_LE(max_abs(lhs.dense() - rhs.dense()), 1e-14);
}

TEST(Kron, MixedProduct) {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const LocalMatrix a = random_local(rng, 3), b = random_local(rng, 3);
    const LocalMatrix c = random_local(rng, 3), d = random_local(rng, 3);
    const BipartiteMatrix lhs = kron(a, b) * kron(c, d);
    const BipartiteMatrix rhs = kron(LocalMatrix(3, a.dense() * c.dense()), LocalMatrix(3, b.dense() * d.dense()));
    EXPECT_LE(max_abs(lhs.dense() - rhs.dense()), 1e-12);
  }
}

TEST(Kron, DimensionMismatchThrows) {
  EXPECT_THROW(kron(LocalMatrix::identity(2), LocalMatrix::identity(3)), DimensionError);
}

TEST(Flip, SwapsBasisTensors) {
  const BipartiteMatrix f = flip_operator(2);
  const DenseVector out = f.dense() * BipartiteVector::basis(2, 0, 1).dense();
  EXPECT_EQ(out, BipartiteVector::basis(2, 1, 0).dense());
}

TEST(Flip, SwapsRandomProducts) {
  Rng rng(21);
  for (int k = 1; k <= 4; ++k) {
    const DenseVector a = oracle::random_vector(rng, k), b = oracle::random_vector(rng, k);
    const DenseVector fab = flip_operator(k).dense() * BipartiteVector::tensor(a, b).dense();
    EXPECT_LE((fab - BipartiteVector::tensor(b, a).dense()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(BipartiteVector::tensor(a, b).flipped().dense(), BipartiteVector::tensor(b, a).dense());
  }
}

TEST(Flip, MatchesDefinitionAndSquaresToIdentity) {
  for (int k = 1; k <= 5; ++k) {
    const BipartiteMatrix f = flip_operator(k);
    EXPECT_EQ(f.dense(), oracle::flip(k));
    EXPECT_EQ((f * f).dense(), DenseMatrix::Identity(k * k, k * k)) << "k=" << k;
  }
}

TEST(Flip, EigenvalueMultiplicities) {
  // Frozen: (+1, −1) multiplicities from a dense eigensolve.
  const std::vector<std::tuple<int, int, int>> frozen{{3, 6, 3}, {4, 10, 6}};
  for (const auto& [k, plus, minus] : frozen) {
    const DenseMatrix f = flip_operator(k).dense();
    EXPECT_EQ(f, f.transpose());
    EXPECT_EQ(f.imag(), Eigen::MatrixXd::Zero(k * k, k * k));
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(f);
    int p = 0, m = 0;
    for (double ev : es.eigenvalues()) {
      if (std::abs(ev - 1.0) < 1e-12) ++p;
      if (std::abs(ev + 1.0) < 1e-12) ++m;
    }
    EXPECT_EQ(p, plus);
    EXPECT_EQ(m, minus);
    EXPECT_EQ(p, k * (k + 1) / 2);
  }
}

TEST(Flip, ConjugationMatchesProduct) {
  Rng rng(22);
  for (int k = 2; k <= 4; ++k) {
    const BipartiteMatrix rho = random_bipartite(rng, k);
    const BipartiteMatrix f = flip_operator(k);
    EXPECT_LE(max_abs(flip_conjugate(rho).dense() - (f * rho * f).dense()), 1e-14);
  }
}

TEST(PartialTranspose, MatchesDefinitionOracle) {
  Rng rng(31);
  for (int k = 1; k <= 4; ++k) {
    const BipartiteMatrix c = random_bipartite(rng, k);
    EXPECT_EQ(partial_transpose(c).dense(), oracle::partial_transpose(c.dense(), k));
  }
}

TEST(PartialTranspose, ProductTerms) {
  Rng rng(32);
  const LocalMatrix a = random_local(rng, 3), b = random_local(rng, 3);
  const BipartiteMatrix lhs = partial_transpose(kron(a, b));
  const BipartiteMatrix rhs = kron(a, LocalMatrix(3, b.dense().transpose()));
  EXPECT_EQ(lhs.dense(), rhs.dense());
}

TEST(PartialTranspose, FlipAndMaximallyEntangled) {
  for (int k = 2; k <= 5; ++k) {
    const BipartiteVector u = BipartiteVector::maximally_entangled(k);
    const BipartiteMatrix uut = outer_transpose(u, u);
    EXPECT_EQ(partial_transpose(flip_operator(k)).dense(), uut.dense());
    EXPECT_EQ(partial_transpose(uut).dense(), flip_operator(k).dense());
  }
}

TEST(PartialTranspose, Involution) {
  Rng rng(33);
  for (int k = 2; k <= 4; ++k) {
    const BipartiteMatrix c = random_bipartite(rng, k);
    EXPECT_EQ(partial_transpose(partial_transpose(c)).dense(), c.dense());
  }
}

TEST(Realign, MatchesDefinitionOracle) {
  Rng rng(41);
  for (int k = 1; k <= 4; ++k) {
    const BipartiteMatrix c = random_bipartite(rng, k);
    EXPECT_EQ(realign(c).dense(), oracle::realign(c.dense(), k)) << "k=" << k;
  }
}

TEST(Realign, IdentityAndMaximallyEntangled) {
  for (int k = 2; k <= 5; ++k) {
    const BipartiteVector u = BipartiteVector::maximally_entangled(k);
    const BipartiteMatrix uut = outer_transpose(u, u);
    EXPECT_EQ(realign(BipartiteMatrix::identity(k)).dense(), uut.dense());
    EXPECT_EQ(realign(uut).dense(), DenseMatrix::Identity(k * k, k * k));
  }
}

TEST(Realign, ElementaryProduct) {
  Rng rng(42);
  const DenseVector a = oracle::random_vector(rng, 3), b = oracle::random_vector(rng, 3);
  const DenseVector c = oracle::random_vector(rng, 3), d = oracle::random_vector(rng, 3);
  const BipartiteMatrix lhs =
      realign(kron(LocalMatrix(3, a * b.transpose()), LocalMatrix(3, c * d.transpose())));
  const BipartiteMatrix rhs = outer_transpose(BipartiteVector::tensor(a, b), BipartiteVector::tensor(c, d));
  EXPECT_LE(max_abs(lhs.dense() - rhs.dense()), 1e-14);
}

TEST(Realign, IsAnInvolution) {
  Rng rng(43);
  const BipartiteMatrix c = random_bipartite(rng, 3);
  EXPECT_EQ(realign(realign(c)).dense(), c.dense());
  EXPECT_EQ(oracle::realign(oracle::realign(c.dense(), 3), 3), c.dense());
}

TEST(Realign, FiveIdentitiesOnRandomInputs) {
  Rng rng(44);
  for (int k = 2; k <= 4; ++k) {
    const BipartiteMatrix f = flip_operator(k);
    for (int trial = 0; trial < 10; ++trial) {
      const BipartiteMatrix c = random_bipartite(rng, k);
      BipartiteMatrix outer(k), split(k);
      for (int t = 0; t < 3; ++t) {
        const BipartiteVector v(k, oracle::random_vector(rng, k * k));
        const BipartiteVector w(k, oracle::random_vector(rng, k * k));
        outer += outer_transpose(v, w);
        split += kron(unvec(v), unvec(w));
      }
      const BipartiteMatrix cf = c * f;
      const BipartiteMatrix ct2 = partial_transpose(c);
      EXPECT_LE(max_abs(realign(outer).dense() - split.dense()), 1e-10);
      EXPECT_LE(max_abs((realign(cf) * f).dense() - ct2.dense()), 1e-10);
      EXPECT_LE(max_abs(realign(cf).dense() - partial_transpose(realign(c)).dense()), 1e-10);
      EXPECT_LE(max_abs(realign(ct2).dense() - (realign(c) * f).dense()), 1e-10);
      EXPECT_LE(max_abs(realign(ct2).dense() - partial_transpose(cf).dense()), 1e-10);
    }
  }
}

TEST(Vec, BasisCase) {
  EXPECT_EQ(vec(LocalMatrix(2, oracle::elementary(2, 0, 1))).dense(),
            BipartiteVector::basis(2, 0, 1).dense());
}

TEST(Vec, OuterProductIsTensor) {
  Rng rng(51);
  const DenseVector a = oracle::random_vector(rng, 4), b = oracle::random_vector(rng, 4);
  EXPECT_LE((vec(LocalMatrix(4, a * b.transpose())).dense() - oracle::kron(a, b)).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(Vec, SkewMatrixGivesSkewTensor) {
  Rng rng(52);
  const DenseMatrix g = oracle::random_matrix(rng, 4, 4);
  const BipartiteVector v = vec(LocalMatrix(4, g - g.transpose()));
  EXPECT_EQ(v.flipped().dense(), (-v.dense()).eval());
}

TEST(Vec, UnvecInverts) {
  Rng rng(53);
  const LocalMatrix a = random_local(rng, 4);
  EXPECT_EQ(unvec(vec(a)).dense(), a.dense());
}

TEST(Marginal, MatchesOracleAndPreservesTrace) {
  Rng rng(61);
  for (int k = 1; k <= 4; ++k) {
    const BipartiteMatrix c = random_bipartite(rng, k);
    EXPECT_LE(oracle::max_diff(marginal(c, Side::kA).dense(), oracle::marginal(c.dense(), k, true)), 1e-14);
    EXPECT_LE(oracle::max_diff(marginal(c, Side::kB).dense(), oracle::marginal(c.dense(), k, false)), 1e-14);
    EXPECT_NEAR(std::abs(marginal(c, Side::kA).trace() - c.trace()), 0.0,
                1e-12 * std::max(1.0, std::abs(c.trace())));
  }
}

TEST(Marginal, ProductCase) {
  Rng rng(62);
  const LocalMatrix a = random_local(rng, 3), b = random_local(rng, 3);
  EXPECT_LE(max_abs(marginal(kron(a, b), Side::kA).dense() - b.trace() * a.dense()), 1e-13);
  EXPECT_LE(max_abs(marginal(kron(a, b), Side::kB).dense() - a.trace() * b.dense()), 1e-13);
}

TEST(Marginal, FlipSwapsSides) {
  Rng rng(63);
  const BipartiteMatrix rho = random_psd_state(rng, 3, 4);
  EXPECT_LE(max_abs(marginal(flip_conjugate(rho), Side::kA).dense() - marginal(rho, Side::kB).dense()), 0.0);
}

TEST(Marginal, MaximallyEntangledGivesIdentity) {
  for (int k = 2; k <= 5; ++k) {
    const BipartiteVector u = BipartiteVector::maximally_entangled(k);
    EXPECT_EQ(marginal(outer_transpose(u, u), Side::kA).dense(), DenseMatrix::Identity(k, k));
  }
}

TEST(Compress, IdentityGivesSymmetricProjector) {
  for (int k = 2; k <= 4; ++k) {
    const BipartiteMatrix expected = 2.0 * (BipartiteMatrix::identity(k) + flip_operator(k));
    EXPECT_EQ(compress(BipartiteMatrix::identity(k), Sign::kPlus).dense(), expected.dense());
  }
}

TEST(Compress, SumIsTwiceSymmetrization) {
  Rng rng(71);
  for (int k = 2; k <= 4; ++k) {
    const BipartiteMatrix rho = random_bipartite(rng, k);
    const BipartiteMatrix sum = compress(rho, Sign::kPlus) + compress(rho, Sign::kMinus);
    const BipartiteMatrix expected = 2.0 * (rho + flip_conjugate(rho));
    EXPECT_LE(max_abs(sum.dense() - expected.dense()), 1e-12);
  }
}

TEST(Compress, SymmetricVectorIsFixed) {
  Rng rng(72);
  const DenseVector s = oracle::random_vector(rng, 3), t = oracle::random_vector(rng, 3);
  const BipartiteVector w(3, BipartiteVector::tensor(s, t).dense() + BipartiteVector::tensor(t, s).dense());
  EXPECT_LE(max_abs(compress(projector(w), Sign::kPlus).dense() - 4.0 * projector(w).dense()), 1e-12);
}

TEST(Compress, BranchesAreOrthogonalAndFlipInvariant) {
  Rng rng(73);
  for (int k = 2; k <= 4; ++k) {
    const BipartiteMatrix rho = random_bipartite(rng, k);
    const BipartiteMatrix p = compress(rho, Sign::kPlus), m = compress(rho, Sign::kMinus);
    EXPECT_LE(max_abs((p * m).dense()), 1e-10);
    EXPECT_LE(max_abs(flip_conjugate(p).dense() - p.dense()), 1e-14);
    EXPECT_LE(max_abs(flip_conjugate(m).dense() - m.dense()), 1e-14);
    const BipartiteMatrix id = BipartiteMatrix::identity(k), f = flip_operator(k);
    EXPECT_LE(max_abs(p.dense() - ((id + f) * rho * (id + f)).dense()), 1e-12);
  }
}

TEST(ConjugateLocal, IdentityIsNoOp) {
  Rng rng(81);
  const BipartiteMatrix rho = random_bipartite(rng, 3);
  EXPECT_LE(max_abs(conjugate_local(rho, DenseMatrix::Identity(3, 3)).dense() - rho.dense()), 1e-14);
}

TEST(ConjugateLocal, SendsSymmetricSumToMaximallyEntangled) {
  Rng rng(82);
  const int k = 4, n = 2;
  const DenseMatrix s = oracle::random_matrix(rng, k, n);  // columns s_1, s_2
  const DenseMatrix t = s.completeOrthogonalDecomposition().pseudoInverse();  // T s_i = e_i
  BipartiteVector w(k);
  for (int i = 0; i < n; ++i) w.dense() += BipartiteVector::tensor(s.col(i), s.col(i)).dense();
  const BipartiteMatrix img = conjugate_local(projector(w), t);
  const BipartiteVector u = BipartiteVector::maximally_entangled(n);
  EXPECT_EQ(img.local_dim(), n);
  EXPECT_LE(max_abs(img.dense() - projector(u).dense()), 1e-10);
}

TEST(ConjugateLocal, PreservesPsd) {
  Rng rng(83);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const BipartiteMatrix rho = random_psd_state(rng, 3, 1 + trial % 9);
    const DenseMatrix t = oracle::random_matrix(rng, 2 + trial % 3, 3);
    const BipartiteMatrix img = conjugate_local(rho, t);
    const DenseMatrix expected = oracle::kron(t, t) * rho.dense() * oracle::kron(t, t).adjoint();
    EXPECT_LE(max_abs(img.dense() - expected), 1e-10 * std::max(1.0, max_abs(expected)));
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> es((img.dense() + img.dense().adjoint()) / 2.0);
    worst = std::min(worst, es.eigenvalues().minCoeff() / std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()));
  }
  EXPECT_GE(worst, -1e-12);
}

TEST(ConjugateLocal, RejectsWrongWidth) {
  EXPECT_THROW(conjugate_local(BipartiteMatrix::identity(3), DenseMatrix::Identity(2, 2)), DimensionError);
}

TEST(Product, KernelMatchesEigen) {
  Rng rng(91);
  for (int k = 1; k <= 5; ++k) {
    const BipartiteMatrix a = random_bipartite(rng, k), b = random_bipartite(rng, k);
    EXPECT_LE(max_abs((a * b).dense() - a.dense() * b.dense()), 1e-12);
    EXPECT_LE(max_abs(matmul_adjoint(a.dense(), b.dense()) - a.dense() * b.dense().adjoint()), 1e-12);
  }
}

TEST(Hermitian, DeviationOfHermitianIsZero) {
  Rng rng(92);
  const BipartiteMatrix rho = random_psd_state(rng, 3, 2);
  const BipartiteMatrix h(3, (rho.dense() + rho.dense().adjoint()) / 2.0);
  EXPECT_EQ(hermitian_deviation(h), 0.0);
  EXPECT_GT(hermitian_deviation(random_bipartite(rng, 3)), 0.1);
}
