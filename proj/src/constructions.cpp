#include "pptgap/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "pptgap/exact_subspace.hpp"
#include "pptgap/rng.hpp"

namespace pptgap {
namespace {

void require_k(int k, const char* what) {
  if (k < 2) throw std::invalid_argument(std::string(what) + ": k must be at least 2");
}

DenseVector random_vector(Rng& rng, int n) {
  DenseVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

DenseMatrix random_hermitian(Rng& rng, int n) {
  DenseMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return (g + g.adjoint()) / 2.0;
}

BipartiteMatrix trace_normalized(BipartiteMatrix m) {
  const double tr = m.trace().real();
  if (tr > 0.0) m *= 1.0 / tr;
  return m;
}

}  // namespace

BipartiteMatrix sharp_separable_state(int k) {
  require_k(k, "sharp_separable_state");
  const exact::GeneratingSet family = exact::flip_closure(exact::build_sharp_family(k));
  std::vector<exact::ExactVector> flat;
  flat.reserve(family.generators.size());
  for (const auto& t : family.generators) flat.push_back(t.flat());

  BipartiteMatrix rho(k);
  for (std::size_t idx : exact::independent_subset(flat)) {
    const auto& t = family.generators[idx];
    const DenseVector v = exact::to_dense(t.left);
    const DenseVector w = exact::to_dense(t.right);
    rho += kron(LocalMatrix(k, v * v.adjoint()), LocalMatrix(k, w * w.adjoint()));
  }
  return rho;
}

BipartiteMatrix invariant_gap_state(int k) {
  require_k(k, "invariant_gap_state");
  const BipartiteVector u = BipartiteVector::maximally_entangled(k);
  BipartiteMatrix b = -1.0 * outer_transpose(u, u);
  for (int i = 0; i < k; ++i) b.at(i, i, i, i) += static_cast<double>(k);
  return b + BipartiteMatrix::identity(k) - flip_operator(k);
}

BipartiteMatrix skew_inflated_state(const BipartiteMatrix& b, int k) {
  require_k(k, "skew_inflated_state");
  if (b.local_dim() != k) throw DimensionError("skew_inflated_state: B has the wrong order");
  if (!is_psd(b, Tolerance::defaults(k)))
    throw ConstructionError("skew_inflated_state: B is not positive semidefinite");
  return b + BipartiteMatrix::identity(k) - flip_operator(k);
}

BipartiteMatrix sym_skew_mix(const BipartiteVector& w, std::span<const BipartiteVector> skew,
                             std::span<const double> weights) {
  if (skew.size() != weights.size())
    throw std::invalid_argument("sym_skew_mix: one weight per skew vector required");
  const int k = w.local_dim();
  const auto off = [](const DenseVector& a, const DenseVector& b) {
    return (a - b).norm() > 1e-12 * std::max(1.0, a.norm());
  };
  if (off(w.flipped().dense(), w.dense()))
    throw ConstructionError("sym_skew_mix: w is not flip-symmetric");
  BipartiteMatrix out = projector(w);
  for (std::size_t j = 0; j < skew.size(); ++j) {
    if (skew[j].local_dim() != k) throw DimensionError("sym_skew_mix: skew vector dimension");
    if (off(skew[j].flipped().dense(), -skew[j].dense()))
      throw ConstructionError("sym_skew_mix: skew vector " + std::to_string(j) +
                              " is not flip-antisymmetric");
    if (!(weights[j] > 0.0)) throw ConstructionError("sym_skew_mix: weights must be positive");
    out += weights[j] * projector(skew[j]);
  }
  return out;
}

BipartiteMatrix random_sym_skew_mix(int k, int tensor_rank, int skew_terms, std::uint64_t seed) {
  require_k(k, "random_sym_skew_mix");
  if (tensor_rank < 1 || tensor_rank > k)
    throw std::invalid_argument("random_sym_skew_mix: tensor rank must lie in [1, k]");
  Rng rng(seed, 0);
  BipartiteVector w(k);
  for (int i = 0; i < tensor_rank; ++i) {
    const DenseVector s = random_vector(rng, k);
    w.dense() += BipartiteVector::tensor(s, s).dense();
  }
  std::vector<BipartiteVector> skew;
  std::vector<double> weights;
  for (int j = 0; j < skew_terms; ++j) {
    Rng term(seed, static_cast<std::uint64_t>(j) + 1);
    const BipartiteVector x = BipartiteVector(k, random_vector(term, k * k));
    skew.emplace_back(k, (x.dense() - x.flipped().dense()) / 2.0);
    weights.push_back(term.uniform_open01());
  }
  return sym_skew_mix(w, skew, weights);
}

BipartiteMatrix random_psd(int k, int rank, std::uint64_t seed) {
  if (rank < 0) throw std::invalid_argument("random_psd: negative rank");
  if (rank == 0) return BipartiteMatrix(k);
  Rng rng(seed, 0);
  DenseMatrix g(k * k, rank);
  for (int i = 0; i < k * k; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  return trace_normalized(BipartiteMatrix(k, matmul_adjoint(g, g)));
}

BipartiteMatrix random_separable(int k, int terms, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("random_separable: k must be positive");
  if (terms < 1) throw std::invalid_argument("random_separable: terms must be at least 1");
  BipartiteMatrix rho(k);
  for (int t = 0; t < terms; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    const DenseVector v = random_vector(rng, k);
    const DenseVector w = random_vector(rng, k);
    const double p = rng.uniform_open01();
    rho += p * kron(LocalMatrix(k, v * v.adjoint()), LocalMatrix(k, w * w.adjoint()));
  }
  return trace_normalized(rho);
}

SpcSample random_spc(int k, int terms, std::uint64_t seed, int max_rejects) {
  if (k < 1) throw std::invalid_argument("random_spc: k must be positive");
  if (terms < 1) throw std::invalid_argument("random_spc: terms must be at least 1");
  const Tolerance tol = Tolerance::defaults(k);
  for (int attempt = 0; attempt < max_rejects; ++attempt) {
    Rng rng(seed, static_cast<std::uint64_t>(attempt));
    BipartiteMatrix a(k);
    for (int t = 0; t < terms; ++t) {
      // Shifted GUE-like draw; the shift leaves H sign-indefinite in general.
      DenseMatrix h = random_hermitian(rng, k);
      h += rng.normal() * DenseMatrix::Identity(k, k);
      const double lambda = rng.uniform_open01();
      a += lambda * kron(LocalMatrix(k, h), LocalMatrix(k, h));
    }
    if (is_psd(a, tol)) return {trace_normalized(a), attempt + 1};
  }
  throw ConstructionError("random_spc: no PSD draw in " + std::to_string(max_rejects) +
                          " attempts (acceptance rate < " +
                          std::to_string(1.0 / std::max(1, max_rejects)) + ")");
}

DenseMatrix clip_to_psd(const DenseMatrix& m) {
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es((m + m.adjoint()) / 2.0);
  const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  const DenseMatrix& vecs = es.eigenvectors();
  const DenseMatrix scaled = vecs * clipped.cast<Complex>().asDiagonal();
  return matmul_adjoint(scaled, vecs);
}

PptProjection project_to_ppt(const BipartiteMatrix& rho, const Tolerance& tol, int max_sweeps) {
  const int k = rho.local_dim();
  BipartiteMatrix cur = trace_normalized(BipartiteMatrix(k, clip_to_psd(rho.dense())));
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    const BipartiteMatrix pt(k, clip_to_psd(partial_transpose(cur).dense()));
    cur = trace_normalized(BipartiteMatrix(k, clip_to_psd(partial_transpose(pt).dense())));
    if (cur.trace().real() <= 0.0) return {cur, sweep, false};
    if (is_psd(partial_transpose(cur), tol)) return {cur, sweep, true};
  }
  return {cur, max_sweeps, false};
}

BipartiteMatrix random_ppt(int k, std::uint64_t seed, int max_sweeps, int factor_cols) {
  require_k(k, "random_ppt");
  Rng rng(seed, 0);
  const int cols = factor_cols > 0 ? factor_cols : static_cast<int>(rng.uniform_int(1, k * k));
  DenseMatrix g(k * k, cols);
  for (int i = 0; i < k * k; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  const BipartiteMatrix start(k, matmul_adjoint(g, g));
  PptProjection proj = project_to_ppt(start, Tolerance::defaults(k), max_sweeps);
  if (!proj.converged)
    throw ConstructionError("random_ppt: no PPT point after " + std::to_string(max_sweeps) +
                            " sweeps (seed " + std::to_string(seed) + ")");
  return std::move(proj.state);
}

// ---------------------------------------------------------------------------
// Recipes

namespace {

constexpr std::array<std::pair<RecipeName, std::string_view>, 7> kRecipeNames{{
    {RecipeName::kSharpSeparable, "sharp_separable"},
    {RecipeName::kInvariantGap, "invariant_gap"},
    {RecipeName::kSkewInflated, "skew_inflated"},
    {RecipeName::kSymSkewMix, "sym_skew_mix"},
    {RecipeName::kRandomSeparable, "random_separable"},
    {RecipeName::kRandomSpc, "random_spc"},
    {RecipeName::kRandomPpt, "random_ppt"},
}};

}  // namespace

std::string_view recipe_name(RecipeName name) {
  for (const auto& [n, s] : kRecipeNames)
    if (n == name) return s;
  return "unknown";
}

std::optional<RecipeName> parse_recipe_name(std::string_view text) {
  for (const auto& [n, s] : kRecipeNames)
    if (s == text) return n;
  return std::nullopt;
}

BipartiteMatrix build_state(const StateRecipe& r) {
  switch (r.name) {
    case RecipeName::kSharpSeparable: return sharp_separable_state(r.k);
    case RecipeName::kInvariantGap: return invariant_gap_state(r.k);
    case RecipeName::kSkewInflated:
      return skew_inflated_state(random_psd(r.k, r.b_rank, r.seed), r.k);
    case RecipeName::kSymSkewMix:
      return random_sym_skew_mix(r.k, r.tensor_rank, r.skew_terms, r.seed);
    case RecipeName::kRandomSeparable: return random_separable(r.k, r.terms, r.seed);
    case RecipeName::kRandomSpc: return random_spc(r.k, r.terms, r.seed, r.max_rejects).state;
    case RecipeName::kRandomPpt: return random_ppt(r.k, r.seed, r.max_sweeps, r.factor_cols);
  }
  throw std::invalid_argument("unknown recipe");
}

}  // namespace pptgap
