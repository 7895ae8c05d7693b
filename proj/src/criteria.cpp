#include "pptgap/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pptgap {

Tolerance Tolerance::defaults(int k) {
  if (const char* env = std::getenv("PPTGAP_TOLERANCE"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(v) && v >= 0.0) return uniform(v);
  }
  return uniform(1e-9 * static_cast<double>(k) * static_cast<double>(k));
}

int numeric_rank(const DenseMatrix& m, const Tolerance& tol) { return numeric_rank(m, tol, 0.0); }

int numeric_rank(const DenseMatrix& m, const Tolerance& tol, double reference) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<DenseMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double scale = std::max(sv.size() > 0 ? sv(0) : 0.0, reference);
  if (scale == 0.0) return 0;
  return static_cast<int>((sv.array() > tol.eps_rank * scale).count());
}

double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<DenseMatrix>(m).singularValues()(0);
}

BranchRanks branch_ranks(const BipartiteMatrix& rho, const Tolerance& tol) {
  // ‖(Id±F)ρ(Id±F)‖ ≤ 4‖ρ‖, so a branch that vanishes up to rounding stays at rank 0.
  const double ref = 4.0 * spectral_norm(rho.dense());
  BranchRanks out;
  out.r = numeric_rank(marginal(rho + flip_conjugate(rho), Side::kA), tol);
  out.rank_sym = numeric_rank(compress(rho, Sign::kPlus).dense(), tol, ref);
  out.rank_skew = numeric_rank(compress(rho, Sign::kMinus).dense(), tol, ref);
  return out;
}

int numeric_rank(const BipartiteMatrix& m, const Tolerance& tol) {
  return numeric_rank(m.dense(), tol);
}

int numeric_rank(const LocalMatrix& m, const Tolerance& tol) {
  return numeric_rank(m.dense(), tol);
}

DenseMatrix hermitize(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw NotHermitianError("matrix is not square");
  double dev = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  const double bound = kHermitianTolerance * std::max(1.0, max_abs(m));
  if (!(dev <= bound))
    throw NotHermitianError("matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  return (m + m.adjoint()) / 2.0;
}

Eigen::VectorXd hermitian_eigenvalues(const DenseMatrix& m) {
  const DenseMatrix h = hermitize(m);
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_psd(const DenseMatrix& m, const Tolerance& tol) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  if (ev.size() == 0) return true;
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
  return ev.minCoeff() >= -tol.eps_psd * scale;
}

bool is_psd(const BipartiteMatrix& m, const Tolerance& tol) { return is_psd(m.dense(), tol); }
bool is_psd(const LocalMatrix& m, const Tolerance& tol) { return is_psd(m.dense(), tol); }

bool is_ppt(const BipartiteMatrix& rho, const Tolerance& tol) {
  return is_psd(rho, tol) && is_psd(partial_transpose(rho), tol);
}

bool is_spc(const BipartiteMatrix& a, const Tolerance& tol) {
  return is_psd(a, tol) && is_psd(realign(partial_transpose(a)), tol);
}

bool rank_inequality_holds(int rank_sym, int rank_skew, int r) {
  return r * rank_sym >= 2 * rank_skew && 2 * rank_sym >= r;
}

bool in_gap(int rank_sym, int rank_skew, int r) {
  return rank_sym > 1 && r * rank_sym < 2 * rank_skew;
}

std::vector<std::string> CriteriaReport::consistency_failures() const {
  std::vector<std::string> out;
  if (low_marginal_shortcut && !inequality_holds)
    out.emplace_back("PPT state with marginal rank <= 3 violates the rank inequality");
  if (low_marginal_shortcut && gap_candidate)
    out.emplace_back("PPT state with marginal rank <= 3 flagged as gap candidate");
  if (spc_chain && !spc_chain->rank_chain_holds)
    out.emplace_back("PPT and SPC state violates rank_sym >= r >= 2 rank_skew/(r-1)");
  if (spc_chain && !spc_chain->compressed_ppt)
    out.emplace_back("PPT and SPC state whose symmetric compression is not PPT");
  if (rank1_consequence && !rank1_consequence->marginal_rank_le_2)
    out.emplace_back("PPT state with rank_sym = 1 has marginal rank > 2");
  return out;
}

CriteriaReport analyze(const BipartiteMatrix& rho, const Tolerance& tol) {
  CriteriaReport rep;
  rep.k = rho.local_dim();
  const BipartiteMatrix h(rep.k, hermitize(rho.dense()));
  rep.is_psd = is_psd(h, tol);
  if (!rep.is_psd) throw NotPsdError("state is not positive semidefinite");

  const BipartiteMatrix sym_part = h + flip_conjugate(h);
  const BranchRanks ranks = branch_ranks(h, tol);
  rep.r = ranks.r;
  rep.rank_sym = ranks.rank_sym;
  rep.rank_skew = ranks.rank_skew;
  const BipartiteMatrix sym = compress(h, Sign::kPlus);

  rep.inequality_holds = rank_inequality_holds(rep.rank_sym, rep.rank_skew, rep.r);
  rep.is_ppt = is_psd(partial_transpose(h), tol);
  rep.is_spc = is_spc(sym_part, tol);
  rep.gap_candidate = rep.is_ppt && in_gap(rep.rank_sym, rep.rank_skew, rep.r);
  rep.low_marginal_shortcut = rep.is_ppt && rep.r <= 3;

  if (rep.is_ppt && rep.is_spc) {
    SpcChain chain;
    chain.rank_chain_holds =
        rep.rank_sym >= rep.r && rep.r * (rep.r - 1) >= 2 * rep.rank_skew;
    chain.compressed_ppt = is_ppt(sym, tol);
    rep.spc_chain = chain;
  }
  if (rep.is_ppt && rep.rank_sym == 1) rep.rank1_consequence = Rank1Consequence{rep.r <= 2};
  return rep;
}

// ---------------------------------------------------------------------------
// Positive map spectral radius

namespace {

void require_kraus(std::span<const LocalMatrix> kraus) {
  if (kraus.empty()) throw std::invalid_argument("positive map needs at least one Kraus term");
  for (const auto& k : kraus)
    if (k.dim() != kraus.front().dim())
      throw DimensionError("Kraus terms must share one dimension");
}

DenseMatrix apply_map(std::span<const LocalMatrix> kraus, const DenseMatrix& x) {
  DenseMatrix out = DenseMatrix::Zero(x.rows(), x.cols());
  for (const auto& k : kraus) out += matmul(matmul(k.dense(), x), k.dense().transpose());
  return out;
}

}  // namespace

DenseMatrix matrized_map(std::span<const LocalMatrix> kraus) {
  require_kraus(kraus);
  const int n = kraus.front().dim();
  DenseMatrix out = DenseMatrix::Zero(n * n, n * n);
  for (const auto& k : kraus) out += kron_dense(k.dense(), k.dense());
  return out;
}

SpectralRadiusResult positive_map_spectral_radius(std::span<const LocalMatrix> kraus,
                                                  int max_iter, double tol) {
  require_kraus(kraus);
  const int n = kraus.front().dim();
  // c ≥ ρ(L) when every K_j is real skew-symmetric.
  double shift = 0.0;
  for (const auto& k : kraus) shift += k.dense().squaredNorm();
  shift /= 2.0;
  DenseMatrix x = DenseMatrix::Identity(n, n) / static_cast<double>(n);
  double estimate = 0.0;
  int calm_steps = 0;
  SpectralRadiusResult res;
  for (int it = 1; it <= max_iter; ++it) {
    const DenseMatrix y = apply_map(kraus, x);
    const double next = x.conjugate().cwiseProduct(y).sum().real() / x.squaredNorm();
    res.iterations = it;
    if (y.norm() == 0.0) {
      res.radius = 0.0;
      res.converged = true;
      res.fixed_point = LocalMatrix(n, x);
      return res;
    }
    DenseMatrix z = y + shift * x;
    const Complex tr = z.trace();
    const double fro = z.norm();
    x = std::abs(tr) > 1e-12 * fro ? DenseMatrix(z / tr) : DenseMatrix(z / fro);
    calm_steps = std::abs(next - estimate) < tol * std::max(1.0, std::abs(next)) ? calm_steps + 1 : 0;
    estimate = next;
    if (calm_steps >= 5) {
      res.converged = true;
      break;
    }
  }
  res.radius = estimate;
  res.fixed_point = LocalMatrix(n, x);
  return res;
}

}  // namespace pptgap
