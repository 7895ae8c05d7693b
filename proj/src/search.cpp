#include "pptgap/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pptgap/constructions.hpp"
#include "pptgap/rng.hpp"

namespace pptgap {

std::string_view strategy_name(Strategy s) {
  return s == Strategy::kAnneal ? "anneal" : "random";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "random") return Strategy::kRandom;
  if (text == "anneal") return Strategy::kAnneal;
  return std::nullopt;
}

std::string_view candidate_status_name(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::kConfirmed: return "confirmed";
    case CandidateStatus::kUnstable: return "unstable";
    case CandidateStatus::kNone: break;
  }
  return "none";
}

SearchConfig SearchConfig::with_defaults(int k) {
  SearchConfig c;
  c.k = k;
  c.tol = Tolerance::defaults(k);
  return c;
}

void SearchConfig::validate() const {
  if (k < 2) throw std::invalid_argument("search: k must be at least 2");
  if (iterations < 1) throw std::invalid_argument("search: iterations must be at least 1");
  if (!(soft_tau > 0.0) || !std::isfinite(soft_tau))
    throw std::invalid_argument("search: soft_tau must be positive");
  if (!(initial_step > 0.0)) throw std::invalid_argument("search: initial_step must be positive");
  if (!(decay > 0.0 && decay <= 1.0)) throw std::invalid_argument("search: decay must lie in (0, 1]");
  if (!(initial_temperature > 0.0))
    throw std::invalid_argument("search: initial_temperature must be positive");
  if (chains < 1) throw std::invalid_argument("search: chains must be at least 1");
  if (workers < 1) throw std::invalid_argument("search: workers must be at least 1");
  if (max_sweeps < 1) throw std::invalid_argument("search: max_sweeps must be at least 1");
  if (!(tol.eps_psd >= 0.0) || !(tol.eps_rank >= 0.0))
    throw std::invalid_argument("search: tolerances must be non-negative");
}

double soft_rank(const DenseMatrix& m, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("soft_rank: tau must be positive");
  if (m.size() == 0) return 0.0;
  const Eigen::JacobiSVD<DenseMatrix> svd(m);
  double s = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double sigma = svd.singularValues()(i);
    s += sigma / (sigma + tau);
  }
  return s;
}

namespace {

BipartiteMatrix normalized(const BipartiteMatrix& rho) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw std::invalid_argument("search: state has non-positive trace");
  BipartiteMatrix out(rho.local_dim(), hermitize(rho.dense()));
  out *= 1.0 / tr;
  return out;
}

double ppt_residual(const BipartiteMatrix& rho) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(partial_transpose(rho).dense());
  return std::max(0.0, -ev.minCoeff());
}

struct Ranks {
  int r = 0;
  int rank_sym = 0;
  int rank_skew = 0;
  bool ppt = false;
};

Ranks ranks_at(const BipartiteMatrix& rho, const Tolerance& tol) {
  Ranks out;
  const BranchRanks b = branch_ranks(rho, tol);
  out.r = b.r;
  out.rank_sym = b.rank_sym;
  out.rank_skew = b.rank_skew;
  out.ppt = is_psd(partial_transpose(rho), tol);
  return out;
}

bool flagged(const Ranks& x) { return x.ppt && x.r > 0 && in_gap(x.rank_sym, x.rank_skew, x.r); }

double objective_normalized(const BipartiteMatrix& rho, const SearchConfig& config) {
  const int r = numeric_rank(marginal(rho + flip_conjugate(rho), Side::kA), config.tol);
  if (r == 0) throw std::invalid_argument("gap_objective: marginal rank is zero");
  const double skew = soft_rank(compress(rho, Sign::kMinus).dense(), config.soft_tau);
  const double sym = soft_rank(compress(rho, Sign::kPlus).dense(), config.soft_tau);
  return 2.0 / r * skew - sym - config.penalty() * ppt_residual(rho);
}

void tally(SearchSummary& s, const SearchRecord& rec) {
  ++s.evaluated;
  ++s.r_histogram[rec.r];
  ++s.gap_histogram[static_cast<std::int64_t>(std::floor(2.0 * std::max(rec.soft_gap, -1e6)))];
  if (rec.status == CandidateStatus::kConfirmed) ++s.candidates;
  if (rec.status == CandidateStatus::kUnstable) ++s.unstable;
  if (rec.soft_gap > -0.5) ++s.near_misses;
  if (violates_invariants(rec)) ++s.invariant_violations;
  s.best_objective = std::max(s.best_objective, rec.soft_gap);
}

SearchSummary empty_summary() { return SearchSummary{}; }

// Splits [0, n) into `workers` contiguous blocks and runs body(block_begin, block_end, slot).
template <class Body>
void fan_out(std::int64_t n, int workers, Body body) {
  const int w = static_cast<int>(std::min<std::int64_t>(std::max(1, workers), std::max<std::int64_t>(n, 1)));
  if (w == 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (int slot = 0; slot < w; ++slot) {
    const std::int64_t b = n * slot / w;
    const std::int64_t e = n * (slot + 1) / w;
    pool.emplace_back([=, &body] { body(b, e, slot); });
  }
  for (auto& t : pool) t.join();
}

struct Partial {
  std::vector<SearchRecord> records;
  SearchSummary summary = empty_summary();
};

SearchResult concat(std::vector<Partial>& parts) {
  SearchResult out;
  out.summary = empty_summary();
  for (auto& p : parts) {
    out.summary.merge(p.summary);
    for (auto& r : p.records) out.records.push_back(std::move(r));
  }
  return out;
}

Partial run_random(const SearchConfig& config, std::int64_t begin, std::int64_t end) {
  Partial out;
  for (std::int64_t i = begin; i < end; ++i) {
    const std::uint64_t s = stream_seed(config.seed, static_cast<std::uint64_t>(i));
    ++out.summary.iterations;
    BipartiteMatrix rho;
    try {
      rho = random_ppt(config.k, s, config.max_sweeps);
    } catch (const ConstructionError&) {
      ++out.summary.dropped;
      continue;
    }
    SearchRecord rec = evaluate_state(rho, config);
    rec.index = i;
    rec.seed = s;
    tally(out.summary, rec);
    out.records.push_back(std::move(rec));
  }
  return out;
}

DenseMatrix gram_factor(const BipartiteMatrix& rho) {
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho.dense());
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.cast<Complex>().asDiagonal();
}

Partial run_chain(const SearchConfig& config, int chain) {
  Partial out;
  const int k = config.k;
  const int n = k * k;
  const std::uint64_t chain_seed = stream_seed(config.seed, static_cast<std::uint64_t>(chain));

  BipartiteMatrix cur;
  bool started = false;
  for (int attempt = 0; attempt < 64 && !started; ++attempt) {
    try {
      cur = random_ppt(k, stream_seed(chain_seed, 1ULL << 40 | static_cast<std::uint64_t>(attempt)),
                       config.max_sweeps);
      started = true;
    } catch (const ConstructionError&) {
      ++out.summary.dropped;
    }
  }
  if (!started) {
    out.summary.iterations += config.iterations;
    return out;
  }
  double cur_obj = gap_objective(cur, config);

  double step = config.initial_step;
  double temp = config.initial_temperature;
  for (int t = 0; t < config.iterations; ++t, step *= config.decay, temp *= config.decay) {
    const std::uint64_t s = stream_seed(chain_seed, static_cast<std::uint64_t>(t));
    Rng rng(s);
    ++out.summary.iterations;

    DenseMatrix g = gram_factor(cur);
    DenseMatrix z(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
    g += (step * std::max(g.norm(), 1e-12) / z.norm()) * z;
    const PptProjection proj =
        project_to_ppt(BipartiteMatrix(k, matmul_adjoint(g, g)), config.tol, config.max_sweeps);
    const double u = rng.uniform01();
    if (!proj.converged) {
      ++out.summary.dropped;
      continue;
    }
    SearchRecord rec = evaluate_state(proj.state, config);
    rec.index = t;
    rec.chain = chain;
    rec.seed = s;
    const double delta = rec.soft_gap - cur_obj;
    rec.accepted = delta >= 0.0 || u < std::exp(delta / temp);
    if (rec.accepted) {
      cur = proj.state;
      cur_obj = rec.soft_gap;
    }
    tally(out.summary, rec);
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

double gap_objective(const BipartiteMatrix& rho, const SearchConfig& config) {
  return objective_normalized(normalized(rho), config);
}

SearchRecord evaluate_state(const BipartiteMatrix& rho, const SearchConfig& config) {
  const BipartiteMatrix x = normalized(rho);
  SearchRecord rec;
  const Ranks base = ranks_at(x, config.tol);
  rec.r = base.r;
  rec.rank_sym = base.rank_sym;
  rec.rank_skew = base.rank_skew;
  rec.ppt_residual = ppt_residual(x);
  rec.soft_gap = objective_normalized(x, config);
  if (flagged(base)) {
    const bool tight = flagged(ranks_at(x, Tolerance::uniform(1e-12)));
    const bool loose = flagged(ranks_at(x, Tolerance::uniform(1e-6)));
    rec.status = tight && loose ? CandidateStatus::kConfirmed : CandidateStatus::kUnstable;
    rec.candidate = rec.status == CandidateStatus::kConfirmed;
    rec.state = x;
  }
  return rec;
}

bool violates_invariants(const SearchRecord& record) {
  return record.candidate && (record.r <= 3 || record.rank_sym == 1);
}

void SearchSummary::merge(const SearchSummary& o) {
  iterations += o.iterations;
  evaluated += o.evaluated;
  dropped += o.dropped;
  candidates += o.candidates;
  unstable += o.unstable;
  near_misses += o.near_misses;
  invariant_violations += o.invariant_violations;
  for (const auto& [r, n] : o.r_histogram) r_histogram[r] += n;
  for (const auto& [b, n] : o.gap_histogram) gap_histogram[b] += n;
  best_objective = std::max(best_objective, o.best_objective);
}

SearchResult hunt(const SearchConfig& config) {
  config.validate();
  if (config.strategy == Strategy::kRandom) {
    const int w = std::max(1, std::min(config.workers, config.iterations));
    std::vector<Partial> parts(static_cast<std::size_t>(w));
    fan_out(config.iterations, w, [&](std::int64_t b, std::int64_t e, int slot) {
      parts[static_cast<std::size_t>(slot)] = run_random(config, b, e);
    });
    return concat(parts);
  }
  std::vector<Partial> parts(static_cast<std::size_t>(config.chains));
  fan_out(config.chains, config.workers, [&](std::int64_t b, std::int64_t e, int) {
    for (std::int64_t c = b; c < e; ++c)
      parts[static_cast<std::size_t>(c)] = run_chain(config, static_cast<int>(c));
  });
  return concat(parts);
}

}  // namespace pptgap
