#include "pptgap/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pptgap/constructions.hpp"
#include "pptgap/criteria.hpp"
#include "pptgap/exact_subspace.hpp"
#include "pptgap/rng.hpp"

namespace pptgap {

io::Json SuiteReport::to_json() const {
  io::Json j;
  j["suite"] = suite;
  j["checks"] = checks;
  j["failures"] = failures;
  j["passed"] = passed();
  j["details"] = details;
  return j;
}

namespace {

constexpr std::array<std::string_view, 12> kSuites{
    "realign-identities", "sharp-family",       "sharp-state",  "invariant-gap",
    "example-witness",    "separable-guard",    "spc-chain",    "rank1-family",
    "low-marginal-guard", "positive-map",       "audit-random", "audit-file"};

int pick(int value, int fallback) { return value > 0 ? value : fallback; }

void expect(SuiteReport& rep, bool ok) {
  ++rep.checks;
  if (!ok) ++rep.failures;
}

// Runs f(i) for i in [0, n) on `workers` threads (strided); results land by index.
template <class T>
std::vector<T> parallel_map(std::int64_t n, int workers, const std::function<T(std::int64_t)>& f) {
  std::vector<T> out(static_cast<std::size_t>(n));
  const int w = static_cast<int>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(n, 1)));
  if (w == 1) {
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (int slot = 0; slot < w; ++slot)
    pool.emplace_back([&, slot] {
      for (std::int64_t i = slot; i < n; i += w) out[static_cast<std::size_t>(i)] = f(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

DenseMatrix random_dense(Rng& rng, int rows, int cols) {
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

double diff(const BipartiteMatrix& a, const BipartiteMatrix& b) {
  return max_abs(a.dense() - b.dense());
}

// ---------------------------------------------------------------------------

SuiteReport realign_identities(const SuiteOptions& o) {
  SuiteReport rep{"realign-identities"};
  constexpr double kTol = 1e-10;
  std::vector<std::pair<int, int>> plan;
  if (o.k > 0)
    plan.emplace_back(o.k, pick(o.samples, 100));
  else
    plan = {{3, pick(o.samples, 100)}, {4, pick(o.samples, 50)}};

  io::Json per_k = io::Json::array();
  for (const auto& [k, count] : plan) {
    const BipartiteMatrix f = flip_operator(k);
    std::array<double, 5> worst{};
    for (int s = 0; s < count; ++s) {
      Rng rng(stream_seed(o.seed, static_cast<std::uint64_t>(k)), static_cast<std::uint64_t>(s));
      const BipartiteMatrix c(k, random_dense(rng, k * k, k * k));

      BipartiteMatrix outer(k);
      BipartiteMatrix split(k);
      for (int t = 0; t < 3; ++t) {
        const BipartiteVector v(k, random_dense(rng, k * k, 1));
        const BipartiteVector w(k, random_dense(rng, k * k, 1));
        outer += outer_transpose(v, w);
        split += kron(unvec(v), unvec(w));
      }
      const BipartiteMatrix cf = c * f;
      const BipartiteMatrix ct2 = partial_transpose(c);
      const std::array<double, 5> err{
          diff(realign(outer), split),
          diff(realign(cf) * f, ct2),
          diff(realign(cf), partial_transpose(realign(c))),
          diff(realign(ct2), realign(c) * f),
          diff(realign(ct2), partial_transpose(cf)),
      };
      for (std::size_t i = 0; i < err.size(); ++i) {
        worst[i] = std::max(worst[i], err[i]);
        expect(rep, err[i] <= kTol);
      }
    }
    per_k.push_back({{"k", k}, {"samples", count}, {"max_error", worst}});
  }

  io::Json exact = io::Json::array();
  for (int k = 2; k <= 5; ++k) {
    const BipartiteVector u = BipartiteVector::maximally_entangled(k);
    const BipartiteMatrix uut = outer_transpose(u, u);
    const bool id_ok = diff(realign(BipartiteMatrix::identity(k)), uut) == 0.0;
    const bool uu_ok = diff(realign(uut), BipartiteMatrix::identity(k)) == 0.0;
    expect(rep, id_ok);
    expect(rep, uu_ok);
    exact.push_back({{"k", k}, {"R(Id)=uu^t", id_ok}, {"R(uu^t)=Id", uu_ok}});
  }
  rep.details = {{"seed", o.seed}, {"tolerance", kTol}, {"random", per_k}, {"exact", exact}};
  return rep;
}

SuiteReport sharp_family(const SuiteOptions& o) {
  SuiteReport rep{"sharp-family"};
  io::Json rows = io::Json::array();
  for (int k = 2; k <= pick(o.kmax, 8); ++k) {
    const exact::GeneratingSet g = exact::build_sharp_family(k);
    const exact::AuditReport a = exact::inequality_audit(g);
    expect(rep, a.dims.dim_sym == k - 1);
    expect(rep, a.dims.dim_skew == k * (k - 1) / 2);
    expect(rep, a.n == k);
    expect(rep, a.equality_b && a.case_b_consistent);
    expect(rep, a.ok());
    rows.push_back({{"k", k},
                    {"dim_v", a.dims.dim_v},
                    {"dim_sym", a.dims.dim_sym},
                    {"dim_skew", a.dims.dim_skew},
                    {"n", a.n},
                    {"equality_a", a.equality_a},
                    {"equality_b", a.equality_b},
                    {"case_b_consistent", a.case_b_consistent}});
  }
  rep.details = {{"families", rows}};
  return rep;
}

SuiteReport sharp_state(const SuiteOptions& o) {
  SuiteReport rep{"sharp-state"};
  io::Json rows = io::Json::array();
  for (int k = 2; k <= pick(o.kmax, 6); ++k) {
    const CriteriaReport a = analyze(sharp_separable_state(k), Tolerance::defaults(k));
    expect(rep, a.rank_sym == k - 1);
    expect(rep, a.rank_skew == k * (k - 1) / 2);
    expect(rep, a.r == k);
    expect(rep, 2 * a.rank_skew == a.r * a.rank_sym);
    expect(rep, a.is_ppt && a.inequality_holds && a.consistency_failures().empty());
    rows.push_back({{"k", k}, {"report", io::to_json(a)}});
  }
  rep.details = {{"states", rows}};
  return rep;
}

SuiteReport invariant_gap(const SuiteOptions& o) {
  SuiteReport rep{"invariant-gap"};
  io::Json rows = io::Json::array();
  for (int k = 3; k <= pick(o.kmax, 6); ++k) {
    const BipartiteMatrix rho = invariant_gap_state(k);
    const double pt_err = diff(partial_transpose(rho), rho);
    const CriteriaReport a = analyze(rho, Tolerance::defaults(k));
    expect(rep, pt_err == 0.0);
    expect(rep, a.is_ppt);
    expect(rep, a.rank_sym == k - 1);
    expect(rep, a.rank_skew == k * (k - 1) / 2);
    expect(rep, a.consistency_failures().empty());
    rows.push_back({{"k", k}, {"pt_error", pt_err}, {"report", io::to_json(a)}});
  }
  rep.details = {{"states", rows}};
  return rep;
}

SuiteReport example_witness(const SuiteOptions& o) {
  SuiteReport rep{"example-witness"};
  const int count = pick(o.samples, 20);
  std::vector<int> ks = o.k > 0 ? std::vector<int>{o.k} : std::vector<int>{3, 4, 5};
  io::Json rows = io::Json::array();
  for (int k : ks) {
    if (k < 3) throw std::invalid_argument("example-witness: k must be at least 3");
    const Tolerance tol = Tolerance::defaults(k);
    std::map<int, int> exits;
    for (int s = 0; s < count; ++s) {
      const std::uint64_t stream = stream_seed(stream_seed(o.seed, static_cast<std::uint64_t>(k)),
                                               static_cast<std::uint64_t>(s));
      Rng rng(stream);
      const int b_rank = static_cast<int>(rng.uniform_int(0, k - 2));
      const BipartiteMatrix b = random_psd(k, b_rank, stream);
      expect(rep, numeric_rank(compress(b, Sign::kPlus), tol) < k - 1);
      const int code = io::verdict_exit_code(analyze(skew_inflated_state(b, k), tol));
      ++exits[code];
      expect(rep, code == 2);
    }
    io::Json ex = io::Json::object();
    for (const auto& [code, n] : exits) ex[std::to_string(code)] = n;
    rows.push_back({{"k", k}, {"samples", count}, {"exit_codes", ex}});
  }
  rep.details = {{"seed", o.seed}, {"states", rows}};
  return rep;
}

SuiteReport separable_guard(const SuiteOptions& o) {
  SuiteReport rep{"separable-guard"};
  std::vector<std::pair<int, int>> plan;
  if (o.k > 0)
    plan.emplace_back(o.k, pick(o.samples, 200));
  else
    plan = {{3, pick(o.samples, 200)}, {4, pick(o.samples, 100)}};
  io::Json rows = io::Json::array();
  for (const auto& [k, count] : plan) {
    const Tolerance tol = Tolerance::defaults(k);
    const std::uint64_t base = stream_seed(o.seed, static_cast<std::uint64_t>(k));
    struct Outcome {
      bool ppt = false, holds = false, consistent = false;
      int r = 0;
    };
    const auto outcomes = parallel_map<Outcome>(count, o.workers, [&](std::int64_t s) {
      const std::uint64_t stream = stream_seed(base, static_cast<std::uint64_t>(s));
      Rng rng(stream);
      const int terms = static_cast<int>(rng.uniform_int(1, k * k + 1));
      const CriteriaReport a = analyze(random_separable(k, terms, stream), tol);
      return Outcome{a.is_ppt, a.inequality_holds, a.consistency_failures().empty(), a.r};
    });
    int violations = 0;
    std::map<int, int> hist;
    for (const auto& x : outcomes) {
      expect(rep, x.ppt);
      expect(rep, x.holds);
      expect(rep, x.consistent);
      violations += x.holds ? 0 : 1;
      ++hist[x.r];
    }
    io::Json h = io::Json::object();
    for (const auto& [r, n] : hist) h[std::to_string(r)] = n;
    rows.push_back({{"k", k}, {"samples", count}, {"violations", violations}, {"r_histogram", h}});
  }
  rep.details = {{"seed", o.seed}, {"corpora", rows}};
  return rep;
}

SuiteReport spc_chain(const SuiteOptions& o) {
  SuiteReport rep{"spc-chain"};
  const int k = pick(o.k, 3);
  const int wanted = pick(o.samples, 100);
  constexpr int kTerms = 3;
  const Tolerance tol = Tolerance::defaults(k);
  std::int64_t draws = 0;
  int states = 0;
  int ppt = 0;
  int chain_fail = 0;
  for (; ppt < wanted && states < wanted * 1000; ++states) {
    const SpcSample s = random_spc(k, kTerms, stream_seed(o.seed, static_cast<std::uint64_t>(states)),
                                   100000);
    draws += s.attempts;
    const CriteriaReport a = analyze(s.state, tol);
    if (!a.is_ppt) continue;
    ++ppt;
    const bool ok = a.spc_chain && a.spc_chain->holds() && a.consistency_failures().empty();
    chain_fail += ok ? 0 : 1;
    expect(rep, ok);
  }
  expect(rep, ppt == wanted);
  rep.details = {{"seed", o.seed},
                 {"k", k},
                 {"terms", kTerms},
                 {"spc_states", states},
                 {"draws", draws},
                 {"spc_acceptance_rate", draws > 0 ? static_cast<double>(states) / draws : 0.0},
                 {"ppt_states", ppt},
                 {"ppt_fraction", states > 0 ? static_cast<double>(ppt) / states : 0.0},
                 {"chain_failures", chain_fail}};
  return rep;
}

SuiteReport rank1_family(const SuiteOptions& o) {
  SuiteReport rep{"rank1-family"};
  const int k = pick(o.k, 4);
  if (k < 3) throw std::invalid_argument("rank1-family: k must be at least 3");
  const int count = pick(o.samples, 100);
  const Tolerance tol = Tolerance::defaults(k);
  int ppt_hits = 0;
  std::map<int, int> by_tensor_rank;
  for (int s = 0; s < count; ++s) {
    const std::uint64_t stream = stream_seed(o.seed, static_cast<std::uint64_t>(s));
    Rng rng(stream);
    const int tr = static_cast<int>(rng.uniform_int(3, k));
    const int skew = static_cast<int>(rng.uniform_int(1, k * (k - 1) / 2));
    const CriteriaReport a = analyze(random_sym_skew_mix(k, tr, skew, stream), tol);
    ++by_tensor_rank[tr];
    expect(rep, a.rank_sym == 1);
    expect(rep, !a.is_ppt);
    ppt_hits += a.is_ppt ? 1 : 0;
  }
  io::Json h = io::Json::object();
  for (const auto& [t, n] : by_tensor_rank) h[std::to_string(t)] = n;
  rep.details = {{"seed", o.seed}, {"k", k}, {"samples", count}, {"ppt_hits", ppt_hits},
                 {"tensor_rank_histogram", h}};
  return rep;
}

SuiteReport low_marginal_guard(const SuiteOptions& o) {
  SuiteReport rep{"low-marginal-guard"};
  const int k = pick(o.k, 3);
  const int wanted = pick(o.samples, 10000);
  const Tolerance tol = Tolerance::defaults(k);
  struct Outcome {
    bool dropped = true;
    bool gap = false, violation = false, consistent = true;
    int r = 0;
  };
  const auto eval = [&](std::int64_t i) {
    Outcome out;
    BipartiteMatrix rho;
    try {
      rho = random_ppt(k, stream_seed(o.seed, static_cast<std::uint64_t>(i)));
    } catch (const ConstructionError&) {
      return out;
    }
    const CriteriaReport a = analyze(rho, tol);
    out.dropped = false;
    out.gap = a.gap_candidate;
    out.violation = a.r <= 3 && !a.inequality_holds;
    out.consistent = a.consistency_failures().empty();
    out.r = a.r;
    return out;
  };

  std::int64_t next = 0;
  int accepted = 0, dropped = 0, gaps = 0, violations = 0, inconsistent = 0;
  std::map<int, int> hist;
  while (accepted < wanted && next < 4LL * wanted) {
    const std::int64_t batch = wanted - accepted;
    const auto outcomes = parallel_map<Outcome>(
        batch, o.workers, [&, offset = next](std::int64_t i) { return eval(offset + i); });
    next += batch;
    for (const auto& x : outcomes) {
      if (x.dropped) {
        ++dropped;
        continue;
      }
      ++accepted;
      ++hist[x.r];
      gaps += x.gap ? 1 : 0;
      violations += x.violation ? 1 : 0;
      inconsistent += x.consistent ? 0 : 1;
      expect(rep, !x.gap && !x.violation && x.consistent);
    }
  }
  expect(rep, accepted == wanted);
  io::Json h = io::Json::object();
  for (const auto& [r, n] : hist) h[std::to_string(r)] = n;
  rep.details = {{"seed", o.seed},         {"k", k},
                 {"states", accepted},     {"dropped", dropped},
                 {"gap_candidates", gaps}, {"inequality_violations_r_le_3", violations},
                 {"consistency_failures", inconsistent}, {"r_histogram", h}};
  return rep;
}

SuiteReport positive_map(const SuiteOptions& o) {
  SuiteReport rep{"positive-map"};
  const int count = pick(o.samples, 50);
  double worst_rel = 0.0;
  double worst_psd = 0.0;
  int max_iterations = 0;
  for (int s = 0; s < count; ++s) {
    Rng rng(o.seed, static_cast<std::uint64_t>(s));
    const int n = o.k > 0 ? o.k : 3 + s % 3;
    const int terms = static_cast<int>(rng.uniform_int(1, 3));
    std::vector<LocalMatrix> kraus;
    for (int t = 0; t < terms; ++t) {
      DenseMatrix g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
      kraus.emplace_back(n, DenseMatrix((g - g.transpose()) / 2.0));
    }
    const SpectralRadiusResult res = positive_map_spectral_radius(kraus, 200000, 1e-14);
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(matrized_map(kraus), Eigen::EigenvaluesOnly);
    const double dense = es.eigenvalues().cwiseAbs().maxCoeff();
    const double rel = std::abs(res.radius - dense) / std::max(dense, 1e-300);
    const DenseMatrix& x = res.fixed_point.dense();
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> fp((x + x.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    const double neg = std::max(0.0, -fp.eigenvalues().minCoeff());
    worst_rel = std::max(worst_rel, rel);
    worst_psd = std::max(worst_psd, neg);
    max_iterations = std::max(max_iterations, res.iterations);
    expect(rep, res.converged);
    expect(rep, rel <= 1e-6);
    expect(rep, neg <= 1e-8);
  }
  rep.details = {{"seed", o.seed},
                 {"maps", count},
                 {"max_relative_error", worst_rel},
                 {"max_negative_eigenvalue", worst_psd},
                 {"max_iterations", max_iterations}};
  return rep;
}

io::Json audit_json(const exact::AuditReport& a) {
  return {{"dim_v", a.dims.dim_v},       {"dim_sym", a.dims.dim_sym},
          {"dim_skew", a.dims.dim_skew}, {"n", a.n},
          {"skew_bound_holds", a.skew_bound_holds}, {"local_bound_holds", a.local_bound_holds},
          {"equality_a", a.equality_a},  {"equality_b", a.equality_b},
          {"case_a_consistent", a.case_a_consistent}, {"case_b_consistent", a.case_b_consistent}};
}

SuiteReport audit_random(const SuiteOptions& o) {
  SuiteReport rep{"audit-random"};
  const int k = pick(o.k, 4);
  const int count = pick(o.samples, 200);
  int eq_a = 0, eq_b = 0;
  std::map<int, int> by_n;
  for (int s = 0; s < count; ++s) {
    const std::uint64_t stream = stream_seed(o.seed, static_cast<std::uint64_t>(s));
    Rng rng(stream);
    const int gens = static_cast<int>(rng.uniform_int(1, 2 * k));
    const exact::AuditReport a = exact::inequality_audit(exact::random_generating_set(k, gens, stream));
    eq_a += a.equality_a ? 1 : 0;
    eq_b += a.equality_b ? 1 : 0;
    ++by_n[a.n];
    expect(rep, a.skew_bound_holds && a.local_bound_holds);
    expect(rep, a.case_a_consistent && a.case_b_consistent);
  }
  io::Json h = io::Json::object();
  for (const auto& [n, c] : by_n) h[std::to_string(n)] = c;
  rep.details = {{"seed", o.seed}, {"k", k}, {"sets", count}, {"equality_a", eq_a},
                 {"equality_b", eq_b}, {"n_histogram", h}};
  return rep;
}

SuiteReport audit_file(const SuiteOptions& o) {
  SuiteReport rep{"audit-file"};
  if (o.file.empty()) throw std::invalid_argument("audit-file: --file is required");
  std::ifstream in(o.file);
  if (!in) throw std::invalid_argument("audit-file: cannot open '" + o.file + "'");
  const exact::GeneratingSet g = exact::parse_generating_set(in);
  const exact::AuditReport a = exact::inequality_audit(g);
  expect(rep, a.skew_bound_holds && a.local_bound_holds);
  expect(rep, a.case_a_consistent && a.case_b_consistent);
  rep.details = {{"file", o.file}, {"k", g.k}, {"generators", g.generators.size()},
                 {"audit", audit_json(a)}};
  return rep;
}

}  // namespace

std::span<const std::string_view> suite_names() { return kSuites; }

SuiteReport run_suite(const SuiteOptions& o) {
  if (o.workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (o.samples < 0 || o.k < 0 || o.kmax < 0) throw std::invalid_argument("negative suite option");
  const std::string_view s = o.suite;
  if (s == "realign-identities") return realign_identities(o);
  if (s == "sharp-family") return sharp_family(o);
  if (s == "sharp-state") return sharp_state(o);
  if (s == "invariant-gap") return invariant_gap(o);
  if (s == "example-witness") return example_witness(o);
  if (s == "separable-guard") return separable_guard(o);
  if (s == "spc-chain") return spc_chain(o);
  if (s == "rank1-family") return rank1_family(o);
  if (s == "low-marginal-guard") return low_marginal_guard(o);
  if (s == "positive-map") return positive_map(o);
  if (s == "audit-random") return audit_random(o);
  if (s == "audit-file") return audit_file(o);
  throw std::invalid_argument("unknown suite '" + o.suite + "'");
}

}  // namespace pptgap
