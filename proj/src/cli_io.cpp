#include "pptgap/cli_io.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace pptgap::io {

std::string_view load_error_kind_name(LoadErrorKind kind) {
  switch (kind) {
    case LoadErrorKind::kIo: return "io error";
    case LoadErrorKind::kParse: return "parse error";
    case LoadErrorKind::kLength: return "length mismatch";
    case LoadErrorKind::kNonFinite: return "non-finite entry";
  }
  return "load error";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

constexpr std::string_view kMagic = "pptgap-matrix 1";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Splits "key = value"; returns false if there is no '='.
bool split_assignment(std::string_view line, std::string& key, std::string& value) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return false;
  key = trim(line.substr(0, eq));
  value = trim(line.substr(eq + 1));
  return !key.empty();
}

bool parse_full_double(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

}  // namespace

MatrixFile read_matrix_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kMagic)
    throw LoadError(LoadErrorKind::kParse, "missing '" + std::string(kMagic) + "' header");

  MatrixFile out;
  int k = -1;
  bool in_entries = false;
  while (!in_entries && std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t == "entries") {
      in_entries = true;
      break;
    }
    std::string key, value;
    if (!split_assignment(t, key, value))
      throw LoadError(LoadErrorKind::kParse, "malformed header line '" + t + "'");
    if (key == "k") {
      int v = 0;
      const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || p != value.data() + value.size() || v < 1 || v > 64)
        throw LoadError(LoadErrorKind::kParse, "invalid k '" + value + "'");
      k = v;
    } else if (key.rfind("meta.", 0) == 0 && key.size() > 5) {
      out.meta.emplace_back(key.substr(5), value);
    } else {
      throw LoadError(LoadErrorKind::kParse, "unknown header key '" + key + "'");
    }
  }
  if (k < 0) throw LoadError(LoadErrorKind::kParse, "missing k");
  if (!in_entries) throw LoadError(LoadErrorKind::kLength, "no entries section");

  const std::size_t expected = 2 * static_cast<std::size_t>(k) * k * k * k;
  std::vector<double> values;
  values.reserve(expected);
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    if (!parse_full_double(tok, v))
      throw LoadError(LoadErrorKind::kParse, "bad number '" + tok + "'");
    if (!std::isfinite(v))
      throw LoadError(LoadErrorKind::kNonFinite, "entry " + std::to_string(values.size() / 2) +
                                                     " is '" + tok + "'");
    values.push_back(v);
  }
  if (values.size() != expected)
    throw LoadError(LoadErrorKind::kLength,
                    "expected " + std::to_string(expected / 2) + " entries for k = " +
                        std::to_string(k) + ", found " + std::to_string(values.size() / 2) +
                        (values.size() % 2 ? " and a half" : ""));

  const int n = k * k;
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t at = 2 * (static_cast<std::size_t>(i) * n + j);
      m(i, j) = Complex(values[at], values[at + 1]);
    }
  out.matrix = BipartiteMatrix(k, std::move(m));
  return out;
}

MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(LoadErrorKind::kIo, "cannot open '" + path + "'");
  return read_matrix_file(in);
}

BipartiteMatrix load_matrix(const std::string& path) { return load_matrix_file(path).matrix; }

void write_matrix_file(std::ostream& out, const BipartiteMatrix& m, const Metadata& meta) {
  out << kMagic << '\n' << "k = " << m.local_dim() << '\n';
  for (const auto& [key, value] : meta) {
    if (key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos)
      throw std::invalid_argument("metadata key/value contains '=' or a newline");
    out << "meta." << key << " = " << value << '\n';
  }
  out << "entries\n";
  for (int i = 0; i < m.order(); ++i)
    for (int j = 0; j < m.order(); ++j)
      out << format_double(m(i, j).real()) << ' ' << format_double(m(i, j).imag()) << '\n';
}

void save_matrix(const std::string& path, const BipartiteMatrix& m, const Metadata& meta) {
  std::ofstream out(path);
  if (!out) throw LoadError(LoadErrorKind::kIo, "cannot write '" + path + "'");
  write_matrix_file(out, m, meta);
  if (!out) throw LoadError(LoadErrorKind::kIo, "write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Run config

RunConfig RunConfig::parse(std::istream& in, std::span<const std::string_view> allowed) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string key, value;
    if (!split_assignment(t, key, value))
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!c.values_.emplace(key, value).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path, std::span<const std::string_view> allowed) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse(in, allowed);
}

void RunConfig::set(std::string_view key, std::string value,
                    std::span<const std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
    throw ConfigError("unknown key '" + std::string(key) + "'");
  values_.insert_or_assign(std::string(key), std::move(value));
}

bool RunConfig::has(std::string_view key) const { return values_.find(key) != values_.end(); }

std::string RunConfig::get_string(std::string_view key, std::string fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

namespace {

template <class T>
T parse_integer(std::string_view key, const std::string& v) {
  T out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError("key '" + std::string(key) + "': '" + v + "' is not a valid integer");
  return out;
}

}  // namespace

int RunConfig::get_int(std::string_view key, int fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_integer<int>(key, it->second);
}

std::uint64_t RunConfig::get_u64(std::string_view key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_integer<std::uint64_t>(key, it->second);
}

double RunConfig::get_double(std::string_view key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  double v = 0.0;
  if (!parse_full_double(it->second, v) || !std::isfinite(v))
    throw ConfigError("key '" + std::string(key) + "': '" + it->second + "' is not a finite number");
  return v;
}

namespace {

constexpr std::array<std::string_view, 3> kCheckKeys{"tolerance", "eps_psd", "eps_rank"};
constexpr std::array<std::string_view, 11> kConstructKeys{
    "name",        "k",          "seed",        "terms",      "b_rank",     "tensor_rank",
    "skew_terms",  "max_rejects", "max_sweeps", "factor_cols", "out"};
constexpr std::array<std::string_view, 15> kSearchKeys{
    "k",          "strategy",   "iterations", "seed",         "soft_tau",
    "initial_step", "decay",    "initial_temperature", "chains", "workers",
    "max_sweeps", "tolerance",  "eps_psd",    "eps_rank",     "records"};
constexpr std::array<std::string_view, 7> kVerifyKeys{"suite", "samples", "k", "kmax",
                                                      "seed",  "workers", "file"};

}  // namespace

std::span<const std::string_view> check_config_keys() { return kCheckKeys; }
std::span<const std::string_view> construct_config_keys() { return kConstructKeys; }
std::span<const std::string_view> search_config_keys() { return kSearchKeys; }
std::span<const std::string_view> verify_config_keys() { return kVerifyKeys; }

Tolerance tolerance_from(const RunConfig& c, Tolerance base) {
  if (c.has("tolerance")) base = Tolerance::uniform(c.get_double("tolerance", 0.0));
  base.eps_psd = c.get_double("eps_psd", base.eps_psd);
  base.eps_rank = c.get_double("eps_rank", base.eps_rank);
  if (base.eps_psd < 0.0 || base.eps_rank < 0.0) throw ConfigError("tolerances must be non-negative");
  return base;
}

StateRecipe recipe_from(const RunConfig& c, StateRecipe base) {
  if (c.has("name")) {
    const std::string name = c.get_string("name", "");
    const auto parsed = parse_recipe_name(name);
    if (!parsed) throw ConfigError("unknown recipe name '" + name + "'");
    base.name = *parsed;
  }
  base.k = c.get_int("k", base.k);
  base.seed = c.get_u64("seed", base.seed);
  base.terms = c.get_int("terms", base.terms);
  base.b_rank = c.get_int("b_rank", base.b_rank);
  base.tensor_rank = c.get_int("tensor_rank", base.tensor_rank);
  base.skew_terms = c.get_int("skew_terms", base.skew_terms);
  base.max_rejects = c.get_int("max_rejects", base.max_rejects);
  base.max_sweeps = c.get_int("max_sweeps", base.max_sweeps);
  base.factor_cols = c.get_int("factor_cols", base.factor_cols);
  return base;
}

SearchConfig search_config_from(const RunConfig& c, SearchConfig base) {
  const int k = c.get_int("k", base.k);
  if (k != base.k) {
    base.k = k;
    base.tol = Tolerance::defaults(k);
  }
  if (c.has("strategy")) {
    const std::string s = c.get_string("strategy", "");
    const auto parsed = parse_strategy(s);
    if (!parsed) throw ConfigError("unknown strategy '" + s + "'");
    base.strategy = *parsed;
  }
  base.iterations = c.get_int("iterations", base.iterations);
  base.seed = c.get_u64("seed", base.seed);
  base.soft_tau = c.get_double("soft_tau", base.soft_tau);
  base.initial_step = c.get_double("initial_step", base.initial_step);
  base.decay = c.get_double("decay", base.decay);
  base.initial_temperature = c.get_double("initial_temperature", base.initial_temperature);
  base.chains = c.get_int("chains", base.chains);
  base.workers = c.get_int("workers", base.workers);
  base.max_sweeps = c.get_int("max_sweeps", base.max_sweeps);
  base.tol = tolerance_from(c, base.tol);
  return base;
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const Tolerance& tol) { return Json{{"eps_psd", tol.eps_psd}, {"eps_rank", tol.eps_rank}}; }

Json to_json(const CriteriaReport& rep) {
  Json j;
  j["k"] = rep.k;
  j["is_psd"] = rep.is_psd;
  j["is_ppt"] = rep.is_ppt;
  j["is_spc"] = rep.is_spc;
  j["r"] = rep.r;
  j["rank_sym"] = rep.rank_sym;
  j["rank_skew"] = rep.rank_skew;
  j["rank_inequality_holds"] = rep.inequality_holds;
  j["gap_candidate"] = rep.gap_candidate;
  j["low_marginal_shortcut"] = rep.low_marginal_shortcut;
  if (rep.spc_chain)
    j["spc_chain"] = Json{{"rank_chain_holds", rep.spc_chain->rank_chain_holds},
                          {"compressed_ppt", rep.spc_chain->compressed_ppt}};
  else
    j["spc_chain"] = nullptr;
  if (rep.rank1_consequence)
    j["rank1_consequence"] = Json{{"marginal_rank_le_2", rep.rank1_consequence->marginal_rank_le_2}};
  else
    j["rank1_consequence"] = nullptr;
  j["entangled"] = rep.entangled_witness();
  j["consistency_failures"] = rep.consistency_failures();
  return j;
}

Json to_json(const StateRecipe& r) {
  Json j;
  j["name"] = recipe_name(r.name);
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["terms"] = r.terms;
  j["b_rank"] = r.b_rank;
  j["tensor_rank"] = r.tensor_rank;
  j["skew_terms"] = r.skew_terms;
  j["max_rejects"] = r.max_rejects;
  j["max_sweeps"] = r.max_sweeps;
  j["factor_cols"] = r.factor_cols;
  return j;
}

Json to_json(const SearchConfig& c) {
  Json j;
  j["k"] = c.k;
  j["strategy"] = strategy_name(c.strategy);
  j["iterations"] = c.iterations;
  j["seed"] = c.seed;
  j["soft_tau"] = c.soft_tau;
  j["initial_step"] = c.initial_step;
  j["decay"] = c.decay;
  j["initial_temperature"] = c.initial_temperature;
  j["chains"] = c.chains;
  j["max_sweeps"] = c.max_sweeps;
  j["tolerance"] = to_json(c.tol);
  return j;
}

Json entries_json(const BipartiteMatrix& m) {
  Json arr = Json::array();
  for (int i = 0; i < m.order(); ++i)
    for (int j = 0; j < m.order(); ++j) arr.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return arr;
}

Json to_json(const SearchRecord& rec) {
  Json j;
  j["type"] = "record";
  j["index"] = rec.index;
  j["chain"] = rec.chain;
  j["seed"] = rec.seed;
  j["r"] = rec.r;
  j["rank_sym"] = rec.rank_sym;
  j["rank_skew"] = rec.rank_skew;
  j["soft_gap"] = rec.soft_gap;
  j["ppt_residual"] = rec.ppt_residual;
  j["candidate"] = rec.candidate;
  j["status"] = candidate_status_name(rec.status);
  j["accepted"] = rec.accepted;
  if (rec.state) {
    j["state"] = Json{{"k", rec.state->local_dim()}, {"entries", entries_json(*rec.state)}};
  }
  return j;
}

Json to_json(const SearchSummary& s) {
  Json j;
  j["type"] = "summary";
  j["iterations"] = s.iterations;
  j["evaluated"] = s.evaluated;
  j["dropped"] = s.dropped;
  j["candidates"] = s.candidates;
  j["unstable"] = s.unstable;
  j["near_misses"] = s.near_misses;
  j["invariant_violations"] = s.invariant_violations;
  Json hist = Json::object();
  for (const auto& [r, n] : s.r_histogram) hist[std::to_string(r)] = n;
  j["r_histogram"] = hist;
  Json gaps = Json::array();
  for (const auto& [bin, n] : s.gap_histogram)
    gaps.push_back(Json{{"from", static_cast<double>(bin) / 2.0}, {"count", n}});
  j["soft_gap_histogram"] = gaps;
  if (s.evaluated > 0)
    j["best_objective"] = s.best_objective;
  else
    j["best_objective"] = nullptr;
  return j;
}

std::string render_text(const CriteriaReport& rep) {
  const auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream o;
  o << "local dimension k      " << rep.k << '\n'
    << "PSD                    " << yn(rep.is_psd) << '\n'
    << "PPT                    " << yn(rep.is_ppt) << '\n'
    << "SPC (rho + F rho F)    " << yn(rep.is_spc) << '\n'
    << "marginal rank r        " << rep.r << '\n'
    << "rank_sym               " << rep.rank_sym << '\n'
    << "rank_skew              " << rep.rank_skew << '\n'
    << "rank inequality        " << (rep.inequality_holds ? "holds" : "violated") << '\n'
    << "gap candidate          " << yn(rep.gap_candidate) << '\n'
    << "r <= 3 shortcut        " << yn(rep.low_marginal_shortcut) << '\n';
  o << "SPC chain              ";
  if (!rep.spc_chain)
    o << "n/a\n";
  else
    o << (rep.spc_chain->holds() ? "holds" : "fails") << '\n';
  o << "rank-1 consequence     ";
  if (!rep.rank1_consequence)
    o << "n/a\n";
  else
    o << (rep.rank1_consequence->marginal_rank_le_2 ? "holds" : "fails") << '\n';
  const auto failures = rep.consistency_failures();
  for (const auto& f : failures) o << "CONSISTENCY FAILURE    " << f << '\n';
  o << "verdict                "
    << (!failures.empty() ? "internal consistency failure"
        : rep.entangled_witness() ? "entangled (rank inequality violated)"
                                  : "no entanglement detected")
    << '\n';
  return o.str();
}

int verdict_exit_code(const CriteriaReport& report) {
  if (!report.consistency_failures().empty()) return 3;
  return report.entangled_witness() ? 2 : 0;
}

std::string dump_line(const Json& j) { return j.dump(); }

}  // namespace pptgap::io
