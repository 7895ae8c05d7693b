#include "pptgap/commands.hpp"

#include <fstream>
#include <ostream>

#include "pptgap/constructions.hpp"
#include "pptgap/criteria.hpp"
#include "pptgap/exact_subspace.hpp"
#include "pptgap/search.hpp"
#include "pptgap/suites.hpp"

namespace pptgap {

int cmd_check(const std::string& path, const io::RunConfig& config, bool json_only,
              std::ostream& out, std::ostream& err) {
  io::MatrixFile file;
  try {
    file = io::load_matrix_file(path);
  } catch (const io::LoadError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const int k = file.matrix.local_dim();
  CriteriaReport rep;
  Tolerance tol;
  try {
    tol = io::tolerance_from(config, Tolerance::defaults(k));
    rep = analyze(file.matrix, tol);
  } catch (const io::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NotHermitianError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NotPsdError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const int code = io::verdict_exit_code(rep);
  io::Json j;
  j["type"] = "check";
  j["file"] = path;
  io::Json meta = io::Json::object();
  for (const auto& [key, value] : file.meta) meta[key] = value;
  j["meta"] = meta;
  j["tolerance"] = io::to_json(tol);
  j["report"] = io::to_json(rep);
  j["exit_code"] = code;
  if (!json_only) out << io::render_text(rep) << '\n';
  out << io::dump_line(j) << '\n';
  return code;
}

int cmd_construct(const io::RunConfig& config, std::ostream& out, std::ostream& err) {
  StateRecipe recipe;
  BipartiteMatrix rho;
  try {
    if (!config.has("name")) throw io::ConfigError("--name is required");
    if (!config.has("k")) throw io::ConfigError("--k is required");
    recipe = io::recipe_from(config, recipe);
    rho = build_state(recipe);
  } catch (const io::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  io::Metadata meta;
  const io::Json recipe_json = io::to_json(recipe);
  for (const auto& [key, value] : recipe_json.items())
    meta.emplace_back(key == "name" ? "recipe" : key,
                      value.is_string() ? value.get<std::string>() : value.dump());
  meta.insert(meta.begin(), {"name", std::string(recipe_name(recipe.name))});

  const std::string path = config.get_string("out", "-");
  if (path == "-") {
    io::write_matrix_file(out, rho, meta);
    return 0;
  }
  try {
    io::save_matrix(path, rho, meta);
  } catch (const io::LoadError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out << io::dump_line({{"type", "construct"}, {"out", path}, {"recipe", io::to_json(recipe)}})
      << '\n';
  return 0;
}

int cmd_verify(const io::RunConfig& config, std::ostream& out, std::ostream& err) {
  SuiteOptions o;
  SuiteReport rep;
  try {
    o.suite = config.get_string("suite", "");
    if (o.suite.empty()) throw io::ConfigError("--suite is required");
    o.samples = config.get_int("samples", 0);
    o.k = config.get_int("k", 0);
    o.kmax = config.get_int("kmax", 0);
    o.seed = config.get_u64("seed", 0);
    o.workers = config.get_int("workers", 1);
    o.file = config.get_string("file", "");
    rep = run_suite(o);
  } catch (const io::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const exact::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out << io::dump_line(rep.to_json()) << '\n';
  err << rep.suite << ": " << rep.checks << " checks, " << rep.failures << " failures, "
      << (rep.passed() ? "PASS" : "FAIL") << '\n';
  return rep.passed() ? 0 : 3;
}

int cmd_search(const io::RunConfig& config, std::ostream& out, std::ostream& err) {
  SearchConfig sc;
  std::string records;
  try {
    const int k = config.get_int("k", 3);
    sc = io::search_config_from(config, SearchConfig::with_defaults(k));
    records = config.get_string("records", "all");
    if (records != "all" && records != "flagged" && records != "none")
      throw io::ConfigError("records must be all, flagged, or none");
    sc.validate();
  } catch (const io::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const SearchResult res = hunt(sc);
  out << io::dump_line({{"type", "config"}, {"config", io::to_json(sc)}}) << '\n';
  for (const auto& rec : res.records) {
    const bool flagged = rec.status != CandidateStatus::kNone;
    if (records == "all" || (records == "flagged" && flagged)) out << io::dump_line(io::to_json(rec)) << '\n';
  }
  out << io::dump_line(io::to_json(res.summary)) << '\n';

  const auto& s = res.summary;
  err << "search k=" << sc.k << " strategy=" << strategy_name(sc.strategy) << " seed=" << sc.seed
      << ": evaluated " << s.evaluated << ", dropped " << s.dropped << ", candidates "
      << s.candidates << ", unstable " << s.unstable << ", near misses " << s.near_misses << '\n';
  err << "r histogram:";
  for (const auto& [r, n] : s.r_histogram) err << ' ' << r << ':' << n;
  err << '\n';

  if (s.invariant_violations > 0) {
    err << "INTERNAL ERROR: " << s.invariant_violations
        << " confirmed records with r <= 3 or rank_sym = 1\n";
    return 3;
  }
  if (s.candidates > 0) {
    for (const auto& rec : res.records)
      if (rec.candidate)
        err << "CONFIRMED CANDIDATE chain " << rec.chain << " index " << rec.index
            << " (state dumped in its record):\n"
            << io::dump_line(io::to_json(rec)) << '\n';
    return 4;
  }
  return 0;
}

}  // namespace pptgap
