// pptgap: check, construct, verify, search.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pptgap/cli_io.hpp"
#include "pptgap/commands.hpp"
#include "pptgap/simd/kernels.hpp"

namespace {

using pptgap::io::RunConfig;

// Flag values kept as text; only flags the user actually passed override the config file.
struct FlagSet {
  std::vector<std::pair<std::string, std::string>> slots;
  std::vector<CLI::Option*> options;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    slots.emplace_back(key, std::string());
    options.push_back(app->add_option(flag, slots.back().second, help));
  }
  void reserve(std::size_t n) { slots.reserve(n); }

  RunConfig merge(const std::string& config_path, std::span<const std::string_view> allowed) const {
    RunConfig c = config_path.empty() ? RunConfig() : RunConfig::load(config_path, allowed);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (options[i]->count() > 0) c.set(slots[i].first, slots[i].second, allowed);
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-gap separability toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("pptgap 1.0 (kernels: ") +
                                        std::string(pptgap::simd::isa_name(
                                            pptgap::simd::active_kernels().isa)) +
                                        ")");

  // check
  auto* check = app.add_subcommand("check", "Analyze a matrix file");
  std::string check_path, check_config;
  bool json_only = false;
  FlagSet check_flags;
  check_flags.reserve(3);
  check->add_option("file", check_path, "Matrix file")->required();
  check->add_option("--config", check_config, "Run-config file");
  check->add_flag("--json", json_only, "Print only the JSON report");
  check_flags.add(check, "--tolerance", "tolerance", "Set eps_psd and eps_rank");
  check_flags.add(check, "--eps-psd", "eps_psd", "Eigenvalue floor (relative)");
  check_flags.add(check, "--eps-rank", "eps_rank", "Singular-value cutoff (relative)");

  // construct
  auto* construct = app.add_subcommand("construct", "Write a constructed state");
  std::string construct_config;
  FlagSet construct_flags;
  construct_flags.reserve(11);
  construct->add_option("--config", construct_config, "Run-config file");
  construct_flags.add(construct, "--name", "name",
                      "sharp_separable | invariant_gap | skew_inflated | sym_skew_mix | "
                      "random_separable | random_spc | random_ppt");
  construct_flags.add(construct, "--k", "k", "Local dimension");
  construct_flags.add(construct, "--seed", "seed", "Seed");
  construct_flags.add(construct, "--terms", "terms", "Terms (random_separable, random_spc)");
  construct_flags.add(construct, "--b-rank", "b_rank", "Rank of B (skew_inflated)");
  construct_flags.add(construct, "--tensor-rank", "tensor_rank", "Tensor rank of w (sym_skew_mix)");
  construct_flags.add(construct, "--skew-terms", "skew_terms", "Skew vectors (sym_skew_mix)");
  construct_flags.add(construct, "--max-rejects", "max_rejects", "Rejection budget (random_spc)");
  construct_flags.add(construct, "--max-sweeps", "max_sweeps", "Projection sweeps (random_ppt)");
  construct_flags.add(construct, "--factor-cols", "factor_cols", "Gram factor width (random_ppt)");
  construct_flags.add(construct, "--out", "out", "Output path ('-' for stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a seeded property suite");
  std::string verify_config;
  FlagSet verify_flags;
  verify_flags.reserve(7);
  verify->add_option("--config", verify_config, "Run-config file");
  verify_flags.add(verify, "--suite", "suite",
                   "realign-identities | sharp-family | sharp-state | invariant-gap | "
                   "example-witness | separable-guard | spc-chain | rank1-family | low-marginal-guard | "
                   "positive-map | audit-random | audit-file");
  verify_flags.add(verify, "--samples", "samples", "Corpus size");
  verify_flags.add(verify, "--k", "k", "Local dimension");
  verify_flags.add(verify, "--kmax", "kmax", "Largest k");
  verify_flags.add(verify, "--seed", "seed", "Seed");
  verify_flags.add(verify, "--workers", "workers", "Worker threads");
  verify_flags.add(verify, "--file", "file", "Generating-set file (audit-file)");

  // search
  auto* search = app.add_subcommand("search", "Hunt for PPT states in the rank gap");
  std::string search_config;
  FlagSet search_flags;
  search_flags.reserve(15);
  search->add_option("--config", search_config, "Run-config file");
  search_flags.add(search, "--k", "k", "Local dimension");
  search_flags.add(search, "--strategy", "strategy", "random | anneal");
  search_flags.add(search, "--iters,--iterations", "iterations", "Samples or steps per chain");
  search_flags.add(search, "--seed", "seed", "Seed");
  search_flags.add(search, "--soft-tau", "soft_tau", "Soft-rank temperature");
  search_flags.add(search, "--initial-step", "initial_step", "Anneal step size");
  search_flags.add(search, "--decay", "decay", "Anneal decay per step");
  search_flags.add(search, "--initial-temperature", "initial_temperature", "Anneal temperature");
  search_flags.add(search, "--chains", "chains", "Anneal chains");
  search_flags.add(search, "--workers", "workers", "Worker threads");
  search_flags.add(search, "--max-sweeps", "max_sweeps", "PPT projection sweeps");
  search_flags.add(search, "--tolerance", "tolerance", "Set eps_psd and eps_rank");
  search_flags.add(search, "--eps-psd", "eps_psd", "Eigenvalue floor (relative)");
  search_flags.add(search, "--eps-rank", "eps_rank", "Singular-value cutoff (relative)");
  search_flags.add(search, "--records", "records", "all | flagged | none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check)
      return pptgap::cmd_check(check_path, check_flags.merge(check_config, pptgap::io::check_config_keys()),
                               json_only, std::cout, std::cerr);
    if (*construct)
      return pptgap::cmd_construct(
          construct_flags.merge(construct_config, pptgap::io::construct_config_keys()), std::cout,
          std::cerr);
    if (*verify)
      return pptgap::cmd_verify(verify_flags.merge(verify_config, pptgap::io::verify_config_keys()),
                                std::cout, std::cerr);
    if (*search)
      return pptgap::cmd_search(search_flags.merge(search_config, pptgap::io::search_config_keys()),
                                std::cout, std::cerr);
  } catch (const pptgap::io::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
