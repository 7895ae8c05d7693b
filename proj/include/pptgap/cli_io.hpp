#pragma once

// File formats and report serialization shared by the CLI and the suites.
//
// Matrix file:
//
//   pptgap-matrix 1
//   k = 3
//   meta.name = invariant_gap
//   entries
//   <re> <im>        (k⁴ lines, row-major, %.17g)
//
// Run config: flat "key = value" lines, '#' comments. Reports are JSON, one
// object per line when streamed.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pptgap/constructions.hpp"
#include "pptgap/criteria.hpp"
#include "pptgap/search.hpp"
#include "pptgap/tensor_algebra.hpp"

namespace pptgap::io {

using Json = nlohmann::ordered_json;

enum class LoadErrorKind { kIo, kParse, kLength, kNonFinite };
std::string_view load_error_kind_name(LoadErrorKind kind);

class LoadError : public std::runtime_error {
 public:
  LoadError(LoadErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(load_error_kind_name(kind)) + ": " + what), kind_(kind) {}
  LoadErrorKind kind() const { return kind_; }

 private:
  LoadErrorKind kind_;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct MatrixFile {
  BipartiteMatrix matrix;
  Metadata meta;
};

MatrixFile read_matrix_file(std::istream& in);
MatrixFile load_matrix_file(const std::string& path);
BipartiteMatrix load_matrix(const std::string& path);

void write_matrix_file(std::ostream& out, const BipartiteMatrix& m, const Metadata& meta = {});
void save_matrix(const std::string& path, const BipartiteMatrix& m, const Metadata& meta = {});

/// %.17g
std::string format_double(double x);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RunConfig {
 public:
  RunConfig() = default;

  /// Throws ConfigError on malformed lines, duplicates, or keys outside `allowed`.
  static RunConfig parse(std::istream& in, std::span<const std::string_view> allowed);
  static RunConfig load(const std::string& path, std::span<const std::string_view> allowed);

  /// Overrides (or adds) a key; throws ConfigError if it is outside `allowed`.
  void set(std::string_view key, std::string value, std::span<const std::string_view> allowed);

  bool has(std::string_view key) const;
  std::string get_string(std::string_view key, std::string fallback) const;
  int get_int(std::string_view key, int fallback) const;
  std::uint64_t get_u64(std::string_view key, std::uint64_t fallback) const;
  double get_double(std::string_view key, double fallback) const;

  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

std::span<const std::string_view> check_config_keys();
std::span<const std::string_view> construct_config_keys();
std::span<const std::string_view> search_config_keys();
std::span<const std::string_view> verify_config_keys();

/// Tolerance from "tolerance", "eps_psd", "eps_rank" on top of `base`.
Tolerance tolerance_from(const RunConfig& c, Tolerance base);
StateRecipe recipe_from(const RunConfig& c, StateRecipe base);
SearchConfig search_config_from(const RunConfig& c, SearchConfig base);

Json to_json(const Tolerance& tol);
Json to_json(const CriteriaReport& report);
Json to_json(const StateRecipe& recipe);
Json to_json(const SearchConfig& config);
Json to_json(const SearchRecord& record);
Json to_json(const SearchSummary& summary);
/// Row-major [[re, im], ...]
Json entries_json(const BipartiteMatrix& m);

/// Human-readable rendering; numbers are printed exactly as in to_json.
std::string render_text(const CriteriaReport& report);

/// Exit code contract for a finished analysis: 3 if a consistency assertion
/// failed, 2 if the rank inequality is violated (entangled), 0 otherwise.
int verdict_exit_code(const CriteriaReport& report);

/// Compact single-line dump.
std::string dump_line(const Json& j);

}  // namespace pptgap::io
