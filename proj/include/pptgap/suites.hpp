#pragma once

// Seeded property suites behind `pptgap verify`. Every suite is a pure
// function of its options; the JSON report carries no timing.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "pptgap/cli_io.hpp"

namespace pptgap {

struct SuiteOptions {
  std::string suite;
  int samples = 0;  // 0: suite default
  int k = 0;        // 0: suite default
  int kmax = 0;     // 0: suite default
  std::uint64_t seed = 0;
  int workers = 1;
  std::string file;  // audit-file input
};

struct SuiteReport {
  std::string suite;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  io::Json details = io::Json::object();

  bool passed() const { return failures == 0 && checks > 0; }
  io::Json to_json() const;
};

/// realign-identities, sharp-family, sharp-state, invariant-gap, example-witness,
/// separable-guard, spc-chain, rank1-family, low-marginal-guard, positive-map,
/// audit-random, audit-file.
std::span<const std::string_view> suite_names();

/// Throws std::invalid_argument for an unknown suite or bad options.
SuiteReport run_suite(const SuiteOptions& options);

}  // namespace pptgap
