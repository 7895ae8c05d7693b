#pragma once

// Subcommands of the `pptgap` tool. Each takes a merged run config (file
// values overridden by explicit flags) and returns the process exit code:
//
//   0  ok / consistent
//   1  load, parse, or config error
//   2  rank inequality violated (entangled)
//   3  internal theorem-consistency failure
//   4  confirmed gap candidate found by search

#include <iosfwd>
#include <string>

#include "pptgap/cli_io.hpp"

namespace pptgap {

int cmd_check(const std::string& path, const io::RunConfig& config, bool json_only,
              std::ostream& out, std::ostream& err);
int cmd_construct(const io::RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const io::RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_search(const io::RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pptgap
