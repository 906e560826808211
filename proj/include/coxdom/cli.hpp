#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "coxdom/report.hpp"
#include "coxdom/scalar.hpp"

namespace coxdom {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalidDatum = 2,
  kExitLimit = 3,
  kExitLawFailure = 4,
};

struct RunConfig {
  std::string command;
  std::string datum_path;

  double tolerance = 1e-9;
  std::optional<Backend> backend;
  // Significant digits for approximate coefficients; unset prints round-trip form.
  std::optional<int> precision;
  std::size_t max_rank = 10;

  std::size_t max_depth = 8;
  std::size_t levels = 3;
  std::size_t size_cap = 100000;
  std::size_t finite_depth_cap = 30;
  // 0 disables the brute-force oracle.
  std::size_t ball_radius = 0;
  std::size_t ball_cap = 200000;
  std::size_t pair_depth = 6;

  std::string x;
  std::string y;

  OutputFormat format = OutputFormat::json;
  std::optional<std::string> output_path;
  std::optional<std::size_t> threads;
};

struct RunResult {
  int exit_code = kExitOk;
  // Empty when the run failed before producing results.
  nlohmann::json report;
  std::string diagnostic;
};

RunResult run(const RunConfig& config);

// Full command line front end: parses argv, runs, writes the rendered report
// to the output path or stdout and diagnostics to stderr.
int cli_main(int argc, const char* const* argv);

}  // namespace coxdom
