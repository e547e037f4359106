#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cliffkit/curve/spec_file.hpp"
#include "cliffkit/util/report.hpp"

namespace cliff::cli {

struct RunConfig {
  std::string spec_path;
  std::optional<uint32_t> prime;
  uint64_t seed = 1;
  int budget_deg = 4;
  size_t trials = 200;
  unsigned parallel = 1;
  unsigned oversample = 3;
  size_t entry_budget = 50'000'000;
  // subcommand parameters
  int twist_degree = 3;
  unsigned k = 1;
  int deg1 = 6, deg2 = 6;
  int pmax = -1, qmax = 3;
};

// Parsed spec plus the curve when the file declares one.
struct Loaded {
  curve::CurveSpec spec;
  std::optional<curve::Curve> curve;
};

Loaded load(const RunConfig& cfg);

Report cmd_info(const RunConfig& cfg, const Loaded& in);
Report cmd_rr(const RunConfig& cfg, const Loaded& in);
Report cmd_cliff(const RunConfig& cfg, const Loaded& in);
Report cmd_shiffer(const RunConfig& cfg, const Loaded& in);
Report cmd_detpres(const RunConfig& cfg, const Loaded& in);
Report cmd_secant(const RunConfig& cfg, const Loaded& in);
Report cmd_koszul(const RunConfig& cfg, const Loaded& in);
Report cmd_suite(const RunConfig& cfg, const Loaded& in);

}  // namespace cliff::cli
