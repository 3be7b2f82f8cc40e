#pragma once

// Seeded property sweeps over random states and channels. Sample i draws everything from
// derive_seed(seed, i), so results do not depend on evaluation order or thread count.

#include "entdist/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace entdist {

struct SweepConfig {
  std::string experiment;
  int samples = 100;
  std::uint64_t seed = 12345;
  OptimizerConfig opt;
  int threads = 1;
};

struct SweepOutput {
  /// One record per sample, in sample order.
  std::vector<Json> records;
  /// Pass count, worst margin and the failing samples.
  Json summary;
  /// Plot-ready columns, one row per sample.
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// discord-bound, pauli-optimality, eb-nogo, rank2-separable, ziman-search, koashi-winter.
const std::vector<std::string>& experiment_names();

SweepOutput run_sweep(const SweepConfig& cfg);

/// Tab-separated table with a header line.
std::string to_tsv(const SweepOutput& out);

}  // namespace entdist
