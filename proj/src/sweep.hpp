#pragma once
// Experiment drivers: seeded trial sweeps over parameter grids, emitting
// deterministic CSV.  Trials run on a thread pool but every trial's seed is
// derived from (base_seed, cell, trial) and rows are serialized in index
// order, so the bytes are identical for any parallelism degree.

#include <cstdint>
#include <string>

#include "configfile.hpp"

namespace nlse {

struct SweepSummary {
  long long cells = 0;
  long long rows = 0;          // trial rows (aggregates excluded)
  long long cells_failed = 0;  // cells missing their pass target
  std::string csv;             // complete output text
};

// Embedding-distortion sweep (additive or relative mode).  Config keys are
// documented in the README; base_seed is the resolved seed (config value or
// environment override), echoed into the output.
SweepSummary run_distortion_sweep(const Config& cfg, std::uint64_t base_seed);

// Generative-model experiments: recovery, S-REC pair checks, or both.
SweepSummary run_csgen(const Config& cfg, std::uint64_t base_seed);

}  // namespace nlse
