#pragma once

#include <string>

#include "esdg/config.hpp"

namespace esdg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitIoError = 4;

/// Runs a configured case to completion, writing manifest.txt,
/// conservation.csv, entropy.csv, throughput.csv, roofline.csv and the
/// theta slices under the output directory. Returns a process exit code.
int run_case(const RunConfig& cfg);

/// Benchmark mode: times the volume-kernel optimization ladder on the
/// configured case (correctness-gated) and writes ladder.csv.
int run_ladder(const RunConfig& cfg);

} // namespace esdg
