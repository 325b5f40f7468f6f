#pragma once

#include <cstdint>

namespace esdg {

/// Exact operation counts for one kernel class. Logarithms and divisions are
/// incremented at the call sites that actually perform them, so the counters
/// double as an enforcement mechanism: e.g. the efficient logarithmic mean
/// never evaluates a log itself, which shows up as log_evals == 2 per node
/// per RHS for the precomputing kernel variants.
struct KernelCounters {
  std::uint64_t flux_evals = 0; // off-diagonal two-point flux evaluations
  std::uint64_t log_evals = 0;
  std::uint64_t div_evals = 0;

  KernelCounters& operator+=(const KernelCounters& o) {
    flux_evals += o.flux_evals;
    log_evals += o.log_evals;
    div_evals += o.div_evals;
    return *this;
  }
  void reset() { *this = KernelCounters{}; }
};

struct Counters {
  KernelCounters volume;
  KernelCounters surface;
  std::uint64_t rhs_calls = 0;

  Counters& operator+=(const Counters& o) {
    volume += o.volume;
    surface += o.surface;
    rhs_calls += o.rhs_calls;
    return *this;
  }
  void reset() { *this = Counters{}; }
};

} // namespace esdg
