#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "esdg/diagnostics.hpp"
#include "esdg/solver.hpp"

namespace esdg {

template <class Real>
double max_rel_diff(const StateField<Real>& a, const StateField<Real>& b) {
  double scale = 0.0, diff = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    scale = std::max(scale, std::abs(double(a.data[i])));
    diff = std::max(diff, std::abs(double(a.data[i]) - double(b.data[i])));
  }
  return scale > 0.0 ? diff / scale : diff;
}

/// Times the volume kernel of each ladder variant (median of `reps` after
/// two warm-ups) on the solver's current state. Correctness gates the
/// numbers: every variant must agree with the last-stage tendency to
/// `equivalence_tol` or the benchmark refuses to run.
template <class Real>
std::vector<LadderRow> ladder_benchmark(Solver<Real>& solver,
                                        const std::vector<KernelVariant>& variants,
                                        int reps, double equivalence_tol) {
  using Clock = std::chrono::steady_clock;
  const KernelVariant saved = solver.settings().variant;
  StateField<Real> ref(solver.state().n_elements,
                       solver.state().nodes_per_element);
  StateField<Real> out(solver.state().n_elements,
                       solver.state().nodes_per_element);

  solver.settings().variant = KernelVariant::Balanced;
  solver.volume_rhs(solver.state(), ref);

  std::vector<LadderRow> rows;
  for (KernelVariant v : variants) {
    solver.settings().variant = v;
    const Counters before = solver.perf().counters;
    solver.volume_rhs(solver.state(), out);
    const Counters after = solver.perf().counters;

    const double rel = max_rel_diff(out, ref);
    if (!(rel <= equivalence_tol)) {
      solver.settings().variant = saved;
      throw std::runtime_error(
          std::string("ladder refused: variant '") + variant_name(v) +
          "' disagrees with the reference tendency (rel diff " +
          std::to_string(rel) + ")");
    }

    LadderRow row;
    row.variant = variant_name(v);
    row.flux_evals = after.volume.flux_evals - before.volume.flux_evals;
    row.log_evals = after.volume.log_evals - before.volume.log_evals;
    row.div_evals = after.volume.div_evals - before.volume.div_evals;

    for (int i = 0; i < 2; ++i) solver.volume_rhs(solver.state(), out);
    std::vector<double> times;
    for (int i = 0; i < reps; ++i) {
      auto t0 = Clock::now();
      solver.volume_rhs(solver.state(), out);
      times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    row.time_s = times[times.size() / 2];
    rows.push_back(row);
  }
  solver.settings().variant = saved;

  double baseline_time = rows.empty() ? 1.0 : rows.front().time_s;
  for (const auto& r : rows)
    if (r.variant == "baseline") baseline_time = r.time_s;
  for (auto& r : rows) r.speedup = baseline_time / r.time_s;
  return rows;
}

} // namespace esdg
