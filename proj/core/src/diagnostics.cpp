#include "esdg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esdg {

double ConservationReport::mass_drift(size_t i) const {
  return std::abs(samples[i].mass - samples[0].mass) /
         std::abs(samples[0].mass);
}

double ConservationReport::energy_drift(size_t i) const {
  return std::abs(samples[i].energy - samples[0].energy) /
         std::abs(samples[0].energy);
}

double ConservationReport::max_mass_drift() const {
  double m = 0.0;
  for (size_t i = 0; i < samples.size(); ++i)
    m = std::max(m, mass_drift(i));
  return m;
}

double ConservationReport::max_energy_drift() const {
  double m = 0.0;
  for (size_t i = 0; i < samples.size(); ++i)
    m = std::max(m, energy_drift(i));
  return m;
}

namespace {
constexpr double kFluxAddMul = 55.0;
constexpr double kDissAddMul = 120.0;
constexpr double kAuxAddMul = 15.0;
constexpr double kAxpyFlopsPerValue = 2.0;
} // namespace

double PerfRecord::volume_flops() const {
  const auto& v = counters.volume;
  return kFluxAddMul * (double(v.flux_evals) + double(diagonal_evals())) +
         kAuxAddMul * (double(v.log_evals) / 2.0) + double(v.div_evals) +
         double(v.log_evals);
}

double PerfRecord::surface_flops() const {
  const auto& s = counters.surface;
  return (kFluxAddMul + kDissAddMul) * double(s.flux_evals) +
         kAuxAddMul * (double(s.log_evals) / 2.0) + double(s.div_evals) +
         double(s.log_evals);
}

double PerfRecord::update_flops() const {
  const double values = 5.0 * double(elements) * nq * nq * nq;
  return kAxpyFlopsPerValue * values * 2.0 * double(counters.rhs_calls);
}

double PerfRecord::total_flops() const {
  return volume_flops() + surface_flops() + update_flops();
}

double PerfRecord::volume_bytes() const {
  const double n3 = double(nq) * nq * nq;
  return double(counters.rhs_calls) * double(elements) *
         (11.0 * n3 + double(nq) * nq) * real_bytes;
}

double PerfRecord::surface_bytes() const {
  const double nq2 = double(nq) * nq;
  return double(counters.rhs_calls) * double(faces) * 22.0 * nq2 * real_bytes;
}

double PerfRecord::update_bytes() const {
  const double values = 5.0 * double(elements) * nq * nq * nq;
  return 3.0 * values * real_bytes * 2.0 * double(counters.rhs_calls);
}

double PerfRecord::total_bytes() const {
  return volume_bytes() + surface_bytes() + update_bytes();
}

RooflineRow roofline_record(const std::string& kernel, double flops,
                            double bytes, double seconds, double peak_gflops,
                            double peak_gbps) {
  if (peak_gflops <= 0.0 || peak_gbps <= 0.0)
    throw std::invalid_argument("roofline peaks must be positive");
  RooflineRow row;
  row.kernel = kernel;
  row.ai = flops / bytes;
  row.gflops = flops / seconds / 1e9;
  const double roof = std::min(peak_gflops, row.ai * peak_gbps);
  row.fraction_of_roof = row.gflops / roof;
  return row;
}

} // namespace esdg
