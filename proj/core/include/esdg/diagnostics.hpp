#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esdg/counters.hpp"
#include "esdg/mesh.hpp"
#include "esdg/physics.hpp"
#include "esdg/reference_element.hpp"
#include "esdg/state.hpp"

namespace esdg {

namespace detail {
/// Neumaier-compensated accumulator for the diagnostic quadrature sums.
struct KahanSum {
  double s = 0.0, comp = 0.0;
  void add(double x) {
    double t = s + x;
    comp += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + comp; }
};
} // namespace detail

/// Quadrature sum of one conservative variable: sum_K integral_K q dV,
/// evaluated as sum of J w_a w_b w_c q over all nodes, always in 64-bit.
template <class Real>
double quadrature_total(const StateField<Real>& q, int var,
                        const MeshGeometry& mesh, const ReferenceElement& ref) {
  const int nq = ref.num_nodes();
  const int n3 = nq * nq * nq;
  const auto& w = ref.weights();
  const double J = mesh.jacobian();
  detail::KahanSum sum;
  for (std::int64_t e = 0; e < q.n_elements; ++e) {
    const Real* qe = q.element(e);
    for (int n = 0; n < n3; ++n) {
      const int a = n % nq, b = (n / nq) % nq, c = n / (nq * nq);
      const double w3 = w[size_t(a)] * w[size_t(b)] * w[size_t(c)];
      sum.add(J * w3 * double(qe[size_t(var) * n3 + n]));
    }
  }
  return sum.value();
}

/// Total entropy sum J w^3 eta(q).
template <class Real>
double total_entropy(const StateField<Real>& q, const std::vector<Real>& phi,
                     const MeshGeometry& mesh, const ReferenceElement& ref,
                     double gamma) {
  const int nq = ref.num_nodes();
  const int n3 = nq * nq * nq;
  const auto& w = ref.weights();
  const double J = mesh.jacobian();
  detail::KahanSum sum;
  for (std::int64_t e = 0; e < q.n_elements; ++e) {
    const Real* qe = q.element(e);
    const Real* pe = phi.data() + size_t(e) * n3;
    for (int n = 0; n < n3; ++n) {
      double qv[5];
      for (int v = 0; v < 5; ++v) qv[v] = double(qe[size_t(v) * n3 + n]);
      const int a = n % nq, b = (n / nq) % nq, c = n / (nq * nq);
      const double w3 = w[size_t(a)] * w[size_t(b)] * w[size_t(c)];
      sum.add(J * w3 * entropy(qv, double(pe[n]), gamma));
    }
  }
  return sum.value();
}

/// Semi-discrete entropy production sum J w^3 v(q) . dq/dt. Zero (to
/// roundoff) for entropy-conservative fluxes on periodic meshes;
/// non-positive with matrix dissipation on.
template <class Real>
double entropy_production(const StateField<Real>& q,
                          const StateField<Real>& rhs,
                          const std::vector<Real>& phi,
                          const MeshGeometry& mesh, const ReferenceElement& ref,
                          double gamma) {
  const int nq = ref.num_nodes();
  const int n3 = nq * nq * nq;
  const auto& w = ref.weights();
  const double J = mesh.jacobian();
  detail::KahanSum sum;
  for (std::int64_t e = 0; e < q.n_elements; ++e) {
    const Real* qe = q.element(e);
    const Real* re = rhs.element(e);
    const Real* pe = phi.data() + size_t(e) * n3;
    for (int n = 0; n < n3; ++n) {
      double qv[5], rv[5], vv[5];
      for (int v = 0; v < 5; ++v) {
        qv[v] = double(qe[size_t(v) * n3 + n]);
        rv[v] = double(re[size_t(v) * n3 + n]);
      }
      entropy_variables(qv, double(pe[n]), gamma, vv);
      const int a = n % nq, b = (n / nq) % nq, c = n / (nq * nq);
      const double w3 = w[size_t(a)] * w[size_t(b)] * w[size_t(c)];
      sum.add(J * w3 *
              (vv[0] * rv[0] + vv[1] * rv[1] + vv[2] * rv[2] + vv[3] * rv[3] +
               vv[4] * rv[4]));
    }
  }
  return sum.value();
}

struct ConservationSample {
  std::uint64_t step = 0;
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
};

/// Time series of the conserved integrals with drift relative to step 0.
struct ConservationReport {
  std::vector<ConservationSample> samples;

  double mass_drift(size_t i) const;
  double energy_drift(size_t i) const;
  double max_mass_drift() const;
  double max_energy_drift() const;
};

/// Wall times, operation counters and the derived performance quantities of
/// one run. Flop and byte figures come from a documented counter-weighted
/// model, not hardware counters:
///
///   flops = W_FLUX (volume pair + diagonal evals + surface evals)
///         + W_DISS (surface evals, dissipation on)
///         + W_AUX  (primitive computations = log_evals / 2)
///         + div_evals + log_evals
///   with W_FLUX = 55, W_DISS = 120, W_AUX = 15 adds/muls.
///
///   volume bytes  = rhs_calls Ne (11 n3 + nq^2) s   (state+phi read,
///                   tendency write, operator load; s = sizeof(Real))
///   surface bytes = rhs_calls Nf (12 + 10) nq^2 s   (two traces with phi,
///                   two tendency updates)
///   update bytes  = 3 s per register value per axpy
struct PerfRecord {
  double volume_seconds = 0.0;
  double surface_seconds = 0.0;
  double update_seconds = 0.0;
  double wall_seconds = 0.0;
  Counters counters;
  std::uint64_t steps = 0;
  std::int64_t elements = 0;
  std::int64_t faces = 0;
  int nq = 0;
  int ranks = 1;
  int real_bytes = 8;

  double kernel_seconds() const {
    return volume_seconds + surface_seconds + update_seconds;
  }
  double volume_share() const { return volume_seconds / kernel_seconds(); }
  double surface_share() const { return surface_seconds / kernel_seconds(); }
  double update_share() const { return update_seconds / kernel_seconds(); }

  std::uint64_t diagonal_evals() const {
    return counters.rhs_calls * std::uint64_t(elements) *
           std::uint64_t(nq) * nq * nq * 3;
  }
  double volume_flops() const;
  double surface_flops() const;
  double update_flops() const;
  double total_flops() const;
  double volume_bytes() const;
  double surface_bytes() const;
  double update_bytes() const;
  double total_bytes() const;
  double arithmetic_intensity() const { return total_flops() / total_bytes(); }
  /// Element time-steps per wall second.
  double throughput() const {
    return double(elements) * double(steps) / wall_seconds;
  }
};

/// One roofline CSV row: achieved GFLOP/s against the min(compute, memory)
/// ceiling for user-supplied peak rates.
struct RooflineRow {
  std::string kernel;
  double ai = 0.0;
  double gflops = 0.0;
  double fraction_of_roof = 0.0;
};

RooflineRow roofline_record(const std::string& kernel, double flops,
                            double bytes, double seconds, double peak_gflops,
                            double peak_gbps);

/// Energy consumption in megajoules: time-to-solution times TDP.
inline double energy_megajoules(double time_seconds, double tdp_watts) {
  return time_seconds * tdp_watts / 1e6;
}

/// Documentation defaults for the energy table (device TDPs in watts).
inline constexpr double kTdpA100 = 400.0;
inline constexpr double kTdpDualMilan = 560.0;

struct LadderRow {
  std::string variant;
  double time_s = 0.0;
  double speedup = 1.0;
  std::uint64_t flux_evals = 0;
  std::uint64_t log_evals = 0;
  std::uint64_t div_evals = 0;
};

} // namespace esdg
