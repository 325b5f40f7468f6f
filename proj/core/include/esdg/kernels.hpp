#pragma once

#include <array>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "esdg/mesh.hpp"
#include "esdg/physics.hpp"
#include "esdg/reference_element.hpp"
#include "esdg/schedule.hpp"
#include "esdg/state.hpp"

namespace esdg {

/// Cumulative optimization ladder of the volume kernel. Each stage applies
/// exactly its named change on top of the previous one:
///   baseline   three passes per element, full N_q sweep, primitives and
///              logarithms recomputed inside every flux evaluation
///   fused      one pass staging the element workspace once for all three
///              directions
///   precompute primitives and logarithms computed once per node
///   logmean    single-reciprocal Horner form of the logarithmic mean
///   symmetric  half sweep with partner reconstruction (indexing schedule)
///   balanced   constant-bound schedule with half-weighted antipodal pairs
enum class KernelVariant {
  Baseline = 0,
  Fused,
  Precompute,
  LogMean,
  Symmetric,
  Balanced
};

inline const char* variant_name(KernelVariant v) {
  switch (v) {
    case KernelVariant::Baseline: return "baseline";
    case KernelVariant::Fused: return "fused";
    case KernelVariant::Precompute: return "precompute";
    case KernelVariant::LogMean: return "logmean";
    case KernelVariant::Symmetric: return "symmetric";
    case KernelVariant::Balanced: return "balanced";
  }
  return "?";
}

inline std::optional<KernelVariant> variant_from_name(const std::string& s) {
  for (int i = 0; i <= int(KernelVariant::Balanced); ++i)
    if (s == variant_name(KernelVariant(i))) return KernelVariant(i);
  return std::nullopt;
}

inline constexpr std::array<KernelVariant, 6> kAllVariants = {
    KernelVariant::Baseline,  KernelVariant::Fused,
    KernelVariant::Precompute, KernelVariant::LogMean,
    KernelVariant::Symmetric, KernelVariant::Balanced};

template <class Real>
struct KernelSettings {
  KernelVariant variant = KernelVariant::Balanced;
  bool contravariant_direct = true;
  bool dissipation = true;
  CoriolisParams<Real> coriolis{};
};

/// Reference-element and metric data rounded to the active precision. The
/// 64-bit operators are the source of truth; lower precision runs use their
/// correctly rounded images.
template <class Real>
struct Operators {
  int nq = 0, n2 = 0, n3 = 0;
  std::vector<Real> nodes, weights, d; // d row-major nq x nq
  std::array<Real, 3> metric{};        // 2 / delta_d
  Real jacobian = Real(0);
  std::array<Real, 3> face_coef{}; // metric[d] / w[0], surface lift factor

  Operators() = default;
  Operators(const ReferenceElement& ref, const MeshGeometry& mesh) {
    nq = ref.num_nodes();
    n2 = nq * nq;
    n3 = n2 * nq;
    nodes.assign(ref.nodes().begin(), ref.nodes().end());
    weights.assign(ref.weights().begin(), ref.weights().end());
    d.assign(ref.diff_matrix().begin(), ref.diff_matrix().end());
    for (int k = 0; k < 3; ++k) {
      metric[k] = Real(mesh.metric(k));
      face_coef[k] = metric[k] / weights[0];
    }
    jacobian = Real(mesh.jacobian());
  }
};

/// Per-element scratch: the staged state, geopotential, per-node primitives
/// and the tendency slab, mirroring the shared-memory staging of the
/// element-per-block execution model.
template <class Real>
struct ElementWorkspace {
  int nq = 0, n3 = 0;
  std::vector<Real> q;    // 5 * n3, var-major
  std::vector<Real> phi;  // n3
  std::vector<Real> tend; // 5 * n3
  std::vector<NodeVals<Real>> aux;

  void resize(int nq_in) {
    nq = nq_in;
    n3 = nq * nq * nq;
    q.assign(size_t(5) * n3, Real(0));
    phi.assign(size_t(n3), Real(0));
    tend.assign(size_t(5) * n3, Real(0));
    aux.resize(size_t(n3));
  }
};

namespace kernel_detail {

template <class Real>
inline void stage_element(ElementWorkspace<Real>& ws, const Real* q_elem,
                          const Real* phi_elem) {
  std::memcpy(ws.q.data(), q_elem, sizeof(Real) * 5 * ws.n3);
  std::memcpy(ws.phi.data(), phi_elem, sizeof(Real) * ws.n3);
}

template <class Real>
inline NodeVals<Real> vals_from_workspace(const ElementWorkspace<Real>& ws,
                                          int node, Real gamma,
                                          KernelCounters& c,
                                          std::int64_t elem) {
  Real q[5];
  for (int v = 0; v < 5; ++v) q[v] = ws.q[size_t(v) * ws.n3 + node];
  return compute_node_vals(q, ws.phi[size_t(node)], gamma, c, elem, node);
}

template <class Real>
inline void fill_aux(ElementWorkspace<Real>& ws, Real gamma,
                     KernelCounters& c, std::int64_t elem) {
  for (int n = 0; n < ws.n3; ++n)
    ws.aux[size_t(n)] = vals_from_workspace(ws, n, gamma, c, elem);
}

/// Adds coef * (sym + gravity e_{1+dir}) to the tendency at `node`.
template <class Real>
inline void accumulate(std::vector<Real>& tend, int n3, int node, int dir,
                       Real coef, const Real sym[5], Real gravity) {
  for (int v = 0; v < 5; ++v) tend[size_t(v) * n3 + node] += coef * sym[v];
  tend[size_t(1 + dir) * n3 + node] += coef * gravity;
}

/// One line sweep of the flux-differenced volume term,
///   t_i -= sum_j 2 g_d D_ij F(q_i, q_j),
/// with the diagonal obtained from the two-point flux at identical
/// arguments. Pairwise mode covers each unordered pair once and writes the
/// partner contribution through the gravity scaling G -> -G b-/b+.
template <class Real, bool UseAux, bool Eff, bool Pairwise, bool Direct>
void sweep_direction(ElementWorkspace<Real>& ws, const Operators<Real>& ops,
                     const FluxSchedule* sched, int dir, Real gamma,
                     KernelCounters& c, std::int64_t elem) {
  const int nq = ops.nq;
  const int strides[3] = {1, nq, nq * nq};
  const int sd = strides[dir];
  const int s1 = strides[(dir + 1) % 3];
  const int s2 = strides[(dir + 2) % 3];
  const Real gd = ops.metric[dir];
  const Real* D = ops.d.data();

  auto node_vals = [&](int node) -> NodeVals<Real> {
    if constexpr (UseAux)
      return ws.aux[size_t(node)];
    else
      return vals_from_workspace(ws, node, gamma, c, elem);
  };

  // The flux of a pair, optionally via the naive 3x5 matrix route that
  // evaluates all three direction fluxes and contracts with the (diagonal)
  // metric row.
  auto pair_flux = [&](const NodeVals<Real>& vi, const NodeVals<Real>& vj)
      -> TwoPointFlux<Real> {
    if constexpr (Direct) {
      c.flux_evals += 1;
      return ec_flux<Real, Eff, Pairwise>(vi, vj, dir, gamma, c);
    } else {
      TwoPointFlux<Real> out{};
      for (int dd = 0; dd < 3; ++dd) {
        c.flux_evals += 1;
        TwoPointFlux<Real> f = ec_flux<Real, Eff, Pairwise>(vi, vj, dd, gamma, c);
        if (dd == dir) out = f;
      }
      return out;
    }
  };

  for (int i2 = 0; i2 < nq; ++i2) {
    for (int i1 = 0; i1 < nq; ++i1) {
      const int base = i1 * s1 + i2 * s2;
      for (int i = 0; i < nq; ++i) {
        const int node_i = base + i * sd;
        const NodeVals<Real> vi = node_vals(node_i);

        // diagonal: consistency makes this the analytic flux
        {
          TwoPointFlux<Real> f = [&] {
            if constexpr (Direct) {
              return ec_flux<Real, Eff, false>(vi, vi, dir, gamma, c);
            } else {
              TwoPointFlux<Real> out{};
              for (int dd = 0; dd < 3; ++dd) {
                TwoPointFlux<Real> g = ec_flux<Real, Eff, false>(vi, vi, dd, gamma, c);
                if (dd == dir) out = g;
              }
              return out;
            }
          }();
          const Real coef = -(Real(2) * gd * D[size_t(i) * nq + i]);
          accumulate(ws.tend, ws.n3, node_i, dir, coef, f.sym, f.gravity);
        }

        if constexpr (Pairwise) {
          const auto* partners = sched->node_partners(i);
          const int np = sched->partner_count(i);
          for (int l = 0; l < np; ++l) {
            const int j = partners[l].index;
            const Real w = Real(0.5) * Real(partners[l].half_weight);
            const int node_j = base + j * sd;
            const NodeVals<Real> vj = node_vals(node_j);
            TwoPointFlux<Real> f = pair_flux(vi, vj);
            const Real coef_i = -(Real(2) * gd * D[size_t(i) * nq + j]) * w;
            const Real coef_j = -(Real(2) * gd * D[size_t(j) * nq + i]) * w;
            accumulate(ws.tend, ws.n3, node_i, dir, coef_i, f.sym, f.gravity);
            accumulate(ws.tend, ws.n3, node_j, dir, coef_j, f.sym,
                       -f.gravity * f.b_ratio);
          }
        } else {
          for (int j = 0; j < nq; ++j) {
            if (j == i) continue;
            const int node_j = base + j * sd;
            // pre-optimization cost model: primitives of both sides are
            // recomputed inside every flux evaluation
            const NodeVals<Real> vi_pair =
                UseAux ? vi : node_vals(node_i);
            const NodeVals<Real> vj = node_vals(node_j);
            TwoPointFlux<Real> f = pair_flux(vi_pair, vj);
            const Real coef = -(Real(2) * gd * D[size_t(i) * nq + j]);
            accumulate(ws.tend, ws.n3, node_i, dir, coef, f.sym, f.gravity);
          }
        }
      }
    }
  }
}

template <class Real, bool UseAux, bool Eff, bool Pairwise, bool Direct>
void volume_element_impl(ElementWorkspace<Real>& ws,
                         const Operators<Real>& ops,
                         const FluxSchedule* sched, bool staged_once,
                         const Real* q_elem, const Real* phi_elem, Real gamma,
                         KernelCounters& c, std::int64_t elem) {
  std::fill(ws.tend.begin(), ws.tend.end(), Real(0));
  if (staged_once) {
    stage_element(ws, q_elem, phi_elem);
    if constexpr (UseAux) fill_aux(ws, gamma, c, elem);
    for (int dir = 0; dir < 3; ++dir)
      sweep_direction<Real, UseAux, Eff, Pairwise, Direct>(ws, ops, sched, dir,
                                                           gamma, c, elem);
  } else {
    for (int dir = 0; dir < 3; ++dir) {
      stage_element(ws, q_elem, phi_elem);
      if constexpr (UseAux) fill_aux(ws, gamma, c, elem);
      sweep_direction<Real, UseAux, Eff, Pairwise, Direct>(ws, ops, sched, dir,
                                                           gamma, c, elem);
    }
  }
}

} // namespace kernel_detail

/// Flux-differenced volume tendency of one element, written into ws.tend.
/// The variant selects staging, precomputation, log-mean form and schedule;
/// `sched` must match the variant (nullptr for full-sweep variants).
template <class Real>
void volume_element(ElementWorkspace<Real>& ws, const Operators<Real>& ops,
                    const FluxSchedule* sched, const KernelSettings<Real>& ks,
                    const Real* q_elem, const Real* phi_elem, Real gamma,
                    KernelCounters& c, std::int64_t elem) {
  using namespace kernel_detail;
  const bool staged_once = ks.variant >= KernelVariant::Fused;
  const bool use_aux = ks.variant >= KernelVariant::Precompute;
  const bool eff = ks.variant >= KernelVariant::LogMean;
  const bool pairwise = ks.variant >= KernelVariant::Symmetric;
  const bool direct = ks.contravariant_direct;

  auto dispatch = [&](auto use_aux_c, auto eff_c, auto pair_c, auto dir_c) {
    volume_element_impl<Real, use_aux_c.value, eff_c.value, pair_c.value,
                        dir_c.value>(ws, ops, sched, staged_once, q_elem,
                                     phi_elem, gamma, c, elem);
  };
  using T = std::true_type;
  using F = std::false_type;
  // 16-way static dispatch so the hot loops carry no runtime flags
  if (use_aux) {
    if (eff) {
      if (pairwise) direct ? dispatch(T{}, T{}, T{}, T{}) : dispatch(T{}, T{}, T{}, F{});
      else          direct ? dispatch(T{}, T{}, F{}, T{}) : dispatch(T{}, T{}, F{}, F{});
    } else {
      if (pairwise) direct ? dispatch(T{}, F{}, T{}, T{}) : dispatch(T{}, F{}, T{}, F{});
      else          direct ? dispatch(T{}, F{}, F{}, T{}) : dispatch(T{}, F{}, F{}, F{});
    }
  } else {
    if (eff) {
      if (pairwise) direct ? dispatch(F{}, T{}, T{}, T{}) : dispatch(F{}, T{}, T{}, F{});
      else          direct ? dispatch(F{}, T{}, F{}, T{}) : dispatch(F{}, T{}, F{}, F{});
    } else {
      if (pairwise) direct ? dispatch(F{}, F{}, T{}, T{}) : dispatch(F{}, F{}, T{}, F{});
      else          direct ? dispatch(F{}, F{}, F{}, T{}) : dispatch(F{}, F{}, F{}, F{});
    }
  }
}

/// Canonical per-node flux record of one face, evaluated once with the
/// lower-Morton side as minus. Both adjacent elements reconstruct their own
/// applied flux from it (sign flip for the symmetric part and dissipation,
/// -G b-/b+ for the gravity slot).
template <class Real>
struct FaceFluxNode {
  Real sym[5];
  Real gravity;
  Real b_ratio;
  Real diss[5];
};

/// Extracts the (var-major) trace of an element side into `out[5 * nq2]`.
template <class Real>
void extract_trace(const Real* q_elem, const FaceIndexer& fx, int dir,
                   int side, int n3, Real* out) {
  const int nq2 = fx.nodes_per_face();
  for (int v = 0; v < 5; ++v)
    for (int fn = 0; fn < nq2; ++fn)
      out[size_t(v) * nq2 + fn] = q_elem[size_t(v) * n3 + fx.node(dir, side, fn)];
}

template <class Real>
void extract_phi_trace(const Real* phi_elem, const FaceIndexer& fx, int dir,
                       int side, Real* out) {
  const int nq2 = fx.nodes_per_face();
  for (int fn = 0; fn < nq2; ++fn) out[fn] = phi_elem[fx.node(dir, side, fn)];
}

/// Computes the canonical flux records of one face from the two traces
/// (var-major, 5 * nq2 each). For reflecting faces pass qp == nullptr; the
/// plus state is the mirror of the minus trace and phi+ = phi-.
template <class Real>
void compute_face_record(const Real* qm, const Real* phim, const Real* qp,
                         const Real* phip, int dir, int nq2,
                         const GasConstants<Real>& gc, bool dissipation,
                         FaceFluxNode<Real>* out, KernelCounters& c,
                         std::int64_t minus_elem, std::int64_t plus_elem) {
  const Real gamma = gc.gamma;
  for (int fn = 0; fn < nq2; ++fn) {
    Real qmv[5], qpv[5];
    for (int v = 0; v < 5; ++v) qmv[v] = qm[size_t(v) * nq2 + fn];
    Real phi_m = phim[fn], phi_p;
    if (qp) {
      for (int v = 0; v < 5; ++v) qpv[v] = qp[size_t(v) * nq2 + fn];
      phi_p = phip[fn];
    } else {
      mirror_state(qmv, dir, qpv);
      phi_p = phi_m;
    }
    const NodeVals<Real> vm =
        compute_node_vals(qmv, phi_m, gamma, c, minus_elem, fn);
    const NodeVals<Real> vp =
        compute_node_vals(qpv, phi_p, gamma, c, plus_elem, fn);
    c.flux_evals += 1;
    TwoPointFlux<Real> f = ec_flux<Real, true, true>(vm, vp, dir, gamma, c);
    FaceFluxNode<Real>& r = out[fn];
    for (int v = 0; v < 5; ++v) r.sym[v] = f.sym[v];
    r.gravity = f.gravity;
    r.b_ratio = f.b_ratio;
    if (dissipation) {
      matrix_dissipation(vm, vp, dir, gc, r.diss, c);
    } else {
      for (int v = 0; v < 5; ++v) r.diss[v] = Real(0);
    }
  }
}

/// Applies one element side's share of a face to the output field:
///   t -= (g_d / w) (Phi_own - n F(q_own))
/// where Phi_own is rebuilt from the canonical record and F(q_own) is the
/// two-point flux at identical arguments (so constant states cancel
/// exactly). `scale` carries the integrator's dt factor.
template <class Real>
void commit_face_side(StateField<Real>& out, const StateField<Real>& q,
                      const std::vector<Real>& phi_field,
                      const FaceFluxNode<Real>* rec, const FaceIndexer& fx,
                      const Operators<Real>& ops, std::int64_t elem, int dir,
                      int side, bool am_minus, Real gamma, Real scale,
                      KernelCounters& c) {
  const int nq2 = fx.nodes_per_face();
  const int n3 = ops.n3;
  const Real n_own = side ? Real(1) : Real(-1);
  const Real dsign = am_minus ? Real(-0.5) : Real(0.5);
  const Real lift = ops.face_coef[dir];
  const Real* q_elem = q.element(elem);
  const Real* phi_elem = phi_field.data() + size_t(elem) * n3;
  Real* out_elem = out.element(elem);

  for (int fn = 0; fn < nq2; ++fn) {
    const int node = fx.node(dir, side, fn);
    Real qo[5];
    for (int v = 0; v < 5; ++v) qo[v] = q_elem[size_t(v) * n3 + node];
    const Real phi_own = phi_elem[node];
    const NodeVals<Real> vo =
        compute_node_vals(qo, phi_own, gamma, c, elem, node);
    const TwoPointFlux<Real> own =
        ec_flux<Real, true, false>(vo, vo, dir, gamma, c);

    const FaceFluxNode<Real>& r = rec[fn];
    const Real g_own = am_minus ? r.gravity : -r.gravity * r.b_ratio;
    for (int v = 0; v < 5; ++v) {
      Real flux = n_own * r.sym[v];
      if (v == 1 + dir) flux += n_own * g_own;
      Real dv = r.diss[v];
      if (v == 4) dv += phi_own * r.diss[0]; // restore gravity shift
      flux += dsign * dv;
      Real ownflux = own.sym[v]; // own.gravity == 0 at identical arguments
      out_elem[size_t(v) * n3 + node] -=
          scale * lift * (flux - n_own * ownflux);
    }
  }
}

} // namespace esdg
