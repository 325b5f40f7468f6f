#pragma once

#include <array>
#include <cmath>

#include "esdg/constants.hpp"
#include "esdg/mesh.hpp"
#include "esdg/physics.hpp"
#include "esdg/reference_element.hpp"
#include "esdg/state.hpp"

namespace esdg {

/// Five-stage fourth-order low-storage Runge-Kutta scheme (two registers).
/// Correctness is pinned by the observed-order test, not by the
/// coefficients themselves.
struct LsrkScheme {
  static constexpr int stages = 5;
  static constexpr std::array<double, 5> a = {
      0.0,
      -567301805773.0 / 1357537059087.0,
      -2404267990393.0 / 2016746695238.0,
      -3550918686646.0 / 2091501179385.0,
      -1275806237668.0 / 842570457699.0};
  static constexpr std::array<double, 5> b = {
      1432997174477.0 / 9575080441755.0,
      5161836677717.0 / 13612068292357.0,
      1720146321549.0 / 2090206949498.0,
      3134564353537.0 / 4481467310338.0,
      2277821191437.0 / 14882151754819.0};
  static constexpr std::array<double, 5> c = {
      0.0,
      1432997174477.0 / 9575080441755.0,
      2526269341429.0 / 6820363962896.0,
      2006345519317.0 / 3224310063776.0,
      2802321613138.0 / 2924317926251.0};
};

/// One low-storage step over two registers q and k:
///   k <- a_i k + dt RHS(q, t + c_i dt);  q <- q + b_i k
/// The callers own the registers; `rhs_accum(a, dt, c)` must perform the
/// first update in place (exactly one RHS evaluation), `axpy(b)` the second.
template <class Real, class RhsAccum, class Axpy>
void lsrk_step(RhsAccum&& rhs_accum, Axpy&& axpy, Real dt) {
  for (int s = 0; s < LsrkScheme::stages; ++s) {
    rhs_accum(Real(LsrkScheme::a[s]), dt, Real(LsrkScheme::c[s]), s);
    axpy(Real(LsrkScheme::b[s]));
  }
}

/// Stable time step dt = C min over nodes and directions of
/// dx_local / (|u_d| + c), where dx_local is the physical distance to the
/// nearest adjacent LGL node along the direction. Always evaluated in
/// 64-bit.
template <class Real>
double compute_stable_dt(const StateField<Real>& q,
                         const std::vector<Real>& phi,
                         const MeshGeometry& mesh, const ReferenceElement& ref,
                         const GasConstants<double>& gc, double courant) {
  const int nq = ref.num_nodes();
  const int n3 = nq * nq * nq;
  const auto& xi = ref.nodes();
  std::vector<double> gap(size_t(nq), 0.0); // nearest adjacent reference gap
  for (int i = 0; i < nq; ++i) {
    double g = 2.0;
    if (i > 0) g = std::min(g, xi[size_t(i)] - xi[size_t(i) - 1]);
    if (i + 1 < nq) g = std::min(g, xi[size_t(i) + 1] - xi[size_t(i)]);
    gap[size_t(i)] = g;
  }
  std::array<double, 3> half_delta = {0.5 * mesh.delta()[0],
                                      0.5 * mesh.delta()[1],
                                      0.5 * mesh.delta()[2]};
  const double gamma = gc.gamma;
  double dt = std::numeric_limits<double>::infinity();
  for (std::int64_t e = 0; e < q.n_elements; ++e) {
    const Real* qe = q.element(e);
    const Real* phie = phi.data() + size_t(e) * n3;
    for (int n = 0; n < n3; ++n) {
      double qv[5];
      for (int v = 0; v < 5; ++v) qv[v] = double(qe[size_t(v) * n3 + n]);
      const double p = pressure(qv, double(phie[n]), gamma, e, n);
      const double c = std::sqrt(gamma * p / qv[0]);
      const int idx[3] = {n % nq, (n / nq) % nq, n / (nq * nq)};
      for (int d = 0; d < 3; ++d) {
        const double dx = half_delta[size_t(d)] * gap[size_t(idx[d])];
        const double u = std::abs(qv[1 + d] / qv[0]);
        dt = std::min(dt, dx / (u + c));
      }
    }
  }
  return courant * dt;
}

} // namespace esdg
