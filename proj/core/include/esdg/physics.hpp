#pragma once

#include <cmath>

#include "esdg/constants.hpp"
#include "esdg/counters.hpp"
#include "esdg/error.hpp"
#include "esdg/log_mean.hpp"

namespace esdg {

// Variable layout: q[0] = rho, q[1..3] = momentum, q[4] = total energy
// density (kinetic + internal + potential).

/// Pressure law p = (gamma-1) (E - |U|^2/(2 rho) - rho phi).
/// Throws NonPhysicalState when the state has left the physical region.
template <class Real>
inline Real pressure(const Real q[5], Real phi, Real gamma,
                     std::int64_t element = -1, int node = -1) {
  const Real rho = q[0];
  if (!(rho > Real(0)))
    throw NonPhysicalState(double(rho), 0.0, int(element), node);
  const Real ke =
      Real(0.5) * (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]) / rho;
  const Real p = (gamma - Real(1)) * (q[4] - ke - rho * phi);
  if (!(p > Real(0)))
    throw NonPhysicalState(double(rho), double(p), int(element), node);
  return p;
}

template <class Real>
inline Real avg(Real am, Real ap) {
  return Real(0.5) * (am + ap);
}

/// Jump convention: plus minus MINUS.
template <class Real>
inline Real jump(Real am, Real ap) {
  return ap - am;
}

/// Primitive and logarithmic quantities the two-point flux consumes,
/// computed once per node by the precomputing kernel variants and on the
/// fly (per pair) by the baseline ones. Costs exactly 2 divisions and 2
/// logarithms per call.
template <class Real>
struct NodeVals {
  Real rho;
  Real u[3];
  Real b; // rho / (2 p)
  Real log_rho;
  Real log_b;
  Real phi;
};

template <class Real>
inline NodeVals<Real> compute_node_vals(const Real q[5], Real phi,
                                        Real gamma, KernelCounters& c,
                                        std::int64_t element = -1,
                                        int node = -1) {
  NodeVals<Real> v;
  v.rho = q[0];
  if (!(v.rho > Real(0)))
    throw NonPhysicalState(double(v.rho), 0.0, int(element), node);
  c.div_evals += 1;
  const Real inv_rho = Real(1) / v.rho;
  v.u[0] = q[1] * inv_rho;
  v.u[1] = q[2] * inv_rho;
  v.u[2] = q[3] * inv_rho;
  const Real ke = Real(0.5) * (q[1] * v.u[0] + q[2] * v.u[1] + q[3] * v.u[2]);
  const Real p = (gamma - Real(1)) * (q[4] - ke - v.rho * phi);
  if (!(p > Real(0)))
    throw NonPhysicalState(double(v.rho), double(p), int(element), node);
  c.div_evals += 1;
  v.b = v.rho / (Real(2) * p);
  v.log_rho = counted_log(v.rho, c);
  v.log_b = counted_log(v.b, c);
  v.phi = phi;
  return v;
}

/// Result of one two-point entropy-conservative flux evaluation in a
/// coordinate direction. `sym` is the fully symmetric part (the pressure
/// average sits in the direction-aligned momentum slot); `gravity` is the
/// non-symmetric momentum contribution (1/2) rho_hat [[phi]] of the minus
/// side, and the partner's gravity term is -gravity * b_ratio.
template <class Real>
struct TwoPointFlux {
  Real sym[5];
  Real gravity;
  Real b_ratio; // b_minus / b_plus
};

/// Entropy-conservative two-point flux for the Euler equations with
/// geopotential, direction `dir`:
///   mass      (rho u_k)* = <rho>_log <u_k>
///   momentum  (rho u_k)* <u_m> + delta_mk (p* + G),  p* = <rho>/(2<b>)
///   energy    (rho u_k)* (1/(2(gamma-1)<b>_log) + (u-.u+)/2 + <phi>)
///             + <u_k> p*
/// with G = (1/2) (<b><rho>_log / b-) [[phi]]. The energy completion is the
/// unique one satisfying [[v]].F = [[rho u_k]] + 2<b><rho>_log<u_k>[[phi]],
/// which is what makes the flux-differenced volume term conserve entropy.
template <class Real, bool EfficientMean = true, bool NeedPartner = true>
inline TwoPointFlux<Real> ec_flux(const NodeVals<Real>& m,
                                  const NodeVals<Real>& p, int dir,
                                  Real gamma, KernelCounters& c) {
  TwoPointFlux<Real> f;
  Real rho_log, b_log;
  if constexpr (EfficientMean) {
    rho_log = log_mean(m.rho, p.rho, m.log_rho, p.log_rho, c);
    b_log = log_mean(m.b, p.b, m.log_b, p.log_b, c);
  } else {
    rho_log = log_mean_naive(m.rho, p.rho, m.log_rho, p.log_rho, c);
    b_log = log_mean_naive(m.b, p.b, m.log_b, p.log_b, c);
  }
  const Real ua[3] = {avg(m.u[0], p.u[0]), avg(m.u[1], p.u[1]),
                      avg(m.u[2], p.u[2])};
  const Real rho_a = avg(m.rho, p.rho);
  const Real b_a = avg(m.b, p.b);
  const Real phi_a = avg(m.phi, p.phi);
  const Real udot = m.u[0] * p.u[0] + m.u[1] * p.u[1] + m.u[2] * p.u[2];

  const Real mass = rho_log * ua[dir];
  c.div_evals += 2;
  const Real pstar = rho_a / (Real(2) * b_a);
  const Real e_int = Real(1) / (Real(2) * (gamma - Real(1)) * b_log);

  f.sym[0] = mass;
  f.sym[1] = mass * ua[0];
  f.sym[2] = mass * ua[1];
  f.sym[3] = mass * ua[2];
  f.sym[1 + dir] += pstar;
  f.sym[4] = mass * (e_int + Real(0.5) * udot + phi_a) + ua[dir] * pstar;

  c.div_evals += 1;
  f.gravity = Real(0.5) * (b_a * rho_log / m.b) * (p.phi - m.phi);
  if constexpr (NeedPartner) {
    c.div_evals += 1;
    f.b_ratio = m.b / p.b;
  } else {
    f.b_ratio = Real(0);
  }
  return f;
}

/// Analytic direction-`dir` flux of the Euler system (test/diagnostic use;
/// the kernels obtain consistent point values from ec_flux(q, q) instead).
template <class Real>
inline void analytic_flux(const Real q[5], Real phi, int dir, Real gamma,
                          Real out[5]) {
  const Real p = pressure(q, phi, gamma);
  const Real un = q[1 + dir] / q[0];
  out[0] = q[1 + dir];
  out[1] = q[1] * un;
  out[2] = q[2] * un;
  out[3] = q[3] * un;
  out[1 + dir] += p;
  out[4] = (q[4] + p) * un;
}

/// Entropy eta = -rho s / (gamma - 1), s = log p - gamma log rho, with the
/// geopotential entering through the pressure law.
template <class Real>
inline Real entropy(const Real q[5], Real phi, Real gamma) {
  const Real p = pressure(q, phi, gamma);
  const Real s = std::log(p) - gamma * std::log(q[0]);
  return -q[0] * s / (gamma - Real(1));
}

/// Entropy variables v = d(eta)/dq.
template <class Real>
inline void entropy_variables(const Real q[5], Real phi, Real gamma,
                              Real v[5]) {
  const Real p = pressure(q, phi, gamma);
  const Real rho = q[0];
  const Real b = rho / (Real(2) * p);
  const Real u[3] = {q[1] / rho, q[2] / rho, q[3] / rho};
  const Real u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  const Real s = std::log(p) - gamma * std::log(rho);
  v[0] = (gamma - s) / (gamma - Real(1)) - b * (u2 - Real(2) * phi);
  v[1] = Real(2) * b * u[0];
  v[2] = Real(2) * b * u[1];
  v[3] = Real(2) * b * u[2];
  v[4] = -Real(2) * b;
}

/// Entropy variables of the gravity-shifted state (E - rho phi), i.e. the
/// standard Euler entropy variables. Assembled from NodeVals without any
/// further logarithms: s = (1-gamma) log rho - log b - log 2.
template <class Real>
inline void shifted_entropy_variables(const NodeVals<Real>& n, Real gamma,
                                      Real v[5]) {
  const Real s =
      (Real(1) - gamma) * n.log_rho - n.log_b - Real(M_LN2);
  const Real u2 = n.u[0] * n.u[0] + n.u[1] * n.u[1] + n.u[2] * n.u[2];
  v[0] = (gamma - s) / (gamma - Real(1)) - n.b * u2;
  v[1] = Real(2) * n.b * n.u[0];
  v[2] = Real(2) * n.b * n.u[1];
  v[3] = Real(2) * n.b * n.u[2];
  v[4] = -Real(2) * n.b;
}

/// Entropy-scaled Roe-type matrix dissipation, direction `dir`: returns
/// d = R |Lambda| T R^T [[v~]] evaluated at the averaged state
/// (<rho>_log, <u>, T = 1/(2 R <b>_log)) consistent with ec_flux. The
/// quadratic form [[v~]]^T d is nonnegative by construction. Operates on
/// the gravity-shifted entropy variables; the caller restores the local
/// geopotential shift in the energy slot (d_E += phi d_rho).
template <class Real>
inline void matrix_dissipation(const NodeVals<Real>& m,
                               const NodeVals<Real>& p, int dir,
                               const GasConstants<Real>& gc, Real out[5],
                               KernelCounters& c) {
  const Real gamma = gc.gamma;
  const Real rho_log = log_mean(m.rho, p.rho, m.log_rho, p.log_rho, c);
  const Real b_log = log_mean(m.b, p.b, m.log_b, p.log_b, c);
  c.div_evals += 1;
  const Real tbar = Real(1) / (Real(2) * gc.R * b_log);
  const Real c2 = gamma * gc.R * tbar;
  const Real cbar = std::sqrt(c2);
  const Real pbar = rho_log * gc.R * tbar;
  const Real ubar[3] = {avg(m.u[0], p.u[0]), avg(m.u[1], p.u[1]),
                        avg(m.u[2], p.u[2])};
  const Real un = ubar[dir];
  const Real u2 = ubar[0] * ubar[0] + ubar[1] * ubar[1] + ubar[2] * ubar[2];
  c.div_evals += 1;
  const Real hbar = c2 / (gamma - Real(1)) + Real(0.5) * u2;

  Real vm[5], vp[5], jv[5];
  shifted_entropy_variables(m, gamma, vm);
  shifted_entropy_variables(p, gamma, vp);
  for (int i = 0; i < 5; ++i) jv[i] = vp[i] - vm[i];

  c.div_evals += 2;
  const Real t_acoustic = rho_log / (Real(2) * gamma);
  const Real t_entropy = rho_log * (gamma - Real(1)) / gamma;
  const Real t_shear = pbar;

  const int t1 = (dir + 1) % 3, t2 = (dir + 2) % 3;
  for (int i = 0; i < 5; ++i) out[i] = Real(0);

  auto add_wave = [&](Real lambda, Real scale, const Real r[5]) {
    const Real w = std::abs(lambda) * scale *
                   (r[0] * jv[0] + r[1] * jv[1] + r[2] * jv[2] +
                    r[3] * jv[3] + r[4] * jv[4]);
    for (int i = 0; i < 5; ++i) out[i] += w * r[i];
  };

  Real r[5];
  // u - c acoustic
  r[0] = Real(1);
  r[1] = ubar[0];
  r[2] = ubar[1];
  r[3] = ubar[2];
  r[1 + dir] -= cbar;
  r[4] = hbar - cbar * un;
  add_wave(un - cbar, t_acoustic, r);
  // entropy wave
  r[1 + dir] += cbar;
  r[4] = Real(0.5) * u2;
  add_wave(un, t_entropy, r);
  // shear waves
  Real rs[5] = {Real(0), Real(0), Real(0), Real(0), ubar[t1]};
  rs[1 + t1] = Real(1);
  add_wave(un, t_shear, rs);
  rs[1 + t1] = Real(0);
  rs[1 + t2] = Real(1);
  rs[4] = ubar[t2];
  add_wave(un, t_shear, rs);
  // u + c acoustic
  r[1 + dir] += cbar;
  r[4] = hbar + cbar * un;
  add_wave(un + cbar, t_acoustic, r);
}

enum class CoriolisMode { None, FPlane, BetaPlane };

template <class Real>
struct CoriolisParams {
  CoriolisMode mode = CoriolisMode::None;
  Real f0 = Real(0);
  Real beta = Real(0);
  Real y0 = Real(0);

  Real f_at(Real y) const {
    switch (mode) {
      case CoriolisMode::None: return Real(0);
      case CoriolisMode::FPlane: return f0;
      case CoriolisMode::BetaPlane: return f0 + beta * (y - y0);
    }
    return Real(0);
  }
};

/// Coriolis source moved to the right-hand side: h = (0, -(Omega x U), 0)
/// with Omega = (0, 0, f). Does no work, so the energy component is zero.
template <class Real>
inline void coriolis_source(const Real q[5], Real y,
                            const CoriolisParams<Real>& cp, Real out[5]) {
  const Real f = cp.f_at(y);
  out[0] = Real(0);
  out[1] = f * q[2];
  out[2] = -f * q[1];
  out[3] = Real(0);
  out[4] = Real(0);
}

/// Mirror state of a reflecting wall: normal momentum negated.
template <class Real>
inline void mirror_state(const Real q[5], int dir, Real out[5]) {
  for (int i = 0; i < 5; ++i) out[i] = q[i];
  out[1 + dir] = -q[1 + dir];
}

} // namespace esdg
