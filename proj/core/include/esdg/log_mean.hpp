#pragma once

#include <cmath>

#include "esdg/counters.hpp"
#include "esdg/real_traits.hpp"

namespace esdg {

/// Logarithm with operation accounting. Every log the solver evaluates goes
/// through here, so the counters prove where logs happen (and where they
/// don't: neither log-mean below computes one in its series branch, and the
/// efficient form never computes one at all).
template <class Real>
inline Real counted_log(Real x, KernelCounters& c) {
  ++c.log_evals;
  return std::log(x);
}

namespace detail {

template <class Real>
inline Real series_poly_horner(Real u) {
  // 1 + u/3 + u^2/5 + u^3/7 with constant reciprocals, truncated per
  // precision; reciprocal of log((1+xi)/(1-xi))/(2 xi) in u = xi^2.
  if constexpr (real_traits<Real>::series_terms >= 3) {
    return Real(1) +
           u * (Real(1.0 / 3.0) + u * (Real(0.2) + u * Real(1.0 / 7.0)));
  } else {
    return Real(1) + u * Real(1.0 / 3.0);
  }
}

template <class Real>
inline Real series_poly_naive(Real u, KernelCounters& c) {
  if constexpr (real_traits<Real>::series_terms >= 3) {
    c.div_evals += 3;
    return Real(1) + u / Real(3) + (u * u) / Real(5) + (u * u * u) / Real(7);
  } else {
    c.div_evals += 1;
    return Real(1) + u / Real(3);
  }
}

} // namespace detail

/// Efficient logarithmic mean (a+ - a-) / (log a+ - log a-). Requires the
/// logarithms of both arguments, which the caller has precomputed; near
/// a+ == a- it switches to a Horner-evaluated series in xi = jump/sum with a
/// single reciprocal. Never evaluates a logarithm.
template <class Real>
inline Real log_mean(Real am, Real ap, Real log_am, Real log_ap,
                     KernelCounters& c) {
  const Real diff = ap - am;
  const Real sum = ap + am;
  c.div_evals += 1;
  const Real xi = diff / sum;
  const Real u = xi * xi;
  c.div_evals += 1;
  if (u < real_traits<Real>::series_threshold_sq)
    return (Real(0.5) * sum) / detail::series_poly_horner(u);
  return diff / (log_ap - log_am);
}

/// Division-heavy logarithmic mean in the classical f/F arrangement.
/// Values agree with log_mean to a few ulp; only the operation count
/// differs. Used by the pre-optimization kernel variants.
template <class Real>
inline Real log_mean_naive(Real am, Real ap, Real log_am, Real log_ap,
                           KernelCounters& c) {
  c.div_evals += 1;
  const Real f = (am - ap) / (am + ap); // f == -xi
  const Real u = f * f;
  Real bigf;
  if (u < real_traits<Real>::series_threshold_sq) {
    bigf = detail::series_poly_naive(u, c);
  } else {
    c.div_evals += 1;
    bigf = (log_am - log_ap) / (Real(2) * f);
  }
  c.div_evals += 1;
  return Real(0.5) * (am + ap) / bigf;
}

} // namespace esdg
