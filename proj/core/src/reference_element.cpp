#include "esdg/reference_element.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace esdg {

LegendreEval legendre(int n, double x) {
  double pm1 = 1.0, p = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    double pk = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
    pm1 = p;
    p = pk;
  }
  // P_N'(x) = N (x P_N - P_{N-1}) / (x^2 - 1), regular form away from +-1
  double dp;
  if (std::abs(x) == 1.0) {
    dp = x == 1.0 ? n * (n + 1) / 2.0 : ((n % 2 == 0) ? -1.0 : 1.0) * n * (n + 1) / 2.0;
  } else {
    dp = n * (x * p - pm1) / (x * x - 1.0);
  }
  return {p, dp};
}

namespace {

// q(x) = (1-x^2) P_N'(x); interior LGL nodes are its roots.
double lobatto_q(int n, double x) {
  return (1.0 - x * x) * legendre(n, x).dp;
}

// Bracketed Newton on q with bisection safeguard (rtsafe pattern). The
// bracket is widened a little if the initial guesses do not straddle the
// root. Converges to <= 4 ulp.
double solve_node(int n, double lo, double hi) {
  double qlo = lobatto_q(n, lo);
  double qhi = lobatto_q(n, hi);
  for (int k = 0; k < 8 && (qlo > 0) == (qhi > 0); ++k) {
    double w = 0.25 * (hi - lo);
    lo = std::max(lo - w, -1.0 + 1e-14);
    hi = std::min(hi + w, 1.0 - 1e-14);
    qlo = lobatto_q(n, lo);
    qhi = lobatto_q(n, hi);
  }
  if ((qlo > 0) == (qhi > 0))
    throw std::runtime_error("LGL node bracketing failed");

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double qx = lobatto_q(n, x);
    if (qx == 0.0) break;
    if ((qx > 0) == (qlo > 0)) {
      lo = x;
      qlo = qx;
    } else {
      hi = x;
    }
    // q'(x) = -N(N+1) P_N(x) by the Legendre ODE
    double dq = -double(n) * (n + 1) * legendre(n, x).p;
    double xn = (dq != 0.0) ? x - qx / dq : x;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (xn == x) break;
    x = xn;
    if (hi - lo <= 2.0 * std::abs(x) * std::numeric_limits<double>::epsilon())
      break;
  }
  return x;
}

} // namespace

ReferenceElement::ReferenceElement(int order) : order_(order) {
  if (order < 1)
    throw std::invalid_argument(
        "polynomial order must be >= 1 (two nodes per direction)");
  if (order > 32)
    throw std::invalid_argument("polynomial order must be <= 32");

  const int nq = order + 1;
  nodes_.assign(nq, 0.0);
  weights_.assign(nq, 0.0);

  // Compute the x >= 0 half and mirror, so rounding is exactly symmetric.
  nodes_[0] = -1.0;
  nodes_[nq - 1] = 1.0;
  // Chebyshev-Gauss-Lobatto points bracket the LGL points well enough to
  // isolate one root per interval.
  std::vector<double> guess(nq);
  for (int i = 0; i < nq; ++i)
    guess[i] = -std::cos(M_PI * i / order);
  for (int i = nq / 2 + (nq % 2); i < nq - 1; ++i) {
    double lo = 0.5 * (guess[i - 1] + guess[i]);
    double hi = 0.5 * (guess[i] + guess[i + 1]);
    if (i == nq / 2 + (nq % 2) && nq % 2 == 0) lo = 0.0;
    double x = solve_node(order, lo, hi);
    nodes_[i] = x;
    nodes_[nq - 1 - i] = -x;
  }
  if (nq % 2 == 1) nodes_[nq / 2] = 0.0;

  const double wf = 2.0 / (double(order) * (order + 1));
  for (int i = 0; i < nq; ++i) {
    if (2 * i < nq) continue; // fill x >= 0 half, then mirror
    double p = legendre(order, nodes_[i]).p;
    weights_[i] = wf / (p * p);
    weights_[nq - 1 - i] = weights_[i];
  }
  if (nq % 2 == 1) {
    double p = legendre(order, 0.0).p;
    weights_[nq / 2] = wf / (p * p);
  }

  diff_ = differentiation_matrix(nodes_);
}

std::vector<double> differentiation_matrix(const std::vector<double>& nodes) {
  const int nq = int(nodes.size());
  std::vector<double> lam(nq, 1.0); // barycentric weights
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j)
      if (j != i) lam[i] /= (nodes[i] - nodes[j]);

  std::vector<double> d(size_t(nq) * nq, 0.0);
  for (int i = 0; i < nq; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < nq; ++j) {
      if (j == i) continue;
      double dij = (lam[j] / lam[i]) / (nodes[i] - nodes[j]);
      d[size_t(i) * nq + j] = dij;
      rowsum += dij;
    }
    d[size_t(i) * nq + i] = -rowsum; // exact constant annihilation
  }
  return d;
}

} // namespace esdg
