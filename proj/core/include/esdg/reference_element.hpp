#pragma once

#include <vector>

namespace esdg {

/// One-dimensional Legendre-Gauss-Lobatto collocation operators: nodes,
/// quadrature weights and the nodal differentiation matrix. All entries are
/// computed in 64-bit regardless of the precision the solver runs at; lower
/// precision runs round the finished operators.
///
/// Invariants (checked in tests):
///   - nodes strictly increasing, symmetric about 0, endpoints exactly +-1
///   - weights sum to 2
///   - rows of D sum to 0 (diagonal built as negative row sum)
///   - D exact on polynomials of degree <= N
///   - SBP: diag(w) D + D^T diag(w) = diag(-1, 0, ..., 0, +1)
class ReferenceElement {
public:
  /// Builds the order-N operators. N must be in [1, 32]: flux differencing
  /// needs at least two nodes per direction, and beyond 32 the node
  /// separation near the endpoints degrades the operators.
  explicit ReferenceElement(int order);

  int order() const { return order_; }
  int num_nodes() const { return order_ + 1; }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  /// Row-major: d(i,j) = derivative of Lagrange basis j at node i.
  double d(int i, int j) const { return diff_[i * (order_ + 1) + j]; }
  const std::vector<double>& diff_matrix() const { return diff_; }

private:
  int order_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> diff_;
};

/// Barycentric differentiation matrix for arbitrary distinct sorted nodes,
/// diagonal by negative row sum. Exposed separately so the operator
/// construction can be tested against closed forms.
std::vector<double> differentiation_matrix(const std::vector<double>& nodes);

/// Legendre polynomial P_N and its derivative at x (three-term recurrence).
struct LegendreEval {
  double p;  // P_N(x)
  double dp; // P_N'(x)
};
LegendreEval legendre(int n, double x);

} // namespace esdg
