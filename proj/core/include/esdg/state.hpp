#pragma once

#include <cstdint>
#include <vector>

namespace esdg {

inline constexpr int kNumVars = 5; // rho, rho*u1, rho*u2, rho*u3, E

/// Conservative variables at every LGL node of every local element.
/// Element-major structure of arrays: within an element the five variables
/// are contiguous node arrays, so line sweeps read contiguous partner data.
template <class Real>
struct StateField {
  StateField() = default;
  StateField(std::int64_t n_elements, int nodes_per_element)
      : n_elements(n_elements), nodes_per_element(nodes_per_element),
        data(size_t(n_elements) * kNumVars * nodes_per_element, Real(0)) {}

  std::int64_t n_elements = 0;
  int nodes_per_element = 0;
  std::vector<Real> data;

  Real* element(std::int64_t e) {
    return data.data() + size_t(e) * kNumVars * nodes_per_element;
  }
  const Real* element(std::int64_t e) const {
    return data.data() + size_t(e) * kNumVars * nodes_per_element;
  }
  Real& at(std::int64_t e, int var, int node) {
    return element(e)[size_t(var) * nodes_per_element + node];
  }
  Real at(std::int64_t e, int var, int node) const {
    return element(e)[size_t(var) * nodes_per_element + node];
  }
  size_t size() const { return data.size(); }
  void fill(Real v) { std::fill(data.begin(), data.end(), v); }
};

} // namespace esdg
