#pragma once

namespace esdg {

/// Ideal-gas and environment constants. Defaults are standard dry air.
template <class Real>
struct GasConstants {
  Real gamma = Real(1.4);    // ratio of specific heats
  Real R = Real(287);        // gas constant [J/(kg K)]
  Real p0 = Real(1e5);       // reference pressure [Pa]
  Real gravity = Real(9.81); // gravitational acceleration [m/s^2]

  Real cv() const { return R / (gamma - Real(1)); }
  Real cp() const { return gamma * cv(); }

  template <class Other>
  GasConstants<Other> cast() const {
    GasConstants<Other> c;
    c.gamma = Other(gamma);
    c.R = Other(R);
    c.p0 = Other(p0);
    c.gravity = Other(gravity);
    return c;
  }
};

} // namespace esdg
