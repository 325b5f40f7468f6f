#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "esdg/constants.hpp"

namespace esdg {

/// Isentropic hydrostatic atmosphere with constant potential temperature:
/// Exner pi(z) = 1 - g z / (cp theta0), T = theta0 pi, p = p0 pi^(cp/R),
/// rho = p / (R T), u = 0, E = rho (cv T + phi).
struct HydrostaticBackground {
  GasConstants<double> gc;
  double theta0 = 300.0;

  double exner(double z) const {
    return 1.0 - gc.gravity * z / (gc.cp() * theta0);
  }

  void state(double z, double phi, double q[5]) const {
    const double pi = exner(z);
    if (pi <= 0.0)
      throw std::invalid_argument(
          "height exceeds the top of the isentropic atmosphere");
    const double T = theta0 * pi;
    const double p = gc.p0 * std::pow(pi, gc.cp() / gc.R);
    const double rho = p / (gc.R * T);
    q[0] = rho;
    q[1] = q[2] = q[3] = 0.0;
    q[4] = rho * (gc.cv() * T + phi);
  }
};

inline constexpr double kBubbleRadius = 250.0;
inline constexpr std::array<double, 3> kBubbleCenter = {0.0, 0.0, 260.0};

/// Potential-temperature perturbation of the rising-bubble cases: 1/2 K
/// inside radius r_c, either as a sharp jump or cosine-smoothed to zero at
/// the edge.
inline double bubble_delta_theta(double x, double y, double z, bool sharp) {
  const double dx = x - kBubbleCenter[0];
  const double dy = y - kBubbleCenter[1];
  const double dz = z - kBubbleCenter[2];
  const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (r > kBubbleRadius) return 0.0;
  if (sharp) return 0.5;
  return 0.5 * 0.5 * (1.0 + std::cos(M_PI * r / kBubbleRadius));
}

/// Bubble state: the perturbation is applied at constant pressure, so the
/// background pressure profile is kept and density and energy are rebuilt
/// from theta0 + dtheta.
inline void bubble_state(const HydrostaticBackground& bg, double dtheta,
                         double z, double phi, double q[5]) {
  const double pi = bg.exner(z);
  if (pi <= 0.0)
    throw std::invalid_argument(
        "height exceeds the top of the isentropic atmosphere");
  const double theta = bg.theta0 + dtheta;
  const double T = theta * pi;
  const double p = bg.gc.p0 * std::pow(pi, bg.gc.cp() / bg.gc.R);
  const double rho = p / (bg.gc.R * T);
  q[0] = rho;
  q[1] = q[2] = q[3] = 0.0;
  q[4] = rho * (bg.gc.cv() * T + phi);
}

namespace detail {
// splitmix64: deterministic across platforms, unlike the standard
// distributions.
inline std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
inline double unit_real(std::uint64_t& s) {
  return double(splitmix64(s) >> 11) * (1.0 / 9007199254740992.0);
}
} // namespace detail

/// Smooth periodic random field: a handful of low-wavenumber Fourier modes
/// with seeded amplitudes and phases. Continuous across every periodic
/// face.
struct SmoothRandomField {
  static constexpr int kModes = 3;
  std::array<std::array<int, 3>, kModes> wavenumber;
  std::array<double, kModes> amplitude;
  std::array<double, kModes> phase;

  static SmoothRandomField make(std::uint64_t& seed_state) {
    SmoothRandomField f;
    for (int m = 0; m < kModes; ++m) {
      for (int d = 0; d < 3; ++d)
        f.wavenumber[size_t(m)][size_t(d)] =
            1 + int(detail::splitmix64(seed_state) % 2);
      f.amplitude[size_t(m)] =
          (2.0 * detail::unit_real(seed_state) - 1.0) / kModes;
      f.phase[size_t(m)] = 2.0 * M_PI * detail::unit_real(seed_state);
    }
    return f;
  }

  /// xhat: position normalized to [0,1] per direction.
  double value(const std::array<double, 3>& xhat) const {
    double v = 0.0;
    for (int m = 0; m < kModes; ++m) {
      const auto& k = wavenumber[size_t(m)];
      v += amplitude[size_t(m)] *
           std::sin(2.0 * M_PI *
                        (k[0] * xhat[0] + k[1] * xhat[1] + k[2] * xhat[2]) +
                    phase[size_t(m)]);
    }
    return v;
  }
};

/// State generator for the entropy oracle: a smooth random perturbation of
/// a uniform reference state, with gravity in the energy. Amplitudes keep
/// the state well inside the physical region.
struct EntropyTestState {
  std::array<double, 3> lo, hi;
  GasConstants<double> gc;
  SmoothRandomField rho_field, p_field, u_field[3];
  double rho0 = 1.16, u_scale = 15.0;

  EntropyTestState(const std::array<double, 3>& lo_in,
                   const std::array<double, 3>& hi_in,
                   const GasConstants<double>& gc_in, std::uint64_t seed)
      : lo(lo_in), hi(hi_in), gc(gc_in) {
    std::uint64_t s = seed;
    rho_field = SmoothRandomField::make(s);
    p_field = SmoothRandomField::make(s);
    for (int d = 0; d < 3; ++d) u_field[d] = SmoothRandomField::make(s);
  }

  void state(double x, double y, double z, double phi, double q[5]) const {
    const std::array<double, 3> xhat = {(x - lo[0]) / (hi[0] - lo[0]),
                                        (y - lo[1]) / (hi[1] - lo[1]),
                                        (z - lo[2]) / (hi[2] - lo[2])};
    const double rho = rho0 * (1.0 + 0.05 * rho_field.value(xhat));
    const double p = gc.p0 * (1.0 + 0.05 * p_field.value(xhat));
    const double u[3] = {u_scale * u_field[0].value(xhat),
                         u_scale * u_field[1].value(xhat),
                         u_scale * u_field[2].value(xhat)};
    q[0] = rho;
    q[1] = rho * u[0];
    q[2] = rho * u[1];
    q[3] = rho * u[2];
    q[4] = p / (gc.gamma - 1.0) +
           0.5 * rho * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) + rho * phi;
  }
};

} // namespace esdg
