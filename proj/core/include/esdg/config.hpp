#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "esdg/kernels.hpp"
#include "esdg/mesh.hpp"

namespace esdg {

enum class CaseKind {
  RisingBubbleSharp,
  RisingBubbleSmooth,
  ConstantState,
  EntropyTest,
  BaroclinicChannel
};

const char* case_name(CaseKind kind);

/// Run configuration. The text form is line-based `key = value` with these
/// exact key names; command-line `--key value` pairs override file values,
/// and the manifest echo re-parses to an identical config.
struct RunConfig {
  CaseKind kind = CaseKind::RisingBubbleSharp;
  int order = 4;      // key: N
  int refinement = 3; // key: L
  std::array<int, 3> base = {1, 1, 1};
  std::array<double, 3> lo = {-1000.0, -1000.0, 0.0};
  std::array<double, 3> hi = {1000.0, 1000.0, 2000.0};
  std::array<BoundaryCondition, 3> bc = {BoundaryCondition::Periodic,
                                         BoundaryCondition::Periodic,
                                         BoundaryCondition::Reflecting};
  int precision = 64;
  KernelVariant variant = KernelVariant::Balanced;
  bool contravariant_direct = true;
  bool dissipation = true;
  int ranks = 1;
  double courant = 0.5;
  double dt_override = 0.0;
  bool dt_recompute = false;
  std::int64_t nsteps = 0;
  double t_final = 0.0;
  std::int64_t output_cadence = 0;
  std::string output_dir = "out";
  CoriolisMode coriolis = CoriolisMode::None;
  double f0 = 0.0, beta = 0.0, y0 = 0.0;
  double gamma = 1.4, R = 287.0, p0 = 1e5, g = 9.81;
  double theta0 = 300.0;
  std::uint64_t seed = 12345;
  double peak_gflops = 9746.0; // documentation defaults for the roofline
  double peak_gbps = 1560.0;
  int bench_reps = 5;

  std::int64_t num_elements() const {
    return std::int64_t(base[0]) * base[1] * base[2] *
           (std::int64_t(1) << (3 * refinement));
  }
  std::int64_t dof_per_var() const {
    const std::int64_t nq = order + 1;
    return num_elements() * nq * nq * nq;
  }
  MeshConfig mesh_config() const;
  GasConstants<double> gas_constants() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` text. Lines starting with '#' and blank lines are
/// ignored. The `case` key selects per-case defaults; every other key
/// overrides them. Unknown keys and malformed values raise ConfigError.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Applies `--key value` style overrides (keys without the leading dashes).
void apply_overrides(RunConfig& cfg,
                     const std::vector<std::pair<std::string, std::string>>&
                         overrides);

/// Full key = value echo; parse_config_text(echo(cfg)) == cfg.
std::string echo_config(const RunConfig& cfg);

/// Validates ranges and cross-field requirements; throws ConfigError.
void validate_config(const RunConfig& cfg);

} // namespace esdg
