#include "esdg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "esdg/error.hpp"

namespace esdg {

const char* case_name(CaseKind kind) {
  switch (kind) {
    case CaseKind::RisingBubbleSharp: return "rising_bubble_sharp";
    case CaseKind::RisingBubbleSmooth: return "rising_bubble_smooth";
    case CaseKind::ConstantState: return "constant_state";
    case CaseKind::EntropyTest: return "entropy_test";
    case CaseKind::BaroclinicChannel: return "baroclinic_channel";
  }
  return "?";
}

MeshConfig RunConfig::mesh_config() const {
  MeshConfig m;
  m.base = base;
  m.refinement = refinement;
  m.lo = lo;
  m.hi = hi;
  m.bc = bc;
  return m;
}

GasConstants<double> RunConfig::gas_constants() const {
  GasConstants<double> gc;
  gc.gamma = gamma;
  gc.R = R;
  gc.p0 = p0;
  gc.gravity = g;
  return gc;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

CaseKind parse_case(const std::string& v) {
  for (CaseKind k :
       {CaseKind::RisingBubbleSharp, CaseKind::RisingBubbleSmooth,
        CaseKind::ConstantState, CaseKind::EntropyTest,
        CaseKind::BaroclinicChannel})
    if (v == case_name(k)) return k;
  throw ConfigError("unknown case '" + v + "'");
}

RunConfig case_defaults(CaseKind kind) {
  RunConfig c;
  c.kind = kind;
  switch (kind) {
    case CaseKind::RisingBubbleSharp:
    case CaseKind::RisingBubbleSmooth:
      break; // struct defaults are the bubble domain
    case CaseKind::ConstantState:
      c.lo = {0.0, 0.0, 0.0};
      c.hi = {1.0, 1.0, 1.0};
      c.bc = {BoundaryCondition::Periodic, BoundaryCondition::Periodic,
              BoundaryCondition::Periodic};
      c.g = 0.0;
      c.refinement = 1;
      break;
    case CaseKind::EntropyTest:
      c.bc = {BoundaryCondition::Periodic, BoundaryCondition::Periodic,
              BoundaryCondition::Periodic};
      c.refinement = 1;
      c.dissipation = false;
      break;
    case CaseKind::BaroclinicChannel:
      c.base = {12, 2, 1};
      c.refinement = 3;
      c.lo = {0.0, 0.0, 0.0};
      c.hi = {4.0e7, 6.0e6, 3.0e4};
      c.bc = {BoundaryCondition::Periodic, BoundaryCondition::Reflecting,
              BoundaryCondition::Reflecting};
      c.coriolis = CoriolisMode::BetaPlane;
      c.f0 = 1.0e-4;
      c.beta = 1.6e-11;
      c.y0 = 3.0e6;
      break;
  }
  return c;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + v);
  }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + v);
  }
}

bool parse_on_off(const std::string& key, const std::string& v) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw ConfigError("expected on/off for '" + key + "': " + v);
}

BoundaryCondition parse_bc(const std::string& key, const std::string& v) {
  if (v == "periodic") return BoundaryCondition::Periodic;
  if (v == "reflecting") return BoundaryCondition::Reflecting;
  throw ConfigError("expected periodic/reflecting for '" + key + "': " + v);
}

void apply_key(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "case") {
    // handled by the caller (selects defaults first)
  } else if (key == "N") {
    c.order = int(parse_int(key, v));
  } else if (key == "L") {
    c.refinement = int(parse_int(key, v));
  } else if (key == "K_x") {
    c.base[0] = int(parse_int(key, v));
  } else if (key == "K_y") {
    c.base[1] = int(parse_int(key, v));
  } else if (key == "K_z") {
    c.base[2] = int(parse_int(key, v));
  } else if (key == "x_lo") {
    c.lo[0] = parse_real(key, v);
  } else if (key == "x_hi") {
    c.hi[0] = parse_real(key, v);
  } else if (key == "y_lo") {
    c.lo[1] = parse_real(key, v);
  } else if (key == "y_hi") {
    c.hi[1] = parse_real(key, v);
  } else if (key == "z_lo") {
    c.lo[2] = parse_real(key, v);
  } else if (key == "z_hi") {
    c.hi[2] = parse_real(key, v);
  } else if (key == "bc_x") {
    c.bc[0] = parse_bc(key, v);
  } else if (key == "bc_y") {
    c.bc[1] = parse_bc(key, v);
  } else if (key == "bc_z") {
    c.bc[2] = parse_bc(key, v);
  } else if (key == "precision") {
    c.precision = int(parse_int(key, v));
  } else if (key == "variant") {
    auto k = variant_from_name(v);
    if (!k) throw ConfigError("unknown kernel variant '" + v + "'");
    c.variant = *k;
  } else if (key == "contravariant") {
    if (v == "direct") c.contravariant_direct = true;
    else if (v == "matrix") c.contravariant_direct = false;
    else throw ConfigError("expected direct/matrix for 'contravariant'");
  } else if (key == "dissipation") {
    c.dissipation = parse_on_off(key, v);
  } else if (key == "ranks") {
    c.ranks = int(parse_int(key, v));
  } else if (key == "courant") {
    c.courant = parse_real(key, v);
  } else if (key == "dt_override") {
    c.dt_override = parse_real(key, v);
  } else if (key == "dt_recompute") {
    c.dt_recompute = parse_on_off(key, v);
  } else if (key == "nsteps") {
    c.nsteps = parse_int(key, v);
  } else if (key == "t_final") {
    c.t_final = parse_real(key, v);
  } else if (key == "output_cadence") {
    c.output_cadence = parse_int(key, v);
  } else if (key == "output_dir") {
    c.output_dir = v;
  } else if (key == "coriolis") {
    if (v == "none") c.coriolis = CoriolisMode::None;
    else if (v == "f_plane") c.coriolis = CoriolisMode::FPlane;
    else if (v == "beta_plane") c.coriolis = CoriolisMode::BetaPlane;
    else throw ConfigError("expected none/f_plane/beta_plane for 'coriolis'");
  } else if (key == "f0") {
    c.f0 = parse_real(key, v);
  } else if (key == "beta") {
    c.beta = parse_real(key, v);
  } else if (key == "y0") {
    c.y0 = parse_real(key, v);
  } else if (key == "gamma") {
    c.gamma = parse_real(key, v);
  } else if (key == "R") {
    c.R = parse_real(key, v);
  } else if (key == "p0") {
    c.p0 = parse_real(key, v);
  } else if (key == "g") {
    c.g = parse_real(key, v);
  } else if (key == "theta0") {
    c.theta0 = parse_real(key, v);
  } else if (key == "seed") {
    c.seed = std::uint64_t(parse_int(key, v));
  } else if (key == "peak_gflops") {
    c.peak_gflops = parse_real(key, v);
  } else if (key == "peak_gbps") {
    c.peak_gbps = parse_real(key, v);
  } else if (key == "bench_reps") {
    c.bench_reps = int(parse_int(key, v));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> tokenize(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    kv.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return kv;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
  auto kv = tokenize(text);
  CaseKind kind = CaseKind::RisingBubbleSharp;
  bool have_case = false;
  for (const auto& [k, v] : kv)
    if (k == "case") {
      kind = parse_case(v);
      have_case = true;
    }
  if (!have_case) throw ConfigError("config is missing the 'case' key");
  RunConfig c = case_defaults(kind);
  for (const auto& [k, v] : kv) apply_key(c, k, v);
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_overrides(
    RunConfig& cfg,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  for (const auto& [k, v] : overrides) {
    if (k == "case")
      throw ConfigError("the case cannot be overridden on the command line");
    apply_key(cfg, k, v);
  }
}

namespace {
std::string real_str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
const char* bc_str(BoundaryCondition b) {
  return b == BoundaryCondition::Periodic ? "periodic" : "reflecting";
}
const char* coriolis_str(CoriolisMode m) {
  switch (m) {
    case CoriolisMode::None: return "none";
    case CoriolisMode::FPlane: return "f_plane";
    case CoriolisMode::BetaPlane: return "beta_plane";
  }
  return "none";
}
} // namespace

std::string echo_config(const RunConfig& c) {
  std::ostringstream o;
  o << "case = " << case_name(c.kind) << "\n";
  o << "N = " << c.order << "\n";
  o << "L = " << c.refinement << "\n";
  o << "K_x = " << c.base[0] << "\n";
  o << "K_y = " << c.base[1] << "\n";
  o << "K_z = " << c.base[2] << "\n";
  o << "x_lo = " << real_str(c.lo[0]) << "\n";
  o << "x_hi = " << real_str(c.hi[0]) << "\n";
  o << "y_lo = " << real_str(c.lo[1]) << "\n";
  o << "y_hi = " << real_str(c.hi[1]) << "\n";
  o << "z_lo = " << real_str(c.lo[2]) << "\n";
  o << "z_hi = " << real_str(c.hi[2]) << "\n";
  o << "bc_x = " << bc_str(c.bc[0]) << "\n";
  o << "bc_y = " << bc_str(c.bc[1]) << "\n";
  o << "bc_z = " << bc_str(c.bc[2]) << "\n";
  o << "precision = " << c.precision << "\n";
  o << "variant = " << variant_name(c.variant) << "\n";
  o << "contravariant = " << (c.contravariant_direct ? "direct" : "matrix")
    << "\n";
  o << "dissipation = " << (c.dissipation ? "on" : "off") << "\n";
  o << "ranks = " << c.ranks << "\n";
  o << "courant = " << real_str(c.courant) << "\n";
  o << "dt_override = " << real_str(c.dt_override) << "\n";
  o << "dt_recompute = " << (c.dt_recompute ? "on" : "off") << "\n";
  o << "nsteps = " << c.nsteps << "\n";
  o << "t_final = " << real_str(c.t_final) << "\n";
  o << "output_cadence = " << c.output_cadence << "\n";
  o << "output_dir = " << c.output_dir << "\n";
  o << "coriolis = " << coriolis_str(c.coriolis) << "\n";
  o << "f0 = " << real_str(c.f0) << "\n";
  o << "beta = " << real_str(c.beta) << "\n";
  o << "y0 = " << real_str(c.y0) << "\n";
  o << "gamma = " << real_str(c.gamma) << "\n";
  o << "R = " << real_str(c.R) << "\n";
  o << "p0 = " << real_str(c.p0) << "\n";
  o << "g = " << real_str(c.g) << "\n";
  o << "theta0 = " << real_str(c.theta0) << "\n";
  o << "seed = " << c.seed << "\n";
  o << "peak_gflops = " << real_str(c.peak_gflops) << "\n";
  o << "peak_gbps = " << real_str(c.peak_gbps) << "\n";
  o << "bench_reps = " << c.bench_reps << "\n";
  return o.str();
}

void validate_config(const RunConfig& c) {
  if (c.order < 1 || c.order > 32)
    throw ConfigError("N must be in [1, 32]");
  if (c.refinement < 0 || c.refinement > 20)
    throw ConfigError("L must be in [0, 20]");
  for (int d = 0; d < 3; ++d) {
    if (c.base[size_t(d)] < 1) throw ConfigError("K must be positive");
    if (c.hi[size_t(d)] <= c.lo[size_t(d)])
      throw ConfigError("domain must have hi > lo");
  }
  if (c.precision != 32 && c.precision != 64)
    throw ConfigError("precision must be 32 or 64");
  if (c.ranks < 1) throw ConfigError("ranks must be >= 1");
  if (c.ranks > c.num_elements())
    throw ConfigError("more ranks than elements");
  if (c.nsteps < 0) throw ConfigError("nsteps must be >= 0");
  if (c.nsteps == 0 && c.t_final <= 0.0)
    throw ConfigError("one of nsteps or t_final must be set");
  if (c.dt_override < 0.0) throw ConfigError("dt_override must be >= 0");
  if (c.dt_override == 0.0 && c.courant <= 0.0)
    throw ConfigError("courant must be positive without dt_override");
  if (c.output_cadence < 0) throw ConfigError("output_cadence must be >= 0");
  if (c.gamma <= 1.0) throw ConfigError("gamma must exceed 1");
  if (c.R <= 0.0) throw ConfigError("R must be positive");
  if (c.p0 <= 0.0) throw ConfigError("p0 must be positive");
  if (c.theta0 <= 0.0) throw ConfigError("theta0 must be positive");
  if (c.bench_reps < 1) throw ConfigError("bench_reps must be >= 1");
  const double nodes = double(c.num_elements()) *
                       double(c.order + 1) * (c.order + 1) * (c.order + 1);
  if (nodes >= 9.007199254740992e15)
    throw ConfigError("node count overflows the index contract (2^53)");
}

} // namespace esdg
