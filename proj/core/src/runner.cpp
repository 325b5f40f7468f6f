#include "esdg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <tuple>

#include "esdg/cases.hpp"
#include "esdg/csv.hpp"
#include "esdg/diagnostics.hpp"
#include "esdg/ladder.hpp"
#include "esdg/real_traits.hpp"
#include "esdg/solver.hpp"

namespace esdg {

namespace {

namespace fs = std::filesystem;

template <class Real>
KernelSettings<Real> settings_from(const RunConfig& cfg) {
  KernelSettings<Real> s;
  s.variant = cfg.variant;
  s.contravariant_direct = cfg.contravariant_direct;
  s.dissipation = cfg.dissipation;
  s.coriolis.mode = cfg.coriolis;
  s.coriolis.f0 = Real(cfg.f0);
  s.coriolis.beta = Real(cfg.beta);
  s.coriolis.y0 = Real(cfg.y0);
  return s;
}

template <class Real>
void init_case_state(Solver<Real>& solver, const RunConfig& cfg) {
  const GasConstants<double> gc = cfg.gas_constants();
  switch (cfg.kind) {
    case CaseKind::RisingBubbleSharp:
    case CaseKind::RisingBubbleSmooth: {
      const bool sharp = cfg.kind == CaseKind::RisingBubbleSharp;
      HydrostaticBackground bg{gc, cfg.theta0};
      solver.init_state([&](double x, double y, double z, double phi,
                            double q[5]) {
        bubble_state(bg, bubble_delta_theta(x, y, z, sharp), z, phi, q);
      });
      break;
    }
    case CaseKind::ConstantState: {
      solver.init_state([&](double, double, double, double phi, double q[5]) {
        const double rho = 1.2, p = gc.p0;
        const double u[3] = {20.0, 10.0, 5.0};
        q[0] = rho;
        q[1] = rho * u[0];
        q[2] = rho * u[1];
        q[3] = rho * u[2];
        q[4] = p / (gc.gamma - 1.0) +
               0.5 * rho * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) +
               rho * phi;
      });
      break;
    }
    case CaseKind::EntropyTest: {
      EntropyTestState gen(cfg.lo, cfg.hi, gc, cfg.seed);
      solver.init_state([&](double x, double y, double z, double phi,
                            double q[5]) { gen.state(x, y, z, phi, q); });
      break;
    }
    case CaseKind::BaroclinicChannel:
      throw ConfigError(
          "the baroclinic_channel case ships as a configuration skeleton "
          "without a balanced initial state; supply an initial-state plugin "
          "to run it");
  }
}

/// theta slice on the y = 0 plane (or the nearest contained plane), rows
/// sorted by (z, x).
template <class Real>
void write_theta_slice(const Solver<Real>& solver, const RunConfig& cfg,
                       const std::string& path) {
  const MeshGeometry& mesh = solver.mesh();
  const ReferenceElement& ref = solver.ref();
  const int nq = ref.num_nodes(), n3 = nq * nq * nq;
  const GasConstants<double> gc = cfg.gas_constants();
  double ycut = 0.0;
  if (!(mesh.config().lo[1] <= ycut && ycut < mesh.config().hi[1]))
    ycut = 0.5 * (mesh.config().lo[1] + mesh.config().hi[1]);

  std::vector<std::tuple<double, double, double>> rows; // (z, x, theta)
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    const auto corner = mesh.corner_lo(e);
    const double y_lo = corner[1], y_hi = y_lo + mesh.delta()[1];
    if (!(y_lo <= ycut && ycut < y_hi)) continue;
    // closest node plane to the cut inside this element
    int b_best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (int b = 0; b < nq; ++b) {
      const double y = mesh.node_coordinate(e, 1, ref.nodes()[size_t(b)]);
      if (std::abs(y - ycut) < dist) {
        dist = std::abs(y - ycut);
        b_best = b;
      }
    }
    const Real* qe = solver.state().element(e);
    const Real* pe = solver.phi().data() + size_t(e) * n3;
    for (int c = 0; c < nq; ++c) {
      for (int a = 0; a < nq; ++a) {
        const int n = a + nq * (b_best + nq * c);
        double qv[5];
        for (int v = 0; v < 5; ++v) qv[v] = double(qe[size_t(v) * n3 + n]);
        const double p = pressure(qv, double(pe[n]), gc.gamma, e, n);
        const double T = p / (qv[0] * gc.R);
        const double theta = T * std::pow(gc.p0 / p, gc.R / gc.cp());
        const double x = mesh.node_coordinate(e, 0, ref.nodes()[size_t(a)]);
        const double z = mesh.node_coordinate(e, 2, ref.nodes()[size_t(c)]);
        rows.emplace_back(z, x, theta);
      }
    }
  }
  std::sort(rows.begin(), rows.end());
  CsvWriter csv(path, "x,z,theta", real_traits<Real>::print_digits);
  for (const auto& [z, x, theta] : rows) csv.row(x, z, theta);
}

void write_manifest(const std::string& path, const RunConfig& cfg,
                    const std::string& extra) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest '" + path + "'");
  out << echo_config(cfg);
  out << extra;
}

template <class Real>
int run_case_impl(const RunConfig& cfg) {
  auto mesh = std::make_shared<MeshGeometry>(cfg.mesh_config());
  const std::int64_t ne = mesh->num_elements();
  std::cout << "mesh: " << ne << " elements, " << cfg.dof_per_var()
            << " DOF per variable, spacings " << mesh->delta()[0] << " x "
            << mesh->delta()[1] << " x " << mesh->delta()[2] << " m\n";

  Solver<Real> solver(mesh, cfg.order, cfg.gas_constants(),
                      settings_from<Real>(cfg), cfg.ranks);
  init_case_state(solver, cfg);

  double dt = cfg.dt_override > 0.0 ? cfg.dt_override
                                    : solver.compute_dt(cfg.courant);
  std::int64_t nsteps = cfg.nsteps;
  if (nsteps == 0)
    nsteps = std::max<std::int64_t>(
        1, std::int64_t(std::ceil(cfg.t_final / dt)));
  std::cout << "dt = " << dt << " s, " << nsteps << " steps\n";

  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir / "slices", ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());

  const int digits = real_traits<Real>::print_digits;
  ConservationReport report;
  std::vector<std::tuple<std::uint64_t, double, double, double>> entropy_rows;
  StateField<Real> scratch(ne, solver.ops().n3);

  auto sample = [&](std::uint64_t step, double time) {
    ConservationSample s;
    s.step = step;
    s.time = time;
    s.mass = quadrature_total(solver.state(), 0, *mesh, solver.ref());
    s.energy = quadrature_total(solver.state(), 4, *mesh, solver.ref());
    report.samples.push_back(s);
    solver.assemble_rhs(solver.state(), scratch, Real(0), Real(1));
    const double eta = total_entropy(solver.state(), solver.phi(), *mesh,
                                     solver.ref(), cfg.gamma);
    const double prod = entropy_production(solver.state(), scratch,
                                           solver.phi(), *mesh, solver.ref(),
                                           cfg.gamma);
    entropy_rows.emplace_back(step, time, eta, prod);
    write_theta_slice(solver, cfg,
                      (dir / "slices" /
                       ("theta_y0_" + std::to_string(step) + ".csv"))
                          .string());
  };

  std::string status = "ok";
  double time = 0.0;
  std::int64_t step = 0;
  int exit_code = kExitOk;
  try {
    sample(0, 0.0);
    for (step = 1; step <= nsteps; ++step) {
      solver.step(Real(dt));
      time += dt;
      if (cfg.dt_recompute) dt = solver.compute_dt(cfg.courant);
      if (cfg.output_cadence > 0 && step % cfg.output_cadence == 0 &&
          step != nsteps)
        sample(std::uint64_t(step), time);
    }
    sample(std::uint64_t(nsteps), time);
  } catch (const NonPhysicalState& e) {
    status = std::string("nonphysical: ") + e.what();
    exit_code = kExitNumericalFailure;
  }

  {
    CsvWriter csv((dir / "conservation.csv").string(),
                  "step,time,mass,energy,mass_drift,energy_drift", digits);
    for (size_t i = 0; i < report.samples.size(); ++i) {
      const auto& s = report.samples[i];
      csv.row(s.step, s.time, s.mass, s.energy, report.mass_drift(i),
              report.energy_drift(i));
    }
  }
  {
    CsvWriter csv((dir / "entropy.csv").string(),
                  "step,time,total_entropy,entropy_production", digits);
    for (const auto& [st, t, eta, prod] : entropy_rows)
      csv.row(st, t, eta, prod);
  }
  const PerfRecord& perf = solver.perf();
  {
    CsvWriter csv((dir / "throughput.csv").string(),
                  "elements,steps,wall_time_s,element_steps_per_s", digits);
    csv.row(perf.elements, perf.steps, perf.wall_seconds,
            perf.steps ? perf.throughput() : 0.0);
  }
  {
    CsvWriter csv((dir / "roofline.csv").string(),
                  "kernel,ai,gflops,fraction_of_roof", digits);
    auto emit = [&](const char* name, double flops, double bytes,
                    double seconds) {
      if (seconds <= 0.0) return;
      RooflineRow r = roofline_record(name, flops, bytes, seconds,
                                      cfg.peak_gflops, cfg.peak_gbps);
      csv.row(r.kernel, r.ai, r.gflops, r.fraction_of_roof);
    };
    emit("volume", perf.volume_flops(), perf.volume_bytes(),
         perf.volume_seconds);
    emit("surface", perf.surface_flops(), perf.surface_bytes(),
         perf.surface_seconds);
    emit("update", perf.update_flops(), perf.update_bytes(),
         perf.update_seconds);
  }

  std::ostringstream extra;
  extra.precision(17);
  extra << "# ---- run summary ----\n";
  extra << "# elements = " << ne << "\n";
  extra << "# dof_per_var = " << cfg.dof_per_var() << "\n";
  extra << "# dt = " << dt << "\n";
  extra << "# steps_completed = " << perf.steps << "\n";
  extra << "# wall_seconds = " << perf.wall_seconds << "\n";
  extra << "# volume_seconds = " << perf.volume_seconds << "\n";
  extra << "# surface_seconds = " << perf.surface_seconds << "\n";
  extra << "# update_seconds = " << perf.update_seconds << "\n";
  extra << "# rhs_calls = " << perf.counters.rhs_calls << "\n";
  extra << "# volume_flux_evals = " << perf.counters.volume.flux_evals << "\n";
  extra << "# volume_log_evals = " << perf.counters.volume.log_evals << "\n";
  extra << "# volume_div_evals = " << perf.counters.volume.div_evals << "\n";
  extra << "# surface_flux_evals = " << perf.counters.surface.flux_evals
        << "\n";
  if (!report.samples.empty()) {
    extra << "# mass_drift = " << report.max_mass_drift() << "\n";
    extra << "# energy_drift = " << report.max_energy_drift() << "\n";
  }
  extra << "# status = " << status << "\n";
  write_manifest((dir / "manifest.txt").string(), cfg, extra.str());
  return exit_code;
}

template <class Real>
int run_ladder_impl(const RunConfig& cfg) {
  auto mesh = std::make_shared<MeshGeometry>(cfg.mesh_config());
  Solver<Real> solver(mesh, cfg.order, cfg.gas_constants(),
                      settings_from<Real>(cfg), cfg.ranks);
  init_case_state(solver, cfg);

  const double tol = std::is_same_v<Real, double> ? 1e-13 : 2e-4;
  std::vector<KernelVariant> variants(kAllVariants.begin(),
                                      kAllVariants.end());
  std::vector<LadderRow> rows;
  try {
    rows = ladder_benchmark(solver, variants, cfg.bench_reps, tol);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitNumericalFailure;
  }

  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  CsvWriter csv((dir / "ladder.csv").string(),
                "variant,time_s,speedup,flux_evals,log_evals,div_evals",
                real_traits<Real>::print_digits);
  for (const auto& r : rows) {
    csv.row(r.variant, r.time_s, r.speedup, r.flux_evals, r.log_evals,
            r.div_evals);
    std::cout << r.variant << ": " << r.time_s << " s, speedup " << r.speedup
              << "\n";
  }
  write_manifest((dir / "manifest.txt").string(), cfg, "# mode = ladder\n");
  return kExitOk;
}

} // namespace

int run_case(const RunConfig& cfg) {
  try {
    validate_config(cfg);
    return cfg.precision == 64 ? run_case_impl<double>(cfg)
                               : run_case_impl<float>(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NonPhysicalState& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  }
}

int run_ladder(const RunConfig& cfg) {
  try {
    validate_config(cfg);
    return cfg.precision == 64 ? run_ladder_impl<double>(cfg)
                               : run_ladder_impl<float>(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NonPhysicalState& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  }
}

} // namespace esdg
