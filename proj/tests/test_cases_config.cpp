#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "esdg/cases.hpp"
#include "esdg/config.hpp"
#include "esdg/error.hpp"

using namespace esdg;

TEST_CASE("hydrostatic background anchors and balance") {
  GasConstants<double> gc;
  HydrostaticBackground bg{gc, 300.0};

  double q[5];
  bg.state(0.0, 0.0, q);
  const double p0 = pressure(q, 0.0, gc.gamma);
  CHECK(p0 == doctest::Approx(1e5).epsilon(1e-12));
  const double T0 = p0 / (q[0] * gc.R);
  CHECK(T0 == doctest::Approx(300.0).epsilon(1e-12));

  // pi(2000 m)
  CHECK(bg.exner(2000.0) ==
        doctest::Approx(1.0 - 9.81 * 2000.0 / (gc.cp() * 300.0))
            .epsilon(1e-12));
  CHECK(bg.exner(2000.0) == doctest::Approx(0.93490).epsilon(1e-4));

  // dP/dz + rho g = 0 by central differences
  for (double z : {100.0, 500.0, 1200.0, 1900.0}) {
    const double h = 1e-3;
    double qp[5], qm[5], qc[5];
    bg.state(z + h, gc.gravity * (z + h), qp);
    bg.state(z - h, gc.gravity * (z - h), qm);
    bg.state(z, gc.gravity * z, qc);
    const double dpdz = (pressure(qp, gc.gravity * (z + h), gc.gamma) -
                         pressure(qm, gc.gravity * (z - h), gc.gamma)) /
                        (2.0 * h);
    const double rho_g = qc[0] * gc.gravity;
    CHECK(std::abs(dpdz + rho_g) <= 1e-8 * rho_g);
  }

  // above the isentropic top the exner pressure goes non-positive
  CHECK_THROWS(bg.state(40000.0, 9.81 * 40000.0, q));
}

TEST_CASE("bubble perturbation profiles") {
  CHECK(bubble_delta_theta(0.0, 0.0, 260.0, true) == 0.5);
  CHECK(bubble_delta_theta(0.0, 0.0, 260.0, false) == 0.5);
  // smooth profile is continuous at the edge
  CHECK(bubble_delta_theta(250.0, 0.0, 260.0, false) ==
        doctest::Approx(0.0).epsilon(1e-15));
  // sharp profile jumps at the edge
  CHECK(bubble_delta_theta(249.999, 0.0, 260.0, true) == 0.5);
  CHECK(bubble_delta_theta(250.001, 0.0, 260.0, true) == 0.0);
  // outside
  CHECK(bubble_delta_theta(0.0, 600.0, 260.0, true) == 0.0);
}

TEST_CASE("bubble state keeps the background pressure") {
  GasConstants<double> gc;
  HydrostaticBackground bg{gc, 300.0};
  const double z = 260.0, phi = gc.gravity * z;
  double qb[5], qp[5];
  bg.state(z, phi, qb);
  bubble_state(bg, 0.5, z, phi, qp);
  CHECK(pressure(qp, phi, gc.gamma) ==
        doctest::Approx(pressure(qb, phi, gc.gamma)).epsilon(1e-13));
  CHECK(qp[0] < qb[0]); // warmer parcel is lighter at equal pressure
}

TEST_CASE("entropy test state is reproducible and physical") {
  GasConstants<double> gc;
  EntropyTestState a({0, 0, 0}, {1, 1, 1}, gc, 42);
  EntropyTestState b({0, 0, 0}, {1, 1, 1}, gc, 42);
  EntropyTestState c({0, 0, 0}, {1, 1, 1}, gc, 43);
  double qa[5], qb[5], qc[5];
  a.state(0.3, 0.4, 0.5, 0.0, qa);
  b.state(0.3, 0.4, 0.5, 0.0, qb);
  c.state(0.3, 0.4, 0.5, 0.0, qc);
  for (int k = 0; k < 5; ++k) CHECK(qa[k] == qb[k]);
  CHECK(qa[0] != qc[0]);
  CHECK(pressure(qa, 0.0, gc.gamma) > 0.0);
}

TEST_CASE("config parsing, defaults and overrides") {
  RunConfig c = parse_config_text("case = rising_bubble_sharp\nN = 3\n");
  CHECK(c.kind == CaseKind::RisingBubbleSharp);
  CHECK(c.order == 3);
  CHECK(c.lo[0] == -1000.0);
  CHECK(c.bc[2] == BoundaryCondition::Reflecting);

  RunConfig e = parse_config_text("case = entropy_test\n");
  CHECK(e.bc[2] == BoundaryCondition::Periodic);
  CHECK(!e.dissipation);

  RunConfig k = parse_config_text("case = constant_state\n");
  CHECK(k.g == 0.0);

  RunConfig b = parse_config_text("case = baroclinic_channel\n");
  CHECK(b.base[0] == 12);
  CHECK(b.coriolis == CoriolisMode::BetaPlane);
  CHECK(b.num_elements() == 12288);

  apply_overrides(c, {{"variant", "symmetric"}, {"ranks", "4"}});
  CHECK(c.variant == KernelVariant::Symmetric);
  CHECK(c.ranks == 4);

  CHECK_THROWS_AS(parse_config_text("case = nope\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("N = 4\n"), ConfigError); // missing case
  CHECK_THROWS_AS(parse_config_text("case = entropy_test\nwhat = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("case = entropy_test\nN: 4\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("case = entropy_test\nN = four\n"),
                  ConfigError);
}

TEST_CASE("config echo round-trips to an identical config") {
  RunConfig c = parse_config_text(
      "case = rising_bubble_smooth\nN = 4\nL = 2\nnsteps = 17\n"
      "courant = 0.4\noutput_dir = /tmp/xyz\nvariant = logmean\n"
      "precision = 32\ndissipation = off\ncoriolis = f_plane\nf0 = 1e-4\n");
  RunConfig back = parse_config_text(echo_config(c));
  CHECK(back == c);
}

TEST_CASE("config validation") {
  RunConfig c = parse_config_text("case = entropy_test\nnsteps = 1\n");
  CHECK_NOTHROW(validate_config(c));

  auto expect_bad = [&](const char* key, const char* value) {
    RunConfig bad = c;
    apply_overrides(bad, {{key, value}});
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
  };
  expect_bad("N", "0");
  expect_bad("N", "33");
  expect_bad("L", "-1");
  expect_bad("K_x", "0");
  expect_bad("precision", "16");
  expect_bad("ranks", "0");
  expect_bad("ranks", "100000");
  expect_bad("courant", "0");
  expect_bad("gamma", "1.0");
  expect_bad("x_hi", "-1000.0"); // hi <= lo

  RunConfig none = c;
  none.nsteps = 0;
  none.t_final = 0.0;
  CHECK_THROWS_AS(validate_config(none), ConfigError);

  // node count overflow: L = 17 on a unit base with N = 32 is ~2^56 nodes
  RunConfig huge = c;
  huge.order = 32;
  huge.refinement = 17;
  CHECK_THROWS_AS(validate_config(huge), ConfigError);
}

TEST_CASE("dof accounting matches the paper's configurations") {
  RunConfig c = parse_config_text("case = rising_bubble_sharp\nL = 6\n");
  CHECK(c.num_elements() == 262144);
  CHECK(c.dof_per_var() == 32768000);
  RunConfig b = parse_config_text("case = baroclinic_channel\n");
  CHECK(b.dof_per_var() == 1536000);
}
