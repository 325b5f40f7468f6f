#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <thread>

#include "esdg/partition.hpp"
#include "esdg/solver.hpp"
#include "test_helpers.hpp"

using namespace esdg;
using namespace esdg::test;

TEST_CASE("partition ranges") {
  {
    Partition p = make_partition(8, 1);
    CHECK(p.begin(0) == 0);
    CHECK(p.end(0) == 8);
  }
  {
    Partition p = make_partition(8, 2);
    CHECK(p.begin(1) == 4);
    CHECK(p.end(1) == 8);
  }
  {
    Partition p = make_partition(10, 4);
    CHECK(p.size(0) == 3);
    CHECK(p.size(1) == 3);
    CHECK(p.size(2) == 2);
    CHECK(p.size(3) == 2);
  }
  CHECK_THROWS(make_partition(4, 5));
  CHECK_THROWS(make_partition(4, 0));
  {
    Partition p = make_partition(10, 3);
    for (std::int64_t e = 0; e < 10; ++e) {
      const int r = p.rank_of(e);
      CHECK(e >= p.begin(r));
      CHECK(e < p.end(r));
    }
  }
}

TEST_CASE("exchange plan: ghost symmetry and matching mailboxes") {
  auto mesh = bubble_mesh(1, true);
  for (int ranks : {2, 3, 4, 8}) {
    Partition part = make_partition(mesh->num_elements(), ranks);
    ExchangePlan plan = build_exchange_plan(*mesh, part);
    // every ghost face of rank A toward B appears in B's list toward A,
    // with crossed mailboxes
    for (int r = 0; r < ranks; ++r) {
      for (const auto& g : plan.ghosts[size_t(r)]) {
        bool found = false;
        for (const auto& h : plan.ghosts[size_t(g.peer)]) {
          if (h.face != g.face) continue;
          found = true;
          CHECK(h.peer == r);
          CHECK(h.my_side == 1 - g.my_side);
          CHECK(h.my_inbox == g.peer_inbox);
          CHECK(h.peer_inbox == g.my_inbox);
        }
        CHECK(found);
      }
    }
    // interior + ghost face sets partition the mesh faces
    size_t total = 0;
    for (int r = 0; r < ranks; ++r) total += plan.interior[size_t(r)].size();
    size_t ghost_unique = 0;
    for (int r = 0; r < ranks; ++r)
      ghost_unique += plan.ghosts[size_t(r)].size();
    CHECK(total + ghost_unique / 2 == mesh->faces().size());
  }
}

namespace {

template <class Real>
StateField<Real> run_steps(int ranks, int steps, int order, int refinement) {
  auto mesh = bubble_mesh(refinement, false);
  KernelSettings<Real> s;
  Solver<Real> solver(mesh, order, GasConstants<double>{}, s, ranks);
  HydrostaticBackground bg{solver.constants(), 300.0};
  solver.init_state(
      [&](double x, double y, double z, double phi, double q[5]) {
        bubble_state(bg, bubble_delta_theta(x, y, z, true), z, phi, q);
      });
  const Real dt = Real(solver.compute_dt(0.5));
  for (int i = 0; i < steps; ++i) solver.step(dt);
  return solver.state();
}

} // namespace

TEST_CASE("partitioned runs are bitwise identical to serial") {
  const StateField<double> serial = run_steps<double>(1, 10, 3, 1);
  for (int ranks : {2, 4}) {
    const StateField<double> parallel = run_steps<double>(ranks, 10, 3, 1);
    CHECK(serial.data == parallel.data);
  }
}

TEST_CASE("single-rank rhs equals multi-rank rhs bitwise") {
  auto mesh = bubble_mesh(1, true);
  StateField<double> rhs1, rhs4;
  for (int ranks : {1, 4}) {
    KernelSettings<double> s;
    Solver<double> solver(mesh, 4, GasConstants<double>{}, s, ranks);
    init_entropy_test_state(solver, 31);
    StateField<double> rhs(mesh->num_elements(), solver.ops().n3);
    solver.assemble_rhs(solver.state(), rhs, 0.0, 1.0);
    (ranks == 1 ? rhs1 : rhs4) = rhs;
  }
  CHECK(rhs1.data == rhs4.data);
}

TEST_CASE("volume work overlaps a slow exchange") {
  auto mesh = bubble_mesh(1, true);
  KernelSettings<double> s;
  Solver<double> solver(mesh, 3, GasConstants<double>{}, s, 2);
  init_entropy_test_state(solver, 8);
  solver.set_record_events(true);
  // rank 0 delivers slowly; rank 1 must have started its volume work long
  // before the last trace from rank 0 lands
  solver.transport().send_hook = [](int src, int) {
    if (src == 0) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  };
  StateField<double> rhs(mesh->num_elements(), solver.ops().n3);
  solver.assemble_rhs(solver.state(), rhs, 0.0, 1.0);
  const RankEvents& ev = solver.events()[1];
  REQUIRE(ev.last_arrival_ns > 0);
  CHECK(ev.volume_start_ns < ev.last_arrival_ns);
  CHECK(ev.wait_end_ns >= ev.last_arrival_ns);
  solver.transport().send_hook = nullptr;
}

TEST_CASE("results are unaffected by a slow exchange") {
  auto mesh = bubble_mesh(1, true);
  KernelSettings<double> s;
  StateField<double> fast, slow;
  for (bool delay : {false, true}) {
    Solver<double> solver(mesh, 3, GasConstants<double>{}, s, 2);
    init_entropy_test_state(solver, 9);
    if (delay)
      solver.transport().send_hook = [](int, int) {
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      };
    StateField<double> rhs(mesh->num_elements(), solver.ops().n3);
    solver.assemble_rhs(solver.state(), rhs, 0.0, 1.0);
    (delay ? slow : fast) = rhs;
  }
  CHECK(fast.data == slow.data);
}
