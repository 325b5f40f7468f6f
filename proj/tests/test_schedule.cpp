#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "esdg/schedule.hpp"

using namespace esdg;

namespace {
// total weight per unordered pair, in half units
std::map<std::pair<int, int>, int> coverage(const FluxSchedule& s) {
  std::map<std::pair<int, int>, int> cov;
  for (int i = 0; i < s.nq; ++i) {
    const auto* p = s.node_partners(i);
    for (int l = 0; l < s.partner_count(i); ++l) {
      const int j = p[l].index;
      REQUIRE(j != i);
      cov[{std::min(i, j), std::max(i, j)}] += p[l].half_weight;
    }
  }
  return cov;
}
} // namespace

TEST_CASE("every unordered pair is covered with total weight exactly one") {
  for (int nq = 2; nq <= 8; ++nq) {
    for (auto variant : {ScheduleVariant::Indexing, ScheduleVariant::Weighted}) {
      FluxSchedule s = build_schedule(nq, variant);
      auto cov = coverage(s);
      CHECK(int(cov.size()) == nq * (nq - 1) / 2);
      for (const auto& [pair, hw] : cov) CHECK(hw == 2); // exact rational: 2/2
    }
  }
}

TEST_CASE("nq = 5 reproduces the ten-pair enumeration") {
  // pairs (1-based): (1,2),(1,3),(2,3),(2,4),(3,4),(3,5),(4,5),(4,1),(5,1),(5,2)
  const std::set<std::pair<int, int>> expect = {
      {0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3},
      {2, 4}, {3, 4}, {0, 3}, {0, 4}, {1, 4}};
  for (auto variant : {ScheduleVariant::Indexing, ScheduleVariant::Weighted}) {
    FluxSchedule s = build_schedule(5, variant);
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < 5; ++i) {
      CHECK(s.partner_count(i) == 2); // N_l = floor(5/2) + 1 = 3
      const auto* p = s.node_partners(i);
      for (int l = 0; l < 2; ++l) {
        CHECK(p[l].half_weight == 2);
        seen.insert({std::min(i, int(p[l].index)),
                     std::max(i, int(p[l].index))});
      }
    }
    CHECK(seen == expect);
  }
}

TEST_CASE("nq = 4 indexing splits the per-node counts") {
  FluxSchedule s = build_schedule(4, ScheduleVariant::Indexing);
  CHECK(s.partner_count(0) == 2);
  CHECK(s.partner_count(1) == 2);
  CHECK(s.partner_count(2) == 1);
  CHECK(s.partner_count(3) == 1);
  CHECK(s.slots() == 6); // all C(4,2) pairs once
}

TEST_CASE("nq = 4 weighted keeps counts constant with half-weighted antipodes") {
  FluxSchedule s = build_schedule(4, ScheduleVariant::Weighted);
  int halves = 0;
  for (int i = 0; i < 4; ++i) {
    CHECK(s.partner_count(i) == 2);
    const auto* p = s.node_partners(i);
    for (int l = 0; l < 2; ++l) {
      if (p[l].half_weight == 1) {
        ++halves;
        CHECK((p[l].index - i + 4) % 4 == 2); // antipodal
      }
    }
  }
  CHECK(halves == 4);
}

TEST_CASE("nq = 2") {
  FluxSchedule s = build_schedule(2, ScheduleVariant::Weighted);
  auto cov = coverage(s);
  REQUIRE(cov.size() == 1);
  CHECK(cov.begin()->second == 2); // single pair, total weight one
  CHECK_THROWS(build_schedule(1, ScheduleVariant::Weighted));
}

TEST_CASE("partner lists are sorted ascending") {
  for (int nq = 2; nq <= 8; ++nq) {
    FluxSchedule s = build_schedule(nq, ScheduleVariant::Weighted);
    for (int i = 0; i < nq; ++i) {
      const auto* p = s.node_partners(i);
      for (int l = 1; l < s.partner_count(i); ++l)
        CHECK(p[l].index > p[l - 1].index);
    }
  }
}
