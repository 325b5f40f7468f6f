#pragma once

#include <cstdint>
#include <vector>

namespace esdg {

enum class ScheduleVariant { Indexing, Weighted };

/// Half-sweep pairing of the quadrature indices along one tensor line: node
/// i evaluates the two-point flux against partners 1 + (i + l - 2) mod N_q
/// for l = 2..N_l, which covers every unordered pair exactly once while
/// keeping per-node work nearly (Indexing) or exactly (Weighted) uniform.
/// Weights are stored in half units so coverage sums are exact integers:
/// 2 = full pair, 1 = half (the antipodal pairs the constant-bound variant
/// double counts when N_q is even).
struct FluxSchedule {
  int nq = 0;
  ScheduleVariant variant = ScheduleVariant::Weighted;
  struct Partner {
    std::int16_t index;
    std::int16_t half_weight; // 1 or 2, in units of 1/2
  };
  std::vector<Partner> partners;     // concatenated per-node lists
  std::vector<std::int32_t> offsets; // nq + 1 entries

  int partner_count(int node) const {
    return offsets[size_t(node) + 1] - offsets[size_t(node)];
  }
  const Partner* node_partners(int node) const {
    return partners.data() + offsets[size_t(node)];
  }
  /// Total (i != j) evaluation slots per line sweep.
  std::int64_t slots() const { return std::int64_t(partners.size()); }
};

/// Builds the schedule for a line of `nq` quadrature nodes. Indexing keeps
/// the paper's per-node bounds (uneven by one when N_q is even); Weighted
/// keeps every node at floor(N_q/2) partners and half-weights antipodal
/// pairs. Rejects nq < 2.
FluxSchedule build_schedule(int nq, ScheduleVariant variant);

} // namespace esdg
