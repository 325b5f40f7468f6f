#pragma once

#include <cstdint>
#include <vector>

#include "esdg/mesh.hpp"

namespace esdg {

/// Contiguous Morton ranges of elements, one per rank; sizes differ by at
/// most one (leading ranks take the remainder).
struct Partition {
  int ranks = 1;
  std::vector<std::int64_t> range_begin; // ranks + 1 entries

  std::int64_t begin(int rank) const { return range_begin[size_t(rank)]; }
  std::int64_t end(int rank) const { return range_begin[size_t(rank) + 1]; }
  std::int64_t size(int rank) const { return end(rank) - begin(rank); }
  int rank_of(std::int64_t elem) const;
};

Partition make_partition(std::int64_t n_elements, int ranks);

/// Static description of the per-step ghost exchange: which faces straddle
/// rank boundaries, and the mailbox each trace travels through. Independent
/// of state values.
struct ExchangePlan {
  struct GhostFace {
    std::int32_t face;
    int peer;
    int my_side; // 0: this rank holds the minus element, 1: the plus
    std::int32_t slot;       // index into the rank's ghost record storage
    std::int32_t my_inbox;   // mailbox this rank receives from
    std::int32_t peer_inbox; // mailbox this rank sends into
  };

  int ranks = 1;
  int n_mailboxes = 0;
  std::vector<std::vector<GhostFace>> ghosts;      // per rank, face-id order
  std::vector<std::vector<std::int32_t>> interior; // per rank, face-id order
  // per rank: face id -> ghost slot (-1 when not a ghost face of that rank)
  std::vector<std::vector<std::int32_t>> ghost_slot;
};

ExchangePlan build_exchange_plan(const MeshGeometry& mesh,
                                 const Partition& part);

} // namespace esdg
