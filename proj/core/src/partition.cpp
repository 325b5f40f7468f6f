#include "esdg/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace esdg {

int Partition::rank_of(std::int64_t elem) const {
  auto it = std::upper_bound(range_begin.begin(), range_begin.end(), elem);
  return int(it - range_begin.begin()) - 1;
}

Partition make_partition(std::int64_t n_elements, int ranks) {
  if (ranks < 1) throw std::invalid_argument("ranks must be >= 1");
  if (ranks > n_elements)
    throw std::invalid_argument("more ranks than elements");

  Partition p;
  p.ranks = ranks;
  p.range_begin.resize(size_t(ranks) + 1);
  const std::int64_t base = n_elements / ranks;
  const std::int64_t rem = n_elements % ranks;
  std::int64_t at = 0;
  for (int r = 0; r < ranks; ++r) {
    p.range_begin[size_t(r)] = at;
    at += base + (r < rem ? 1 : 0);
  }
  p.range_begin[size_t(ranks)] = at;
  return p;
}

ExchangePlan build_exchange_plan(const MeshGeometry& mesh,
                                 const Partition& part) {
  ExchangePlan plan;
  plan.ranks = part.ranks;
  plan.ghosts.resize(size_t(part.ranks));
  plan.interior.resize(size_t(part.ranks));
  plan.ghost_slot.assign(size_t(part.ranks),
                         std::vector<std::int32_t>(mesh.faces().size(), -1));

  const auto& faces = mesh.faces();
  int n_ghost = 0;
  for (std::int32_t f = 0; f < std::int32_t(faces.size()); ++f) {
    const Face& face = faces[size_t(f)];
    const int rm = part.rank_of(face.minus_elem);
    if (face.reflecting || face.plus_elem < 0 ||
        part.rank_of(face.plus_elem) == rm) {
      plan.interior[size_t(rm)].push_back(f);
      continue;
    }
    const int rp = part.rank_of(face.plus_elem);
    // mailbox 2g: inbox of the minus holder; 2g+1: inbox of the plus holder
    const std::int32_t bm = 2 * n_ghost, bp = 2 * n_ghost + 1;
    ExchangePlan::GhostFace gm{f, rp, 0, 0, bm, bp};
    ExchangePlan::GhostFace gp{f, rm, 1, 0, bp, bm};
    gm.slot = std::int32_t(plan.ghosts[size_t(rm)].size());
    plan.ghosts[size_t(rm)].push_back(gm);
    plan.ghost_slot[size_t(rm)][size_t(f)] = gm.slot;
    gp.slot = std::int32_t(plan.ghosts[size_t(rp)].size());
    plan.ghosts[size_t(rp)].push_back(gp);
    plan.ghost_slot[size_t(rp)][size_t(f)] = gp.slot;
    ++n_ghost;
  }
  plan.n_mailboxes = 2 * n_ghost;
  return plan;
}

} // namespace esdg
