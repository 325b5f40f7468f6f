#include "esdg/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace esdg {

FluxSchedule build_schedule(int nq, ScheduleVariant variant) {
  if (nq < 2)
    throw std::invalid_argument("flux schedule needs at least two nodes");

  FluxSchedule s;
  s.nq = nq;
  s.variant = variant;
  s.offsets.assign(size_t(nq) + 1, 0);

  const int half = nq / 2;
  std::vector<FluxSchedule::Partner> node;
  for (int i = 0; i < nq; ++i) {
    node.clear();
    int count;
    if (variant == ScheduleVariant::Indexing && nq % 2 == 0) {
      // Paper's per-node bounds for odd polynomial order: the first half of
      // the nodes run one extra iteration.
      count = i < half ? half : half - 1;
    } else {
      count = half;
    }
    for (int o = 1; o <= count; ++o) {
      int j = (i + o) % nq;
      std::int16_t hw = 2;
      if (variant == ScheduleVariant::Weighted && nq % 2 == 0 && o == half)
        hw = 1; // antipodal pair, visited from both ends
      node.push_back({std::int16_t(j), hw});
    }
    std::sort(node.begin(), node.end(),
              [](const FluxSchedule::Partner& a,
                 const FluxSchedule::Partner& b) { return a.index < b.index; });
    s.partners.insert(s.partners.end(), node.begin(), node.end());
    s.offsets[size_t(i) + 1] = std::int32_t(s.partners.size());
  }
  return s;
}

} // namespace esdg
