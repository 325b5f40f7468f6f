#include "esdg/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "esdg/morton.hpp"

namespace esdg {

MeshGeometry::MeshGeometry(const MeshConfig& config) : config_(config) {
  for (int d = 0; d < 3; ++d) {
    if (config.base[d] < 1)
      throw std::invalid_argument("base element count must be positive");
    if (config.hi[d] <= config.lo[d])
      throw std::invalid_argument("domain extent must have hi > lo");
  }
  if (config.refinement < 0)
    throw std::invalid_argument("refinement level must be >= 0");
  if (config.refinement > 20)
    throw std::invalid_argument("refinement level too large");

  const std::int64_t scale = std::int64_t(1) << config.refinement;
  std::int64_t ne = 1;
  for (int d = 0; d < 3; ++d) {
    std::int64_t n = config.base[d] * scale;
    if (n > (std::int64_t(1) << 21))
      throw std::invalid_argument("lattice dimension exceeds 2^21");
    dims_[d] = int(n);
    ne *= n;
    delta_[d] = (config.hi[d] - config.lo[d]) / double(n);
  }
  // Even at the minimum of two nodes per direction the node count must stay
  // below 2^53 so node indices are exact in a double.
  if (ne > (std::int64_t(1) << 50))
    throw std::invalid_argument("element count overflows the index contract");
  num_elements_ = ne;
  jacobian_ = 0.125 * delta_[0] * delta_[1] * delta_[2];

  // Morton order: interleave-then-sort, stable with a raw-lattice-index tie
  // break (keys are injective, so the tie break is only belt and braces for
  // non-power-of-two lattices).
  struct Entry {
    std::uint64_t key;
    std::int64_t raw;
  };
  std::vector<Entry> entries;
  entries.reserve(size_t(ne));
  for (int k = 0; k < dims_[2]; ++k)
    for (int j = 0; j < dims_[1]; ++j)
      for (int i = 0; i < dims_[0]; ++i)
        entries.push_back({morton_key(i, j, k), std::int64_t(entries.size())});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.key != b.key ? a.key < b.key : a.raw < b.raw;
  });

  lattice_.resize(size_t(ne));
  elem_at_.assign(size_t(ne), -1);
  for (std::int64_t e = 0; e < ne; ++e) {
    std::int64_t raw = entries[size_t(e)].raw;
    int i = int(raw % dims_[0]);
    int j = int((raw / dims_[0]) % dims_[1]);
    int k = int(raw / (std::int64_t(dims_[0]) * dims_[1]));
    lattice_[size_t(e)] = {i, j, k};
    elem_at_[size_t(raw)] = e;
  }

  build_faces();
}

std::array<double, 3> MeshGeometry::corner_lo(std::int64_t elem) const {
  const auto& lat = lattice_[size_t(elem)];
  return {config_.lo[0] + lat[0] * delta_[0],
          config_.lo[1] + lat[1] * delta_[1],
          config_.lo[2] + lat[2] * delta_[2]};
}

void MeshGeometry::build_faces() {
  face_of_.assign(size_t(num_elements_) * 6, -1);

  auto set_face = [&](std::int64_t elem, int dir, int side, std::int32_t id) {
    face_of_[size_t(elem) * 6 + dir * 2 + side] = id;
  };

  for (std::int64_t e = 0; e < num_elements_; ++e) {
    const auto& lat = lattice_[size_t(e)];
    for (int d = 0; d < 3; ++d) {
      // hi-side face of e: either interior/periodic-wrap or boundary
      int ni = lat[d] + 1;
      bool wrap = ni == dims_[d];
      if (wrap && config_.bc[d] == BoundaryCondition::Reflecting) {
        Face f;
        f.minus_elem = std::int32_t(e);
        f.dir = std::uint8_t(d);
        f.minus_side = 1;
        f.reflecting = true;
        set_face(e, d, 1, std::int32_t(faces_.size()));
        faces_.push_back(f);
      } else {
        int c[3] = {lat[0], lat[1], lat[2]};
        c[d] = wrap ? 0 : ni;
        std::int64_t nbr = element_at(c[0], c[1], c[2]);
        Face f;
        f.dir = std::uint8_t(d);
        if (nbr >= e) { // e owns (lower Morton index), face is e's hi side
          f.minus_elem = std::int32_t(e);
          f.plus_elem = std::int32_t(nbr);
          f.minus_side = 1;
        } else {
          f.minus_elem = std::int32_t(nbr);
          f.plus_elem = std::int32_t(e);
          f.minus_side = 0;
        }
        std::int32_t id = std::int32_t(faces_.size());
        set_face(e, d, 1, id);
        set_face(nbr, d, 0, id);
        faces_.push_back(f);
      }
      // lo-side boundary face (reflecting only; periodic lo sides were
      // created as some element's hi-side wrap face)
      if (lat[d] == 0 && config_.bc[d] == BoundaryCondition::Reflecting) {
        Face f;
        f.minus_elem = std::int32_t(e);
        f.dir = std::uint8_t(d);
        f.minus_side = 0;
        f.reflecting = true;
        set_face(e, d, 0, std::int32_t(faces_.size()));
        faces_.push_back(f);
      }
    }
  }
}

} // namespace esdg
