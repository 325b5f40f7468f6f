#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "esdg/reference_element.hpp"

namespace esdg {

enum class BoundaryCondition { Periodic, Reflecting };

struct MeshConfig {
  std::array<int, 3> base = {1, 1, 1}; // coarse elements per direction
  int refinement = 0;                  // uniform refinement level L
  std::array<double, 3> lo = {0.0, 0.0, 0.0};
  std::array<double, 3> hi = {1.0, 1.0, 1.0};
  std::array<BoundaryCondition, 3> bc = {BoundaryCondition::Periodic,
                                         BoundaryCondition::Periodic,
                                         BoundaryCondition::Periodic};
};

/// One mesh face. Interior faces connect exactly two element sides; the
/// element with the lower Morton index is the minus side and owns the flux
/// evaluation. Reflecting boundary faces are single sided (plus_elem < 0).
struct Face {
  std::int32_t minus_elem = -1;
  std::int32_t plus_elem = -1;
  std::uint8_t dir = 0;        // normal direction 0..2
  std::uint8_t minus_side = 1; // 1: face is the hi side of minus_elem
  bool reflecting = false;
};

/// Uniform axis-aligned brick mesh in global Morton element order, with face
/// connectivity and the (constant per element) metric factors of the affine
/// map to the reference cube.
class MeshGeometry {
public:
  explicit MeshGeometry(const MeshConfig& config);

  const MeshConfig& config() const { return config_; }
  std::int64_t num_elements() const { return num_elements_; }
  const std::array<int, 3>& lattice_dims() const { return dims_; }

  // Metric data shared by every element of the uniform brick.
  const std::array<double, 3>& delta() const { return delta_; }
  double jacobian() const { return jacobian_; } // dx dy dz / 8
  double metric(int dir) const { return 2.0 / delta_[dir]; }
  /// Surface Jacobian of a face with normal `dir` (product of the two
  /// tangential half-extents).
  double surface_jacobian(int dir) const {
    return 0.25 * delta_[(dir + 1) % 3] * delta_[(dir + 2) % 3];
  }

  const std::array<int, 3>& lattice_of(std::int64_t elem) const {
    return lattice_[size_t(elem)];
  }
  std::int64_t element_at(int i, int j, int k) const {
    return elem_at_[lattice_index(i, j, k)];
  }
  /// Low corner of an element's box.
  std::array<double, 3> corner_lo(std::int64_t elem) const;

  const std::vector<Face>& faces() const { return faces_; }
  /// Face id of an element's local face (dir*2 + side, side 0=lo 1=hi).
  std::int32_t face_of(std::int64_t elem, int local_face) const {
    return face_of_[size_t(elem) * 6 + local_face];
  }

  /// Physical coordinate of a node given the 1D reference nodes. Written so
  /// that the two elements sharing a face compute bitwise-identical
  /// coordinates for the shared nodes.
  double node_coordinate(std::int64_t elem, int dir, double ref_node) const {
    const auto& lat = lattice_[size_t(elem)];
    return config_.lo[dir] +
           (double(lat[dir]) + 0.5 * (ref_node + 1.0)) * delta_[dir];
  }

private:
  size_t lattice_index(int i, int j, int k) const {
    return size_t(i) + size_t(dims_[0]) * (size_t(j) + size_t(dims_[1]) * k);
  }
  void build_faces();

  MeshConfig config_;
  std::array<int, 3> dims_;
  std::array<double, 3> delta_;
  double jacobian_;
  std::int64_t num_elements_;
  std::vector<std::array<int, 3>> lattice_; // element id -> lattice coord
  std::vector<std::int64_t> elem_at_;       // lattice index -> element id
  std::vector<Face> faces_;
  std::vector<std::int32_t> face_of_; // 6 per element
};

/// Maps face-node indices (s, t) on a face with normal `dir` to the flat
/// node index inside an element, with the normal coordinate pinned to the
/// lo or hi end. Tangential axes are (dir+1)%3 and (dir+2)%3, in that order,
/// so the two sides of a conforming face enumerate nodes identically.
class FaceIndexer {
public:
  FaceIndexer() = default;
  explicit FaceIndexer(int nq) : nq_(nq) {}
  int nq() const { return nq_; }
  int nodes_per_face() const { return nq_ * nq_; }

  int node(int dir, int side, int fnode) const {
    int s = fnode % nq_, t = fnode / nq_;
    int c[3];
    c[dir] = side ? nq_ - 1 : 0;
    c[(dir + 1) % 3] = s;
    c[(dir + 2) % 3] = t;
    return c[0] + nq_ * (c[1] + nq_ * c[2]);
  }

private:
  int nq_ = 0;
};

} // namespace esdg
