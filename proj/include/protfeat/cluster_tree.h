#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "protfeat/multi_index.h"
#include "protfeat/structure.h"

namespace protfeat {

// Octant code of a child: bit 0 = x-high, bit 1 = y-high, bit 2 = z-high.
// Coordinates equal to the parent center count as high.
unsigned octant_of(const Vec3 &point, const Vec3 &center);

struct Cluster {
  int level = 0;
  // Octant codes along the path from the root, base 8, most significant
  // first. Ascending code is the canonical order within a level.
  std::uint64_t code = 0;
  Vec3 center = Vec3::Zero();
  double half_width = 0.0;
  std::vector<std::uint32_t> members;  // indices into the source atom list
  // M^k = sum_j q_j (x_j - center)^k, one entry per MultiIndexTable slot.
  std::vector<double> moments;

  double half_diagonal() const noexcept;
  bool empty() const noexcept { return members.empty(); }
};

// Complete octree over a charge set: every cluster above the leaf level has
// exactly eight children, empty ones included, so the shape depends only on
// the number of levels.
class ClusterTree {
 public:
  static constexpr int kMaxLevels = 7;

  static ClusterTree build(std::span<const Vec3> positions,
                           std::span<const double> charges, int levels,
                           int order);

  int levels() const noexcept { return levels_; }
  int order() const noexcept { return terms_.order(); }
  const MultiIndexTable &terms() const noexcept { return terms_; }

  std::size_t size() const noexcept { return clusters_.size(); }
  const Cluster &operator[](std::size_t flat) const { return clusters_[flat]; }
  std::span<const Cluster> clusters() const noexcept { return clusters_; }

  // Clusters of one level in ascending path-code order.
  std::span<const Cluster> level(int l) const;
  static std::size_t level_offset(int l);
  static std::size_t cluster_count(int levels);

  // Flat index of child `octant` of cluster `flat`; requires a non-leaf.
  std::size_t child(std::size_t flat, unsigned octant) const;
  bool is_leaf(std::size_t flat) const noexcept {
    return clusters_[flat].level == levels_;
  }

  const std::vector<Vec3> &positions() const noexcept { return positions_; }
  const std::vector<double> &charges() const noexcept { return charges_; }

  // Replaces all non-leaf moments by shifting and summing child moments,
  // bottom-up. Leaf moments are left as computed from particles.
  void recompute_moments_m2m();

 private:
  ClusterTree(int levels, int order) : levels_(levels), terms_(order) {}

  int levels_;
  MultiIndexTable terms_;
  std::vector<Cluster> clusters_;
  std::vector<Vec3> positions_;
  std::vector<double> charges_;
};

// Moments of every cluster computed directly from its member atoms.
ClusterTree build_tree(std::span<const Atom> atoms, int levels, int order);

// Same tree with non-leaf moments rebuilt through moment-to-moment shifts.
ClusterTree moments_via_m2m(ClusterTree tree);

}  // namespace protfeat
