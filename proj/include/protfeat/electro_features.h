#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "protfeat/cluster_tree.h"

namespace protfeat {

// Identifies the flattening order below; bump when it changes.
inline constexpr const char *kElectroOrderingVersion = "level/octant-path/graded-lex/v1";

// Multipole moments of a complete cluster tree, flattened by ascending level,
// then ascending octant path code within a level, then graded-lex multi-index
// within a cluster.
struct ElectroFeatureVector {
  std::vector<double> values;
  int order = 0;
  int levels = 0;
  std::string ordering_version = kElectroOrderingVersion;
};

// N_p * (8^(L+1) - 1) / 7 with N_p = (p+1)(p+2)(p+3)/6.
std::size_t feature_count(int p, int L);

ElectroFeatureVector extract_features(const ClusterTree &tree);

// Builds the tree over `atoms` and flattens it.
ElectroFeatureVector electro_features(std::span<const Atom> atoms, int p, int L);

}  // namespace protfeat
