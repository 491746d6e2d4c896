#include "protfeat/electro_features.h"

#include "protfeat/errors.h"

namespace protfeat {

std::size_t feature_count(int p, int L) {
  if (p < 0 || L < 0) throw InvalidArgument("p and L must be >= 0");
  if (L > 20) throw InvalidArgument("L too large for a feature count");
  return num_terms(p) * ClusterTree::cluster_count(L);
}

ElectroFeatureVector extract_features(const ClusterTree &tree) {
  ElectroFeatureVector out;
  out.order = tree.order();
  out.levels = tree.levels();
  out.values.reserve(feature_count(out.order, out.levels));
  // Clusters are stored level by level in ascending path code already.
  for (const Cluster &c : tree.clusters())
    out.values.insert(out.values.end(), c.moments.begin(), c.moments.end());
  return out;
}

ElectroFeatureVector electro_features(std::span<const Atom> atoms, int p, int L) {
  return extract_features(build_tree(atoms, L, p));
}

}  // namespace protfeat
