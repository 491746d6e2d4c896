#include "protfeat/cluster_tree.h"

#include <array>
#include <cmath>
#include <string>

#include "protfeat/errors.h"

namespace protfeat {
namespace {

// Root cube inflation over the tight bounding box.
constexpr double kRootInflation = 1.005;
// Half width used when all atoms share one point along every axis.
constexpr double kDegenerateHalfWidth = 1.0;

template <typename T>
void accumulate_moments(const MultiIndexTable &terms, const std::array<T, 3> &offset,
                        T q, std::vector<T> &moments) {
  const int p = terms.order();
  // Powers of each offset component up to p.
  std::vector<T> pw(static_cast<std::size_t>(3 * (p + 1)));
  for (int d = 0; d < 3; ++d) {
    T v = 1;
    for (int e = 0; e <= p; ++e) {
      pw[static_cast<std::size_t>(d * (p + 1) + e)] = v;
      v *= offset[static_cast<std::size_t>(d)];
    }
  }
  for (std::size_t s = 0; s < terms.size(); ++s) {
    const auto &k = terms[s].k;
    moments[s] += q * pw[static_cast<std::size_t>(k[0])]
                  * pw[static_cast<std::size_t>(p + 1 + k[1])]
                  * pw[static_cast<std::size_t>(2 * (p + 1) + k[2])];
  }
}

template <typename T>
std::array<T, 3> offset_of(const Vec3 &x, const Vec3 &c) {
  return {static_cast<T>(x[0]) - static_cast<T>(c[0]), static_cast<T>(x[1]) - static_cast<T>(c[1]),
          static_cast<T>(x[2]) - static_cast<T>(c[2])};
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

unsigned octant_of(const Vec3 &point, const Vec3 &center) {
  unsigned o = 0;
  if (point.x() >= center.x()) o |= 1u;
  if (point.y() >= center.y()) o |= 2u;
  if (point.z() >= center.z()) o |= 4u;
  return o;
}

double Cluster::half_diagonal() const noexcept {
  return std::sqrt(3.0) * half_width;
}

std::size_t ClusterTree::level_offset(int l) {
  // (8^l - 1) / 7
  std::size_t off = 0, width = 1;
  for (int i = 0; i < l; ++i) {
    off += width;
    width *= 8;
  }
  return off;
}

std::size_t ClusterTree::cluster_count(int levels) {
  return level_offset(levels + 1);
}

std::span<const Cluster> ClusterTree::level(int l) const {
  if (l < 0 || l > levels_) throw InvalidArgument("level out of range");
  const std::size_t off = level_offset(l);
  return std::span<const Cluster>(clusters_).subspan(off,
                                                     level_offset(l + 1) - off);
}

std::size_t ClusterTree::child(std::size_t flat, unsigned octant) const {
  const Cluster &c = clusters_[flat];
  return level_offset(c.level + 1) + c.code * 8 + octant;
}

ClusterTree ClusterTree::build(std::span<const Vec3> positions,
                               std::span<const double> charges, int levels,
                               int order) {
  if (positions.empty()) throw InvalidArgument("cannot build a tree over zero atoms");
  if (positions.size() != charges.size())
    throw InvalidArgument("positions and charges differ in length");
  if (levels < 0 || order < 0)
    throw InvalidArgument("levels and order must be >= 0");
  if (levels > kMaxLevels)
    throw InvalidArgument("at most " + std::to_string(kMaxLevels)
                          + " tree levels are supported");

  ClusterTree tree(levels, order);
  tree.positions_.assign(positions.begin(), positions.end());
  tree.charges_.assign(charges.begin(), charges.end());

  Vec3 lo = positions.front(), hi = positions.front();
  for (const Vec3 &x : positions) {
    if (!x.allFinite()) throw InvalidArgument("non-finite atom position");
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  double half = 0.5 * (hi - lo).maxCoeff() * kRootInflation;
  if (!(half > 0.0)) half = kDegenerateHalfWidth;

  const std::size_t n_terms = tree.terms_.size();
  tree.clusters_.resize(cluster_count(levels));

  Cluster &root = tree.clusters_[0];
  root.center = 0.5 * (lo + hi);
  root.half_width = half;
  root.members.resize(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    root.members[i] = static_cast<std::uint32_t>(i);

  for (int l = 0; l < levels; ++l) {
    const std::size_t off = level_offset(l);
    const std::size_t count = level_offset(l + 1) - off;
    for (std::size_t i = 0; i < count; ++i) {
      Cluster &parent = tree.clusters_[off + i];
      const double h = 0.5 * parent.half_width;
      for (unsigned o = 0; o < 8; ++o) {
        Cluster &ch = tree.clusters_[tree.child(off + i, o)];
        ch.level = l + 1;
        ch.code = parent.code * 8 + o;
        ch.half_width = h;
        ch.center = parent.center
                    + Vec3((o & 1u) ? h : -h, (o & 2u) ? h : -h,
                           (o & 4u) ? h : -h);
      }
      for (std::uint32_t m : parent.members) {
        const unsigned o = octant_of(positions[m], parent.center);
        tree.clusters_[tree.child(off + i, o)].members.push_back(m);
      }
    }
  }

  for (Cluster &c : tree.clusters_) {
    c.moments.assign(n_terms, 0.0);
    for (std::uint32_t m : c.members)
      accumulate_moments(tree.terms_, offset_of<double>(positions[m], c.center),
                         charges[m], c.moments);
  }
  return tree;
}

void ClusterTree::recompute_moments_m2m() {
  // The binomial shift cancels badly when a child center is far from its
  // atoms relative to the parent center, so the pass runs in extended
  // precision from the particles up and rounds once at the end.
  using Real = long double;
  const int p = terms_.order();
  const std::size_t n_terms = terms_.size();

  // binom[n][k] for n, k <= p
  std::vector<Real> binom(static_cast<std::size_t>((p + 1) * (p + 1)), 0.0L);
  for (int n = 0; n <= p; ++n)
    for (int k = 0; k <= n; ++k)
      binom[static_cast<std::size_t>(n * (p + 1) + k)] = binomial(n, k);
  auto C = [&](int n, int k) {
    return binom[static_cast<std::size_t>(n * (p + 1) + k)];
  };

  std::vector<std::vector<Real>> work(clusters_.size());
  for (std::size_t f = level_offset(levels_); f < clusters_.size(); ++f) {
    work[f].assign(n_terms, 0.0L);
    for (std::uint32_t m : clusters_[f].members)
      accumulate_moments<Real>(terms_, offset_of<Real>(positions_[m], clusters_[f].center),
                               charges_[m], work[f]);
  }

  std::vector<Real> pw(static_cast<std::size_t>(3 * (p + 1)));
  for (int l = levels_ - 1; l >= 0; --l) {
    const std::size_t off = level_offset(l);
    const std::size_t count = level_offset(l + 1) - off;
    for (std::size_t i = 0; i < count; ++i) {
      const Cluster &parent = clusters_[off + i];
      std::vector<Real> &acc_parent = work[off + i];
      acc_parent.assign(n_terms, 0.0L);
      for (unsigned o = 0; o < 8; ++o) {
        const std::size_t c = child(off + i, o);
        if (clusters_[c].empty()) continue;
        const auto s = offset_of<Real>(clusters_[c].center, parent.center);
        for (int d = 0; d < 3; ++d) {
          Real v = 1;
          for (int e = 0; e <= p; ++e) {
            pw[static_cast<std::size_t>(d * (p + 1) + e)] = v;
            v *= s[static_cast<std::size_t>(d)];
          }
        }
        // M_parent^k += sum_{m <= k} C(k, m) s^(k - m) M_child^m
        for (std::size_t sk = 0; sk < n_terms; ++sk) {
          const auto &k = terms_[sk].k;
          Real acc = 0;
          for (int m0 = 0; m0 <= k[0]; ++m0)
            for (int m1 = 0; m1 <= k[1]; ++m1)
              for (int m2 = 0; m2 <= k[2]; ++m2) {
                const int sm = terms_.slot(m0, m1, m2);
                acc += C(k[0], m0) * C(k[1], m1) * C(k[2], m2)
                       * pw[static_cast<std::size_t>(k[0] - m0)]
                       * pw[static_cast<std::size_t>(p + 1 + k[1] - m1)]
                       * pw[static_cast<std::size_t>(2 * (p + 1) + k[2] - m2)]
                       * work[c][static_cast<std::size_t>(sm)];
              }
          acc_parent[sk] += acc;
        }
      }
    }
  }

  // Leaves keep their particle moments.
  for (std::size_t f = 0; f < level_offset(levels_); ++f) {
    for (std::size_t sk = 0; sk < n_terms; ++sk)
      clusters_[f].moments[sk] = static_cast<double>(work[f][sk]);
  }
}

ClusterTree build_tree(std::span<const Atom> atoms, int levels, int order) {
  std::vector<Vec3> pos;
  std::vector<double> q;
  pos.reserve(atoms.size());
  q.reserve(atoms.size());
  for (const Atom &a : atoms) {
    pos.push_back(a.position);
    q.push_back(a.charge);
  }
  return ClusterTree::build(pos, q, levels, order);
}

ClusterTree moments_via_m2m(ClusterTree tree) {
  tree.recompute_moments_m2m();
  return tree;
}

}  // namespace protfeat
