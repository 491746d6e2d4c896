#include "protfeat/cluster_tree.h"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles/moment_oracle.h"
#include "oracles/random_cloud.h"
#include "protfeat/errors.h"

namespace protfeat {
namespace {

double rel(double a, const oracle::MomentValue &m) {
  const double scale = std::max(m.magnitude, 1e-300);
  return std::abs(a - m.value) / scale;
}

// Every moment of every cluster against the brute-force oracle.
double max_moment_error(const ClusterTree &t, const oracle::Cloud &c) {
  const auto root = oracle::root_cube(c.pts);
  double worst = 0.0;
  for (const auto &cl : t.clusters()) {
    const auto cube = oracle::cube_of(root, cl.code, cl.level);
    EXPECT_NEAR((cube.center - cl.center).norm(), 0.0, 1e-9 * root.half_width);
    for (std::size_t s = 0; s < t.terms().size(); ++s) {
      const auto &k = t.terms()[s].k;
      const auto m = oracle::moment(c.pts, c.q, root, cl.code, cl.level, cl.center, k[0], k[1], k[2]);
      if (m.magnitude == 0.0) {
        EXPECT_EQ(cl.moments[s], 0.0);
        continue;
      }
      worst = std::max(worst, rel(cl.moments[s], m));
    }
  }
  return worst;
}

TEST(Octant, TieGoesHigh) {
  const Vec3 c(0, 0, 0);
  EXPECT_EQ(octant_of(Vec3(0, 0, 0), c), 7u);
  EXPECT_EQ(octant_of(Vec3(-1, -1, -1), c), 0u);
  EXPECT_EQ(octant_of(Vec3(1, -1, -1), c), 1u);
  EXPECT_EQ(octant_of(Vec3(-1, 1, -1), c), 2u);
  EXPECT_EQ(octant_of(Vec3(-1, -1, 1), c), 4u);
}

TEST(ClusterTree, SingleCenteredCharge) {
  const std::vector<Vec3> pts{Vec3(0, 0, 0)};
  const std::vector<double> q{2.5};
  auto t = ClusterTree::build(pts, q, 0, 3);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_DOUBLE_EQ(t[0].moments[0], 2.5);
  for (std::size_t s = 1; s < t.terms().size(); ++s) EXPECT_EQ(t[0].moments[s], 0.0);
  EXPECT_DOUBLE_EQ(t[0].half_width, 1.0);
}

TEST(ClusterTree, SymmetricPair) {
  const std::vector<Vec3> pts{Vec3(1, 0, 0), Vec3(-1, 0, 0)};
  const std::vector<double> q{1.0, 1.0};
  auto t = ClusterTree::build(pts, q, 0, 2);
  const auto &T = t.terms();
  EXPECT_DOUBLE_EQ(t[0].moments[static_cast<std::size_t>(T.slot(0, 0, 0))], 2.0);
  EXPECT_NEAR(t[0].moments[static_cast<std::size_t>(T.slot(1, 0, 0))], 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(t[0].moments[static_cast<std::size_t>(T.slot(2, 0, 0))], 2.0);
  EXPECT_EQ(t[0].moments[static_cast<std::size_t>(T.slot(0, 2, 0))], 0.0);
}

TEST(ClusterTree, CountsAndLayout) {
  for (int L = 0; L <= 4; ++L) EXPECT_EQ(ClusterTree::cluster_count(L), (std::size_t{1} << (3 * (L + 1))) / 7);
  auto c = oracle::random_cloud(30, 10.0, 3);
  auto t = ClusterTree::build(c.pts, c.q, 2, 1);
  EXPECT_EQ(t.size(), 73u);
  for (std::size_t f = 0; f < t.size(); ++f) {
    const auto &cl = t[f];
    EXPECT_EQ(f, ClusterTree::level_offset(cl.level) + cl.code);
    if (t.is_leaf(f)) continue;
    for (unsigned o = 0; o < 8; ++o) {
      const auto &ch = t[t.child(f, o)];
      EXPECT_EQ(ch.level, cl.level + 1);
      EXPECT_DOUBLE_EQ(ch.half_width, cl.half_width / 2);
    }
  }
  EXPECT_THROW(ClusterTree::build(c.pts, c.q, -1, 1), InvalidArgument);
  EXPECT_THROW(ClusterTree::build(c.pts, c.q, ClusterTree::kMaxLevels + 1, 1), InvalidArgument);
}

TEST(ClusterTree, MembersPartitionEveryLevel) {
  auto c = oracle::random_cloud(120, 25.0, 5);
  auto t = ClusterTree::build(c.pts, c.q, 3, 2);
  for (int l = 0; l <= 3; ++l) {
    std::vector<int> seen(c.pts.size(), 0);
    double charge = 0.0;
    for (const auto &cl : t.level(l)) {
      for (auto m : cl.members) ++seen[m];
      charge += cl.moments[0];
    }
    for (int s : seen) EXPECT_EQ(s, 1);
    double total = 0.0;
    for (double q : c.q) total += q;
    EXPECT_NEAR(charge, total, 1e-12);
  }
}

TEST(ClusterTree, MomentsMatchBruteForce) {
  auto c = oracle::random_cloud(50, 20.0, 17);
  auto t = ClusterTree::build(c.pts, c.q, 2, 3);
  EXPECT_LE(max_moment_error(t, c), 1e-12);
}

TEST(M2M, SingleLevelIsIdentity) {
  auto c = oracle::random_cloud(40, 12.0, 8);
  auto t = ClusterTree::build(c.pts, c.q, 0, 4);
  auto m = moments_via_m2m(t);
  for (std::size_t s = 0; s < t.terms().size(); ++s) EXPECT_EQ(m[0].moments[s], t[0].moments[s]);
}

TEST(M2M, MatchesDirectMoments) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto c = oracle::random_cloud(200, 30.0, seed);
    auto t = ClusterTree::build(c.pts, c.q, 3, 4);
    auto m = moments_via_m2m(t);
    double worst = 0.0;
    const auto root = oracle::root_cube(c.pts);
    for (std::size_t f = 0; f < t.size(); ++f)
      for (std::size_t s = 0; s < t.terms().size(); ++s) {
        const auto &k = t.terms()[s].k;
        const auto ref = oracle::moment(c.pts, c.q, root, t[f].code, t[f].level, t[f].center, k[0], k[1], k[2]);
        if (ref.magnitude == 0.0) continue;
        worst = std::max(worst, rel(m[f].moments[s], ref));
      }
    EXPECT_LE(worst, 1e-10) << "seed " << seed;
  }
}

TEST(M2M, HandShift) {
  // One charge at d from a child center: parent first moment = q (d + s).
  const std::vector<Vec3> pts{Vec3(0, 0, 0), Vec3(4, 4, 4)};
  const std::vector<double> q{1.5, 0.0};
  auto t = ClusterTree::build(pts, q, 1, 1);
  auto m = moments_via_m2m(t);
  const auto &T = t.terms();
  const Vec3 want = 1.5 * (pts[0] - t[0].center);
  EXPECT_NEAR(m[0].moments[static_cast<std::size_t>(T.slot(1, 0, 0))], want.x(), 1e-14);
  EXPECT_NEAR(m[0].moments[static_cast<std::size_t>(T.slot(0, 1, 0))], want.y(), 1e-14);
  EXPECT_NEAR(m[0].moments[static_cast<std::size_t>(T.slot(0, 0, 1))], want.z(), 1e-14);
}

TEST(ClusterTree, DegenerateCloudStillBuilds) {
  const std::vector<Vec3> pts{Vec3(3, 3, 3), Vec3(3, 3, 3)};
  const std::vector<double> q{1.0, -1.0};
  auto t = ClusterTree::build(pts, q, 2, 2);
  EXPECT_DOUBLE_EQ(t[0].half_width, 1.0);
  EXPECT_NEAR(t[0].moments[0], 0.0, 0.0);
}

TEST(ClusterTree, MomentCountPerCluster) {
  auto c = oracle::random_cloud(25, 5.0, 1);
  for (int p = 0; p <= 6; ++p) {
    auto t = ClusterTree::build(c.pts, c.q, 1, p);
    for (const auto &cl : t.clusters())
      EXPECT_EQ(cl.moments.size(), static_cast<std::size_t>((p + 1) * (p + 2) * (p + 3) / 6));
  }
}

}  // namespace
}  // namespace protfeat
