#pragma once

// Brute-force multipole moments. Cluster geometry is rebuilt from the atom
// bounding box and the (level, path code) pair; membership is decided by
// integer cell coordinates, not by the recursive subdivision in the library.
// Callers compare centers separately and sum about the library's center: an
// atom 1e-3 from its center turns a last-bit center difference into ~1e-11
// relative error in high moments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace oracle {

struct Cube {
  Eigen::Vector3d center;
  double half_width;
};

inline Cube root_cube(const std::vector<Eigen::Vector3d> &pts) {
  Eigen::Vector3d lo = pts[0], hi = pts[0];
  for (const auto &p : pts) {
    for (int d = 0; d < 3; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  double ext = 0.0;
  for (int d = 0; d < 3; ++d) ext = std::max(ext, hi[d] - lo[d]);
  double h = 0.5 * ext * 1.005;
  if (!(h > 0.0)) h = 1.0;
  return {(lo + hi) / 2.0, h};
}

// Cell coordinates (ix, iy, iz) of a level-l cluster from its path code.
inline std::array<std::uint64_t, 3> cell_of_code(std::uint64_t code, int level) {
  std::array<std::uint64_t, 3> c{0, 0, 0};
  for (int l = level - 1; l >= 0; --l) {
    const std::uint64_t oct = (code >> (3 * l)) & 7u;
    for (int d = 0; d < 3; ++d) c[static_cast<std::size_t>(d)] = c[static_cast<std::size_t>(d)] * 2 + ((oct >> d) & 1u);
  }
  return c;
}

inline Cube cube_of(const Cube &root, std::uint64_t code, int level) {
  const auto cell = cell_of_code(code, level);
  const double w = 2.0 * root.half_width / static_cast<double>(1ull << level);
  Eigen::Vector3d c;
  for (int d = 0; d < 3; ++d)
    c[d] = root.center[d] - root.half_width + (static_cast<double>(cell[static_cast<std::size_t>(d)]) + 0.5) * w;
  return {c, w / 2.0};
}

inline bool in_cell(const Cube &root, const Eigen::Vector3d &x, std::uint64_t code, int level) {
  const auto cell = cell_of_code(code, level);
  const auto n = static_cast<std::int64_t>(1ull << level);
  const double w = 2.0 * root.half_width / static_cast<double>(n);
  for (int d = 0; d < 3; ++d) {
    auto i = static_cast<std::int64_t>(std::floor((x[d] - (root.center[d] - root.half_width)) / w));
    i = std::clamp<std::int64_t>(i, 0, n - 1);
    if (static_cast<std::uint64_t>(i) != cell[static_cast<std::size_t>(d)]) return false;
  }
  return true;
}

struct MomentValue {
  double value = 0.0;
  double magnitude = 0.0;  // sum of |terms|, the scale for relative error
};

inline MomentValue moment(const std::vector<Eigen::Vector3d> &pts, const std::vector<double> &q,
                          const Cube &root, std::uint64_t code, int level, const Eigen::Vector3d &center,
                          int k1, int k2, int k3) {
  MomentValue m;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (!in_cell(root, pts[j], code, level)) continue;
    const Eigen::Vector3d d = pts[j] - center;
    const double t = q[j] * std::pow(d[0], k1) * std::pow(d[1], k2) * std::pow(d[2], k3);
    m.value += t;
    m.magnitude += std::abs(t);
  }
  return m;
}

}  // namespace oracle
