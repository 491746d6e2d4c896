#include "protfeat/rips.h"

#include <algorithm>
#include <string>
#include <array>
#include <limits>

#include <nlohmann/json.hpp>

#include "protfeat/errors.h"

namespace protfeat {
namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

bool filtration_less(const Simplex &a, const Simplex &b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.size != b.size) return a.size < b.size;
  return std::lexicographical_compare(a.vertices.begin(),
                                      a.vertices.begin() + a.size,
                                      b.vertices.begin(),
                                      b.vertices.begin() + b.size);
}

bool vertices_less(const Simplex &a, const Simplex &b) {
  return std::lexicographical_compare(a.vertices.begin(), a.vertices.begin() + a.size,
                                      b.vertices.begin(), b.vertices.begin() + b.size);
}

// Symmetric difference of two sorted index lists, written into `a`.
void add_column(std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b,
                std::vector<std::uint32_t> &scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(scratch));
  a.swap(scratch);
}

// Walks every simplex above dimension 1 in vertex order. `visit(v, size)`
// returns false to stop early.
template <class Visit>
void for_each_clique(const std::vector<std::vector<std::uint32_t>> &nbr, int max_dim,
                     Visit &&visit) {
  std::vector<std::uint32_t> common, common3;
  for (std::uint32_t i = 0; i < nbr.size(); ++i) {
    for (std::uint32_t j : nbr[i]) {
      common.clear();
      std::set_intersection(nbr[i].begin(), nbr[i].end(), nbr[j].begin(), nbr[j].end(),
                            std::back_inserter(common));
      for (std::uint32_t k : common) {
        if (!visit(std::array<std::uint32_t, 4>{i, j, k, 0}, 3)) return;
        if (max_dim < 3) continue;
        common3.clear();
        std::set_intersection(common.begin(), common.end(), nbr[k].begin(), nbr[k].end(),
                              std::back_inserter(common3));
        for (std::uint32_t l : common3)
          if (!visit(std::array<std::uint32_t, 4>{i, j, k, l}, 4)) return;
      }
    }
  }
}

}  // namespace

Filtration build_rips_filtration(std::span<const Vec3> points, double max_scale,
                                 int max_dim, std::size_t capacity) {
  if (max_dim < 0 || max_dim > 3)
    throw InvalidArgument("max_dim must lie in [0, 3]");
  if (!(max_scale >= 0.0)) throw InvalidArgument("max_scale must be >= 0");
  const std::size_t n = points.size();
  if (n >= kNone) throw CapacityError("too many points");

  const auto over_capacity = [&] {
    return CapacityError("Rips complex exceeds " + std::to_string(capacity)
                         + " simplices; reduce the max scale or subsample the "
                           "point cloud");
  };

  // Higher-indexed neighbours within the scale, sorted by index.
  std::vector<std::vector<std::uint32_t>> nbr(n);
  std::size_t total = n;
  if (total > capacity) throw over_capacity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (points[i] - points[j]).norm();
      if (d == 0.0) throw SingularityError(i, j);
      if (d <= max_scale && max_dim >= 1) {
        nbr[i].push_back(static_cast<std::uint32_t>(j));
        if (++total > capacity) throw over_capacity();
      }
    }
  }

  // Count before allocating so an oversized complex fails without touching memory.
  if (max_dim >= 2) {
    bool exceeded = false;
    for_each_clique(nbr, max_dim, [&](const auto &, int) {
      exceeded = ++total > capacity;
      return !exceeded;
    });
    if (exceeded) throw over_capacity();
  }

  auto dist = [&](std::uint32_t a, std::uint32_t b) {
    return (points[a] - points[b]).norm();
  };

  Filtration f;
  f.max_scale = max_scale;
  f.max_dim = max_dim;
  f.simplices.reserve(total);
  for (std::size_t i = 0; i < n; ++i) {
    Simplex s;
    s.vertices[0] = static_cast<std::uint32_t>(i);
    s.size = 1;
    f.simplices.push_back(s);
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j : nbr[i]) {
      Simplex s;
      s.vertices = {i, j, 0, 0};
      s.size = 2;
      s.value = dist(i, j);
      f.simplices.push_back(s);
    }
  }
  if (max_dim >= 2) {
    for_each_clique(nbr, max_dim, [&](const std::array<std::uint32_t, 4> &v, int size) {
      Simplex s;
      s.vertices = v;
      s.size = static_cast<std::uint8_t>(size);
      double value = 0.0;
      for (int a = 0; a < size; ++a)
        for (int b = a + 1; b < size; ++b)
          value = std::max(value, dist(v[static_cast<std::size_t>(a)],
                                       v[static_cast<std::size_t>(b)]));
      s.value = value;
      f.simplices.push_back(s);
      return true;
    });
  }

  std::sort(f.simplices.begin(), f.simplices.end(), filtration_less);
  return f;
}

std::vector<Barcode> compute_persistence(const Filtration &f, bool clearing) {
  const auto &sx = f.simplices;
  const std::size_t m = sx.size();
  if (m >= kNone) throw CapacityError("filtration too large");

  // Per dimension, filtration indices sorted by vertex tuple for face lookup.
  std::vector<std::vector<std::uint32_t>> by_vertices(4);
  for (std::size_t i = 0; i < m; ++i)
    by_vertices[static_cast<std::size_t>(sx[i].size - 1)].push_back(
        static_cast<std::uint32_t>(i));
  for (auto &v : by_vertices) {
    std::sort(v.begin(), v.end(), [&](std::uint32_t a, std::uint32_t b) {
      return vertices_less(sx[a], sx[b]);
    });
  }

  auto boundary = [&](std::size_t j, std::vector<std::uint32_t> &out) {
    out.clear();
    const Simplex &s = sx[j];
    if (s.size < 2) return;
    const auto &table = by_vertices[static_cast<std::size_t>(s.size - 2)];
    for (int drop = 0; drop < s.size; ++drop) {
      Simplex face;
      face.size = static_cast<std::uint8_t>(s.size - 1);
      int w = 0;
      for (int v = 0; v < s.size; ++v)
        if (v != drop)
          face.vertices[static_cast<std::size_t>(w++)] = s.vertices[static_cast<std::size_t>(v)];
      const auto it = std::lower_bound(
          table.begin(), table.end(), face,
          [&](std::uint32_t a, const Simplex &b) { return vertices_less(sx[a], b); });
      if (it == table.end() || vertices_less(face, sx[*it]))
        throw Error("filtration is missing a face of simplex " + std::to_string(j));
      out.push_back(*it);
    }
    std::sort(out.begin(), out.end());
  };

  // Only reduced columns that own a pivot are kept.
  struct Stored {
    std::uint32_t column;
    std::vector<std::uint32_t> entries;
  };
  std::vector<Stored> stored;
  std::vector<std::uint32_t> pivot_of_row(m, kNone);  // row -> index into `stored`
  std::vector<std::uint32_t> work, scratch;

  auto reduce = [&](std::size_t j) {
    boundary(j, work);
    while (!work.empty()) {
      const std::uint32_t low = work.back();
      const std::uint32_t other = pivot_of_row[low];
      if (other == kNone) {
        if (stored.size() >= kNone) throw CapacityError("too many persistence pairs");
        pivot_of_row[low] = static_cast<std::uint32_t>(stored.size());
        stored.push_back({static_cast<std::uint32_t>(j), work});
        return;
      }
      add_column(work, stored[other].entries, scratch);
    }
  };

  if (clearing) {
    // Highest dimension first; a pivot row marks its own column as zero.
    for (int d = f.max_dim; d >= 1; --d) {
      for (std::size_t j = 0; j < m; ++j) {
        if (sx[j].dim() != d || pivot_of_row[j] != kNone) continue;
        reduce(j);
      }
    }
  } else {
    for (std::size_t j = 0; j < m; ++j) reduce(j);
  }

  std::vector<Barcode> out(static_cast<std::size_t>(f.max_dim + 1));
  for (int d = 0; d <= f.max_dim; ++d) out[static_cast<std::size_t>(d)].dim = d;

  std::vector<bool> is_death(m, false);
  for (const Stored &s : stored) {
    is_death[s.column] = true;
    const std::uint32_t i = s.entries.back();
    const double birth = sx[i].value, death = sx[s.column].value;
    if (birth < death)
      out[static_cast<std::size_t>(sx[i].dim())].bars.push_back({birth, death});
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!is_death[j] && pivot_of_row[j] == kNone)
      out[static_cast<std::size_t>(sx[j].dim())].bars.push_back({sx[j].value, kInfiniteDeath});
  }
  for (auto &b : out) {
    std::sort(b.bars.begin(), b.bars.end(), [](const Bar &a, const Bar &c) {
      return a.birth != c.birth ? a.birth < c.birth : a.death < c.death;
    });
  }
  return out;
}

std::vector<Barcode> reduce_and_extract(const Filtration &f, bool clearing) {
  auto all = compute_persistence(f, clearing);
  all.pop_back();
  return all;
}

std::vector<Barcode> barcode_for_selection(const ProteinStructure &s,
                                           AtomSelector selector,
                                           double max_scale, int max_dim,
                                           std::size_t capacity) {
  const auto pts = select_atoms(s, selector);
  return reduce_and_extract(build_rips_filtration(pts, max_scale, max_dim, capacity));
}

nlohmann::json barcode_to_json(const Barcode &b) {
  nlohmann::json bars = nlohmann::json::array();
  for (const Bar &bar : b.bars) {
    bars.push_back({bar.birth, bar.finite() ? nlohmann::json(bar.death)
                                            : nlohmann::json(nullptr)});
  }
  return {{"dim", b.dim}, {"bars", std::move(bars)}};
}

Barcode barcode_from_json(const nlohmann::json &j) {
  Barcode b;
  b.dim = j.at("dim").get<int>();
  for (const auto &bar : j.at("bars")) {
    Bar x;
    x.birth = bar.at(0).get<double>();
    x.death = bar.at(1).is_null() ? kInfiniteDeath : bar.at(1).get<double>();
    b.bars.push_back(x);
  }
  return b;
}

}  // namespace protfeat
