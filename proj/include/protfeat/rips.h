#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "protfeat/structure.h"

namespace protfeat {

inline constexpr std::size_t kDefaultSimplexCapacity = 50'000'000;
inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct Simplex {
  // Sorted vertex ids; only the first `size` entries are meaningful.
  std::array<std::uint32_t, 4> vertices{};
  std::uint8_t size = 1;
  // Largest pairwise distance among the vertices, 0 for a vertex.
  double value = 0.0;

  int dim() const noexcept { return size - 1; }
};

// Vietoris-Rips filtration sorted by (value, dimension, vertex tuple), which
// places every face before its cofaces.
struct Filtration {
  std::vector<Simplex> simplices;
  double max_scale = 0.0;
  int max_dim = 0;
};

struct Bar {
  double birth = 0.0;
  double death = kInfiniteDeath;

  bool finite() const noexcept { return death != kInfiniteDeath; }
  friend bool operator==(const Bar &, const Bar &) = default;
};

struct Barcode {
  int dim = 0;
  std::vector<Bar> bars;  // sorted by (birth, death)
};

// Every simplex of dimension <= max_dim with diameter <= max_scale.
// Throws SingularityError on coincident points and CapacityError once more
// than `capacity` simplices would be generated.
Filtration build_rips_filtration(std::span<const Vec3> points, double max_scale,
                                 int max_dim,
                                 std::size_t capacity = kDefaultSimplexCapacity);

// Z/2 persistence by column reduction. Returns barcodes for dimensions
// 0..max_dim; the top dimension has no cofaces in the filtration, so its
// classes never die and are reported as infinite bars. Zero-length bars are
// dropped. With `clearing`, columns known to reduce to zero are skipped; the
// output is identical either way.
std::vector<Barcode> compute_persistence(const Filtration &f, bool clearing = true);

// Barcodes for dimensions 0..max_dim-1, the ones a max_dim filtration fully
// determines.
std::vector<Barcode> reduce_and_extract(const Filtration &f, bool clearing = true);

std::vector<Barcode> barcode_for_selection(
    const ProteinStructure &s, AtomSelector selector, double max_scale,
    int max_dim, std::size_t capacity = kDefaultSimplexCapacity);

// {"dim": d, "bars": [[birth, death|null], ...]}
nlohmann::json barcode_to_json(const Barcode &b);
Barcode barcode_from_json(const nlohmann::json &j);

}  // namespace protfeat
