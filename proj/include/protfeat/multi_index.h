#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace protfeat {

// Exponent triple (k1, k2, k3) of a Cartesian monomial.
struct MultiIndex {
  std::array<int, 3> k{0, 0, 0};

  int order() const noexcept { return k[0] + k[1] + k[2]; }
  int operator[](std::size_t i) const noexcept { return k[i]; }
  friend bool operator==(const MultiIndex &, const MultiIndex &) = default;
};

// (p+1)(p+2)(p+3)/6: number of multi-indices with |k| <= p.
std::size_t num_terms(int p);

// All k with |k| <= p in graded-lex order: ascending |k|, then ascending
// (k1, k2, k3) lexicographically. Position in this list is the moment slot.
std::vector<MultiIndex> enumerate_multi_indices(int p);

// Dense lookup from (k1, k2, k3) to the slot in enumerate_multi_indices(p).
class MultiIndexTable {
 public:
  explicit MultiIndexTable(int p);

  int order() const noexcept { return p_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<MultiIndex> &indices() const noexcept { return indices_; }
  const MultiIndex &operator[](std::size_t slot) const { return indices_[slot]; }

  // Slot of (a, b, c); -1 when any component is negative or a+b+c > p.
  int slot(int a, int b, int c) const noexcept;

 private:
  int p_;
  std::vector<MultiIndex> indices_;
  std::vector<int> lookup_;  // (p+1)^3 cube
};

}  // namespace protfeat
