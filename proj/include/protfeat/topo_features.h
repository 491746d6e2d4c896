#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "protfeat/rips.h"
#include "protfeat/structure.h"

namespace protfeat {

enum class BinKind { Birth, Death, Persistence };

std::string_view bin_kind_name(BinKind k);

struct BinnedChannel {
  BinKind kind = BinKind::Birth;
  AtomSelector selector = AtomSelector::AllCarbon;
  int dim = 1;
  double scale = 50.0;  // binned range is [0, scale]
  int n_bins = 100;
  std::vector<int> counts;
};

// Bin i (0-based) spans [edge(i), edge(i+1)) with edge(i) = i * scale / n.
//   Birth/Death: bar endpoint falls in the bin; a value equal to `scale`
//   lands in the last bin.
//   Persistence: birth <= edge(i) and death >= edge(i+1).
// Every bar must satisfy 0 <= birth <= death <= scale (RangeError otherwise).
BinnedChannel bin_barcode(const Barcode &bars, BinKind kind, double scale, int n_bins);

struct TopoConfig {
  double scale = 50.0;   // binning range, Angstrom
  int n_bins = 100;      // 0.5 Angstrom bins at the defaults
  int max_dim = 3;       // highest simplex dimension in the Rips filtration
  // Rips cutoff; non-positive means "same as scale". Must not exceed scale.
  double max_scale = 0.0;
  std::size_t capacity = kDefaultSimplexCapacity;
  // Keep every k-th selected atom (1 keeps all).
  std::size_t subsample_stride = 1;

  double effective_max_scale() const { return max_scale > 0.0 ? max_scale : scale; }
};

inline constexpr std::size_t kTopoChannelCount = 12;

// Canonical channel order: selector (carbon, heavy) x dim (1, 2) x kind
// (birth, death, persistence).
struct TopoFeatureVector {
  std::vector<BinnedChannel> channels;
  std::vector<int> flat;
};

std::vector<std::string> topo_channel_names();

// Essential bars get death = cutoff; bars still alive past the cutoff are
// clipped to it as well.
Barcode truncate_deaths(const Barcode &b, double cutoff);

TopoFeatureVector topo_features(const ProteinStructure &s, const TopoConfig &cfg = {});

}  // namespace protfeat
