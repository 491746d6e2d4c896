#include "protfeat/topo_features.h"

#include <algorithm>
#include <cmath>

#include "protfeat/errors.h"

namespace protfeat {
namespace {

double edge(int i, double scale, int n) { return (i * scale) / n; }

// Bin holding value v under half-open edges, last bin closed.
int bin_of(double v, double scale, int n) {
  if (v >= scale) return n - 1;
  int i = static_cast<int>(std::floor(v * n / scale));
  i = std::clamp(i, 0, n - 1);
  while (i > 0 && edge(i, scale, n) > v) --i;
  while (i + 1 < n && edge(i + 1, scale, n) <= v) ++i;
  return i;
}

constexpr AtomSelector kSelectors[] = {AtomSelector::AllCarbon,
                                       AtomSelector::AllHeavy};
constexpr int kDims[] = {1, 2};
constexpr BinKind kKinds[] = {BinKind::Birth, BinKind::Death,
                              BinKind::Persistence};

}  // namespace

std::string_view bin_kind_name(BinKind k) {
  switch (k) {
    case BinKind::Birth: return "birth";
    case BinKind::Death: return "death";
    case BinKind::Persistence: return "persistence";
  }
  return "?";
}

BinnedChannel bin_barcode(const Barcode &bars, BinKind kind, double scale,
                          int n_bins) {
  if (n_bins < 1) throw InvalidArgument("n_bins must be >= 1");
  if (!(scale > 0.0)) throw InvalidArgument("binning scale must be > 0");

  BinnedChannel ch;
  ch.kind = kind;
  ch.dim = bars.dim;
  ch.scale = scale;
  ch.n_bins = n_bins;
  ch.counts.assign(static_cast<std::size_t>(n_bins), 0);

  for (const Bar &b : bars.bars) {
    if (!(b.birth >= 0.0 && b.birth <= b.death && b.death <= scale)) {
      throw RangeError("bar (" + std::to_string(b.birth) + ", "
                       + std::to_string(b.death) + ") outside [0, "
                       + std::to_string(scale) + "]; truncate deaths first");
    }
    switch (kind) {
      case BinKind::Birth:
        ++ch.counts[static_cast<std::size_t>(bin_of(b.birth, scale, n_bins))];
        break;
      case BinKind::Death:
        ++ch.counts[static_cast<std::size_t>(bin_of(b.death, scale, n_bins))];
        break;
      case BinKind::Persistence:
        for (int i = 0; i < n_bins; ++i) {
          if (b.birth <= edge(i, scale, n_bins)
              && b.death >= edge(i + 1, scale, n_bins))
            ++ch.counts[static_cast<std::size_t>(i)];
        }
        break;
    }
  }
  return ch;
}

std::vector<std::string> topo_channel_names() {
  std::vector<std::string> out;
  for (AtomSelector sel : kSelectors)
    for (int d : kDims)
      for (BinKind k : kKinds)
        out.push_back(std::string(selector_name(sel)) + "-H" + std::to_string(d)
                      + "-" + std::string(bin_kind_name(k)));
  return out;
}

Barcode truncate_deaths(const Barcode &b, double cutoff) {
  Barcode out{b.dim, {}};
  out.bars.reserve(b.bars.size());
  for (Bar bar : b.bars) {
    if (bar.death > cutoff) bar.death = cutoff;
    if (bar.birth < bar.death) out.bars.push_back(bar);
  }
  return out;
}

TopoFeatureVector topo_features(const ProteinStructure &s, const TopoConfig &cfg) {
  const double cutoff = cfg.effective_max_scale();
  if (cutoff > cfg.scale)
    throw InvalidArgument("Rips max scale must not exceed the binning scale");
  if (cfg.subsample_stride < 1) throw InvalidArgument("subsample stride must be >= 1");

  TopoFeatureVector out;
  out.flat.reserve(kTopoChannelCount * static_cast<std::size_t>(cfg.n_bins));
  for (AtomSelector sel : kSelectors) {
    auto pts = select_atoms(s, sel);
    if (cfg.subsample_stride > 1) {
      std::vector<Vec3> kept;
      for (std::size_t i = 0; i < pts.size(); i += cfg.subsample_stride)
        kept.push_back(pts[i]);
      pts.swap(kept);
    }
    const auto codes = compute_persistence(
        build_rips_filtration(pts, cutoff, cfg.max_dim, cfg.capacity));
    for (int d : kDims) {
      // Dimensions the filtration cannot resolve contribute empty channels.
      Barcode bc{d, {}};
      if (d < cfg.max_dim) bc = truncate_deaths(codes[static_cast<std::size_t>(d)], cutoff);
      for (BinKind k : kKinds) {
        BinnedChannel ch = bin_barcode(bc, k, cfg.scale, cfg.n_bins);
        ch.selector = sel;
        out.flat.insert(out.flat.end(), ch.counts.begin(), ch.counts.end());
        out.channels.push_back(std::move(ch));
      }
    }
  }
  return out;
}

}  // namespace protfeat
