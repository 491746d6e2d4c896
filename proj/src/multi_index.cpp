#include "protfeat/multi_index.h"

#include "protfeat/errors.h"

namespace protfeat {

std::size_t num_terms(int p) {
  if (p < 0) throw InvalidArgument("expansion order must be >= 0");
  const auto q = static_cast<std::size_t>(p);
  return (q + 1) * (q + 2) * (q + 3) / 6;
}

std::vector<MultiIndex> enumerate_multi_indices(int p) {
  std::vector<MultiIndex> out;
  out.reserve(num_terms(p));
  for (int n = 0; n <= p; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b)
        out.push_back(MultiIndex{{a, b, n - a - b}});
  return out;
}

MultiIndexTable::MultiIndexTable(int p)
    : p_(p), indices_(enumerate_multi_indices(p)),
      lookup_(static_cast<std::size_t>((p + 1) * (p + 1) * (p + 1)), -1) {
  for (std::size_t s = 0; s < indices_.size(); ++s) {
    const auto &k = indices_[s].k;
    lookup_[static_cast<std::size_t>((k[0] * (p + 1) + k[1]) * (p + 1) + k[2])] =
        static_cast<int>(s);
  }
}

int MultiIndexTable::slot(int a, int b, int c) const noexcept {
  if (a < 0 || b < 0 || c < 0 || a + b + c > p_) return -1;
  return lookup_[static_cast<std::size_t>((a * (p_ + 1) + b) * (p_ + 1) + c)];
}

}  // namespace protfeat
