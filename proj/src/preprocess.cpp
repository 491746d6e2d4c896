#include "protfeat/preprocess.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "protfeat/errors.h"

namespace protfeat {
namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

IqrFences iqr_fences(std::span<const double> values, double k) {
  if (values.size() < 4) throw InvalidArgument("IQR filtering needs at least 4 values");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  IqrFences f;
  f.q1 = quantile_sorted(s, 0.25);
  f.q3 = quantile_sorted(s, 0.75);
  const double iqr = f.q3 - f.q1;
  f.lower = f.q1 - k * iqr;
  f.upper = f.q3 + k * iqr;
  return f;
}

std::vector<bool> iqr_filter(std::span<const double> values, double k) {
  const IqrFences f = iqr_fences(values, k);
  std::vector<bool> keep(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    keep[i] = values[i] >= f.lower && values[i] <= f.upper;
  return keep;
}

ScalerParams fit_scaler(std::span<const double> rows, std::size_t n_cols) {
  if (n_cols == 0 || rows.empty() || rows.size() % n_cols != 0)
    throw InvalidArgument("scaler input must be a non-empty row-major matrix");
  const std::size_t n_rows = rows.size() / n_cols;
  ScalerParams p;
  p.means.assign(n_cols, 0.0);
  p.stds.assign(n_cols, 0.0);
  for (std::size_t r = 0; r < n_rows; ++r)
    for (std::size_t c = 0; c < n_cols; ++c) p.means[c] += rows[r * n_cols + c];
  for (double &m : p.means) m /= static_cast<double>(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r)
    for (std::size_t c = 0; c < n_cols; ++c) {
      const double d = rows[r * n_cols + c] - p.means[c];
      p.stds[c] += d * d;
    }
  for (double &s : p.stds) s = std::sqrt(s / static_cast<double>(n_rows));
  return p;
}

std::vector<double> apply_scaler(const ScalerParams &p, std::span<const double> rows) {
  const std::size_t n = p.columns();
  if (n == 0 || rows.size() % n != 0) throw InvalidArgument("scaler column mismatch");
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t c = i % n;
    out[i] = p.stds[c] > 0.0 ? (rows[i] - p.means[c]) / p.stds[c] : 0.0;
  }
  return out;
}

std::vector<double> invert_scaler(const ScalerParams &p, std::span<const double> rows) {
  const std::size_t n = p.columns();
  if (n == 0 || rows.size() % n != 0) throw InvalidArgument("scaler column mismatch");
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t c = i % n;
    out[i] = p.stds[c] > 0.0 ? rows[i] * p.stds[c] + p.means[c] : p.means[c];
  }
  return out;
}

Metrics compute_metrics(std::span<const double> y, std::span<const double> yhat) {
  if (y.size() != yhat.size()) throw InvalidArgument("y and yhat differ in length");
  if (y.size() < 2) throw InvalidArgument("metrics need at least two samples");
  const auto n = static_cast<double>(y.size());

  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;

  double ss_res = 0.0, ss_tot = 0.0, ape = 0.0;
  bool zero = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y[i] - yhat[i];
    ss_res += e * e;
    ss_tot += (y[i] - mean) * (y[i] - mean);
    if (y[i] == 0.0)
      zero = true;
    else
      ape += std::abs(e / y[i]);
  }

  Metrics m;
  m.mse = ss_res / n;
  if (!zero) m.mape = ape / n * 100.0;
  if (ss_tot > 0.0) m.r2 = 1.0 - ss_res / ss_tot;
  return m;
}

Split train_test_split(std::size_t n, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction <= 1.0))
    throw InvalidArgument("test fraction must lie in [0, 1]");
  const auto idx = shuffled_indices(n, seed);
  const auto n_test =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
  Split s;
  s.test.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
  s.train.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  std::sort(s.test.begin(), s.test.end());
  std::sort(s.train.begin(), s.train.end());
  return s;
}

std::vector<int> kfold_assignment(std::size_t n, int k, std::uint64_t seed) {
  if (k < 1) throw InvalidArgument("fold count must be >= 1");
  const auto idx = shuffled_indices(n, seed);
  std::vector<int> fold(n);
  for (std::size_t i = 0; i < n; ++i)
    fold[idx[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
  return fold;
}

}  // namespace protfeat
