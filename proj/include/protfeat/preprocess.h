#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace protfeat {

// Linear-interpolation quantile of already sorted data (h = (n - 1) q).
double quantile_sorted(std::span<const double> sorted, double q);

struct IqrFences {
  double q1 = 0.0, q3 = 0.0, lower = 0.0, upper = 0.0;
};

IqrFences iqr_fences(std::span<const double> values, double k = 1.5);

// true = keep. Needs at least four values.
std::vector<bool> iqr_filter(std::span<const double> values, double k = 1.5);

// Per-column standardization with population std. Columns whose std is zero
// map to 0 and invert back to their mean.
struct ScalerParams {
  std::vector<double> means;
  std::vector<double> stds;

  std::size_t columns() const noexcept { return means.size(); }
};

// `rows` is row-major with `n_cols` columns.
ScalerParams fit_scaler(std::span<const double> rows, std::size_t n_cols);
std::vector<double> apply_scaler(const ScalerParams &p, std::span<const double> rows);
std::vector<double> invert_scaler(const ScalerParams &p, std::span<const double> rows);

struct Metrics {
  double mse = 0.0;
  std::optional<double> mape;  // percent; empty when some y_i == 0
  std::optional<double> r2;    // empty when y is constant
};

Metrics compute_metrics(std::span<const double> y, std::span<const double> yhat);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded shuffle, then the first round(n * test_fraction) indices are test.
// Both halves are returned in ascending order.
Split train_test_split(std::size_t n, double test_fraction, std::uint64_t seed);

// Fold id in [0, k) for every index, from a seeded shuffle dealt round-robin.
std::vector<int> kfold_assignment(std::size_t n, int k, std::uint64_t seed);

}  // namespace protfeat
