#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "protfeat/preprocess.h"

namespace protfeat {

inline constexpr int kManifestSchemaVersion = 1;

struct Labels {
  std::optional<double> e_coul;
  std::optional<double> e_solv;

  bool any() const noexcept { return e_coul || e_solv; }
  friend bool operator==(const Labels &, const Labels &) = default;
};

struct LabeledRecord {
  std::string id;
  std::vector<double> electro;
  std::vector<int> topo;
  Labels labels;

  friend bool operator==(const LabeledRecord &, const LabeledRecord &) = default;
};

// Parameters a featurization run was produced with. Field names match the
// CLI flags and the manifest keys.
struct FeatureSettings {
  int p = 2;
  int L = 1;
  double theta = 0.5;
  double eps1 = 1.0;
  double eps2 = 80.0;
  std::string units = "internal";  // internal | kcal
  double unit_constant = 1.0;
  double scale = 50.0;
  int n_bins = 100;
  int max_dim = 3;
  double max_scale = 50.0;
  std::size_t subsample_stride = 1;
};

nlohmann::json settings_to_json(const FeatureSettings &s);
FeatureSettings settings_from_json(const nlohmann::json &j);

// Manifest describing feature layout (counts, channel order, ordering tag).
nlohmann::json make_manifest(const FeatureSettings &s);

struct DatasetMatrix {
  std::vector<LabeledRecord> records;
  nlohmann::json manifest = nlohmann::json::object();
};

// "%.17g": 17 significant digits, exact round trip for finite values.
std::string format_double(double v);

struct DatasetPaths {
  std::filesystem::path features;
  std::filesystem::path labels;
  std::filesystem::path manifest;

  static DatasetPaths in_dir(const std::filesystem::path &dir);
};

// Writes the features CSV (id, e_0001.., t_0001.., E_coul, E_solv), the
// labels-only CSV and the manifest JSON. Output is deterministic.
void export_dataset(const DatasetMatrix &d, const DatasetPaths &paths);
DatasetMatrix import_dataset(const DatasetPaths &paths);

// CSV with header "id" plus any of E_coul, E_solv. Empty cells are absent
// labels. Throws SchemaError / DuplicateIdError / ParseError.
std::map<std::string, Labels> ingest_labels(std::istream &is);

std::vector<std::string> split_csv_line(const std::string &line);

}  // namespace protfeat
