#include "protfeat/dataset.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "protfeat/electro_features.h"
#include "protfeat/errors.h"
#include "protfeat/topo_features.h"

namespace protfeat {
namespace {

std::string column_name(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c_%04zu", prefix, i + 1);
  return buf;
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string &tok, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "malformed number '" + tok + "'");
  return v;
}

int parse_int(const std::string &tok, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "malformed integer '" + tok + "'");
  return v;
}

std::string opt_cell(const std::optional<double> &v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> parse_opt(const std::string &cell, std::size_t line) {
  const std::string t = trim(cell);
  if (t.empty()) return std::nullopt;
  return parse_double(t, line);
}

std::ofstream open_out(const std::filesystem::path &p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  return in;
}

}  // namespace

nlohmann::json settings_to_json(const FeatureSettings &s) {
  return {{"p", s.p},
          {"L", s.L},
          {"theta", s.theta},
          {"eps1", s.eps1},
          {"eps2", s.eps2},
          {"units", s.units},
          {"unit_constant", s.unit_constant},
          {"scale", s.scale},
          {"n_bins", s.n_bins},
          {"max_dim", s.max_dim},
          {"max_scale", s.max_scale},
          {"subsample_stride", s.subsample_stride}};
}

FeatureSettings settings_from_json(const nlohmann::json &j) {
  FeatureSettings s;
  s.p = j.at("p").get<int>();
  s.L = j.at("L").get<int>();
  s.theta = j.at("theta").get<double>();
  s.eps1 = j.at("eps1").get<double>();
  s.eps2 = j.at("eps2").get<double>();
  s.units = j.at("units").get<std::string>();
  s.unit_constant = j.at("unit_constant").get<double>();
  s.scale = j.at("scale").get<double>();
  s.n_bins = j.at("n_bins").get<int>();
  s.max_dim = j.at("max_dim").get<int>();
  s.max_scale = j.at("max_scale").get<double>();
  s.subsample_stride = j.value("subsample_stride", std::size_t{1});
  return s;
}

nlohmann::json make_manifest(const FeatureSettings &s) {
  nlohmann::json m;
  m["schema_version"] = kManifestSchemaVersion;
  m["ordering_version"] = kElectroOrderingVersion;
  m["settings"] = settings_to_json(s);
  m["feature_count"] = feature_count(s.p, s.L);
  m["topo_feature_count"] = kTopoChannelCount * static_cast<std::size_t>(s.n_bins);
  m["channel_order"] = topo_channel_names();
  m["label_columns"] = {"E_coul", "E_solv"};
  return m;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DatasetPaths DatasetPaths::in_dir(const std::filesystem::path &dir) {
  return {dir / "features.csv", dir / "labels.csv", dir / "manifest.json"};
}

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

void export_dataset(const DatasetMatrix &d, const DatasetPaths &paths) {
  const std::size_t n_e = d.records.empty() ? 0 : d.records.front().electro.size();
  const std::size_t n_t = d.records.empty() ? 0 : d.records.front().topo.size();
  for (const auto &r : d.records) {
    if (r.electro.size() != n_e || r.topo.size() != n_t)
      throw InvalidArgument("record '" + r.id + "' has inconsistent feature lengths");
    if (r.id.find(',') != std::string::npos)
      throw InvalidArgument("record id '" + r.id + "' contains a comma");
  }
  if (d.manifest.contains("feature_count") && !d.records.empty()
      && d.manifest["feature_count"].get<std::size_t>() != n_e) {
    throw InvalidArgument("electro length does not match the manifest feature_count");
  }

  {
    auto out = open_out(paths.features);
    out << "id";
    for (std::size_t i = 0; i < n_e; ++i) out << ',' << column_name('e', i);
    for (std::size_t i = 0; i < n_t; ++i) out << ',' << column_name('t', i);
    out << ",E_coul,E_solv\n";
    for (const auto &r : d.records) {
      out << r.id;
      for (double v : r.electro) out << ',' << format_double(v);
      for (int v : r.topo) out << ',' << v;
      out << ',' << opt_cell(r.labels.e_coul) << ',' << opt_cell(r.labels.e_solv)
          << '\n';
    }
    if (!out) throw IoError("write failed for " + paths.features.string());
  }
  {
    auto out = open_out(paths.labels);
    out << "id,E_coul,E_solv\n";
    for (const auto &r : d.records)
      out << r.id << ',' << opt_cell(r.labels.e_coul) << ','
          << opt_cell(r.labels.e_solv) << '\n';
    if (!out) throw IoError("write failed for " + paths.labels.string());
  }
  {
    nlohmann::json m = d.manifest;
    m["electro_columns"] = n_e;
    m["topo_columns"] = n_t;
    m["n_records"] = d.records.size();
    auto out = open_out(paths.manifest);
    out << m.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + paths.manifest.string());
  }
}

DatasetMatrix import_dataset(const DatasetPaths &paths) {
  DatasetMatrix d;
  {
    auto in = open_in(paths.manifest);
    try {
      d.manifest = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
      throw SchemaError(paths.manifest.string() + ": " + e.what());
    }
    d.manifest.erase("electro_columns");
    d.manifest.erase("topo_columns");
    d.manifest.erase("n_records");
  }

  auto in = open_in(paths.features);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(paths.features.string() + ": empty file");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header.front() != "id" || header[header.size() - 2] != "E_coul"
      || header.back() != "E_solv")
    throw SchemaError(paths.features.string() + ": unexpected header");
  std::size_t n_e = 0, n_t = 0;
  for (std::size_t i = 1; i + 2 < header.size(); ++i) {
    if (header[i].rfind("e_", 0) == 0 && n_t == 0)
      ++n_e;
    else if (header[i].rfind("t_", 0) == 0)
      ++n_t;
    else
      throw SchemaError(paths.features.string() + ": unexpected column " + header[i]);
  }

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError(lineno, "expected " + std::to_string(header.size()) + " cells");
    LabeledRecord r;
    r.id = cells[0];
    r.electro.reserve(n_e);
    r.topo.reserve(n_t);
    for (std::size_t i = 0; i < n_e; ++i) r.electro.push_back(parse_double(cells[1 + i], lineno));
    for (std::size_t i = 0; i < n_t; ++i) r.topo.push_back(parse_int(cells[1 + n_e + i], lineno));
    r.labels.e_coul = parse_opt(cells[1 + n_e + n_t], lineno);
    r.labels.e_solv = parse_opt(cells[2 + n_e + n_t], lineno);
    d.records.push_back(std::move(r));
  }
  return d;
}

std::map<std::string, Labels> ingest_labels(std::istream &is) {
  std::string line;
  if (!std::getline(is, line)) throw SchemaError("label file is empty");
  auto header = split_csv_line(line);
  for (auto &h : header) h = trim(h);
  if (header.empty() || header[0] != "id")
    throw SchemaError("label header must start with 'id'");
  int coul_col = -1, solv_col = -1;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] == "E_coul" && coul_col < 0)
      coul_col = static_cast<int>(i);
    else if (header[i] == "E_solv" && solv_col < 0)
      solv_col = static_cast<int>(i);
    else
      throw SchemaError("unknown or repeated label column '" + header[i] + "'");
  }

  std::map<std::string, Labels> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw ParseError(lineno, "expected " + std::to_string(header.size()) + " cells");
    const std::string id = trim(cells[0]);
    if (id.empty()) throw ParseError(lineno, "empty id");
    Labels l;
    if (coul_col >= 0) l.e_coul = parse_opt(cells[static_cast<std::size_t>(coul_col)], lineno);
    if (solv_col >= 0) l.e_solv = parse_opt(cells[static_cast<std::size_t>(solv_col)], lineno);
    if (!out.emplace(id, l).second)
      throw DuplicateIdError("duplicate label id '" + id + "' on line "
                             + std::to_string(lineno));
  }
  return out;
}

}  // namespace protfeat
