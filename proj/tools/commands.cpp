#include "commands.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "protfeat/dataset.h"
#include "protfeat/electro_features.h"
#include "protfeat/errors.h"
#include "protfeat/gb.h"
#include "protfeat/parallel.h"
#include "protfeat/preprocess.h"
#include "protfeat/rips.h"
#include "protfeat/structure.h"
#include "protfeat/topo_features.h"
#include "protfeat/treecode.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace protfeat::cli {
namespace {

double unit_constant_for(const std::string &units) {
  if (units == "internal") return 1.0;
  if (units == "kcal") return kCoulombKcalPerMol;
  throw InvalidArgument("units must be 'internal' or 'kcal'");
}

struct Failure {
  std::string input;
  std::string message;
  int code;
};

// Outcome of a batch over input files: per-input results in input order plus
// the failures, which are logged and skipped.
template <class T>
struct Batch {
  std::vector<std::optional<T>> results;
  std::vector<Failure> failures;

  std::size_t succeeded() const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const auto &r) { return r.has_value(); }));
  }
};

template <class T, class Fn>
Batch<T> run_batch(const std::vector<fs::path> &inputs, unsigned threads, Fn &&fn) {
  Batch<T> b;
  b.results.resize(inputs.size());
  std::vector<std::optional<Failure>> fails(inputs.size());
  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    try {
      b.results[i] = fn(inputs[i]);
    } catch (const std::exception &e) {
      fails[i] = Failure{inputs[i].string(), e.what(), exit_code_for(e)};
    }
  });
  for (auto &f : fails)
    if (f) b.failures.push_back(std::move(*f));
  return b;
}

// 0 when everything succeeded, kPartial when some did, otherwise the code of
// the first failure.
template <class T>
int batch_exit(const Batch<T> &b, std::ostream &err) {
  for (const auto &f : b.failures) err << "error: " << f.input << ": " << f.message << '\n';
  if (b.failures.empty()) return kOk;
  if (b.succeeded() > 0) {
    err << b.failures.size() << " of " << b.results.size() << " inputs failed\n";
    return kPartial;
  }
  return b.failures.front().code;
}

void ensure_dir(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path &p, const std::string &text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw IoError("cannot write " + p.string());
}

unsigned resolve_threads(unsigned flag) { return flag > 0 ? flag : default_thread_count(); }

// ---------------------------------------------------------------- featurize

struct FeaturizeOptions {
  std::string input;
  std::string out_dir;
  std::string labels;
  bool coulomb_labels = false;
  int coulomb_p = 4;
  int coulomb_L = 4;
  std::size_t capacity = kDefaultSimplexCapacity;
  unsigned threads = 0;
  FeatureSettings settings;
};

void validate(const FeatureSettings &s) {
  if (s.p < 0 || s.L < 0 || s.L > ClusterTree::kMaxLevels)
    throw InvalidArgument("need p >= 0 and 0 <= L <= " + std::to_string(ClusterTree::kMaxLevels));
  if (!(s.theta > 0.0 && s.theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
  if (!(s.eps1 > 0.0) || !(s.eps2 > 0.0)) throw InvalidArgument("dielectrics must be > 0");
  if (!(s.scale > 0.0) || s.n_bins < 1) throw InvalidArgument("need scale > 0 and n_bins >= 1");
  if (s.max_dim < 1 || s.max_dim > 3) throw InvalidArgument("max_dim must lie in [1, 3]");
  if (!(s.max_scale > 0.0) || s.max_scale > s.scale)
    throw InvalidArgument("max_scale must lie in (0, scale]");
  if (s.subsample_stride < 1) throw InvalidArgument("subsample stride must be >= 1");
}

int cmd_featurize(FeaturizeOptions o, std::ostream &out, std::ostream &err) {
  o.settings.unit_constant = unit_constant_for(o.settings.units);
  validate(o.settings);
  const auto inputs = collect_pqr_inputs(o.input);

  std::map<std::string, Labels> labels;
  if (!o.labels.empty()) {
    std::ifstream in(o.labels);
    if (!in) throw IoError("cannot read " + o.labels);
    labels = ingest_labels(in);
  }

  const FeatureSettings &s = o.settings;
  TopoConfig topo;
  topo.scale = s.scale;
  topo.n_bins = s.n_bins;
  topo.max_dim = s.max_dim;
  topo.max_scale = s.max_scale;
  topo.capacity = o.capacity;
  topo.subsample_stride = s.subsample_stride;

  auto batch = run_batch<LabeledRecord>(inputs, resolve_threads(o.threads), [&](const fs::path &p) {
    const ProteinStructure st = read_pqr_file(p.string());
    LabeledRecord r;
    r.id = st.id;
    r.electro = electro_features(st.atoms, s.p, s.L).values;
    r.topo = topo_features(st, topo).flat;
    if (auto it = labels.find(st.id); it != labels.end()) r.labels = it->second;
    if (o.coulomb_labels) {
      TreecodeParams tp;
      tp.order = o.coulomb_p;
      tp.levels = o.coulomb_L;
      tp.theta = s.theta;
      r.labels.e_coul = coulomb_energy_treecode(st.atoms, s.eps1, tp, s.unit_constant);
    }
    return r;
  });

  const int code = batch_exit(batch, err);
  if (batch.succeeded() == 0) return code;

  DatasetMatrix d;
  d.manifest = make_manifest(s);
  std::set<std::string> seen;
  for (auto &r : batch.results) {
    if (!r) continue;
    if (!seen.insert(r->id).second)
      throw DuplicateIdError("two inputs share the structure id '" + r->id + "'");
    d.records.push_back(std::move(*r));
  }
  ensure_dir(o.out_dir);
  export_dataset(d, DatasetPaths::in_dir(o.out_dir));
  out << "wrote " << d.records.size() << " rows (" << d.manifest["feature_count"].get<std::size_t>()
      << " electrostatic + " << d.manifest["topo_feature_count"].get<std::size_t>()
      << " topological features) to " << o.out_dir << '\n';
  return code;
}

// ------------------------------------------------------------------ coulomb

struct CoulombOptions {
  std::string input;
  std::string out_file;
  int p = 4;
  int L = 4;
  double theta = 0.5;
  double eps1 = 1.0;
  std::string units = "internal";
  bool check = false;
  unsigned threads = 0;
};

struct CoulombRow {
  std::string id;
  std::size_t n_atoms = 0;
  double treecode = 0.0;
  double direct = 0.0;
};

int cmd_coulomb(const CoulombOptions &o, std::ostream &out, std::ostream &err) {
  const double ce = unit_constant_for(o.units);
  if (o.p < 0 || o.L < 0 || o.L > ClusterTree::kMaxLevels)
    throw InvalidArgument("need p >= 0 and 0 <= L <= " + std::to_string(ClusterTree::kMaxLevels));
  if (!(o.theta > 0.0 && o.theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
  if (!(o.eps1 > 0.0)) throw InvalidArgument("eps1 must be > 0");
  const auto inputs = collect_pqr_inputs(o.input);

  TreecodeParams tp;
  tp.order = o.p;
  tp.levels = o.L;
  tp.theta = o.theta;
  auto batch = run_batch<CoulombRow>(inputs, resolve_threads(o.threads), [&](const fs::path &p) {
    const ProteinStructure st = read_pqr_file(p.string());
    CoulombRow row;
    row.id = st.id;
    row.n_atoms = st.atoms.size();
    row.treecode = coulomb_energy_treecode(st.atoms, o.eps1, tp, ce);
    if (o.check) row.direct = coulomb_energy_direct(st.atoms, o.eps1, ce);
    return row;
  });
  const int code = batch_exit(batch, err);
  if (batch.succeeded() == 0) return code;

  std::ostringstream csv;
  csv << "id,n_atoms,E_coul" << (o.check ? ",E_coul_direct,rel_error" : "") << '\n';
  for (const auto &r : batch.results) {
    if (!r) continue;
    csv << r->id << ',' << r->n_atoms << ',' << format_double(r->treecode);
    if (o.check) {
      const double rel = r->direct != 0.0 ? std::abs(r->treecode - r->direct) / std::abs(r->direct)
                                          : std::abs(r->treecode - r->direct);
      csv << ',' << format_double(r->direct) << ',' << format_double(rel);
    }
    csv << '\n';
  }
  if (o.out_file.empty()) {
    out << csv.str();
  } else {
    write_text(o.out_file, csv.str());
  }
  return code;
}

// ------------------------------------------------------------------ barcode

struct BarcodeOptions {
  std::string input;
  std::string out_dir;
  std::string selector = "heavy";
  double max_scale = 50.0;
  int max_dim = 3;
  std::size_t capacity = kDefaultSimplexCapacity;
  bool plot = false;
  unsigned threads = 0;
};

struct BarcodeResult {
  std::string id;
  json doc;
  std::string segments;  // plot CSV
};

int cmd_barcode(const BarcodeOptions &o, std::ostream &out, std::ostream &err) {
  const AtomSelector sel = parse_selector(o.selector);
  if (o.max_dim < 1 || o.max_dim > 3) throw InvalidArgument("max_dim must lie in [1, 3]");
  if (!(o.max_scale > 0.0)) throw InvalidArgument("max_scale must be > 0");
  const auto inputs = collect_pqr_inputs(o.input);

  auto batch = run_batch<BarcodeResult>(inputs, resolve_threads(o.threads), [&](const fs::path &p) {
    const ProteinStructure st = read_pqr_file(p.string());
    const auto codes = barcode_for_selection(st, sel, o.max_scale, o.max_dim, o.capacity);
    BarcodeResult r;
    r.id = st.id;
    r.doc = {{"id", st.id},
             {"selector", std::string(selector_name(sel))},
             {"max_scale", o.max_scale},
             {"max_dim", o.max_dim},
             {"barcodes", json::array()}};
    std::ostringstream seg;
    seg << "dim,row,birth,death\n";
    std::size_t row = 0;
    for (const Barcode &b : codes) {
      r.doc["barcodes"].push_back(barcode_to_json(b));
      for (const Bar &bar : b.bars) {
        // Infinite bars are drawn up to the cutoff.
        seg << b.dim << ',' << row++ << ',' << format_double(bar.birth) << ','
            << format_double(bar.finite() ? bar.death : o.max_scale) << '\n';
      }
    }
    r.segments = seg.str();
    return r;
  });
  const int code = batch_exit(batch, err);
  if (batch.succeeded() == 0) return code;

  if (o.out_dir.empty()) {
    json all = json::array();
    for (const auto &r : batch.results)
      if (r) all.push_back(r->doc);
    out << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  } else {
    ensure_dir(o.out_dir);
    for (const auto &r : batch.results) {
      if (!r) continue;
      write_text(fs::path(o.out_dir) / (r->id + ".barcode.json"), r->doc.dump(2) + "\n");
      if (o.plot) write_text(fs::path(o.out_dir) / (r->id + ".bars.csv"), r->segments);
    }
  }
  return code;
}

// ----------------------------------------------------------------------- gb

struct GbOptions {
  std::string pqr;
  std::string radii;
  double eps1 = 1.0;
  double eps2 = 80.0;
  std::string units = "internal";
};

int cmd_gb(const GbOptions &o, std::ostream &out) {
  GBContext ctx;
  ctx.eps1 = o.eps1;
  ctx.eps2 = o.eps2;
  ctx.unit_constant = unit_constant_for(o.units);
  const ProteinStructure st = read_pqr_file(o.pqr);
  {
    std::ifstream in(o.radii);
    if (!in) throw IoError("cannot read " + o.radii);
    ctx.born_radii = read_born_radii(in);
  }
  if (ctx.born_radii.size() != st.atoms.size()) {
    throw ParseError(ctx.born_radii.size(), "radii file has " + std::to_string(ctx.born_radii.size())
                                                + " entries for " + std::to_string(st.atoms.size())
                                                + " atoms");
  }
  const double total = gb_solvation_energy(st.atoms, ctx);
  const auto self = gb_self_energies(st.atoms, ctx);
  json doc = {{"id", st.id},
              {"n_atoms", st.atoms.size()},
              {"eps1", ctx.eps1},
              {"eps2", ctx.eps2},
              {"units", o.units},
              {"unit_constant", ctx.unit_constant},
              {"E_solv_gb", total},
              {"born_terms", self}};
  out << doc.dump(2) << '\n';
  return kOk;
}

// ------------------------------------------------------------------ dataset

struct DatasetOptions {
  std::string features_dir;
  std::string labels;
  std::string out_dir;
  std::uint64_t seed = 0;
  double test_fraction = 0.2;
  int folds = 5;
};

json scaler_json(const ScalerParams &p) { return {{"means", p.means}, {"stds", p.stds}}; }

int cmd_dataset(const DatasetOptions &o, std::ostream &out, std::ostream &err) {
  if (!(o.test_fraction >= 0.0 && o.test_fraction < 1.0))
    throw InvalidArgument("test fraction must lie in [0, 1)");
  if (o.folds < 1) throw InvalidArgument("folds must be >= 1");

  DatasetMatrix d = import_dataset(DatasetPaths::in_dir(o.features_dir));
  if (!o.labels.empty()) {
    std::ifstream in(o.labels);
    if (!in) throw IoError("cannot read " + o.labels);
    const auto labels = ingest_labels(in);
    for (auto &r : d.records) {
      const auto it = labels.find(r.id);
      if (it == labels.end()) continue;
      if (it->second.e_coul) r.labels.e_coul = it->second.e_coul;
      if (it->second.e_solv) r.labels.e_solv = it->second.e_solv;
    }
  }

  std::vector<LabeledRecord> labelled;
  for (auto &r : d.records) {
    if (r.labels.any())
      labelled.push_back(std::move(r));
    else
      err << "warning: dropping unlabelled record " << r.id << '\n';
  }
  if (labelled.empty()) throw SchemaError("no labelled records");

  // Outliers are judged on E_coul only.
  json iqr = {{"key", "E_coul"}, {"removed", json::array()}};
  std::vector<double> coul;
  for (const auto &r : labelled)
    if (r.labels.e_coul) coul.push_back(*r.labels.e_coul);
  if (coul.size() >= 4) {
    const IqrFences f = iqr_fences(coul);
    iqr["q1"] = f.q1;
    iqr["q3"] = f.q3;
    iqr["lower"] = f.lower;
    iqr["upper"] = f.upper;
    std::vector<LabeledRecord> kept;
    for (auto &r : labelled) {
      if (r.labels.e_coul && (*r.labels.e_coul < f.lower || *r.labels.e_coul > f.upper))
        iqr["removed"].push_back(r.id);
      else
        kept.push_back(std::move(r));
    }
    labelled.swap(kept);
  } else {
    err << "warning: fewer than 4 E_coul labels, IQR filtering skipped\n";
    iqr["skipped"] = true;
  }

  const std::size_t n = labelled.size();
  const std::size_t n_e = labelled.front().electro.size();
  const std::size_t n_t = labelled.front().topo.size();
  std::vector<double> x;
  x.reserve(n * (n_e + n_t));
  for (const auto &r : labelled) {
    x.insert(x.end(), r.electro.begin(), r.electro.end());
    for (int v : r.topo) x.push_back(v);
  }
  json scaler = {{"features", scaler_json(fit_scaler(x, n_e + n_t))}, {"labels", json::object()}};
  for (const char *name : {"E_coul", "E_solv"}) {
    std::vector<double> col;
    for (const auto &r : labelled) {
      const auto &v = std::string(name) == "E_coul" ? r.labels.e_coul : r.labels.e_solv;
      if (v) col.push_back(*v);
    }
    if (col.empty()) continue;
    const ScalerParams p = fit_scaler(col, 1);
    scaler["labels"][name] = {{"mean", p.means[0]}, {"std", p.stds[0]}};
  }

  const Split split = train_test_split(n, o.test_fraction, o.seed);
  const auto folds = kfold_assignment(split.train.size(), o.folds, o.seed);
  std::vector<std::string> set_of(n, "test");
  std::vector<int> fold_of(n, -1);
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    set_of[split.train[i]] = "train";
    fold_of[split.train[i]] = folds[i];
  }

  d.records = std::move(labelled);
  d.manifest["iqr"] = iqr;
  d.manifest["scaler"] = scaler;
  d.manifest["split"] = {{"seed", o.seed}, {"test_fraction", o.test_fraction}, {"folds", o.folds}};

  ensure_dir(o.out_dir);
  export_dataset(d, DatasetPaths::in_dir(o.out_dir));
  std::ostringstream split_csv;
  split_csv << "id,set,fold\n";
  for (std::size_t i = 0; i < n; ++i)
    split_csv << d.records[i].id << ',' << set_of[i] << ',' << fold_of[i] << '\n';
  write_text(fs::path(o.out_dir) / "split.csv", split_csv.str());

  out << "dataset: " << n << " records (" << iqr["removed"].size() << " IQR outliers removed, "
      << split.test.size() << " test) written to " << o.out_dir << '\n';
  return kOk;
}

// ------------------------------------------------------------------ metrics

int cmd_metrics(const std::string &pairs, std::ostream &out) {
  std::ifstream in(pairs);
  if (!in) throw IoError("cannot read " + pairs);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(pairs + ": empty file");
  const auto header = split_csv_line(line);
  const auto col = [&](const std::string &name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError(pairs + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cy = col("y"), cyh = col("yhat");
  std::vector<double> y, yhat;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw ParseError(lineno, "wrong cell count");
    try {
      y.push_back(std::stod(cells[cy]));
      yhat.push_back(std::stod(cells[cyh]));
    } catch (const std::logic_error &) {
      throw ParseError(lineno, "malformed number");
    }
  }
  const Metrics m = compute_metrics(y, yhat);
  json doc = {{"n", y.size()},
              {"mse", m.mse},
              {"mape", m.mape ? json(*m.mape) : json(nullptr)},
              {"r2", m.r2 ? json(*m.r2) : json(nullptr)}};
  out << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int exit_code_for(const std::exception &e) {
  if (dynamic_cast<const CapacityError *>(&e)) return kCapacity;
  if (dynamic_cast<const InvalidArgument *>(&e)) return kUsage;
  if (dynamic_cast<const Error *>(&e)) return kInput;
  return kInput;
}

std::vector<fs::path> collect_pqr_inputs(const fs::path &path) {
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) return {path};
  if (!fs::is_directory(path, ec)) throw IoError("no such file or directory: " + path.string());
  std::vector<fs::path> out;
  for (const auto &entry : fs::directory_iterator(path, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pqr") out.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + path.string() + ": " + ec.message());
  if (out.empty()) throw IoError("no .pqr files in " + path.string());
  std::sort(out.begin(), out.end());
  return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"protfeat: electrostatic and topological protein features"};
  app.require_subcommand(1);

  FeaturizeOptions fo;
  auto *feat = app.add_subcommand("featurize", "Multipole and barcode features for PQR files");
  feat->add_option("input", fo.input, "PQR file or directory")->required();
  feat->add_option("-o,--out", fo.out_dir, "Output directory")->required();
  feat->add_option("--p", fo.settings.p, "Taylor/multipole order")->capture_default_str();
  feat->add_option("--L", fo.settings.L, "Octree levels")->capture_default_str();
  feat->add_option("--theta", fo.settings.theta, "Treecode acceptance ratio")->capture_default_str();
  feat->add_option("--eps1", fo.settings.eps1, "Solute dielectric")->capture_default_str();
  feat->add_option("--eps2", fo.settings.eps2, "Solvent dielectric")->capture_default_str();
  feat->add_option("--units", fo.settings.units, "internal | kcal")->capture_default_str();
  feat->add_option("--scale", fo.settings.scale, "Binning range (A)")->capture_default_str();
  feat->add_option("--n-bins", fo.settings.n_bins, "Bins per channel")->capture_default_str();
  feat->add_option("--max-dim", fo.settings.max_dim, "Highest simplex dimension")->capture_default_str();
  auto *max_scale_opt =
      feat->add_option("--max-scale", fo.settings.max_scale, "Rips cutoff (A), default --scale");
  feat->add_option("--subsample", fo.settings.subsample_stride, "Keep every k-th selected atom")
      ->capture_default_str();
  feat->add_option("--capacity", fo.capacity, "Simplex cap")->capture_default_str();
  feat->add_option("--labels", fo.labels, "Label CSV joined by id");
  feat->add_flag("--coulomb-labels", fo.coulomb_labels, "Fill E_coul with the treecode energy");
  feat->add_option("--coulomb-p", fo.coulomb_p, "Treecode order for --coulomb-labels")->capture_default_str();
  feat->add_option("--coulomb-L", fo.coulomb_L, "Treecode levels for --coulomb-labels")->capture_default_str();
  feat->add_option("--threads", fo.threads, "Worker threads (default FORGE_THREADS or all cores)");

  CoulombOptions co;
  auto *coul = app.add_subcommand("coulomb", "Coulomb energy by treecode");
  coul->add_option("input", co.input, "PQR file or directory")->required();
  coul->add_option("-o,--out", co.out_file, "CSV output file (default stdout)");
  coul->add_option("--p", co.p, "Taylor order")->capture_default_str();
  coul->add_option("--L", co.L, "Octree levels")->capture_default_str();
  coul->add_option("--theta", co.theta, "Acceptance ratio")->capture_default_str();
  coul->add_option("--eps1", co.eps1, "Solute dielectric")->capture_default_str();
  coul->add_option("--units", co.units, "internal | kcal")->capture_default_str();
  coul->add_flag("--check", co.check, "Also report the direct sum and relative error");
  coul->add_option("--threads", co.threads, "Worker threads");

  BarcodeOptions bo;
  auto *bar = app.add_subcommand("barcode", "Rips persistence barcodes");
  bar->add_option("input", bo.input, "PQR file or directory")->required();
  bar->add_option("-o,--out", bo.out_dir, "Output directory (default: JSON on stdout)");
  bar->add_option("--selector", bo.selector, "carbon | heavy | all")->capture_default_str();
  bar->add_option("--max-scale", bo.max_scale, "Rips cutoff (A)")->capture_default_str();
  bar->add_option("--max-dim", bo.max_dim, "Highest simplex dimension")->capture_default_str();
  bar->add_option("--capacity", bo.capacity, "Simplex cap")->capture_default_str();
  bar->add_flag("--plot", bo.plot, "Write bar segments as CSV next to the JSON");
  bar->add_option("--threads", bo.threads, "Worker threads");

  GbOptions go;
  auto *gb = app.add_subcommand("gb", "Generalized Born solvation energy");
  gb->add_option("pqr", go.pqr, "PQR file")->required();
  gb->add_option("--radii", go.radii, "Born radii, one per line in atom order")->required();
  gb->add_option("--eps1", go.eps1, "Solute dielectric")->capture_default_str();
  gb->add_option("--eps2", go.eps2, "Solvent dielectric")->capture_default_str();
  gb->add_option("--units", go.units, "internal | kcal")->capture_default_str();

  DatasetOptions dopt;
  auto *ds = app.add_subcommand("dataset", "Join labels, drop IQR outliers, fit scalers, split");
  ds->add_option("features", dopt.features_dir, "Output directory of featurize")->required();
  ds->add_option("-o,--out", dopt.out_dir, "Output directory")->required();
  ds->add_option("--labels", dopt.labels, "Label CSV (id,E_coul,E_solv)");
  ds->add_option("--seed", dopt.seed, "Shuffle seed")->capture_default_str();
  ds->add_option("--test-fraction", dopt.test_fraction, "Held-out fraction")->capture_default_str();
  ds->add_option("--folds", dopt.folds, "Cross-validation folds")->capture_default_str();

  std::string pairs;
  auto *met = app.add_subcommand("metrics", "MSE, MAPE and R^2 of a y,yhat CSV");
  met->add_option("pairs", pairs, "CSV with columns y and yhat")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  if (max_scale_opt->count() == 0) fo.settings.max_scale = fo.settings.scale;

  try {
    if (*feat) return cmd_featurize(fo, out, err);
    if (*coul) return cmd_coulomb(co, out, err);
    if (*bar) return cmd_barcode(bo, out, err);
    if (*gb) return cmd_gb(go, out);
    if (*ds) return cmd_dataset(dopt, out, err);
    if (*met) return cmd_metrics(pairs, out);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsage;
}

}  // namespace protfeat::cli
