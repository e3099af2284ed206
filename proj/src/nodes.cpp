#include "aqp/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "aqp/audio.hpp"
#include "aqp/config.hpp"
#include "aqp/dsp.hpp"
#include "aqp/graph.hpp"
#include "aqp/log.hpp"
#include "aqp/metrics.hpp"
#include "aqp/outputs.hpp"

namespace aqp {
namespace {

/// Typo guard: every node declares its accepted params; anything else in
/// the entry is rejected at build time.
void check_params(const NodeSpec& spec,
                  std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : spec.params.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw Error(errc::invalid_field,
                  "node '" + spec.id + "': unknown param '" + key + "'");
  }
}

std::vector<std::string> string_list_param(const NodeSpec& spec,
                                           std::string_view name) {
  std::vector<std::string> out;
  auto it = spec.params.find(name);
  if (it == spec.params.end()) return out;
  if (!it->is_array())
    throw Error(errc::invalid_field, "node '" + spec.id + "': param '" +
                                         std::string(name) +
                                         "' must be an array of strings");
  for (const Json& v : *it) {
    if (!v.is_string())
      throw Error(errc::invalid_field, "node '" + spec.id + "': param '" +
                                           std::string(name) +
                                           "' must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::size_t positive_size_param(const Node& node, const NodeSpec& spec,
                                std::string_view name,
                                std::int64_t fallback) {
  (void)node;
  auto it = spec.params.find(name);
  std::int64_t v = fallback;
  if (it != spec.params.end()) {
    if (!it->is_number_integer())
      throw Error(errc::invalid_field, "node '" + spec.id + "': param '" +
                                           std::string(name) +
                                           "' must be an integer");
    v = it->get<std::int64_t>();
  }
  if (v <= 0)
    throw Error(errc::invalid_field, "node '" + spec.id + "': param '" +
                                         std::string(name) +
                                         "' must be positive");
  return static_cast<std::size_t>(v);
}

/// Relative paths read by nodes resolve against the "data_dir" store
/// entry when present (the runner points it at the config's directory).
std::filesystem::path resolve_data_path(const ResultStore& store,
                                        const std::string& raw) {
  std::filesystem::path p(raw);
  if (p.is_absolute()) return p;
  if (store.contains("data_dir"))
    return std::filesystem::path(store.get<std::string>("data_dir")) / p;
  return p;
}

/// Relative output paths resolve against the "out_dir" store entry.
std::filesystem::path resolve_output_path(const ResultStore& store,
                                          const std::string& raw) {
  std::filesystem::path p(raw);
  if (p.is_absolute()) return p;
  if (store.contains("out_dir"))
    return std::filesystem::path(store.get<std::string>("out_dir")) / p;
  return p;
}

// ---------------------------------------------------------------------------
// structural nodes

class IdentityNode final : public Node {
 public:
  explicit IdentityNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(), {});
  }
  ExecStatus execute(ResultStore&) override { return ExecStatus::proceed; }
};

class ConstantNode final : public Node {
 public:
  explicit ConstantNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(), {"value"});
    const Json* v = find_param("value");
    if (v == nullptr)
      throw Error(errc::missing_param,
                  "node '" + id() + "': required param 'value' is missing");
    if (v->is_number()) {
      value_ = v->get<double>();
    } else if (v->is_string()) {
      value_ = v->get<std::string>();
    } else if (v->is_array()) {
      std::vector<std::int64_t> list;
      for (const Json& item : *v) {
        if (!item.is_number_integer())
          throw Error(errc::invalid_field,
                      "node '" + id() +
                          "': array values must be integer lists");
        list.push_back(item.get<std::int64_t>());
      }
      value_ = std::move(list);
    } else {
      throw Error(errc::invalid_field,
                  "node '" + id() +
                      "': 'value' must be a number, string or integer array");
    }
  }

  ExecStatus execute(ResultStore& store) override {
    store.set(result_key(), value_);
    return ExecStatus::proceed;
  }

 private:
  Value value_;
};

class LoopNode final : public Node {
 public:
  LoopNode(NodeSpec spec, const NodeRegistry& registry)
      : Node(std::move(spec)) {
    check_params(this->spec(),
                 {"pipeline", "pipeline_root", "iterable_key", "item_key",
                  "capture"});
    const Json* pipeline = find_param("pipeline");
    if (pipeline == nullptr)
      throw Error(errc::missing_param,
                  "node '" + id() + "': required param 'pipeline' is missing");
    iterable_key_ = require_string("iterable_key");
    item_key_ = string_or("item_key", "item");
    capture_ = string_list_param(this->spec(), "capture");
    sub_graph_ = std::make_unique<PipelineGraph>(
        build_graph(specs_from_json(*pipeline),
                    string_or("pipeline_root", "root"), registry));
  }

  const PipelineGraph* nested_graph() const override {
    return sub_graph_.get();
  }

  ExecStatus execute(ResultStore& store) override {
    if (!store.contains(iterable_key_))
      throw Error(errc::missing_iterable,
                  "no iterable under key '" + iterable_key_ + "'");
    const std::vector<std::int64_t> items =
        store.get<std::vector<std::int64_t>>(iterable_key_);

    ResultStore accumulated;
    std::vector<std::int64_t> failures;
    for (std::size_t i = 0; i < items.size(); ++i) {
      // Each iteration runs on its own clone of the surrounding store, so
      // iterations cannot see each other's writes.
      ResultStore iter_store = store;
      iter_store.set(item_key_, static_cast<double>(items[i]));
      try {
        traverse(*sub_graph_, iter_store);
      } catch (const Error& e) {
        log_warn("loop '" + id() + "' iteration " + std::to_string(i) +
                 " failed: " + e.what());
        failures.push_back(static_cast<std::int64_t>(i));
        ResultStore failed;
        failed.set("error", std::string(errc_name(e.code())));
        failed.set("error_detail", std::string(e.what()));
        accumulated.set(std::to_string(i), StoreBox(std::move(failed)));
        continue;
      }
      accumulated.set(std::to_string(i), StoreBox(snapshot(iter_store)));
    }

    store.set(result_key(), StoreBox(std::move(accumulated)));
    if (!failures.empty())
      store.set(result_key() + "_failures", std::move(failures));
    return ExecStatus::proceed;
  }

 private:
  /// What gets kept per iteration: everything, or just the configured
  /// capture keys.
  ResultStore snapshot(ResultStore& iter_store) const {
    if (capture_.empty()) return std::move(iter_store);
    ResultStore kept;
    for (const std::string& key : capture_)
      if (iter_store.contains(key)) kept.set(key, iter_store.get_value(key));
    return kept;
  }

  std::string iterable_key_;
  std::string item_key_;
  std::vector<std::string> capture_;
  std::unique_ptr<PipelineGraph> sub_graph_;
};

class EncapsulationNode final : public Node {
 public:
  EncapsulationNode(NodeSpec spec, const NodeRegistry& registry)
      : Node(std::move(spec)) {
    check_params(this->spec(), {"pipeline", "pipeline_root", "path"});
    const Json* pipeline = find_param("pipeline");
    if (pipeline != nullptr) {
      sub_graph_ = std::make_unique<PipelineGraph>(
          build_graph(specs_from_json(*pipeline),
                      string_or("pipeline_root", "root"), registry));
      return;
    }
    // Unresolved form: load the referenced file here. Relative paths are
    // then interpreted against the working directory; resolve the
    // document first to anchor them at the including file instead.
    const std::string path = require_string("path");
    PipelineDocument doc = resolve_encapsulations(load_document(path));
    sub_graph_ = std::make_unique<PipelineGraph>(
        build_graph(deserialize(doc), string_or("pipeline_root", "root"),
                    registry));
  }

  const PipelineGraph* nested_graph() const override {
    return sub_graph_.get();
  }

  ExecStatus execute(ResultStore& store) override {
    // Shares the caller's store: the sub-pipeline reads and writes the
    // same dictionary, as if its nodes were inlined.
    traverse(*sub_graph_, store);
    return ExecStatus::proceed;
  }

 private:
  std::unique_ptr<PipelineGraph> sub_graph_;
};

class SinkNode final : public Node {
 public:
  explicit SinkNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(), {"expected_count", "capture"});
    expected_count_ = positive_size_param(*this, this->spec(),
                                          "expected_count", -1);
    capture_ = string_list_param(this->spec(), "capture");
  }

  void reset() override {
    arrivals_ = 0;
    accumulated_ = ResultStore();
  }

  ExecStatus execute(ResultStore& store) override {
    ++arrivals_;
    if (arrivals_ > expected_count_)
      throw Error(errc::invocation_overflow,
                  "sink expected " + std::to_string(expected_count_) +
                      " arrivals, got " + std::to_string(arrivals_));
    for (const std::string& key : capture_)
      if (store.contains(key)) accumulated_.set(key, store.get_value(key));
    if (arrivals_ < expected_count_) return ExecStatus::halt;
    store.set(result_key(), StoreBox(std::move(accumulated_)));
    accumulated_ = ResultStore();
    return ExecStatus::proceed;
  }

 private:
  std::size_t expected_count_ = 0;
  std::vector<std::string> capture_;
  std::size_t arrivals_ = 0;
  ResultStore accumulated_;
};

// ---------------------------------------------------------------------------
// dataset nodes

class LoadDatasetNode final : public Node {
 public:
  explicit LoadDatasetNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(),
                 {"path", "ref_column", "deg_column", "codec_column",
                  "mos_column", "indices_key"});
    path_ = require_string("path");
    columns_.ref = string_or("ref_column", columns_.ref);
    columns_.deg = string_or("deg_column", columns_.deg);
    columns_.codec = string_or("codec_column", columns_.codec);
    columns_.mos = string_or("mos_column", columns_.mos);
    indices_key_ = string_or("indices_key", "row_indices");
  }

  ExecStatus execute(ResultStore& store) override {
    const std::filesystem::path csv = resolve_data_path(store, path_);
    DatasetTable table = load_dataset(csv, columns_);
    std::vector<std::int64_t> indices(table.rows().size());
    for (std::size_t i = 0; i < indices.size(); ++i)
      indices[i] = static_cast<std::int64_t>(i);
    store.set(result_key(), std::move(table));
    store.set(indices_key_, std::move(indices));
    return ExecStatus::proceed;
  }

 private:
  std::string path_;
  DatasetColumns columns_;
  std::string indices_key_;
};

class LoadSignalPairNode final : public Node {
 public:
  explicit LoadSignalPairNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(),
                 {"dataset_key", "row_key", "rate", "ref_key", "deg_key"});
    dataset_key_ = string_or("dataset_key", "dataset");
    row_key_ = string_or("row_key", "row_index");
    rate_ = static_cast<int>(positive_size_param(*this, this->spec(), "rate",
                                                 16000));
    ref_key_ = string_or("ref_key", "ref_signal");
    deg_key_ = string_or("deg_key", "deg_signal");
  }

  ExecStatus execute(ResultStore& store) override {
    const DatasetTable& table = store.get<DatasetTable>(dataset_key_);
    const double raw_index = store.get<double>(row_key_);
    const auto index = static_cast<std::size_t>(raw_index);
    if (raw_index < 0.0 || static_cast<double>(index) != raw_index ||
        index >= table.rows().size())
      throw Error(errc::bad_param,
                  "row index " + std::to_string(raw_index) +
                      " outside dataset of " +
                      std::to_string(table.rows().size()) + " rows");
    const DatasetRow& row = table.rows()[index];
    store.set(ref_key_, load_audio(row.ref_resolved, rate_));
    store.set(deg_key_, load_audio(row.deg_resolved, rate_));
    return ExecStatus::proceed;
  }

 private:
  std::string dataset_key_;
  std::string row_key_;
  int rate_ = 16000;
  std::string ref_key_;
  std::string deg_key_;
};

// ---------------------------------------------------------------------------
// metric nodes

std::vector<std::int64_t> mask_to_list(const VadMask& mask) {
  std::vector<std::int64_t> out(mask.keep.size());
  for (std::size_t i = 0; i < mask.keep.size(); ++i)
    out[i] = mask.keep[i] ? 1 : 0;
  return out;
}

VadMask mask_from_list(const std::vector<std::int64_t>& list) {
  VadMask mask;
  mask.keep.resize(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) mask.keep[i] = list[i] != 0;
  return mask;
}

class WarpqVadNode final : public Node {
 public:
  explicit WarpqVadNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(),
                 {"ref_key", "deg_key", "frame_len", "hop", "threshold_db",
                  "ref_mask_key", "deg_mask_key"});
    ref_key_ = string_or("ref_key", "ref_signal");
    deg_key_ = string_or("deg_key", "deg_signal");
    frame_len_ = positive_size_param(*this, this->spec(), "frame_len", 512);
    hop_ = positive_size_param(*this, this->spec(), "hop", 128);
    threshold_db_ = number_or("threshold_db", -35.0);
    ref_mask_key_ = string_or("ref_mask_key", "ref_vad");
    deg_mask_key_ = string_or("deg_mask_key", "deg_vad");
    if (threshold_db_ >= 0.0)
      throw Error(errc::invalid_field,
                  "node '" + id() + "': threshold_db must be negative");
  }

  ExecStatus execute(ResultStore& store) override {
    const VadMask ref_mask = checked_mask(store, ref_key_, "reference");
    const VadMask deg_mask = checked_mask(store, deg_key_, "degraded");
    store.set(ref_mask_key_, mask_to_list(ref_mask));
    store.set(deg_mask_key_, mask_to_list(deg_mask));
    return ExecStatus::proceed;
  }

 private:
  VadMask checked_mask(const ResultStore& store, const std::string& key,
                       const char* which) const {
    const Signal& sig = store.get<Signal>(key);
    VadMask mask = vad_mask(sig, frame_len_, hop_, threshold_db_);
    if (mask.kept_count() == 0)
      throw Error(errc::no_voiced_frames,
                  std::string(which) + " signal has no voiced frames");
    return mask;
  }

  std::string ref_key_;
  std::string deg_key_;
  std::size_t frame_len_ = 512;
  std::size_t hop_ = 128;
  double threshold_db_ = -35.0;
  std::string ref_mask_key_;
  std::string deg_mask_key_;
};

/// Shared scaffolding for the two feature nodes, so swapping one type
/// name in the config swaps the representation and nothing else.
class FeatureNodeBase : public Node {
 public:
  explicit FeatureNodeBase(NodeSpec spec) : Node(std::move(spec)) {}

  ExecStatus execute(ResultStore& store) override {
    store.set(ref_out_key_, prepare(store, ref_key_, ref_mask_key_,
                                    "reference"));
    store.set(deg_out_key_, prepare(store, deg_key_, deg_mask_key_,
                                    "degraded"));
    return ExecStatus::proceed;
  }

 protected:
  void read_common_params() {
    ref_key_ = string_or("ref_key", "ref_signal");
    deg_key_ = string_or("deg_key", "deg_signal");
    ref_mask_key_ = string_or("ref_mask_key", "ref_vad");
    deg_mask_key_ = string_or("deg_mask_key", "deg_vad");
    ref_out_key_ = string_or("ref_out_key", "ref_features");
    deg_out_key_ = string_or("deg_out_key", "deg_features");
    apply_cmvn_ = bool_or("cmvn", true);
  }

  virtual FeatureMatrix features_of(const Signal& sig) const = 0;

 private:
  FeatureMatrix prepare(const ResultStore& store, const std::string& sig_key,
                        const std::string& mask_key, const char* which) const {
    const Signal& sig = store.get<Signal>(sig_key);
    FeatureMatrix feats = features_of(sig);
    if (!mask_key.empty()) {
      const VadMask mask =
          mask_from_list(store.get<std::vector<std::int64_t>>(mask_key));
      feats = drop_masked_frames(feats, mask);
    }
    if (feats.rows() < 2)
      throw Error(errc::too_short_after_vad,
                  std::string(which) +
                      " signal has fewer than 2 voiced frames");
    if (apply_cmvn_) feats = cmvn(feats);
    return feats;
  }

  std::string ref_key_;
  std::string deg_key_;
  std::string ref_mask_key_;
  std::string deg_mask_key_;
  std::string ref_out_key_;
  std::string deg_out_key_;
  bool apply_cmvn_ = true;
};

class MfccNode final : public FeatureNodeBase {
 public:
  explicit MfccNode(NodeSpec spec) : FeatureNodeBase(std::move(spec)) {
    check_params(this->spec(),
                 {"ref_key", "deg_key", "ref_mask_key", "deg_mask_key",
                  "ref_out_key", "deg_out_key", "cmvn", "n_mels", "n_coeffs",
                  "frame_len", "hop", "fmin", "fmax"});
    read_common_params();
    params_.n_mels = positive_size_param(*this, this->spec(), "n_mels", 32);
    params_.n_coeffs =
        positive_size_param(*this, this->spec(), "n_coeffs", 13);
    params_.frame_len =
        positive_size_param(*this, this->spec(), "frame_len", 512);
    params_.hop = positive_size_param(*this, this->spec(), "hop", 128);
    params_.fmin = number_or("fmin", 0.0);
    params_.fmax = number_or("fmax", -1.0);
    if (params_.n_coeffs > params_.n_mels)
      throw Error(errc::invalid_field,
                  "node '" + id() + "': n_coeffs must be <= n_mels");
  }

 protected:
  FeatureMatrix features_of(const Signal& sig) const override {
    return mfcc(sig, params_);
  }

 private:
  MfccParams params_;
};

class MelSpectrogramNode final : public FeatureNodeBase {
 public:
  explicit MelSpectrogramNode(NodeSpec spec)
      : FeatureNodeBase(std::move(spec)) {
    check_params(this->spec(),
                 {"ref_key", "deg_key", "ref_mask_key", "deg_mask_key",
                  "ref_out_key", "deg_out_key", "cmvn", "n_mels", "frame_len",
                  "hop", "fmin", "fmax"});
    read_common_params();
    params_.n_mels = positive_size_param(*this, this->spec(), "n_mels", 32);
    params_.frame_len =
        positive_size_param(*this, this->spec(), "frame_len", 512);
    params_.hop = positive_size_param(*this, this->spec(), "hop", 128);
    params_.fmin = number_or("fmin", 0.0);
    params_.fmax = number_or("fmax", -1.0);
  }

 protected:
  FeatureMatrix features_of(const Signal& sig) const override {
    return mel_spectrogram(sig, params_);
  }

 private:
  MelParams params_;
};

class WarpqSdtwNode final : public Node {
 public:
  explicit WarpqSdtwNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(),
                 {"ref_features_key", "deg_features_key", "patch_frames",
                  "patch_hop", "aggregation"});
    ref_features_key_ = string_or("ref_features_key", "ref_features");
    deg_features_key_ = string_or("deg_features_key", "deg_features");
    patch_frames_ =
        positive_size_param(*this, this->spec(), "patch_frames", 50);
    patch_hop_ = positive_size_param(*this, this->spec(), "patch_hop", 25);
    const std::string mode = string_or("aggregation", "median");
    if (mode == "median") {
      aggregation_ = WarpqParams::Aggregation::median;
    } else if (mode == "mean") {
      aggregation_ = WarpqParams::Aggregation::mean;
    } else {
      throw Error(errc::invalid_field,
                  "node '" + id() +
                      "': aggregation must be 'median' or 'mean'");
    }
  }

  ExecStatus execute(ResultStore& store) override {
    const FeatureMatrix& ref = store.get<FeatureMatrix>(ref_features_key_);
    const FeatureMatrix& deg = store.get<FeatureMatrix>(deg_features_key_);
    const MetricResult result = warpq_from_features(
        ref, deg, patch_frames_, patch_hop_, aggregation_);
    store.set(result_key(), result.score);
    return ExecStatus::proceed;
  }

 private:
  std::string ref_features_key_;
  std::string deg_features_key_;
  std::size_t patch_frames_ = 50;
  std::size_t patch_hop_ = 25;
  WarpqParams::Aggregation aggregation_ = WarpqParams::Aggregation::median;
};

class LsdNode final : public Node {
 public:
  explicit LsdNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(), {"ref_key", "deg_key", "frame_len", "hop"});
    ref_key_ = string_or("ref_key", "ref_signal");
    deg_key_ = string_or("deg_key", "deg_signal");
    params_.frame_len =
        positive_size_param(*this, this->spec(), "frame_len", 512);
    params_.hop = positive_size_param(*this, this->spec(), "hop", 128);
  }

  ExecStatus execute(ResultStore& store) override {
    const Signal& ref = store.get<Signal>(ref_key_);
    const Signal& deg = store.get<Signal>(deg_key_);
    store.set(result_key(), lsd_score(ref, deg, params_).score);
    return ExecStatus::proceed;
  }

 private:
  std::string ref_key_;
  std::string deg_key_;
  LsdParams params_;
};

// ---------------------------------------------------------------------------
// output nodes

class CollectScoresNode final : public Node {
 public:
  explicit CollectScoresNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(),
                 {"dataset_key", "loop_key", "scores_key", "metrics"});
    dataset_key_ = string_or("dataset_key", "dataset");
    loop_key_ = require_string("loop_key");
    scores_key_ = string_or("scores_key", "scores");
    metrics_ = string_list_param(this->spec(), "metrics");
    if (metrics_.empty())
      throw Error(errc::missing_param,
                  "node '" + id() +
                      "': required param 'metrics' is missing or empty");
  }

  ExecStatus execute(ResultStore& store) override {
    DatasetTable table = store.get<DatasetTable>(dataset_key_);
    const StoreBox& iterations = store.get<StoreBox>(loop_key_);

    for (const std::string& metric : metrics_) table.add_score_column(metric);

    for (std::size_t r = 0; r < table.rows().size(); ++r) {
      const std::string row_key = std::to_string(r);
      std::string error;
      const ResultStore* scores = nullptr;
      if (!iterations->contains(row_key)) {
        error = errc_name(errc::missing_key);
      } else {
        const StoreBox& iteration = iterations->get<StoreBox>(row_key);
        if (iteration->contains("error")) {
          error = iteration->get<std::string>("error");
        } else if (!iteration->contains(scores_key_)) {
          error = errc_name(errc::missing_key);
        } else {
          scores = &*iteration->get<StoreBox>(scores_key_);
        }
      }

      for (const std::string& metric : metrics_) {
        ScoreCell& cell = table.score_column(metric).cells[r];
        if (scores != nullptr && scores->contains(metric)) {
          cell.value = scores->get<double>(metric);
          cell.ok = true;
        } else {
          cell.ok = false;
          cell.error = error.empty() ? std::string(errc_name(errc::missing_key))
                                     : error;
        }
      }
    }

    store.set(result_key(), std::move(table));
    return ExecStatus::proceed;
  }

 private:
  std::string dataset_key_;
  std::string loop_key_;
  std::string scores_key_;
  std::vector<std::string> metrics_;
};

class WriteCsvNode final : public Node {
 public:
  explicit WriteCsvNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(), {"dataset_key", "path"});
    dataset_key_ = string_or("dataset_key", "scored");
    path_ = string_or("path", "results.csv");
  }

  ExecStatus execute(ResultStore& store) override {
    const DatasetTable& table = store.get<DatasetTable>(dataset_key_);
    const std::filesystem::path out = resolve_output_path(store, path_);
    write_results_csv(table, out);
    store.set(result_key(), out.generic_string());
    return ExecStatus::proceed;
  }

 private:
  std::string dataset_key_;
  std::string path_;
};

class CorrelationTableNode final : public Node {
 public:
  explicit CorrelationTableNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(), {"dataset_key", "path"});
    dataset_key_ = string_or("dataset_key", "scored");
    path_ = string_or("path", "correlations.tex");
  }

  ExecStatus execute(ResultStore& store) override {
    const DatasetTable& table = store.get<DatasetTable>(dataset_key_);
    const std::filesystem::path out = resolve_output_path(store, path_);
    const CorrelationReport report = correlation_report(table);
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file)
      throw Error(errc::io_error,
                  "cannot open '" + out.generic_string() + "' for writing");
    file << render_latex_table(report);
    if (!file)
      throw Error(errc::io_error,
                  "write failed for '" + out.generic_string() + "'");
    store.set(result_key(), out.generic_string());
    return ExecStatus::proceed;
  }

 private:
  std::string dataset_key_;
  std::string path_;
};

class ScatterPlotNode final : public Node {
 public:
  explicit ScatterPlotNode(NodeSpec spec) : Node(std::move(spec)) {
    check_params(this->spec(), {"dataset_key", "metric", "path"});
    dataset_key_ = string_or("dataset_key", "scored");
    metric_ = require_string("metric");
    path_ = string_or("path", "scatter_" + metric_ + ".svg");
  }

  ExecStatus execute(ResultStore& store) override {
    const DatasetTable& table = store.get<DatasetTable>(dataset_key_);
    const std::filesystem::path out = resolve_output_path(store, path_);
    render_scatter_svg(table, metric_, out);
    store.set(result_key(), out.generic_string());
    return ExecStatus::proceed;
  }

 private:
  std::string dataset_key_;
  std::string metric_;
  std::string path_;
};

template <typename T>
NodeRegistry::Factory simple() {
  return [](const NodeSpec& spec, const NodeRegistry&) {
    return std::make_unique<T>(spec);
  };
}

}  // namespace

void register_builtin_nodes(NodeRegistry& registry) {
  registry.add("identity", simple<IdentityNode>());
  registry.add("constant", simple<ConstantNode>());
  registry.add("loop", [](const NodeSpec& spec, const NodeRegistry& r) {
    return std::make_unique<LoopNode>(spec, r);
  });
  registry.add("encapsulation",
               [](const NodeSpec& spec, const NodeRegistry& r) {
                 return std::make_unique<EncapsulationNode>(spec, r);
               });
  registry.add("sink", simple<SinkNode>());
  registry.add("load_dataset", simple<LoadDatasetNode>());
  registry.add("load_signal_pair", simple<LoadSignalPairNode>());
  registry.add("warpq_vad", simple<WarpqVadNode>());
  registry.add("mfcc", simple<MfccNode>());
  registry.add("mel_spectrogram", simple<MelSpectrogramNode>());
  registry.add("warpq_sdtw", simple<WarpqSdtwNode>());
  registry.add("lsd", simple<LsdNode>());
  registry.add("collect_scores", simple<CollectScoresNode>());
  registry.add("write_csv", simple<WriteCsvNode>());
  registry.add("correlation_table", simple<CorrelationTableNode>());
  registry.add("scatter_plot", simple<ScatterPlotNode>());
}

}  // namespace aqp
