#include "aqp/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "aqp/config.hpp"
#include "aqp/dataset_gen.hpp"
#include "aqp/graph.hpp"
#include "aqp/log.hpp"
#include "aqp/nodes.hpp"
#include "aqp/viz.hpp"

namespace aqp {
namespace {

int exit_code_for(const Error& e) {
  return error_stage(e.code()) == ErrorStage::runtime ? 3 : 2;
}

std::string_view level_name(LogLevel level) {
  switch (level) {
    case LogLevel::debug: return "debug";
    case LogLevel::info: return "info";
    case LogLevel::warn: return "warn";
    case LogLevel::error: return "error";
    case LogLevel::off: return "off";
  }
  return "?";
}

/// Counts visits and, at debug level, reports the time spent since the
/// previous visit (an upper bound on the node's own cost).
class RunObserver : public TraversalObserver {
 public:
  RunObserver() : last_(std::chrono::steady_clock::now()) {}

  void on_visit(const Node& node, ExecStatus status) override {
    ++visits_;
    if (log_enabled(LogLevel::debug)) {
      const auto now = std::chrono::steady_clock::now();
      const auto micros =
          std::chrono::duration_cast<std::chrono::microseconds>(now - last_)
              .count();
      last_ = now;
      log_debug("node '" + node.id() + "' " +
                (status == ExecStatus::halt ? "halted" : "continued") +
                " after " + std::to_string(micros) + " us");
    }
  }

  std::size_t visits() const { return visits_; }

 private:
  std::size_t visits_ = 0;
  std::chrono::steady_clock::time_point last_;
};

void write_manifest(const RunOptions& options, double elapsed_seconds,
                    std::size_t visits, const Error* error) {
  Json manifest;
  manifest["config_path"] = options.config.generic_string();
  manifest["root_id"] = options.root_id;
  manifest["output_dir"] = options.out_dir.generic_string();
  manifest["log_level"] = std::string(level_name(log_level()));
  char elapsed[32];
  std::snprintf(elapsed, sizeof(elapsed), "%.3f", elapsed_seconds);
  manifest["elapsed_seconds"] = std::stod(elapsed);
  manifest["node_visit_count"] = visits;
  if (error == nullptr) {
    manifest["status"] = "success";
  } else {
    manifest["status"] = "error";
    Json detail;
    detail["code"] = std::string(errc_name(error->code()));
    detail["message"] = error->detail();
    detail["node_path"] = error->path();
    manifest["error"] = detail;
  }

  const std::filesystem::path path = options.out_dir / "run_manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    log_error("cannot write manifest to '" + path.generic_string() + "'");
    return;
  }
  out << manifest.dump(2) << "\n";
}

}  // namespace

int cmd_run(const RunOptions& options) {
  set_log_level(log_level_from_env());
  const auto start = std::chrono::steady_clock::now();
  RunObserver observer;

  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  try {
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec)
      throw Error(errc::io_error, "cannot create output dir '" +
                                      options.out_dir.generic_string() +
                                      "': " + ec.message());

    PipelineDocument doc =
        resolve_encapsulations(load_document(options.config));
    NodeRegistry registry = NodeRegistry::with_builtins();
    std::vector<NodeSpec> specs = deserialize(doc, &registry);
    PipelineGraph graph = build_graph(specs, options.root_id, registry);

    ResultStore store;
    store.set("data_dir",
              options.config.parent_path().generic_string());
    store.set("out_dir", options.out_dir.generic_string());

    traverse(graph, store, &observer);
    write_manifest(options, elapsed(), observer.visits(), nullptr);
    std::cout << "run complete: " << observer.visits() << " node visits\n";
    return 0;
  } catch (const Error& e) {
    write_manifest(options, elapsed(), observer.visits(), &e);
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_viz(const VizOptions& options) {
  set_log_level(log_level_from_env());
  try {
    PipelineDocument doc =
        resolve_encapsulations(load_document(options.config));
    NodeRegistry registry = NodeRegistry::with_builtins();
    PipelineGraph graph =
        build_graph(deserialize(doc, &registry), options.root_id, registry);

    std::filesystem::path out = options.out;
    if (out.empty())
      out = options.config.stem().generic_string() + ".dot";

    DotOptions dot_options;
    dot_options.expand = options.expand;
    const std::string dot = to_dot(graph, dot_options);

    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file)
      throw Error(errc::io_error,
                  "cannot open '" + out.generic_string() + "' for writing");
    file << dot;
    if (!file)
      throw Error(errc::io_error,
                  "write failed for '" + out.generic_string() + "'");
    std::cout << "wrote " << out.generic_string() << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_validate(const std::filesystem::path& config,
                 const std::string& root_id) {
  set_log_level(log_level_from_env());
  NodeRegistry registry = NodeRegistry::with_builtins();
  const std::vector<Finding> findings =
      validate_config(config, root_id, registry);
  if (findings.empty()) {
    std::cout << "OK\n";
    return 0;
  }
  for (const Finding& finding : findings) {
    std::cout << errc_name(finding.code);
    if (!finding.node_id.empty()) std::cout << " " << finding.node_id;
    std::cout << ": " << finding.message << "\n";
  }
  return 1;
}

int cmd_gen_dataset(const std::filesystem::path& dir, std::uint64_t seed) {
  set_log_level(log_level_from_env());
  try {
    const CorpusSummary summary = generate_corpus(dir, seed);
    std::cout << "generated " << summary.reference_count << " references, "
              << summary.row_count << " rows at "
              << summary.csv_path.generic_string() << "\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace aqp
