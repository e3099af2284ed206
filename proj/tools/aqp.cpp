// aqp: declare an audio-metric pipeline in JSON, run it over a dataset,
// and inspect the graph it compiles to.
//
//   aqp run <config.json> [--root ID] [--out-dir DIR]
//   aqp viz <config.json> [--out FILE] [--expand]
//   aqp validate <config.json>
//   aqp gen-dataset <dir> [--seed N]

#include <string>

#include "CLI11.hpp"
#include "aqp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"node-based dataflow runner for audio quality metrics"};
  app.require_subcommand(1);

  aqp::RunOptions run_options;
  CLI::App* run = app.add_subcommand("run", "execute a pipeline config");
  run->add_option("config", run_options.config, "pipeline JSON file")
      ->required();
  run->add_option("--root", run_options.root_id, "root node id")
      ->capture_default_str();
  run->add_option("--out-dir", run_options.out_dir, "output directory")
      ->capture_default_str();

  aqp::VizOptions viz_options;
  CLI::App* viz = app.add_subcommand("viz", "render a config as Graphviz DOT");
  viz->add_option("config", viz_options.config, "pipeline JSON file")
      ->required();
  viz->add_option("--root", viz_options.root_id, "root node id")
      ->capture_default_str();
  viz->add_option("--out", viz_options.out,
                  "output file (default: <config stem>.dot)");
  viz->add_flag("--expand", viz_options.expand,
                "draw nested pipelines as subgraph clusters");

  std::filesystem::path validate_config;
  std::string validate_root = "root";
  CLI::App* validate =
      app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", validate_config, "pipeline JSON file")
      ->required();
  validate->add_option("--root", validate_root, "root node id")
      ->capture_default_str();

  std::filesystem::path gen_dir;
  std::uint64_t gen_seed = 20216;
  CLI::App* gen =
      app.add_subcommand("gen-dataset", "write the synthetic test corpus");
  gen->add_option("dir", gen_dir, "destination directory")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return aqp::cmd_run(run_options);
  if (viz->parsed()) return aqp::cmd_viz(viz_options);
  if (validate->parsed())
    return aqp::cmd_validate(validate_config, validate_root);
  if (gen->parsed()) return aqp::cmd_gen_dataset(gen_dir, gen_seed);
  return 1;
}
