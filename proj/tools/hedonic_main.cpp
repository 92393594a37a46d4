#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "hedonic/config.hpp"
#include "hedonic/pipeline.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> out;
  std::optional<std::string> target;
  std::optional<std::string> model;
  std::optional<std::size_t> select_n;
};

hedonic::RunConfig resolve(const std::string& config_path, const Overrides& ov) {
  hedonic::RunConfig cfg = hedonic::load_config(config_path);
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.jobs) cfg.jobs = *ov.jobs;
  if (ov.out) cfg.output_dir = *ov.out;
  if (ov.target) cfg.fit_target = *ov.target;
  if (ov.model) cfg.fit_model = *ov.model;
  if (ov.select_n) cfg.select_n = *ov.select_n;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"image-feature extraction and price/DOM modeling for housing listings"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  app.add_option("--config", config_path, "run configuration (JSON)")->required();
  app.add_option("--seed", ov.seed, "override the config seed");
  app.add_option("--jobs", ov.jobs, "worker count for extraction");
  app.add_option("--out", ov.out, "override the output directory");

  auto* extract = app.add_subcommand("extract", "run feature extraction, write features.csv");
  auto* embed = app.add_subcommand("embed", "toy-embed manifest images, write embeddings.csv");
  auto* fit = app.add_subcommand("fit", "fit the configured model, write model.json");
  fit->add_option("--target", ov.target, "price or dom");
  fit->add_option("--model", ov.model, "ols, ridge, gbdt, or gbdt:<preset>");
  auto* evaluate = app.add_subcommand("evaluate", "score model.json on the test partition");
  auto* importance = app.add_subcommand("importance", "write gain importances (CSV + SVG)");
  auto* select = app.add_subcommand("select", "write the top-n feature names");
  select->add_option("--n", ov.select_n, "subset size");
  auto* experiment = app.add_subcommand("experiment", "run the feature-combination experiment");

  CLI11_PARSE(app, argc, argv);

  try {
    const hedonic::RunConfig cfg = resolve(config_path, ov);
    if (extract->parsed()) return hedonic::cmd_extract(cfg);
    if (embed->parsed()) return hedonic::cmd_embed(cfg);
    if (fit->parsed()) return hedonic::cmd_fit(cfg);
    if (evaluate->parsed()) return hedonic::cmd_evaluate(cfg);
    if (importance->parsed()) return hedonic::cmd_importance(cfg);
    if (select->parsed()) return hedonic::cmd_select(cfg);
    if (experiment->parsed()) return hedonic::cmd_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
