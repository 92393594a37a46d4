#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hedonic/color.hpp"
#include "hedonic/experiment.hpp"
#include "hedonic/gbdt.hpp"

namespace hedonic {

/// One config file drives every command; flags override individual fields.
struct RunConfig {
  // Inputs and outputs.
  std::string metadata_path;
  std::string manifest_path;
  std::string image_root;
  std::string embeddings_path;  // defaults to <output_dir>/embeddings.csv
  std::string output_dir = "out";

  // Extraction.
  int entropy_window = 9;
  int region_grid = 3;
  std::vector<int> zooms = {16, 18, 20};
  int green_sat_zoom = 20;
  GreenMaskSpec green_mask = default_green_mask();
  bool derive_green_masks = false;
  MaskDerivationConfig mask_derivation;
  int palette_k = 8;
  std::size_t palette_sample = 20000;
  int pca_components = 200;           // capped by min(n-1, D) at fit time
  double pca_variance_fallback = 0.85;  // used when pca_components <= 0
  int pca_feature_count = 2;
  bool pca_per_category = false;
  bool dump_entropy_maps = false;
  bool dump_masked_images = false;

  // Modeling.
  GbdtParams gbdt;
  double ridge_lambda = 1.0;
  std::string fit_model = "gbdt:lgb";
  std::string fit_target = "price";
  std::vector<std::string> fit_features = {"*"};
  double split_ratio = 0.7;
  int bootstrap_strata = 10;
  std::size_t select_n = 40;
  bool zip_one_hot = false;  // default keeps ZIP as an integer code

  // Experiment.
  std::vector<FeatureCombination> combinations;
  std::map<std::string, GbdtParams> gbdt_presets;

  std::uint64_t seed = 0;  // mandatory; load fails without one
  int jobs = 1;

  std::string embeddings_file() const;
  ExperimentSpec experiment_spec() const;
};

/// Parses the JSON config. The seed is mandatory (a wall-clock default would
/// break reproducibility); file-existence checks happen per command.
RunConfig load_config(const std::string& path);

}  // namespace hedonic
