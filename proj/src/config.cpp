#include "hedonic/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "hedonic/common.hpp"

namespace hedonic {

namespace {

GbdtParams gbdt_from_json(const nlohmann::json& j, GbdtParams base) {
  if (j.contains("n_trees")) base.n_trees = j["n_trees"].get<int>();
  if (j.contains("learning_rate")) base.learning_rate = j["learning_rate"].get<double>();
  if (j.contains("max_depth")) base.max_depth = j["max_depth"].get<int>();
  if (j.contains("min_samples_leaf")) base.min_samples_leaf = j["min_samples_leaf"].get<int>();
  if (j.contains("n_bins")) base.n_bins = j["n_bins"].get<int>();
  if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
  return base;
}

GreenMaskSpec mask_from_json(const nlohmann::json& j) {
  GreenMaskSpec spec;
  for (const auto& range : j.at("hue_ranges")) {
    if (!range.is_array() || range.size() != 2) {
      throw SchemaError("config: hue_ranges entries must be [lo, hi] pairs");
    }
    HueRange r{range[0].get<double>(), range[1].get<double>()};
    if (r.lo < 0 || r.hi >= 360.0 || r.lo > r.hi) {
      throw SchemaError("config: hue range outside [0, 360) or inverted");
    }
    spec.hue_ranges.push_back(r);
  }
  if (j.contains("min_saturation")) spec.min_saturation = j["min_saturation"].get<double>();
  if (j.contains("min_value")) spec.min_value = j["min_value"].get<double>();
  if (spec.min_saturation < 0 || spec.min_saturation > 1 || spec.min_value < 0 ||
      spec.min_value > 1) {
    throw SchemaError("config: mask thresholds must lie in [0, 1]");
  }
  return spec;
}

}  // namespace

std::string RunConfig::embeddings_file() const {
  if (!embeddings_path.empty()) return embeddings_path;
  return output_dir + "/embeddings.csv";
}

ExperimentSpec RunConfig::experiment_spec() const {
  ExperimentSpec spec;
  spec.combinations = combinations;
  spec.split_ratio = split_ratio;
  spec.seed = seed;
  spec.bootstrap_strata = bootstrap_strata;
  spec.ridge_lambda = ridge_lambda;
  spec.gbdt_presets = gbdt_presets;
  return spec;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("config " + path + " is not valid JSON: " + e.what());
  }

  RunConfig cfg;
  if (!j.contains("seed")) {
    throw SchemaError("config: seed is mandatory (reproducible runs have no wall-clock default)");
  }
  cfg.seed = j["seed"].get<std::uint64_t>();

  if (j.contains("paths")) {
    const auto& p = j["paths"];
    if (p.contains("metadata")) cfg.metadata_path = p["metadata"].get<std::string>();
    if (p.contains("manifest")) cfg.manifest_path = p["manifest"].get<std::string>();
    if (p.contains("image_root")) cfg.image_root = p["image_root"].get<std::string>();
    if (p.contains("embeddings")) cfg.embeddings_path = p["embeddings"].get<std::string>();
    if (p.contains("output_dir")) cfg.output_dir = p["output_dir"].get<std::string>();
  }

  if (j.contains("extraction")) {
    const auto& e = j["extraction"];
    if (e.contains("entropy_window")) cfg.entropy_window = e["entropy_window"].get<int>();
    if (e.contains("region_grid")) cfg.region_grid = e["region_grid"].get<int>();
    if (e.contains("zooms")) cfg.zooms = e["zooms"].get<std::vector<int>>();
    if (e.contains("green_sat_zoom")) cfg.green_sat_zoom = e["green_sat_zoom"].get<int>();
    if (e.contains("green_mask")) cfg.green_mask = mask_from_json(e["green_mask"]);
    if (e.contains("derive_green_masks")) cfg.derive_green_masks = e["derive_green_masks"].get<bool>();
    if (e.contains("mask_derivation")) {
      const auto& m = e["mask_derivation"];
      if (m.contains("green_band")) {
        cfg.mask_derivation.green_band = {m["green_band"][0].get<double>(),
                                          m["green_band"][1].get<double>()};
      }
      if (m.contains("margin_deg")) cfg.mask_derivation.margin_deg = m["margin_deg"].get<double>();
      if (m.contains("min_saturation")) {
        cfg.mask_derivation.min_saturation = m["min_saturation"].get<double>();
      }
      if (m.contains("min_value")) cfg.mask_derivation.min_value = m["min_value"].get<double>();
    }
    if (e.contains("palette_k")) cfg.palette_k = e["palette_k"].get<int>();
    if (e.contains("palette_sample")) cfg.palette_sample = e["palette_sample"].get<std::size_t>();
    if (e.contains("pca_components")) cfg.pca_components = e["pca_components"].get<int>();
    if (e.contains("pca_variance_fallback")) {
      cfg.pca_variance_fallback = e["pca_variance_fallback"].get<double>();
    }
    if (e.contains("pca_feature_count")) cfg.pca_feature_count = e["pca_feature_count"].get<int>();
    if (e.contains("pca_per_category")) cfg.pca_per_category = e["pca_per_category"].get<bool>();
    if (e.contains("dump_entropy_maps")) cfg.dump_entropy_maps = e["dump_entropy_maps"].get<bool>();
    if (e.contains("dump_masked_images")) {
      cfg.dump_masked_images = e["dump_masked_images"].get<bool>();
    }
  }

  if (j.contains("modeling")) {
    const auto& m = j["modeling"];
    if (m.contains("gbdt")) cfg.gbdt = gbdt_from_json(m["gbdt"], cfg.gbdt);
    if (m.contains("ridge_lambda")) cfg.ridge_lambda = m["ridge_lambda"].get<double>();
    if (m.contains("fit_model")) cfg.fit_model = m["fit_model"].get<std::string>();
    if (m.contains("fit_target")) cfg.fit_target = m["fit_target"].get<std::string>();
    if (m.contains("fit_features")) cfg.fit_features = m["fit_features"].get<std::vector<std::string>>();
    if (m.contains("split_ratio")) cfg.split_ratio = m["split_ratio"].get<double>();
    if (m.contains("bootstrap_strata")) cfg.bootstrap_strata = m["bootstrap_strata"].get<int>();
    if (m.contains("select_n")) cfg.select_n = m["select_n"].get<std::size_t>();
    if (m.contains("zip_one_hot")) cfg.zip_one_hot = m["zip_one_hot"].get<bool>();
  }

  if (j.contains("experiment")) {
    const auto& e = j["experiment"];
    if (e.contains("combinations")) {
      for (const auto& c : e["combinations"]) {
        FeatureCombination combo;
        combo.name = c.at("name").get<std::string>();
        combo.features = c.at("features").get<std::vector<std::string>>();
        combo.models = c.at("models").get<std::vector<std::string>>();
        if (c.contains("selection_file")) {
          combo.selection_file = c["selection_file"].get<std::string>();
        }
        cfg.combinations.push_back(std::move(combo));
      }
    }
    if (e.contains("gbdt_presets")) {
      for (const auto& [name, pj] : e["gbdt_presets"].items()) {
        auto builtins = builtin_gbdt_presets();
        const GbdtParams base = builtins.count(name) ? builtins[name] : GbdtParams{};
        cfg.gbdt_presets[name] = gbdt_from_json(pj, base);
      }
    }
  }

  if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
  if (cfg.jobs < 1) throw SchemaError("config: jobs must be >= 1");
  if (!(cfg.split_ratio > 0) || !(cfg.split_ratio < 1)) {
    throw SchemaError("config: split_ratio must lie in (0, 1)");
  }
  if (cfg.fit_target != "price" && cfg.fit_target != "dom") {
    throw SchemaError("config: fit_target must be \"price\" or \"dom\"");
  }
  return cfg;
}

}  // namespace hedonic
