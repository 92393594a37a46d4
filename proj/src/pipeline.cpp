#include "hedonic/pipeline.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "hedonic/common.hpp"
#include "hedonic/csv.hpp"
#include "hedonic/deep.hpp"
#include "hedonic/entropy.hpp"
#include "hedonic/image_io.hpp"
#include "hedonic/linear.hpp"
#include "hedonic/listing_io.hpp"
#include "hedonic/metrics.hpp"
#include "hedonic/rng.hpp"
#include "hedonic/sampling.hpp"
#include "hedonic/svg.hpp"

namespace hedonic {

namespace fs = std::filesystem;

const std::vector<std::string>& mls_numeric_columns() {
  static const std::vector<std::string> columns = {"ZIP",  "BEDS",    "BATHS", "LOTSIZE",
                                                   "SQFT", "GARAGE", "AGE"};
  return columns;
}

namespace {

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw SchemaError("config: no " + what + " path configured");
  if (!fs::exists(path)) throw SchemaError(what + " not found: " + path);
}

void ensure_output_dir(const RunConfig& cfg) { fs::create_directories(cfg.output_dir); }

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.output_dir) / name).string();
}

/// Runs fn(i) for i in [0, n) on cfg.jobs workers. Results must be written
/// to per-index slots; worker scheduling never affects the output.
void parallel_for(int jobs, std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(jobs, static_cast<int>(n));
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

struct ListingOutput {
  std::vector<ImageFeatureRecord> image_records;
  FeatureRecord aggregates;
  std::vector<std::pair<std::string, std::string>> errors;  // context, message
};

std::string safe_dump_name(const std::string& path) {
  std::string name = path;
  for (char& c : name) {
    if (c == '/' || c == '\\') c = '_';
  }
  return name;
}

GreenMaskSpec resolve_mask_spec(const RunConfig& cfg, const std::vector<ImageAsset>& assets,
                                std::vector<std::pair<std::string, std::string>>& warnings) {
  if (!cfg.derive_green_masks) return cfg.green_mask;

  // Palette pre-pass over the outdoor and satellite corpus.
  std::vector<const ImageAsset*> color_assets;
  for (const auto& a : assets) {
    if (a.image_type == ImageType::outdoor || a.image_type == ImageType::satellite) {
      color_assets.push_back(&a);
    }
  }
  std::vector<std::optional<ColorPalette>> palettes(color_assets.size());
  parallel_for(cfg.jobs, color_assets.size(), [&](std::size_t i) {
    const ImageAsset& asset = *color_assets[i];
    try {
      const RgbImage img = read_image((fs::path(cfg.image_root) / asset.path).string());
      const auto pixels = sample_pixels(img, cfg.palette_sample);
      if (pixels.size() >= static_cast<std::size_t>(cfg.palette_k)) {
        palettes[i] = kmeans_palette(pixels, cfg.palette_k, Rng::derive(cfg.seed, asset.path));
      }
    } catch (const std::exception&) {
      // Decode problems surface in the extraction pass; the palette pre-pass
      // just skips them.
    }
  });
  std::vector<ColorPalette> usable;
  for (auto& p : palettes) {
    if (p) usable.push_back(std::move(*p));
  }
  if (usable.empty()) {
    warnings.emplace_back("derive_masks", "no palettes derived; using configured mask");
    return cfg.green_mask;
  }
  const MaskDerivation derived = derive_masks(usable, cfg.mask_derivation);
  if (derived.used_fallback) {
    warnings.emplace_back("derive_masks", "no green centroids in corpus; default mask in effect");
  }
  return derived.spec;
}

/// Reduction stage for the category averages: one pooled model by default,
/// one model per category behind the config switch.
struct PcaStage {
  bool per_category = false;
  std::optional<PcaModel> pooled;
  std::map<std::string, PcaModel> by_category;

  const PcaModel* for_category(const std::string& category) const {
    if (!per_category) return pooled ? &*pooled : nullptr;
    auto it = by_category.find(category);
    return it == by_category.end() ? nullptr : &it->second;
  }
  bool any() const { return pooled.has_value() || !by_category.empty(); }
};

ListingOutput process_listing(const RunConfig& cfg, const std::string& listing_id,
                              const std::vector<ImageAsset>& assets,
                              const GreenMaskSpec& mask_spec, const EmbeddingLookup& embeddings,
                              const PcaStage& pca) {
  ListingOutput out;
  std::vector<GreenSample> green_samples;

  std::vector<const ImageAsset*> ordered;
  for (const auto& a : assets) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(),
            [](const ImageAsset* a, const ImageAsset* b) { return a->path < b->path; });

  for (const ImageAsset* asset : ordered) {
    const bool want_entropy =
        asset->image_type != ImageType::satellite ||
        (asset->zoom && std::find(cfg.zooms.begin(), cfg.zooms.end(), *asset->zoom) !=
                            cfg.zooms.end());
    const bool want_green =
        asset->image_type == ImageType::outdoor ||
        (asset->image_type == ImageType::satellite && asset->zoom &&
         *asset->zoom == cfg.green_sat_zoom);
    if (!want_entropy && !want_green) continue;

    RgbImage img;
    try {
      img = read_image((fs::path(cfg.image_root) / asset->path).string());
    } catch (const std::exception& e) {
      out.errors.emplace_back(asset->path, e.what());
      continue;
    }

    if (want_entropy) {
      try {
        ImageFeatureRecord rec;
        rec.listing_id = listing_id;
        rec.features = entropy_features(*asset, img, cfg.entropy_window, cfg.region_grid);
        out.image_records.push_back(std::move(rec));
        if (cfg.dump_entropy_maps) {
          const EntropyMap map = local_entropy_map(to_grayscale(img), cfg.entropy_window);
          const double scale = 255.0 / entropy_upper_bound(cfg.entropy_window);
          GrayImage dump(map.rows(), map.cols());
          for (Eigen::Index y = 0; y < map.rows(); ++y) {
            for (Eigen::Index x = 0; x < map.cols(); ++x) {
              dump(y, x) = static_cast<std::uint8_t>(
                  std::min(255.0, std::max(0.0, map(y, x) * scale)));
            }
          }
          fs::create_directories(fs::path(cfg.output_dir) / "debug" / "entropy");
          write_png_gray(out_path(cfg, "debug/entropy/" + safe_dump_name(asset->path) + ".png"),
                         dump);
        }
      } catch (const std::exception& e) {
        out.errors.emplace_back(asset->path, e.what());
      }
    }
    if (want_green) {
      try {
        GreenSample sample;
        sample.type = asset->image_type;
        sample.zoom = asset->zoom;
        sample.fraction = green_fraction(img, mask_spec);
        green_samples.push_back(sample);
        if (cfg.dump_masked_images) {
          fs::create_directories(fs::path(cfg.output_dir) / "debug" / "masked");
          write_png_rgb(out_path(cfg, "debug/masked/" + safe_dump_name(asset->path) + ".png"),
                        apply_green_mask(img, mask_spec));
        }
      } catch (const std::exception& e) {
        out.errors.emplace_back(asset->path, e.what());
      }
    }
  }

  const ListingGreenness greenness = listing_greenness(green_samples, cfg.green_sat_zoom);
  if (greenness.green_mask) out.aggregates["GREEN_mask"] = *greenness.green_mask;
  if (greenness.green_sat) out.aggregates["GREEN_sat"] = *greenness.green_sat;

  for (const auto& [name, count] : category_counts(assets)) {
    out.aggregates[name] = static_cast<double>(count);
  }

  for (const auto cat : kIndoorCategories) {
    const PcaModel* model = pca.for_category(std::string(cat));
    if (!model || model->n_components() == 0) continue;
    const auto avg = category_average(assets, embeddings, *model, cat);
    if (!avg) continue;
    const int score_count =
        std::min<int>(cfg.pca_feature_count, static_cast<int>(model->n_components()));
    for (int k = 0; k < score_count; ++k) {
      out.aggregates["pca_" + std::string(cat) + "_" + std::to_string(k + 1)] = (*avg)(k);
    }
  }
  return out;
}

std::optional<PcaModel> fit_pca_over(const RunConfig& cfg,
                                     std::vector<const ImageAsset*> members,
                                     const EmbeddingLookup& embeddings) {
  if (members.size() < 2) return std::nullopt;
  std::sort(members.begin(), members.end(),
            [](const ImageAsset* a, const ImageAsset* b) { return a->path < b->path; });
  const Eigen::Index dim = embeddings.at(members.front()->path).size();
  Eigen::MatrixXd data(static_cast<Eigen::Index>(members.size()), dim);
  for (std::size_t i = 0; i < members.size(); ++i) {
    data.row(static_cast<Eigen::Index>(i)) = embeddings.at(members[i]->path).transpose();
  }
  PcaTarget target = PcaTarget::variance(cfg.pca_variance_fallback);
  if (cfg.pca_components > 0) {
    const int budget = std::min<int>(
        cfg.pca_components, static_cast<int>(std::min<Eigen::Index>(data.rows() - 1, dim)));
    target = PcaTarget::components(budget);
  }
  return pca_fit(data, target);
}

/// Fits the reduction stage for the category averages. The default pools the
/// categorized indoor embeddings into one model; the per-category switch
/// fits one model for each category instead.
PcaStage fit_corpus_pca(const RunConfig& cfg, const std::vector<ImageAsset>& assets,
                        const EmbeddingLookup& embeddings,
                        std::vector<std::pair<std::string, std::string>>& warnings) {
  PcaStage stage;
  stage.per_category = cfg.pca_per_category;

  std::vector<const ImageAsset*> indoor;
  for (const auto& a : assets) {
    if (a.image_type == ImageType::indoor && a.category && *a.category != "other" &&
        embeddings.count(a.path)) {
      indoor.push_back(&a);
    }
  }
  if (!stage.per_category) {
    stage.pooled = fit_pca_over(cfg, indoor, embeddings);
    if (!stage.pooled && !embeddings.empty()) {
      warnings.emplace_back("pca",
                            "fewer than 2 categorized indoor embeddings; pca_ features skipped");
    }
    return stage;
  }
  for (const auto cat : kIndoorCategories) {
    std::vector<const ImageAsset*> members;
    for (const ImageAsset* a : indoor) {
      if (*a->category == cat) members.push_back(a);
    }
    auto model = fit_pca_over(cfg, members, embeddings);
    if (model) {
      stage.by_category.emplace(std::string(cat), std::move(*model));
    } else if (!members.empty()) {
      warnings.emplace_back("pca", "category " + std::string(cat) +
                                       " has fewer than 2 embeddings; its pca_ features skipped");
    }
  }
  return stage;
}

void write_error_log(const RunConfig& cfg,
                     const std::vector<std::tuple<std::string, std::string, std::string>>& errors) {
  std::ofstream out(out_path(cfg, "extract_errors.csv"));
  out << "listing_id,context,message\n";
  for (const auto& [listing, context, message] : errors) {
    out << join_csv({listing, context, message}) << "\n";
  }
}

}  // namespace

int cmd_extract(const RunConfig& cfg) {
  require_file(cfg.metadata_path, "metadata file");
  require_file(cfg.manifest_path, "manifest file");
  require_file(cfg.image_root, "image root");
  ensure_output_dir(cfg);

  std::vector<std::tuple<std::string, std::string, std::string>> error_log;

  const ListingLoadResult listings = load_listings_file(cfg.metadata_path);
  for (const auto& err : listings.errors) {
    error_log.emplace_back("", "metadata line " + std::to_string(err.line), err.message);
  }
  const ManifestLoadResult manifest = load_manifest_file(cfg.manifest_path, cfg.image_root);
  for (const auto& err : manifest.errors) {
    error_log.emplace_back("", "manifest line " + std::to_string(err.line), err.message);
  }

  std::vector<std::pair<std::string, std::string>> warnings;
  EmbeddingLookup embeddings;
  if (fs::exists(cfg.embeddings_file())) {
    const auto records = load_embeddings_file(cfg.embeddings_file());
    embeddings = index_embeddings(records);
    // Embedding rows that match no manifest path are dropped with a warning.
    std::set<std::string> asset_paths;
    for (const auto& a : manifest.assets) asset_paths.insert(a.path);
    std::size_t orphaned = 0;
    for (auto it = embeddings.begin(); it != embeddings.end();) {
      if (!asset_paths.count(it->first)) {
        ++orphaned;
        it = embeddings.erase(it);
      } else {
        ++it;
      }
    }
    if (orphaned > 0) {
      warnings.emplace_back("embeddings", std::to_string(orphaned) +
                                              " embedding row(s) match no manifest image; dropped");
    }
  } else {
    std::cerr << "note: no embeddings file at " << cfg.embeddings_file()
              << "; pca_ features will be missing\n";
  }

  const GreenMaskSpec mask_spec = resolve_mask_spec(cfg, manifest.assets, warnings);
  PcaStage pca;
  if (!embeddings.empty()) {
    pca = fit_corpus_pca(cfg, manifest.assets, embeddings, warnings);
    if (pca.pooled) save_pca(out_path(cfg, "pca_model.json"), *pca.pooled);
    for (const auto& [category, model] : pca.by_category) {
      save_pca(out_path(cfg, "pca_model_" + category + ".json"), model);
    }
  }
  for (const auto& [context, message] : warnings) {
    error_log.emplace_back("", context, message);
    std::cerr << "warning: " << context << ": " << message << "\n";
  }

  const auto grouped = group_by_listing(manifest.assets);
  const std::vector<ImageAsset> no_assets;
  std::vector<ListingOutput> outputs(listings.listings.size());
  parallel_for(cfg.jobs, listings.listings.size(), [&](std::size_t i) {
    const auto& listing = listings.listings[i];
    auto it = grouped.find(listing.mls_num);
    const auto& assets = it == grouped.end() ? no_assets : it->second;
    outputs[i] = process_listing(cfg, listing.mls_num, assets, mask_spec, embeddings, pca);
  });

  std::vector<ImageFeatureRecord> image_records;
  std::vector<ListingAggregate> aggregates;
  std::size_t clean_listings = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    auto& out = outputs[i];
    const std::string& id = listings.listings[i].mls_num;
    for (auto& rec : out.image_records) image_records.push_back(std::move(rec));
    aggregates.push_back({id, std::move(out.aggregates)});
    if (out.errors.empty()) ++clean_listings;
    for (const auto& [context, message] : out.errors) error_log.emplace_back(id, context, message);
  }

  const FeatureTable table = assemble_features(listings.listings, image_records, aggregates);
  write_feature_table_file(out_path(cfg, "features.csv"), table);
  write_error_log(cfg, error_log);

  std::cout << "extract: " << table.n_rows() << " listings, " << table.n_features()
            << " features (" << clean_listings << " listings without errors, " << error_log.size()
            << " log entries)\n";
  if (listings.listings.empty()) {
    std::cerr << "extract: no usable listings\n";
    return 1;
  }
  return 0;
}

int cmd_embed(const RunConfig& cfg) {
  require_file(cfg.manifest_path, "manifest file");
  require_file(cfg.image_root, "image root");
  ensure_output_dir(cfg);

  const ManifestLoadResult manifest = load_manifest_file(cfg.manifest_path, cfg.image_root);
  std::vector<std::optional<EmbeddingRecord>> slots(manifest.assets.size());
  std::atomic<std::size_t> failures{0};
  parallel_for(cfg.jobs, manifest.assets.size(), [&](std::size_t i) {
    const auto& asset = manifest.assets[i];
    if (asset.image_type != ImageType::indoor) return;  // deep features are indoor-only
    try {
      const RgbImage img = read_image((fs::path(cfg.image_root) / asset.path).string());
      slots[i] = EmbeddingRecord{asset.path, toy_embed(img)};
    } catch (const std::exception& e) {
      failures.fetch_add(1);
      std::cerr << "embed: " << asset.path << ": " << e.what() << "\n";
    }
  });

  std::vector<EmbeddingRecord> records;
  for (auto& slot : slots) {
    if (slot) records.push_back(std::move(*slot));
  }
  if (records.empty()) {
    std::cerr << "embed: no indoor images could be embedded\n";
    return 1;
  }
  std::ofstream out(cfg.embeddings_file());
  if (!out) throw FormatError("cannot write embeddings to " + cfg.embeddings_file());
  write_embeddings(out, records);
  std::cout << "embed: " << records.size() << " vectors (dim " << kToyEmbedDim << ", "
            << failures.load() << " failures)\n";
  return 0;
}

namespace {

struct FitData {
  std::vector<std::string> features;
  DesignMatrix train_X;
  DesignMatrix test_X;
  Eigen::VectorXd train_y;
  Eigen::VectorXd test_y;
};

FitData prepare_fit(const RunConfig& cfg, const FeatureTable& table, const std::string& target) {
  FeatureCombination combo;
  combo.name = "fit";
  combo.features = cfg.fit_features;
  FitData data;
  data.features = resolve_features(combo, table.feature_names());
  const DesignMatrix full = table.design(data.features);

  const Split split = train_test_split(static_cast<int>(table.n_rows()), cfg.split_ratio, cfg.seed);
  const Eigen::VectorXd& raw = target == "price" ? table.price() : table.dom();
  auto transform = [&](double v) {
    return target == "price" ? log_transform_price(v) : log_transform_dom(v);
  };

  std::vector<int> train_rows = split.train;
  if (target == "dom") {
    Eigen::VectorXd train_raw(split.train.size());
    for (std::size_t i = 0; i < split.train.size(); ++i) train_raw(i) = raw(split.train[i]);
    const auto boot = stratified_bootstrap(train_raw, cfg.bootstrap_strata,
                                           Rng::derive(cfg.seed, "dom-bootstrap"));
    train_rows.clear();
    for (int local : boot.indices) train_rows.push_back(split.train[local]);
  }

  data.train_X = full.select_rows(train_rows);
  data.test_X = full.select_rows(split.test);
  data.train_y.resize(train_rows.size());
  for (std::size_t i = 0; i < train_rows.size(); ++i) data.train_y(i) = transform(raw(train_rows[i]));
  data.test_y.resize(split.test.size());
  for (std::size_t i = 0; i < split.test.size(); ++i) data.test_y(i) = transform(raw(split.test[i]));
  return data;
}

std::string model_kind(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open model " + path);
  nlohmann::json j;
  in >> j;
  return j.at("kind").get<std::string>();
}

}  // namespace

int cmd_fit(const RunConfig& cfg) {
  const std::string table_path = out_path(cfg, "features.csv");
  require_file(table_path, "feature table");
  ensure_output_dir(cfg);

  FeatureTable table = load_feature_table_file(table_path);
  if (cfg.zip_one_hot) table = expand_zip_one_hot(table);
  const FitData data = prepare_fit(cfg, table, cfg.fit_target);
  const std::string model_path = out_path(cfg, "model.json");

  if (cfg.fit_model == "ols" || cfg.fit_model == "ridge") {
    LinearModel model = fit_linear(data.train_X, data.train_y,
                                   cfg.fit_model == "ols" ? LinearKind::ols : LinearKind::ridge,
                                   cfg.ridge_lambda);
    model.target = cfg.fit_target;
    model.schema_hash = table.schema_hash();
    save_linear(model_path, model);
  } else if (cfg.fit_model.rfind("gbdt:", 0) == 0) {
    auto presets = builtin_gbdt_presets();
    for (const auto& [name, params] : cfg.gbdt_presets) presets[name] = params;
    const std::string preset = cfg.fit_model.substr(5);
    auto it = presets.find(preset);
    if (it == presets.end()) throw SchemaError("unknown gbdt preset " + preset);
    GbdtModel model = gbdt_fit(data.train_X, data.train_y, it->second);
    model.target = cfg.fit_target;
    model.schema_hash = table.schema_hash();
    save_gbdt(model_path, model);
  } else if (cfg.fit_model == "gbdt") {
    GbdtModel model = gbdt_fit(data.train_X, data.train_y, cfg.gbdt);
    model.target = cfg.fit_target;
    model.schema_hash = table.schema_hash();
    save_gbdt(model_path, model);
  } else {
    throw SchemaError("unknown fit model " + cfg.fit_model);
  }
  std::cout << "fit: " << cfg.fit_model << " on " << data.train_X.rows() << " rows, "
            << data.features.size() << " features -> " << model_path << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  const std::string table_path = out_path(cfg, "features.csv");
  const std::string model_path = out_path(cfg, "model.json");
  require_file(table_path, "feature table");
  require_file(model_path, "model file");

  FeatureTable table = load_feature_table_file(table_path);
  if (cfg.zip_one_hot) table = expand_zip_one_hot(table);
  const std::string kind = model_kind(model_path);

  std::string target;
  std::uint64_t stored_hash = 0;
  std::vector<std::string> feature_names;
  if (kind == "gbdt") {
    const GbdtModel model = load_gbdt(model_path);
    target = model.target;
    stored_hash = model.schema_hash;
    feature_names = model.feature_names;
  } else {
    const LinearModel model = load_linear(model_path);
    target = model.target;
    stored_hash = model.schema_hash;
    feature_names = model.feature_names;
  }
  if (stored_hash != table.schema_hash()) {
    throw SchemaError(
        "feature table schema hash does not match the model; refusing to evaluate "
        "(re-run extract and fit against the same table)");
  }

  RunConfig fit_cfg = cfg;
  fit_cfg.fit_target = target;
  fit_cfg.fit_features.assign(feature_names.begin(), feature_names.end());
  const FitData data = prepare_fit(fit_cfg, table, target);

  Eigen::VectorXd predictions;
  if (kind == "gbdt") {
    predictions = predict(load_gbdt(model_path), data.test_X);
  } else {
    predictions = predict(load_linear(model_path), data.test_X);
  }

  const double mae_value = mae(data.test_y, predictions);
  const double r2_value = r_squared(data.test_y, predictions);
  std::ofstream out(out_path(cfg, "evaluation.csv"));
  out << "# metrics on transformed target scale: price = ln(SOLDPRICE), dom = ln(1 + DOM)\n";
  out << "model,target,n_test,mae,r2\n";
  out << join_csv({kind, target, std::to_string(data.test_y.size()), format_double(mae_value),
                   format_double(r2_value)})
      << "\n";
  std::cout << "evaluate: " << kind << " " << target << " mae=" << format_double(mae_value)
            << " r2=" << format_double(r2_value) << "\n";
  return 0;
}

int cmd_importance(const RunConfig& cfg) {
  const std::string model_path = out_path(cfg, "model.json");
  require_file(model_path, "model file");
  if (model_kind(model_path) != "gbdt") {
    throw SchemaError("importance requires a gbdt model file");
  }
  const GbdtModel model = load_gbdt(model_path);
  const auto importances = feature_importance(model);

  std::vector<std::pair<std::string, double>> ranked(importances.begin(), importances.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::ofstream out(out_path(cfg, "importance.csv"));
  out << "feature,gain\n";
  for (const auto& [name, gain] : ranked) {
    out << join_csv({name, format_double(gain)}) << "\n";
  }
  write_importance_svg(out_path(cfg, "importance.svg"), ranked, mls_numeric_columns(),
                       "split-gain importance (" + model.target + ")");
  std::cout << "importance: " << ranked.size() << " features -> importance.csv, importance.svg\n";
  return 0;
}

int cmd_select(const RunConfig& cfg) {
  const std::string model_path = out_path(cfg, "model.json");
  require_file(model_path, "model file");
  if (model_kind(model_path) != "gbdt") {
    throw SchemaError("select requires a gbdt model file");
  }
  const GbdtModel model = load_gbdt(model_path);
  const auto selected = select_top_n(feature_importance(model), cfg.select_n);
  std::ofstream out(out_path(cfg, "selected_features.txt"));
  for (const auto& name : selected) out << name << "\n";
  std::cout << "select: wrote " << selected.size() << " names to selected_features.txt\n";
  return 0;
}

int cmd_experiment(const RunConfig& cfg) {
  const std::string table_path = out_path(cfg, "features.csv");
  require_file(table_path, "feature table");
  ensure_output_dir(cfg);

  FeatureTable table = load_feature_table_file(table_path);
  if (cfg.zip_one_hot) table = expand_zip_one_hot(table);
  const MetricReport report = run_experiment(cfg.experiment_spec(), table);

  std::ofstream out(out_path(cfg, "experiment.csv"));
  write_report_csv(out, report);
  write_report_svg(out_path(cfg, "experiment.svg"), report);

  std::cout << "combination,model,target,mae,r2,wall_ms\n";
  for (const auto& row : report.rows) {
    std::cout << row.combination << "," << row.model << "," << row.target << ","
              << format_double(row.mae) << "," << format_double(row.r2) << ","
              << format_double(row.wall_ms) << "\n";
  }
  return 0;
}

}  // namespace hedonic
