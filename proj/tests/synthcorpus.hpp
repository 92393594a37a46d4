#pragma once

// Procedural test corpus: listings with metadata, manifest, and on-disk
// images whose latent structure is known exactly. log-price depends on
// sqft, a non-monotone zip effect, outdoor greenness, and a kitchen style
// direction that only reaches the models through the image pipeline.

#include <cstdint>
#include <filesystem>
#include <string>

namespace synth {

struct CorpusOptions {
  int n_listings = 500;
  std::uint64_t seed = 20260810;
  int image_size = 48;
  double satellite16_share = 0.6;  // listings that also get a zoom-16 tile
  double no_outdoor_share = 0.02;  // listings with no outdoor coverage at all
};

struct CorpusPaths {
  std::filesystem::path dir;
  std::string metadata;
  std::string manifest;
  std::string image_root;
};

/// Writes metadata.csv, manifest.csv and images/ under `dir`.
CorpusPaths generate_corpus(const std::filesystem::path& dir, const CorpusOptions& options);

/// Writes a config.json for the corpus (Table-6 style combinations) and
/// returns its path.
std::string write_corpus_config(const CorpusPaths& corpus, const std::filesystem::path& out_dir,
                                std::uint64_t seed);

}  // namespace synth
