#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hedonic/image.hpp"

namespace hedonic {

/// One per-image embedding vector; the id matches the manifest path field.
struct EmbeddingRecord {
  std::string image_id;
  Eigen::VectorXd vector;
};

/// CSV rows of image_id,v1,...,vD with an optional leading "dim=D" line.
/// All rows must share one dimension and hold finite values.
std::vector<EmbeddingRecord> load_embeddings(std::istream& in);
std::vector<EmbeddingRecord> load_embeddings_file(const std::string& path);

void write_embeddings(std::ostream& out, std::span<const EmbeddingRecord> records);

/// Deterministic 96-dim stand-in for CNN features: 64 mean-pooled grayscale
/// block intensities over an 8x8 grid (normalized to [0,1]) followed by a
/// 32-bin hue histogram.
Eigen::VectorXd toy_embed(const RgbImage& img);

inline constexpr int kToyEmbedDim = 96;

using EmbeddingLookup = std::map<std::string, Eigen::VectorXd>;

EmbeddingLookup index_embeddings(std::span<const EmbeddingRecord> records);

}  // namespace hedonic
