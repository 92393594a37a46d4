#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "hedonic/embedding.hpp"
#include "hedonic/listing.hpp"
#include "hedonic/pca.hpp"

namespace hedonic {

/// cat_<category> image counts for one listing; every category key is
/// present, zero when unseen.
std::map<std::string, int> category_counts(std::span<const ImageAsset> listing_assets);

/// Mean of the PCA scores of the listing's images in one category; empty if
/// the listing has no such images. Images without a matching embedding are
/// skipped (the join warns upstream).
std::optional<Eigen::VectorXd> category_average(std::span<const ImageAsset> listing_assets,
                                                const EmbeddingLookup& embeddings,
                                                const PcaModel& model,
                                                std::string_view category);

}  // namespace hedonic
