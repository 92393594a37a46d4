#include "hedonic/deep.hpp"

#include <algorithm>
#include <vector>

namespace hedonic {

std::map<std::string, int> category_counts(std::span<const ImageAsset> listing_assets) {
  std::map<std::string, int> counts;
  for (auto cat : kIndoorCategories) counts["cat_" + std::string(cat)] = 0;
  for (const auto& asset : listing_assets) {
    if (asset.image_type != ImageType::indoor || !asset.category) continue;
    auto it = counts.find("cat_" + *asset.category);
    if (it != counts.end()) ++it->second;  // "other" stays out
  }
  return counts;
}

std::optional<Eigen::VectorXd> category_average(std::span<const ImageAsset> listing_assets,
                                                const EmbeddingLookup& embeddings,
                                                const PcaModel& model,
                                                std::string_view category) {
  std::vector<const ImageAsset*> members;
  for (const auto& asset : listing_assets) {
    if (asset.image_type == ImageType::indoor && asset.category && *asset.category == category) {
      members.push_back(&asset);
    }
  }
  // Path order fixes the summation order under permuted inputs.
  std::sort(members.begin(), members.end(),
            [](const ImageAsset* a, const ImageAsset* b) { return a->path < b->path; });

  Eigen::VectorXd sum = Eigen::VectorXd::Zero(model.n_components());
  int used = 0;
  for (const ImageAsset* asset : members) {
    auto it = embeddings.find(asset->path);
    if (it == embeddings.end()) continue;
    sum += pca_transform(model, it->second);
    ++used;
  }
  if (used == 0) return std::nullopt;
  return sum / static_cast<double>(used);
}

}  // namespace hedonic
