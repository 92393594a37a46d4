#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hedonic/listing.hpp"

namespace hedonic {

/// A rejected row; rows are never silently dropped.
struct RowError {
  std::size_t line = 0;  // 1-based line in the source file
  std::string message;
};

struct ListingLoadResult {
  std::vector<ListingRecord> listings;
  std::vector<RowError> errors;
};

/// Reads the metadata file (columns MLSNUM,SOLDPRICE,DOM,ZIP,BEDS,BATHS,
/// LOTSIZE,SQFT,GARAGE,AGE in any order). A missing column throws
/// SchemaError naming it; malformed rows land in the error report.
ListingLoadResult load_listings(std::istream& in);
ListingLoadResult load_listings_file(const std::string& path);

struct ManifestLoadResult {
  std::vector<ImageAsset> assets;
  std::vector<RowError> errors;  // dangling paths, unknown types
  std::size_t indoor_count = 0;
  std::size_t outdoor_count = 0;
  std::size_t satellite_count = 0;
};

/// Reads the image manifest (columns listing_id,path,image_type,category,
/// zoom; empty cell = absent optional). Invariant violations (zoom on an
/// indoor image, satellite without zoom, zoom outside 15..20, category on a
/// non-indoor image) throw SchemaError. Dangling paths are collected as
/// asset errors and the row is skipped. Rows stream through one at a time;
/// only the asset records are retained.
/// When `check_paths` is false the path existence check is skipped (used by
/// corpus-scale manifests in tests).
ManifestLoadResult load_manifest(std::istream& in, const std::string& image_root,
                                 bool check_paths = true);
ManifestLoadResult load_manifest_file(const std::string& path, const std::string& image_root,
                                      bool check_paths = true);

/// Asset lookup per listing, preserving manifest order within a listing.
std::map<std::string, std::vector<ImageAsset>> group_by_listing(const std::vector<ImageAsset>& assets);

}  // namespace hedonic
