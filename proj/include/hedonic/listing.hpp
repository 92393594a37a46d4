#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace hedonic {

/// One MLS row: identifiers, the seven basic numeric predictors, and the two
/// response variables.
struct ListingRecord {
  std::string mls_num;
  double price = 0;    // SOLDPRICE, > 0
  int dom = 0;         // days on market, >= 0 (same-day sale is legal)
  long long zip = 0;   // categorical postal code kept as an integer code
  int beds = 0;
  double baths = 0;    // half-baths allowed
  double lotsize = 0;
  double sqft = 0;     // > 0
  int garage = 0;      // {0,1}
  int age = 0;
};

enum class ImageType { indoor, outdoor, satellite };

std::string_view image_type_name(ImageType t);
std::optional<ImageType> parse_image_type(std::string_view s);

/// Indoor room categories carried into cat_/pca_ features (Table ordering is
/// alphabetical for deterministic column layouts). Anything else maps to
/// "other" and is excluded.
inline constexpr std::array<std::string_view, 6> kIndoorCategories = {
    "basement", "bath", "bed", "dinning", "kitchen", "living"};

/// Maps a raw manifest label onto the fixed vocabulary; unknown -> "other".
std::string normalize_category(std::string_view raw);

/// One image file bound to a listing.
struct ImageAsset {
  std::string listing_id;
  std::string path;  // relative to the image root; doubles as the image id
  ImageType image_type = ImageType::indoor;
  std::optional<std::string> category;  // indoor only
  std::optional<int> zoom;              // satellite only, 15..20
};

}  // namespace hedonic
