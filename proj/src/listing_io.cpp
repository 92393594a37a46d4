#include "hedonic/listing_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hedonic/common.hpp"
#include "hedonic/csv.hpp"

namespace hedonic {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_garage(std::string_view raw, int& out) {
  const std::string v = lower(trim(raw));
  if (v == "1" || v == "yes" || v == "true" || v == "y") {
    out = 1;
    return true;
  }
  if (v == "0" || v == "no" || v == "false" || v == "n") {
    out = 0;
    return true;
  }
  return false;
}

bool parse_int_field(std::string_view raw, long long& out) {
  const std::string v = trim(raw);
  if (v.empty()) return false;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  return res.ec == std::errc() && res.ptr == v.data() + v.size();
}

// ZIP codes keep leading zeros in the file; the integer code ignores an
// optional "-suffix" (ZIP+4 exports).
bool parse_zip(std::string_view raw, long long& out) {
  std::string v = trim(raw);
  if (auto dash = v.find('-'); dash != std::string::npos) v = v.substr(0, dash);
  if (v.empty()) return false;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  return res.ec == std::errc() && res.ptr == v.data() + v.size() && out >= 0;
}

}  // namespace

std::string_view image_type_name(ImageType t) {
  switch (t) {
    case ImageType::indoor: return "indoor";
    case ImageType::outdoor: return "outdoor";
    case ImageType::satellite: return "satellite";
  }
  return "indoor";
}

std::optional<ImageType> parse_image_type(std::string_view s) {
  const std::string v = lower(trim(s));
  if (v == "indoor") return ImageType::indoor;
  if (v == "outdoor") return ImageType::outdoor;
  if (v == "satellite") return ImageType::satellite;
  return std::nullopt;
}

std::string normalize_category(std::string_view raw) {
  const std::string v = lower(trim(raw));
  for (auto cat : kIndoorCategories) {
    if (v == cat) return std::string(cat);
  }
  // Common long-form labels from MLS exports.
  if (v == "bedroom") return "bed";
  if (v == "bathroom") return "bath";
  if (v == "living_room" || v == "living room" || v == "livingroom") return "living";
  if (v == "dinning_room" || v == "dining_room" || v == "dining room" || v == "dining") return "dinning";
  return "other";
}

ListingLoadResult load_listings(std::istream& in) {
  static const std::vector<std::string> required = {
      "MLSNUM", "SOLDPRICE", "DOM", "ZIP", "BEDS",
      "BATHS",  "LOTSIZE",   "SQFT", "GARAGE", "AGE"};

  CsvReader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw SchemaError("metadata file is empty");

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < fields.size(); ++i) col[trim(fields[i])] = i;
  for (const auto& name : required) {
    if (!col.count(name)) throw SchemaError("metadata header is missing column " + name);
  }

  ListingLoadResult result;
  std::set<std::string> seen_ids;
  while (reader.next(fields)) {
    const std::size_t line = reader.line_number();
    auto reject = [&](const std::string& why) {
      result.errors.push_back({line, why});
    };
    if (fields.size() < required.size()) {
      reject("expected at least " + std::to_string(required.size()) + " fields, got " +
             std::to_string(fields.size()));
      continue;
    }
    auto cell = [&](const std::string& name) -> const std::string& { return fields[col[name]]; };

    ListingRecord rec;
    rec.mls_num = trim(cell("MLSNUM"));
    if (rec.mls_num.empty()) {
      reject("empty MLSNUM");
      continue;
    }
    if (!parse_double(cell("SOLDPRICE"), rec.price)) {
      reject("non-numeric SOLDPRICE \"" + cell("SOLDPRICE") + "\"");
      continue;
    }
    if (!(rec.price > 0)) {
      reject("SOLDPRICE must be positive, got " + cell("SOLDPRICE"));
      continue;
    }
    long long dom = 0;
    if (!parse_int_field(cell("DOM"), dom)) {
      reject("non-numeric DOM \"" + cell("DOM") + "\"");
      continue;
    }
    if (dom < 0) {
      reject("DOM must be non-negative, got " + cell("DOM"));
      continue;
    }
    rec.dom = static_cast<int>(dom);
    if (!parse_zip(cell("ZIP"), rec.zip)) {
      reject("non-numeric ZIP \"" + cell("ZIP") + "\"");
      continue;
    }
    long long beds = 0;
    if (!parse_int_field(cell("BEDS"), beds) || beds < 0) {
      reject("BEDS must be a non-negative integer, got \"" + cell("BEDS") + "\"");
      continue;
    }
    rec.beds = static_cast<int>(beds);
    if (!parse_double(cell("BATHS"), rec.baths) || rec.baths < 0) {
      reject("BATHS must be a non-negative number, got \"" + cell("BATHS") + "\"");
      continue;
    }
    if (!parse_double(cell("LOTSIZE"), rec.lotsize) || rec.lotsize < 0) {
      reject("LOTSIZE must be a non-negative number, got \"" + cell("LOTSIZE") + "\"");
      continue;
    }
    if (!parse_double(cell("SQFT"), rec.sqft) || !(rec.sqft > 0)) {
      reject("SQFT must be positive, got \"" + cell("SQFT") + "\"");
      continue;
    }
    if (!parse_garage(cell("GARAGE"), rec.garage)) {
      reject("GARAGE must be 0/1/yes/no/true/false, got \"" + cell("GARAGE") + "\"");
      continue;
    }
    long long age = 0;
    if (!parse_int_field(cell("AGE"), age) || age < 0) {
      reject("AGE must be a non-negative integer, got \"" + cell("AGE") + "\"");
      continue;
    }
    rec.age = static_cast<int>(age);
    if (!seen_ids.insert(rec.mls_num).second) {
      reject("duplicate MLSNUM " + rec.mls_num);
      continue;
    }
    result.listings.push_back(std::move(rec));
  }
  return result;
}

ListingLoadResult load_listings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open metadata file " + path);
  return load_listings(in);
}

ManifestLoadResult load_manifest(std::istream& in, const std::string& image_root, bool check_paths) {
  static const std::vector<std::string> required = {"listing_id", "path", "image_type", "category",
                                                    "zoom"};
  CsvReader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw SchemaError("manifest file is empty");

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < fields.size(); ++i) col[lower(trim(fields[i]))] = i;
  for (const auto& name : required) {
    if (!col.count(name)) throw SchemaError("manifest header is missing column " + name);
  }

  ManifestLoadResult result;
  const std::filesystem::path root(image_root);
  while (reader.next(fields)) {
    const std::size_t line = reader.line_number();
    if (fields.size() < required.size()) {
      result.errors.push_back({line, "expected 5 fields, got " + std::to_string(fields.size())});
      continue;
    }
    auto cell = [&](const std::string& name) -> const std::string& { return fields[col[name]]; };

    ImageAsset asset;
    asset.listing_id = trim(cell("listing_id"));
    asset.path = trim(cell("path"));
    if (asset.listing_id.empty() || asset.path.empty()) {
      result.errors.push_back({line, "empty listing_id or path"});
      continue;
    }
    auto type = parse_image_type(cell("image_type"));
    if (!type) {
      result.errors.push_back({line, "unknown image_type \"" + cell("image_type") + "\""});
      continue;
    }
    asset.image_type = *type;

    const std::string category = trim(cell("category"));
    const std::string zoom_raw = trim(cell("zoom"));
    if (!category.empty()) {
      if (asset.image_type != ImageType::indoor) {
        throw SchemaError("manifest line " + std::to_string(line) +
                          ": category is only valid on indoor images");
      }
      asset.category = normalize_category(category);
    }
    if (!zoom_raw.empty()) {
      if (asset.image_type != ImageType::satellite) {
        throw SchemaError("manifest line " + std::to_string(line) +
                          ": zoom is only valid on satellite images");
      }
      long long zoom = 0;
      if (!parse_int_field(zoom_raw, zoom)) {
        throw SchemaError("manifest line " + std::to_string(line) + ": non-numeric zoom \"" +
                          zoom_raw + "\"");
      }
      if (zoom < 15 || zoom > 20) {
        throw SchemaError("manifest line " + std::to_string(line) + ": zoom " +
                          std::to_string(zoom) + " outside [15, 20]");
      }
      asset.zoom = static_cast<int>(zoom);
    } else if (asset.image_type == ImageType::satellite) {
      throw SchemaError("manifest line " + std::to_string(line) +
                        ": satellite image requires a zoom level");
    }

    if (check_paths && !std::filesystem::exists(root / asset.path)) {
      result.errors.push_back({line, "dangling path " + asset.path});
      continue;
    }

    switch (asset.image_type) {
      case ImageType::indoor: ++result.indoor_count; break;
      case ImageType::outdoor: ++result.outdoor_count; break;
      case ImageType::satellite: ++result.satellite_count; break;
    }
    result.assets.push_back(std::move(asset));
  }
  return result;
}

ManifestLoadResult load_manifest_file(const std::string& path, const std::string& image_root,
                                      bool check_paths) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open manifest file " + path);
  return load_manifest(in, image_root, check_paths);
}

std::map<std::string, std::vector<ImageAsset>> group_by_listing(const std::vector<ImageAsset>& assets) {
  std::map<std::string, std::vector<ImageAsset>> grouped;
  for (const auto& a : assets) grouped[a.listing_id].push_back(a);
  return grouped;
}

}  // namespace hedonic
