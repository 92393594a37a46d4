#include "hedonic/feature_table.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hedonic/common.hpp"
#include "hedonic/csv.hpp"

namespace hedonic {

namespace {
const std::vector<std::string> kMetadataColumns = {"AGE",  "BATHS",  "BEDS", "GARAGE",
                                                   "LOTSIZE", "SQFT", "ZIP"};
const std::set<std::string> kReservedColumns = {"listing_id", "SOLDPRICE", "DOM"};
}  // namespace

DesignMatrix DesignMatrix::select_rows(std::span<const int> row_indices) const {
  DesignMatrix out;
  out.names = names;
  out.values.resize(static_cast<Eigen::Index>(row_indices.size()), values.cols());
  out.present.resize(static_cast<Eigen::Index>(row_indices.size()), values.cols());
  for (std::size_t i = 0; i < row_indices.size(); ++i) {
    out.values.row(static_cast<Eigen::Index>(i)) = values.row(row_indices[i]);
    out.present.row(static_cast<Eigen::Index>(i)) = present.row(row_indices[i]);
  }
  return out;
}

FeatureTable::FeatureTable(std::vector<std::string> listing_ids,
                           std::vector<std::string> feature_names, Eigen::MatrixXd values,
                           Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> present,
                           Eigen::VectorXd price, Eigen::VectorXd dom)
    : listing_ids_(std::move(listing_ids)),
      feature_names_(std::move(feature_names)),
      values_(std::move(values)),
      present_(std::move(present)),
      price_(std::move(price)),
      dom_(std::move(dom)) {}

std::optional<double> FeatureTable::cell(Eigen::Index row, Eigen::Index col) const {
  if (!present_(row, col)) return std::nullopt;
  return values_(row, col);
}

DesignMatrix FeatureTable::design(std::span<const std::string> names) const {
  std::vector<Eigen::Index> cols;
  std::vector<std::string> unknown;
  for (const auto& name : names) {
    auto it = std::lower_bound(feature_names_.begin(), feature_names_.end(), name);
    if (it == feature_names_.end() || *it != name) {
      unknown.push_back(name);
    } else {
      cols.push_back(it - feature_names_.begin());
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown feature name(s):";
    for (const auto& name : unknown) msg += " " + name;
    throw SchemaError(msg);
  }
  DesignMatrix dm;
  dm.names.assign(names.begin(), names.end());
  dm.values.resize(values_.rows(), static_cast<Eigen::Index>(cols.size()));
  dm.present.resize(values_.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    dm.values.col(static_cast<Eigen::Index>(j)) = values_.col(cols[j]);
    dm.present.col(static_cast<Eigen::Index>(j)) = present_.col(cols[j]);
  }
  return dm;
}

std::uint64_t FeatureTable::schema_hash() const {
  std::string joined;
  for (const auto& name : feature_names_) {
    joined += name;
    joined += '\n';
  }
  return fnv1a64(joined);
}

FeatureTable assemble_features(std::span<const ListingRecord> listings,
                               std::span<const ImageFeatureRecord> per_image,
                               std::span<const ListingAggregate> per_listing) {
  std::map<std::string, Eigen::Index> row_of;
  for (const auto& listing : listings) {
    if (row_of.count(listing.mls_num)) {
      throw SchemaError("assemble_features: duplicate listing " + listing.mls_num);
    }
    row_of[listing.mls_num] = static_cast<Eigen::Index>(row_of.size());
  }

  // Gather per-image contributions per (listing, feature); the value list is
  // sorted before summing so assembly is permutation-invariant.
  std::map<std::string, std::map<std::string, std::vector<double>>> image_values;
  std::set<std::string> column_set;
  for (const auto& rec : per_image) {
    if (!row_of.count(rec.listing_id)) continue;  // asset without metadata row
    for (const auto& [name, value] : rec.features) {
      if (kReservedColumns.count(name)) throw SchemaError("reserved feature name " + name);
      image_values[rec.listing_id][name].push_back(value);
      column_set.insert(name);
    }
  }

  std::map<std::string, FeatureRecord> aggregate_values;
  for (const auto& agg : per_listing) {
    if (!row_of.count(agg.listing_id)) continue;
    auto& dest = aggregate_values[agg.listing_id];
    for (const auto& [name, value] : agg.features) {
      if (kReservedColumns.count(name)) throw SchemaError("reserved feature name " + name);
      if (dest.count(name)) {
        throw SchemaError("assemble_features: duplicate aggregate feature " + name +
                          " for listing " + agg.listing_id);
      }
      if (image_values.count(agg.listing_id) && image_values[agg.listing_id].count(name)) {
        throw SchemaError("assemble_features: feature " + name +
                          " supplied both per-image and per-listing for " + agg.listing_id);
      }
      dest[name] = value;
      column_set.insert(name);
    }
  }
  for (const auto& meta : kMetadataColumns) {
    if (column_set.count(meta)) throw SchemaError("image feature collides with metadata column " + meta);
    column_set.insert(meta);
  }

  std::vector<std::string> feature_names(column_set.begin(), column_set.end());
  const Eigen::Index n = static_cast<Eigen::Index>(listings.size());
  const Eigen::Index p = static_cast<Eigen::Index>(feature_names.size());
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, p);
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> present(n, p);
  present.setConstant(false);
  Eigen::VectorXd price(n), dom(n);

  std::map<std::string, Eigen::Index> col_of;
  for (Eigen::Index j = 0; j < p; ++j) col_of[feature_names[j]] = j;

  std::vector<std::string> listing_ids;
  listing_ids.reserve(listings.size());
  for (const auto& listing : listings) {
    const Eigen::Index row = row_of[listing.mls_num];
    listing_ids.push_back(listing.mls_num);
    price(row) = listing.price;
    dom(row) = listing.dom;
    auto set = [&](const std::string& name, double v) {
      const Eigen::Index col = col_of[name];
      values(row, col) = v;
      present(row, col) = true;
    };
    set("ZIP", static_cast<double>(listing.zip));
    set("BEDS", listing.beds);
    set("BATHS", listing.baths);
    set("LOTSIZE", listing.lotsize);
    set("SQFT", listing.sqft);
    set("GARAGE", listing.garage);
    set("AGE", listing.age);

    if (auto it = image_values.find(listing.mls_num); it != image_values.end()) {
      for (auto& [name, vals] : it->second) {
        std::sort(vals.begin(), vals.end());
        double sum = 0;
        for (double v : vals) sum += v;
        set(name, sum / static_cast<double>(vals.size()));
      }
    }
    if (auto it = aggregate_values.find(listing.mls_num); it != aggregate_values.end()) {
      for (const auto& [name, v] : it->second) set(name, v);
    }
  }

  // listing_ids were pushed in listings order, which is row order.
  return FeatureTable(std::move(listing_ids), std::move(feature_names), std::move(values),
                      std::move(present), std::move(price), std::move(dom));
}

FeatureTable expand_zip_one_hot(const FeatureTable& table) {
  const auto& names = table.feature_names();
  const auto zip_it = std::find(names.begin(), names.end(), "ZIP");
  if (zip_it == names.end()) throw SchemaError("expand_zip_one_hot: table has no ZIP column");
  const Eigen::Index zip_col = zip_it - names.begin();

  std::set<long long> codes;
  for (Eigen::Index i = 0; i < table.n_rows(); ++i) {
    if (auto v = table.cell(i, zip_col)) codes.insert(static_cast<long long>(*v));
  }

  std::set<std::string> new_names(names.begin(), names.end());
  new_names.erase("ZIP");
  std::map<long long, std::string> indicator_of;
  for (long long code : codes) {
    indicator_of[code] = "ZIP_" + std::to_string(code);
    new_names.insert(indicator_of[code]);
  }

  std::vector<std::string> feature_names(new_names.begin(), new_names.end());
  std::map<std::string, Eigen::Index> col_of;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(feature_names.size()); ++j) {
    col_of[feature_names[j]] = j;
  }

  const Eigen::Index n = table.n_rows();
  const Eigen::Index p = static_cast<Eigen::Index>(feature_names.size());
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, p);
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> present(n, p);
  present.setConstant(false);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < table.n_features(); ++j) {
      if (j == zip_col) continue;
      if (auto v = table.cell(i, j)) {
        const Eigen::Index col = col_of[names[j]];
        values(i, col) = *v;
        present(i, col) = true;
      }
    }
    if (auto zip = table.cell(i, zip_col)) {
      for (const auto& [code, name] : indicator_of) {
        const Eigen::Index col = col_of[name];
        values(i, col) = code == static_cast<long long>(*zip) ? 1.0 : 0.0;
        present(i, col) = true;
      }
    }
  }
  return FeatureTable(table.listing_ids(), std::move(feature_names), std::move(values),
                      std::move(present), table.price(), table.dom());
}

void write_feature_table(std::ostream& out, const FeatureTable& table) {
  std::vector<std::string> header = {"listing_id", "SOLDPRICE", "DOM"};
  for (const auto& name : table.feature_names()) header.push_back(name);
  out << join_csv(header) << "\n";
  for (Eigen::Index i = 0; i < table.n_rows(); ++i) {
    std::vector<std::string> row;
    row.reserve(header.size());
    row.push_back(table.listing_ids()[i]);
    row.push_back(format_double(table.price()(i)));
    row.push_back(format_double(table.dom()(i)));
    for (Eigen::Index j = 0; j < table.n_features(); ++j) {
      auto v = table.cell(i, j);
      row.push_back(v ? format_double(*v) : std::string());
    }
    out << join_csv(row) << "\n";
  }
}

void write_feature_table_file(const std::string& path, const FeatureTable& table) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write feature table to " + path);
  write_feature_table(out, table);
}

FeatureTable load_feature_table(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw SchemaError("feature table is empty");
  if (fields.size() < 3 || fields[0] != "listing_id" || fields[1] != "SOLDPRICE" ||
      fields[2] != "DOM") {
    throw SchemaError("feature table header must start with listing_id,SOLDPRICE,DOM");
  }
  std::vector<std::string> feature_names(fields.begin() + 3, fields.end());
  if (!std::is_sorted(feature_names.begin(), feature_names.end())) {
    throw SchemaError("feature table columns must be sorted by name");
  }

  std::vector<std::string> listing_ids;
  std::vector<std::vector<std::string>> rows;
  while (reader.next(fields)) {
    if (fields.size() != feature_names.size() + 3) {
      throw SchemaError("feature table line " + std::to_string(reader.line_number()) +
                        ": expected " + std::to_string(feature_names.size() + 3) + " fields");
    }
    rows.push_back(fields);
  }

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index p = static_cast<Eigen::Index>(feature_names.size());
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, p);
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> present(n, p);
  present.setConstant(false);
  Eigen::VectorXd price(n), dom(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[i];
    listing_ids.push_back(row[0]);
    if (!parse_double(row[1], price(i)) || !parse_double(row[2], dom(i))) {
      throw FormatError("feature table row " + row[0] + ": bad target value");
    }
    for (Eigen::Index j = 0; j < p; ++j) {
      const std::string& cell = row[3 + j];
      if (cell.empty()) continue;
      double v = 0;
      if (!parse_double(cell, v)) {
        throw FormatError("feature table row " + row[0] + ": bad value \"" + cell + "\" in " +
                          feature_names[j]);
      }
      values(i, j) = v;
      present(i, j) = true;
    }
  }
  return FeatureTable(std::move(listing_ids), std::move(feature_names), std::move(values),
                      std::move(present), std::move(price), std::move(dom));
}

FeatureTable load_feature_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open feature table " + path);
  return load_feature_table(in);
}

}  // namespace hedonic
