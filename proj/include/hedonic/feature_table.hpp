#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hedonic/entropy.hpp"
#include "hedonic/listing.hpp"

namespace hedonic {

/// Dense feature view for the model layer. Cells with present == false hold
/// unspecified values; models decide the missing-value policy.
struct DesignMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd values;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> present;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  DesignMatrix select_rows(std::span<const int> row_indices) const;
};

/// Listing-indexed matrix of named features with explicit missing cells.
/// The two response variables ride along so a persisted table is a complete
/// modeling input on its own.
class FeatureTable {
 public:
  FeatureTable() = default;
  FeatureTable(std::vector<std::string> listing_ids, std::vector<std::string> feature_names,
               Eigen::MatrixXd values, Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> present,
               Eigen::VectorXd price, Eigen::VectorXd dom);

  const std::vector<std::string>& listing_ids() const { return listing_ids_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  Eigen::Index n_rows() const { return values_.rows(); }
  Eigen::Index n_features() const { return values_.cols(); }

  std::optional<double> cell(Eigen::Index row, Eigen::Index col) const;
  const Eigen::MatrixXd& values() const { return values_; }
  const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& present() const { return present_; }
  const Eigen::VectorXd& price() const { return price_; }
  const Eigen::VectorXd& dom() const { return dom_; }

  /// Column view by name; throws SchemaError listing every unknown name.
  DesignMatrix design(std::span<const std::string> names) const;

  /// FNV-1a over the sorted column names; persisted with models.
  std::uint64_t schema_hash() const;

 private:
  std::vector<std::string> listing_ids_;
  std::vector<std::string> feature_names_;  // sorted, unique
  Eigen::MatrixXd values_;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> present_;
  Eigen::VectorXd price_;
  Eigen::VectorXd dom_;
};

/// Feature values computed from one image.
struct ImageFeatureRecord {
  std::string listing_id;
  FeatureRecord features;
};

/// Already-reduced per-listing values (greenness, category counts, averaged
/// PCA components).
struct ListingAggregate {
  std::string listing_id;
  FeatureRecord features;
};

/// Builds one row per listing: the seven metadata predictors plus the union
/// of all image-feature columns, sorted by name. Per-image records sharing a
/// (listing, feature) pair aggregate by arithmetic mean; per-listing
/// aggregates are taken as-is. Cells without a contribution stay missing.
/// A feature fed through both routes for the same listing, or twice through
/// the aggregate route, is an assembly error.
FeatureTable assemble_features(std::span<const ListingRecord> listings,
                               std::span<const ImageFeatureRecord> per_image,
                               std::span<const ListingAggregate> per_listing);

/// Modeling-side alternative to the default integer treatment of ZIP:
/// replaces the ZIP column with one ZIP_<code> indicator per distinct code.
/// The persisted table keeps the raw column; this runs after loading.
FeatureTable expand_zip_one_hot(const FeatureTable& table);

/// CSV with columns listing_id,SOLDPRICE,DOM,<features...>; missing cells
/// are empty. Cell text round-trips bit-exactly.
void write_feature_table(std::ostream& out, const FeatureTable& table);
void write_feature_table_file(const std::string& path, const FeatureTable& table);
FeatureTable load_feature_table(std::istream& in);
FeatureTable load_feature_table_file(const std::string& path);

}  // namespace hedonic
