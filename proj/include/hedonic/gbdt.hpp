#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hedonic/feature_table.hpp"

namespace hedonic {

struct GbdtParams {
  int n_trees = 500;
  double learning_rate = 0.05;
  int max_depth = 6;
  int min_samples_leaf = 20;
  int n_bins = 64;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One tree node; interior nodes route value <= threshold to the left and
/// missing values to the learned default side.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0;
  bool missing_left = true;
  int left = -1;
  int right = -1;
  double value = 0;  // leaf prediction (a residual mean)
};

struct Tree {
  std::vector<TreeNode> nodes;  // node 0 is the root

  double predict_row(const DesignMatrix& X, Eigen::Index row) const;
};

/// Least-squares gradient-boosted regression trees over histogram bins.
struct GbdtModel {
  double initial = 0;  // training-target mean
  double learning_rate = 0;
  std::vector<Tree> trees;
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> bin_edges;  // per feature, ascending
  Eigen::VectorXd feature_gain;                // cumulative split gain
  GbdtParams params;
  bool constant_prediction = false;  // no stage found a usable split
  std::string target;
  std::uint64_t schema_hash = 0;
};

/// Stage 0 predicts mean(y); each stage fits a depth-bounded tree to the
/// current residuals over per-feature quantile bins, choosing splits by
/// maximal squared-error reduction and routing missing values to the side
/// that maximizes the gain. Requires n >= 2 * min_samples_leaf.
GbdtModel gbdt_fit(const DesignMatrix& X, const Eigen::VectorXd& y, const GbdtParams& params);

/// initial + learning_rate * sum of tree outputs. Columns align by name;
/// a missing column is a schema error.
Eigen::VectorXd predict(const GbdtModel& model, const DesignMatrix& X);

/// Total split gain per feature; never-split features score exactly 0.
std::map<std::string, double> feature_importance(const GbdtModel& model);

/// The n highest-gain names, ties broken by ascending name.
std::vector<std::string> select_top_n(const std::map<std::string, double>& importances,
                                      std::size_t n);

void save_gbdt(const std::string& path, const GbdtModel& model);
GbdtModel load_gbdt(const std::string& path);

}  // namespace hedonic
